#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "ylab/kernels.hpp"
#include "ylab/pde.hpp"

using namespace ylab;

namespace {

struct Setup {
  GridField field;
  Stencil st;
  std::vector<double> bc, v, w, out;
};

// Annulus(0.5, 2) lattice at h = 1 / inv_h with the distance as the field
const Setup& setup(int inv_h) {
  static std::map<int, Setup> cache;
  auto it = cache.find(inv_h);
  if (it != cache.end()) return it->second;
  const Domain d = Domain::annulus(3, 0.5, 2.0);
  Setup s;
  s.field = make_grid(d, 1.0 / inv_h);
  s.st = build_stencil(s.field, d);
  s.bc = v_boundary_data(s.st, s.field);
  s.v.resize(s.st.size());
  s.w.resize(s.st.size());
  s.out.resize(s.st.size());
  for (std::int32_t u = 0; u < s.st.size(); ++u) {
    s.v[u] = d.signed_distance(s.field.position(s.st.node[u]));
    s.w[u] = std::sin(0.1 * u);
  }
  return cache.emplace(inv_h, std::move(s)).first->second;
}

void BM_residual_reference(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  std::vector<double> f(s.st.size());
  for (auto _ : state) {
    reference::v_residual(s.st, s.bc.data(), s.v.data(), f.data());
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_residual_parallel(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  std::vector<double> f(s.st.size());
  for (auto _ : state) {
    v_residual(s.st, s.bc.data(), s.v.data(), f.data(), Exec::parallel);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_jacobian_reference(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  std::vector<double> o(s.st.size());
  for (auto _ : state) {
    reference::v_jacobian_apply(s.st, s.bc.data(), s.v.data(), s.w.data(), o.data());
    benchmark::DoNotOptimize(o.data());
  }
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_jacobian_parallel(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  std::vector<double> o(s.st.size());
  for (auto _ : state) {
    v_jacobian_apply(s.st, s.bc.data(), s.v.data(), s.w.data(), o.data(), Exec::parallel);
    benchmark::DoNotOptimize(o.data());
  }
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_dot_reference(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::dot(s.v.data(), s.w.data(), s.st.size()));
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_dot_parallel(benchmark::State& state) {
  const Setup& s = setup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dot(s.v.data(), s.w.data(), s.st.size(), Exec::parallel));
  state.SetItemsProcessed(state.iterations() * s.st.size());
}

void BM_solve(benchmark::State& state) {
  SolveOptions o;
  o.exec = state.range(1) ? Exec::parallel : Exec::serial;
  const Domain d = Domain::annulus(3, 0.5, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_v(d, 1.0 / state.range(0), o).report.iterations);
}

}  // namespace

BENCHMARK(BM_residual_reference)->Arg(16)->Arg(32);
BENCHMARK(BM_residual_parallel)->Arg(16)->Arg(32);
BENCHMARK(BM_jacobian_reference)->Arg(16)->Arg(32);
BENCHMARK(BM_jacobian_parallel)->Arg(16)->Arg(32);
BENCHMARK(BM_dot_reference)->Arg(32);
BENCHMARK(BM_dot_parallel)->Arg(32);
BENCHMARK(BM_solve)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
