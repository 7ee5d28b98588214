#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "ylab/krylov.hpp"
#include "ylab/pde.hpp"
#include "ylab/radial.hpp"
#include "ylab/stencil.hpp"

using namespace ylab;

namespace {

using Key = std::array<long, 3>;

Key key_of(const Vec& x, double h) { return {std::lround(x[0] / h), std::lround(x[1] / h), std::lround(x[2] / h)}; }

std::map<Key, double> interior_values(const GridField& g) {
  std::map<Key, double> out;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (g.mask[i] == NodeKind::interior) out[key_of(g.position(i), g.h)] = g.values[i];
  return out;
}

double ball_error(const GridField& g) {
  double worst = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (g.mask[i] != NodeKind::interior) continue;
    const Vec x = g.position(i);
    worst = std::max(worst, std::abs(g.values[i] - (1.0 - dot(x, x)) / 2.0));
  }
  return worst;
}

double annulus_error(const GridField& g, const RadialSolution& rs) {
  double worst = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (g.mask[i] == NodeKind::interior) worst = std::max(worst, std::abs(g.values[i] - rs.value_at(norm(g.position(i)))));
  return worst;
}

}  // namespace

TEST_CASE("grid classification") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const double h = 0.1;
  const GridField g = make_grid(ell, h);
  std::int64_t cut = 0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double d = ell.signed_distance(g.position(i));
    const NodeKind expect = d > 0.25 * h ? NodeKind::interior : d > 0.0 ? NodeKind::cut : NodeKind::exterior;
    CHECK(g.mask[i] == expect);
    if (g.mask[i] == NodeKind::exterior) CHECK(g.values[i] == 0.0);
    if (g.mask[i] == NodeKind::interior) CHECK(std::isfinite(g.values[i]));
  }
  for (const CutNode& c : g.cut) {
    ++cut;
    CHECK(g.mask[c.node] == NodeKind::cut);
    CHECK(g.values[c.node] == doctest::Approx(c.distance - c.mean_curvature * c.distance * c.distance / 4.0));
    for (int k = 0; k < 6; ++k) {
      CHECK(c.arm_fraction[k] > 0.0);
      CHECK(c.arm_fraction[k] <= 1.0);
    }
  }
  CHECK(cut == g.count(NodeKind::cut));
  CHECK(g.count(NodeKind::interior) + g.count(NodeKind::cut) + g.count(NodeKind::exterior) == g.size());
  // the padding ring is exterior
  CHECK(g.mask[0] == NodeKind::exterior);
  CHECK(g.mask[g.size() - 1] == NodeKind::exterior);
}

TEST_CASE("interpolation is exact for linear fields") {
  const Domain ball = Domain::ball(3, 1.0);
  GridField g = make_grid(ball, 0.1);
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (g.mask[i] != NodeKind::exterior) {
      const Vec x = g.position(i);
      g.values[i] = 1.0 + x[0] - 2.0 * x[1] + 0.5 * x[2];
    }
  const Vec p{0.123, -0.271, 0.05};
  CHECK(interpolate(g, p, -1.0) == doctest::Approx(1.0 + 0.123 + 0.542 + 0.025).epsilon(1e-13));
  CHECK(interpolate(g, Vec{0.99, 0.0, 0.0}, -1.0) == -1.0);
}

TEST_CASE("stencil structure") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const GridField g = make_grid(ell, 0.1);
  const Stencil st = build_stencil(g, ell);
  CHECK(st.size() == g.count(NodeKind::interior));
  CHECK(component_count(st) == 1);
  for (const Stencil::Special& sp : st.special) {
    CHECK(sp.arm > 0.0);
    CHECK(sp.arm <= 0.1);
    CHECK(sp.crossing == (sp.cut_node < 0));
  }
  for (std::int32_t u = 0; u < st.size(); ++u) {
    bool all = true;
    for (int q = 0; q < 6; ++q) all = all && st.nbr[u * 6 + q] >= 0;
    CHECK(static_cast<bool>(st.regular[u]) == all);
  }
  // crossings sit on the boundary
  for (std::int32_t u = 0; u < st.size(); ++u)
    for (int q = 0; q < 6; ++q) {
      const std::int32_t s = st.nbr[u * 6 + q];
      if (s >= 0 || !st.special[-s - 1].crossing) continue;
      Vec x = g.position(st.node[u]);
      x[q / 2] += (q % 2 ? -1.0 : 1.0) * st.special[-s - 1].arm;
      CHECK(std::abs(ell.signed_distance(x)) <= 1e-12);
    }

  const Domain split = Domain::annulus(3, 0.7, 1.0);
  const GridField gs = make_grid(split, 0.25);
  CHECK(component_count(build_stencil(gs, split)) > 1);
}

TEST_CASE("parallel kernels match the serial reference") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const GridField g = make_grid(ell, 1.0 / 16);
  const Stencil st = build_stencil(g, ell);
  const std::vector<double> bc = v_boundary_data(st, g);
  const std::int32_t m = st.size();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  std::vector<double> v(m), w(m), a(m), b(m);
  for (std::int32_t i = 0; i < m; ++i) {
    v[i] = U(rng);
    w[i] = U(rng) - 0.5;
  }
  auto close = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0, scale = 0.0;
    for (std::int32_t i = 0; i < m; ++i) {
      worst = std::max(worst, std::abs(x[i] - y[i]));
      scale = std::max(scale, std::abs(y[i]));
    }
    return worst <= 1e-13 * scale;
  };
  v_residual(st, bc.data(), v.data(), a.data(), Exec::parallel);
  reference::v_residual(st, bc.data(), v.data(), b.data());
  CHECK(close(a, b));
  v_jacobian_apply(st, bc.data(), v.data(), w.data(), a.data(), Exec::parallel);
  reference::v_jacobian_apply(st, bc.data(), v.data(), w.data(), b.data());
  CHECK(close(a, b));
  v_jacobian_diagonal(st, bc.data(), v.data(), a.data(), Exec::parallel);
  reference::v_jacobian_diagonal(st, bc.data(), v.data(), b.data());
  CHECK(close(a, b));

  const std::vector<double> ubc(st.special.size(), 50.0);
  std::vector<double> u(m);
  for (std::int32_t i = 0; i < m; ++i) u[i] = 10.0 * U(rng);
  u_residual(st, ubc.data(), 0.75, 5.0, u.data(), a.data(), Exec::parallel);
  reference::u_residual(st, ubc.data(), 0.75, 5.0, u.data(), b.data());
  CHECK(close(a, b));
  u_jacobian_apply(st, 0.75, 5.0, u.data(), w.data(), a.data(), Exec::parallel);
  reference::u_jacobian_apply(st, 0.75, 5.0, u.data(), w.data(), b.data());
  CHECK(close(a, b));

  const double d1 = dot(v.data(), w.data(), m, Exec::parallel);
  const double d2 = dot(v.data(), w.data(), m, Exec::serial);
  CHECK(d1 == d2);
  CHECK(d1 == doctest::Approx(reference::dot(v.data(), w.data(), m)).epsilon(1e-12));
}

TEST_CASE("Jacobian matches finite differences of the residual") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const GridField g = make_grid(ell, 1.0 / 8);
  const Stencil st = build_stencil(g, ell);
  const std::vector<double> bc = v_boundary_data(st, g);
  const std::int32_t m = st.size();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  std::vector<double> v(m), w(m), jw(m), fp(m), fm(m), vp(m), vm(m), diag(m), e(m, 0.0), je(m);
  for (std::int32_t i = 0; i < m; ++i) {
    v[i] = U(rng);
    w[i] = U(rng) - 0.5;
  }
  const double eps = 1e-6;
  for (std::int32_t i = 0; i < m; ++i) {
    vp[i] = v[i] + eps * w[i];
    vm[i] = v[i] - eps * w[i];
  }
  v_jacobian_apply(st, bc.data(), v.data(), w.data(), jw.data());
  v_residual(st, bc.data(), vp.data(), fp.data());
  v_residual(st, bc.data(), vm.data(), fm.data());
  for (std::int32_t i = 0; i < m; ++i) CHECK(jw[i] == doctest::Approx((fp[i] - fm[i]) / (2 * eps)).epsilon(1e-6));
  v_jacobian_diagonal(st, bc.data(), v.data(), diag.data());
  for (std::int32_t i : {0, m / 3, m / 2, m - 1}) {
    std::fill(e.begin(), e.end(), 0.0);
    e[i] = 1.0;
    v_jacobian_apply(st, bc.data(), v.data(), e.data(), je.data());
    CHECK(je[i] == doctest::Approx(diag[i]).epsilon(1e-13));
  }
}

TEST_CASE("BiCGSTAB on a diagonally dominant system") {
  const int m = 200;
  const LinearOperator A = [&](const double* x, double* y) {
    for (int i = 0; i < m; ++i) y[i] = 4.0 * x[i] - (i > 0 ? x[i - 1] : 0.0) - (i + 1 < m ? 2.0 * x[i + 1] : 0.0);
  };
  std::vector<double> b(m, 1.0), x(m, 0.0), inv(m, 0.25), r(m);
  const KrylovResult kr = bicgstab(A, inv, b, x, 1e-12, 500);
  CHECK(kr.converged);
  A(x.data(), r.data());
  for (int i = 0; i < m; ++i) CHECK(r[i] == doctest::Approx(1.0).epsilon(1e-10));
  std::vector<double> z(m, 0.0), x0(m, 3.0);
  CHECK(bicgstab(A, inv, z, x0, 1e-12, 10).converged);
  CHECK(x0[5] == 0.0);
}

TEST_CASE("residual of sampled fields") {
  const Domain ball = Domain::ball(3, 1.0);
  GridField g = make_grid(ball, 1.0 / 16);
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (g.mask[i] == NodeKind::interior) {
      const Vec x = g.position(i);
      g.values[i] = (1.0 - dot(x, x)) / 2.0;
    }
  CHECK(residual(g, ball) <= 1e-12);
  for (std::int64_t i = 0; i < g.size(); ++i) g.values[i] = 0.0;
  CHECK(residual(g, ball) == doctest::Approx(1.5));
}

TEST_CASE("ball profile is reproduced to rounding") {
  const Domain ball = Domain::ball(3, 1.0);
  for (double h : {1.0 / 8, 1.0 / 16}) {
    const VSolution s = solve_v(ball, h);
    CHECK(s.report.residual_inf <= 1e-10);
    CHECK(ball_error(s.field) <= 1e-10);
    CHECK(s.report.iterations == static_cast<int>(s.report.damping.size()));
    CHECK(s.report.residual_history.size() == s.report.damping.size() + 1);
    CHECK(s.report.unknowns == s.field.count(NodeKind::interior));
  }
}

TEST_CASE("annulus converges at second order to the radial solution") {
  const RadialSolution rs = solve_annulus(3, 0.5, 2.0);
  const Domain ann = Domain::annulus(3, 0.5, 2.0);
  const double e8 = annulus_error(solve_v(ann, 1.0 / 8).field, rs);
  const double e16 = annulus_error(solve_v(ann, 1.0 / 16).field, rs);
  MESSAGE("errors " << e8 << " " << e16);
  CHECK(e16 <= 2e-2);
  CHECK(e8 / e16 >= 3.0);
}

TEST_CASE("scaling equivariance") {
  // lattices h and 2h on Ω and 2Ω share nodes up to the factor 2
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const SolveOptions opts;
  const GridField a = solve_v(ell, 1.0 / 8, opts).field;
  const GridField b = solve_v(ell.scaled(2.0), 1.0 / 4, opts).field;
  REQUIRE(a.size() == b.size());
  for (std::int64_t i = 0; i < a.size(); ++i) {
    REQUIRE(a.mask[i] == b.mask[i]);
    CHECK(std::abs(b.values[i] - 2.0 * a.values[i]) <= 10.0 * opts.tol);
  }
}

TEST_CASE("monotone under domain inclusion") {
  const double h = 1.0 / 8;
  const SolveOptions opts;
  const auto small = interior_values(solve_v(Domain::annulus(3, 0.6, 1.8), h, opts).field);
  const auto mid = interior_values(solve_v(Domain::annulus(3, 0.5, 2.0), h, opts).field);
  const auto big = interior_values(solve_v(Domain::annulus(3, 0.4, 2.2), h, opts).field);
  int common = 0;
  for (const auto& [k, v] : small) {
    REQUIRE(mid.count(k));
    REQUIRE(big.count(k));
    CHECK(v <= mid.at(k) + 10.0 * opts.tol);
    CHECK(mid.at(k) <= big.at(k) + 10.0 * opts.tol);
    ++common;
  }
  CHECK(common > 1000);
}

TEST_CASE("convex domains: v below the distance, unit boundary slope") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  const double h = 1.0 / 16;
  const SolveOptions opts;
  const GridField g = solve_v(ell, h, opts).field;
  // least squares v = a d + b d^2 over the first few layers
  double s2 = 0, s3 = 0, s4 = 0, t1 = 0, t2 = 0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (g.mask[i] != NodeKind::interior) continue;
    const double d = ell.signed_distance(g.position(i));
    CHECK(g.values[i] <= d + 10.0 * opts.tol);
    if (d < 3.0 * h) {
      s2 += d * d;
      s3 += d * d * d;
      s4 += d * d * d * d;
      t1 += d * g.values[i];
      t2 += d * d * g.values[i];
    }
  }
  const double slope = (t1 * s4 - t2 * s3) / (s2 * s4 - s3 * s3);
  MESSAGE("boundary slope " << slope);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("axis permutations give the same field") {
  const double h = 1.0 / 8;
  const SolveOptions opts;
  const GridField a = solve_v(Domain::ellipsoid({1.0, 1.5, 2.0}), h, opts).field;
  const GridField b = solve_v(Domain::ellipsoid({1.5, 2.0, 1.0}), h, opts).field;
  const auto vb = interior_values(b);
  for (const auto& [k, v] : interior_values(a)) {
    // (x, y, z) in a is (y, z, x) in b
    const auto it = vb.find({k[1], k[2], k[0]});
    REQUIRE(it != vb.end());
    CHECK(std::abs(v - it->second) <= 10.0 * opts.tol);
  }
}

TEST_CASE("coarse start reaches the same solution") {
  const Domain ell = Domain::ellipsoid({1.0, 1.5, 2.0});
  SolveOptions opts;
  const VSolution direct = solve_v(ell, 1.0 / 16, opts);
  opts.coarse_levels = 1;
  const VSolution warm = solve_v(ell, 1.0 / 16, opts);
  for (std::int64_t i = 0; i < direct.field.size(); ++i)
    CHECK(std::abs(direct.field.values[i] - warm.field.values[i]) <= 10.0 * opts.tol);
  CHECK(warm.report.iterations <= direct.report.iterations);
}

TEST_CASE("four-dimensional ball") {
  const Domain ball = Domain::ball(4, 1.0);
  const VSolution s = solve_v(ball, 1.0 / 8);
  double worst = 0.0;
  for (std::int64_t i = 0; i < s.field.size(); ++i)
    if (s.field.mask[i] == NodeKind::interior) {
      const Vec x = s.field.position(i);
      worst = std::max(worst, std::abs(s.field.values[i] - (1.0 - dot(x, x)) / 2.0));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("solver errors") {
  SolveOptions opts;
  opts.tol = 0.0;
  CHECK_THROWS_AS(solve_v(Domain::ball(3, 1.0), 0.25, opts), PreconditionError);
  CHECK_THROWS_AS(solve_v(Domain::annulus(3, 0.85, 1.0), 0.3), PreconditionError);
  CHECK_THROWS_AS(solve_v(Domain::annulus(3, 0.7, 1.0), 0.25), PreconditionError);

  opts = SolveOptions{};
  opts.max_newton = 1;
  try {
    solve_v(Domain::ellipsoid({1.0, 1.5, 2.0}), 1.0 / 8, opts);
    FAIL("expected SolveError");
  } catch (const SolveError& e) {
    CHECK(e.report().residual_history.size() == 2);
    CHECK(e.report().residual_inf > opts.tol);
    CHECK(e.report().wall_seconds > 0.0);
  }
}

TEST_CASE("truncated u problem") {
  const Domain ball = Domain::ball(3, 1.0);
  const double h = 1.0 / 8;
  const USolution u2 = solve_u_truncated(ball, h, 1e2);
  const USolution u3 = solve_u_truncated(ball, h, 1e3);
  REQUIRE(u2.field.size() == u3.field.size());
  for (std::int64_t i = 0; i < u2.field.size(); ++i)
    if (u2.field.mask[i] == NodeKind::interior) {
      CHECK(u2.field.values[i] > 0.0);
      CHECK(u2.field.values[i] <= u3.field.values[i]);
    }
  const GridField v = v_from_u(u3.field);
  for (std::int64_t i = 0; i < v.size(); ++i)
    if (v.mask[i] == NodeKind::interior) CHECK(v.values[i] == doctest::Approx(1.0 / u3.field.values[i] / u3.field.values[i]));

  CHECK_THROWS_AS(solve_u_truncated(ball, h, 1e200), PreconditionError);
  CHECK_THROWS_AS(solve_u_truncated(ball, h, -1.0), PreconditionError);
}
