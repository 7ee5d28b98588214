#include "ylab/pde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "ylab/krylov.hpp"
#include "ylab/stencil.hpp"

namespace ylab {

namespace {

struct NewtonProblem {
  std::function<void(const double* x, double* f)> residual;
  std::function<void(const double* x, const double* w, double* out)> jacobian;
  std::function<void(const double* x, double* diag)> diagonal;
  bool keep_positive = true;
  double tol = 1e-10;
  // Optional per-node size of the residual terms; when set, convergence is
  // max |f_i| / scale_i <= tol instead of max |f_i| <= tol.
  std::function<double(const double* x, std::int64_t i)> scale;
};

double measure(const NewtonProblem& prob, const std::vector<double>& x, const std::vector<double>& f) {
  const auto m = static_cast<std::int64_t>(f.size());
  if (!prob.scale) return max_abs(f.data(), m);
  double worst = 0.0;
  for (std::int64_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(f[i]) / prob.scale(x.data(), i));
  return worst;
}

double norm2(const std::vector<double>& f, Exec exec) {
  return std::sqrt(dot(f.data(), f.data(), static_cast<std::int64_t>(f.size()), exec));
}

void newton(const NewtonProblem& prob, std::vector<double>& x, const SolveOptions& opts, SolveReport& rep) {
  const auto m = static_cast<std::int64_t>(x.size());
  std::vector<double> f(m), trial(m), ftrial(m), diag(m), rhs(m), step(m);
  prob.residual(x.data(), f.data());
  double fnorm = norm2(f, opts.exec);
  int damped_run = 0;
  double run_start_norm = fnorm;
  for (int it = 0;; ++it) {
    rep.residual_inf = max_abs(f.data(), m);
    rep.residual_history.push_back(rep.residual_inf);
    rep.iterations = it;
    if (measure(prob, x, f) <= prob.tol) return;
    if (it == opts.max_newton) throw SolveError("Newton: no convergence within max_newton steps", rep);

    prob.diagonal(x.data(), diag.data());
    for (std::int64_t i = 0; i < m; ++i) {
      diag[i] = diag[i] != 0.0 ? 1.0 / diag[i] : 1.0;
      rhs[i] = -f[i];
    }
    std::fill(step.begin(), step.end(), 0.0);
    const LinearOperator J = [&](const double* w, double* out) { prob.jacobian(x.data(), w, out); };
    const KrylovResult kr = bicgstab(J, diag, rhs, step, opts.krylov_rtol, opts.max_krylov, opts.exec);
    rep.krylov_iterations += kr.iterations;

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving, lambda *= 0.5) {
      bool positive = true;
      for (std::int64_t i = 0; i < m; ++i) {
        trial[i] = x[i] + lambda * step[i];
        if (prob.keep_positive && !(trial[i] > 0.0)) positive = false;
      }
      if (!positive) continue;
      prob.residual(trial.data(), ftrial.data());
      const double tnorm = norm2(ftrial, opts.exec);
      if (tnorm < (1.0 - 1e-4 * lambda) * fnorm) {
        x.swap(trial);
        f.swap(ftrial);
        fnorm = tnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      rep.residual_inf = max_abs(f.data(), m);
      throw SolveError("Newton: line search failed", rep);
    }
    rep.damping.push_back(lambda);
    if (lambda < 1.0) {
      if (damped_run++ == 0) run_start_norm = fnorm / (1.0 - 1e-4 * lambda);
      if (damped_run >= opts.stall_steps && fnorm > 0.5 * run_start_norm) {
        rep.residual_inf = max_abs(f.data(), m);
        throw SolveError("Newton: residual plateau over damped steps", rep);
      }
    } else {
      damped_run = 0;
    }
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Stencil checked_stencil(const GridField& field, const Domain& domain) {
  Stencil st = build_stencil(field, domain);
  if (st.size() == 0) throw PreconditionError("solve: no interior nodes at this mesh width");
  if (component_count(st) != 1) throw PreconditionError("solve: interior node set is disconnected at this mesh width");
  return st;
}

}  // namespace

VSolution solve_v(const Domain& domain, double h, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw PreconditionError("solve_v: tol must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  VSolution out;
  out.field = make_grid(domain, h, opts.safety);
  GridField& g = out.field;
  const Stencil st = checked_stencil(g, domain);
  const std::vector<double> bc = v_boundary_data(st, g);

  std::vector<double> x(st.size());
  GridField coarse;
  bool have_coarse = false;
  if (opts.coarse_levels > 0) {
    SolveOptions copts = opts;
    copts.coarse_levels = opts.coarse_levels - 1;
    try {
      coarse = solve_v(domain, 2.0 * h, copts).field;
      have_coarse = true;
    } catch (const Error&) {
      // too coarse to resolve the domain; fall back to the distance start
    }
  }
#pragma omp parallel for schedule(static)
  for (std::int32_t u = 0; u < st.size(); ++u) {
    const Vec p = g.position(st.node[u]);
    const double d = domain.signed_distance(p);
    const double guess = have_coarse ? interpolate(coarse, p, d) : d;
    x[u] = guess > 0.0 ? guess : d;
  }

  NewtonProblem prob;
  prob.tol = opts.tol;
  prob.residual = [&](const double* v, double* f) { v_residual(st, bc.data(), v, f, opts.exec); };
  prob.jacobian = [&](const double* v, const double* w, double* o) {
    v_jacobian_apply(st, bc.data(), v, w, o, opts.exec);
  };
  prob.diagonal = [&](const double* v, double* d) { v_jacobian_diagonal(st, bc.data(), v, d, opts.exec); };

  out.report.h = h;
  out.report.unknowns = st.size();
  try {
    newton(prob, x, opts, out.report);
  } catch (SolveError& e) {
    SolveReport rep = e.report();
    rep.wall_seconds = seconds_since(t0);
    throw SolveError(e.what(), rep);
  }
  for (std::int32_t u = 0; u < st.size(); ++u) g.values[st.node[u]] = x[u];
  out.report.wall_seconds = seconds_since(t0);
  return out;
}

USolution solve_u_truncated(const Domain& domain, double h, double M, const SolveOptions& opts) {
  if (!(M > 0.0) || !std::isfinite(M)) throw PreconditionError("solve_u_truncated: M must be positive");
  const int n = domain.dim();
  const double c = n * (n - 2) / 4.0;
  const double p = (n + 2.0) / (n - 2.0);
  // c M^p and its derivative must stay well inside the double range
  if (std::log(c) + p * std::log(M) > 0.5 * std::log(std::numeric_limits<double>::max()))
    throw PreconditionError("solve_u_truncated: M^((n+2)/(n-2)) overflows");
  const auto t0 = std::chrono::steady_clock::now();
  USolution out;
  out.field = make_grid(domain, h, opts.safety);
  GridField& g = out.field;
  const Stencil st = checked_stencil(g, domain);
  const std::vector<double> bc(st.special.size(), M);
  for (const CutNode& cn : g.cut) g.values[cn.node] = M;

  // u = M is a supersolution; Newton descends monotonically from it, by a
  // factor of about (p-1)/p per step while the power term dominates
  std::vector<double> x(st.size(), M);
  NewtonProblem prob;
  prob.tol = opts.tol;
  const double lap_scale = 2.0 * n / (h * h);
  prob.scale = [&](const double* u, std::int64_t i) { return c * std::pow(u[i], p) + lap_scale * u[i]; };
  SolveOptions uopts = opts;
  uopts.max_newton = opts.max_newton + static_cast<int>(std::ceil(std::log(std::max(M, 1.0)) / std::log(p / (p - 1.0))));
  prob.residual = [&](const double* u, double* f) { u_residual(st, bc.data(), c, p, u, f, opts.exec); };
  prob.jacobian = [&](const double* u, const double* w, double* o) {
    u_jacobian_apply(st, c, p, u, w, o, opts.exec);
  };
  prob.diagonal = [&](const double* u, double* d) { u_jacobian_diagonal(st, c, p, u, d, opts.exec); };

  out.report.h = h;
  out.report.unknowns = st.size();
  try {
    newton(prob, x, uopts, out.report);
  } catch (SolveError& e) {
    SolveReport rep = e.report();
    rep.wall_seconds = seconds_since(t0);
    throw SolveError(e.what(), rep);
  }
  for (std::int32_t u = 0; u < st.size(); ++u) g.values[st.node[u]] = x[u];
  out.report.wall_seconds = seconds_since(t0);
  return out;
}

GridField v_from_u(const GridField& u) {
  GridField v = u;
  const double e = -2.0 / (u.n - 2);
  for (std::int64_t i = 0; i < v.size(); ++i)
    v.values[i] = v.mask[i] == NodeKind::exterior ? 0.0 : std::pow(u.values[i], e);
  return v;
}

std::vector<double> residual_values(const GridField& field, const Domain& domain) {
  const Stencil st = build_stencil(field, domain);
  const std::vector<double> bc = v_boundary_data(st, field);
  std::vector<double> x(st.size()), f(st.size());
  for (std::int32_t u = 0; u < st.size(); ++u) x[u] = field.values[st.node[u]];
  v_residual(st, bc.data(), x.data(), f.data());
  std::vector<double> out(field.size(), 0.0);
  for (std::int32_t u = 0; u < st.size(); ++u) out[st.node[u]] = f[u];
  return out;
}

double residual(const GridField& field, const Domain& domain) {
  const std::vector<double> r = residual_values(field, domain);
  return max_abs(r.data(), static_cast<std::int64_t>(r.size()));
}

}  // namespace ylab
