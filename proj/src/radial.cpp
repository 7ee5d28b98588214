#include "ylab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "ylab/format.hpp"

namespace ylab {

namespace {

// Three-point derivative weights on unequal arms: b = x_k - x_{k-1}, a = x_{k+1} - x_k.
struct Weights {
  double m, c, p;
};

Weights first_derivative(double a, double b) {
  const double den = a * b * (a + b);
  return {-a * a / den, (a * a - b * b) / den, b * b / den};
}

Weights second_derivative(double a, double b) {
  const double den = a * b * (a + b);
  return {2.0 * a / den, -2.0 * (a + b) / den, 2.0 * b / den};
}

struct NodeEval {
  double f = 0.0;      // residual
  double scale = 0.0;  // sum of absolute term sizes
  double jm = 0.0, jc = 0.0, jp = 0.0;
  double d1 = 0.0, d2 = 0.0;
};

// Residual and tridiagonal Jacobian row of v(v'' + (n-1)v'/r) - (n/2)(v'^2 - 1).
NodeEval eval_node(int n, double x, double xm, double xp, double vm, double vc, double vp) {
  const double a = xp - x;
  const double b = x - xm;
  const Weights w1 = first_derivative(a, b);
  const Weights w2 = second_derivative(a, b);
  NodeEval e;
  e.d1 = w1.m * vm + w1.c * vc + w1.p * vp;
  e.d2 = w2.m * vm + w2.c * vc + w2.p * vp;
  const double g = (n - 1) / x;
  const double lap = e.d2 + g * e.d1;
  e.f = vc * lap - 0.5 * n * (e.d1 * e.d1 - 1.0);
  e.scale = std::abs(vc) * (std::abs(w2.m * vm) + std::abs(w2.c * vc) + std::abs(w2.p * vp) +
                            g * (std::abs(w1.m * vm) + std::abs(w1.c * vc) + std::abs(w1.p * vp))) +
            0.5 * n * (e.d1 * e.d1 + 1.0);
  e.jm = vc * (w2.m + g * w1.m) - n * e.d1 * w1.m;
  e.jp = vc * (w2.p + g * w1.p) - n * e.d1 * w1.p;
  e.jc = lap + vc * (w2.c + g * w1.c) - n * e.d1 * w1.c;
  return e;
}

// Node at r = 0 of a ball: v'(0) = 0 and v'/r -> v''(0), with the mirror node v_{-1} = v_1.
NodeEval eval_center(int n, double x1, double v0, double v1) {
  NodeEval e;
  const double c = 2.0 / (x1 * x1);
  e.d1 = 0.0;
  e.d2 = c * (v1 - v0);
  e.f = v0 * n * e.d2 + 0.5 * n;
  e.scale = std::abs(v0) * n * c * (std::abs(v1) + std::abs(v0)) + 0.5 * n;
  e.jc = n * e.d2 - v0 * n * c;
  e.jp = v0 * n * c;
  e.jm = 0.0;
  return e;
}

// Thomas algorithm; sub[0] and sup[last] unused.
bool solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                       std::vector<double>& rhs) {
  const std::size_t m = diag.size();
  for (std::size_t i = 1; i < m; ++i) {
    if (diag[i - 1] == 0.0) return false;
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[m - 1] == 0.0) return false;
  rhs[m - 1] /= diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
  return true;
}

// Collocation problem on nodes x[0..N+1]. Unknown nodes are [first, last];
// all others carry fixed values. If `center` is set, node 0 is r = 0 and unknown.
struct Collocation {
  int n;
  std::vector<double> x;
  std::vector<double> v;
  int first;
  int last;
  bool center;

  NodeEval eval(int k) const {
    if (center && k == 0) return eval_center(n, x[1], v[0], v[1]);
    return eval_node(n, x[k], x[k - 1], x[k + 1], v[k - 1], v[k], v[k + 1]);
  }

  void residual(std::vector<double>& f, double& norm2, double& max_abs, double& max_rel) const {
    f.assign(last - first + 1, 0.0);
    norm2 = max_abs = max_rel = 0.0;
    for (int k = first; k <= last; ++k) {
      const NodeEval e = eval(k);
      f[k - first] = e.f;
      norm2 += e.f * e.f;
      max_abs = std::max(max_abs, std::abs(e.f));
      max_rel = std::max(max_rel, std::abs(e.f) / e.scale);
    }
    norm2 = std::sqrt(norm2);
  }
};

int newton(Collocation& col, const RadialOptions& opts, double& max_abs, double& max_rel) {
  const int m = col.last - col.first + 1;
  std::vector<double> f, history;
  double fnorm = 0.0;
  col.residual(f, fnorm, max_abs, max_rel);
  history.push_back(fnorm);
  // Near-boundary rows have huge term sizes, so the scaled test passes while
  // absolute residuals are still large; a few full steps past it fix that.
  int polish = 0;
  for (int it = 0; it < opts.max_newton; ++it) {
    if (max_rel <= opts.tol && polish++ == 3) return it;
    std::vector<double> sub(m), diag(m), sup(m), rhs(m);
    for (int k = col.first; k <= col.last; ++k) {
      const NodeEval e = col.eval(k);
      const int i = k - col.first;
      sub[i] = e.jm;
      diag[i] = e.jc;
      sup[i] = e.jp;
      rhs[i] = -e.f;
    }
    if (!solve_tridiagonal(sub, diag, sup, rhs))
      throw RadialSolveError("radial Newton: singular Jacobian", history);

    const std::vector<double> base = col.v;
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving, lambda *= 0.5) {
      bool positive = true;
      for (int k = col.first; k <= col.last; ++k) {
        col.v[k] = base[k] + lambda * rhs[k - col.first];
        if (!(col.v[k] > 0.0)) positive = false;
      }
      if (!positive) continue;
      double trial_norm = 0.0, trial_abs = 0.0, trial_rel = 0.0;
      std::vector<double> trial_f;
      col.residual(trial_f, trial_norm, trial_abs, trial_rel);
      const bool better = trial_norm < (1.0 - 1e-4 * lambda) * fnorm;
      if (better || (polish == 0 && trial_rel <= opts.tol)) {
        fnorm = trial_norm;
        max_abs = trial_abs;
        max_rel = trial_rel;
        accepted = true;
        break;
      }
    }
    history.push_back(fnorm);
    if (!accepted) {
      col.v = base;
      if (polish > 0 || max_rel <= 100.0 * opts.tol) return it;  // rounding floor reached
      throw RadialSolveError("radial Newton: line search failed", history);
    }
  }
  if (max_rel <= opts.tol) return opts.max_newton;
  throw RadialSolveError("radial Newton: no convergence within max_newton", history);
}

// Fills v', v'', residual at every node from the nodal values, using the
// expansion values at boundary nodes.
void finish(RadialSolution& sol, const Collocation& col) {
  const int total = static_cast<int>(sol.r.size());
  sol.dv.assign(total, 0.0);
  sol.d2v.assign(total, 0.0);
  sol.residual.assign(total, 0.0);
  for (int k = 0; k < total; ++k) {
    if (k == total - 1) {
      sol.dv[k] = -1.0;
      sol.d2v[k] = -1.0 / sol.outer;
    } else if (k == 0 && sol.kind == RadialKind::annulus) {
      sol.dv[k] = 1.0;
      sol.d2v[k] = 1.0 / sol.inner;
    } else {
      const NodeEval e = col.eval(k);
      sol.dv[k] = e.d1;
      sol.d2v[k] = e.d2;
      sol.residual[k] = e.f;
    }
  }
}

std::vector<double> chebyshev_nodes(double lo, double hi, int count) {
  std::vector<double> x(count);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int k = 0; k < count; ++k) x[k] = mid - half * std::cos(std::numbers::pi * k / (count - 1));
  x.front() = lo;
  x.back() = hi;
  return x;
}

// Clustered at R only: x_k = R sin(pi k / (2(count-1))).
std::vector<double> ball_nodes(double radius, int count) {
  std::vector<double> x(count);
  for (int k = 0; k < count; ++k) x[k] = radius * std::sin(0.5 * std::numbers::pi * k / (count - 1));
  x.front() = 0.0;
  x.back() = radius;
  return x;
}

void check_dimension(int n) {
  if (n < 3) throw PreconditionError("radial: dimension must be at least 3");
}

}  // namespace

double RadialSolution::value_at(double radius) const {
  radius = std::clamp(radius, r.front(), r.back());
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  std::size_t k = it == r.end() ? r.size() - 2 : static_cast<std::size_t>(it - r.begin()) - 1;
  k = std::min(k, r.size() - 2);
  const double h = r[k + 1] - r[k];
  const double t = (radius - r[k]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * v[k] + h10 * h * dv[k] + h01 * v[k + 1] + h11 * h * dv[k + 1];
}

double RadialSolution::derivative_at(double radius) const {
  radius = std::clamp(radius, r.front(), r.back());
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  std::size_t k = it == r.end() ? r.size() - 2 : static_cast<std::size_t>(it - r.begin()) - 1;
  k = std::min(k, r.size() - 2);
  const double h = r[k + 1] - r[k];
  const double t = (radius - r[k]) / h;
  const double d00 = 6 * t * t - 6 * t, d10 = 3 * t * t - 4 * t + 1;
  const double d01 = -6 * t * t + 6 * t, d11 = 3 * t * t - 2 * t;
  return (d00 * v[k] + d01 * v[k + 1]) / h + d10 * dv[k] + d11 * dv[k + 1];
}

double RadialSolution::max_value() const {
  const auto it = std::max_element(v.begin(), v.end());
  const std::size_t k = static_cast<std::size_t>(it - v.begin());
  if (k == 0 || k + 1 == v.size()) return *it;
  // vertex of the parabola through the three nodes around the largest value
  const double x0 = r[k - 1] - r[k], x2 = r[k + 1] - r[k];
  const double f0 = v[k - 1] - v[k], f2 = v[k + 1] - v[k];
  const double den = x0 * x2 * (x0 - x2);
  const double a = (x2 * f0 - x0 * f2) / den;
  const double b = (x0 * x0 * f2 - x2 * x2 * f0) / den;
  if (!(a < 0.0)) return *it;
  return v[k] - b * b / (4.0 * a);
}

RadialSolution solve_ball(int n, double radius, int nodes) {
  check_dimension(n);
  if (!(radius > 0.0)) throw PreconditionError("solve_ball: radius must be positive");
  RadialSolution sol;
  sol.n = n;
  sol.kind = RadialKind::ball;
  sol.inner = 0.0;
  sol.outer = radius;
  sol.r = ball_nodes(radius, nodes + 2);
  const std::size_t total = sol.r.size();
  sol.v.resize(total);
  sol.dv.resize(total);
  sol.d2v.assign(total, -1.0 / radius);
  sol.residual.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    const double r = sol.r[k];
    sol.v[k] = (radius * radius - r * r) / (2.0 * radius);
    sol.dv[k] = -r / radius;
    const double dv_over_r = k == 0 ? sol.d2v[k] : sol.dv[k] / r;
    sol.residual[k] = sol.v[k] * (sol.d2v[k] + (n - 1) * dv_over_r) - 0.5 * n * (sol.dv[k] * sol.dv[k] - 1.0);
    if (k + 1 < total) sol.max_residual = std::max(sol.max_residual, std::abs(sol.residual[k]));
  }
  // exact: (R^2 - r^2)/(2R) = d - d^2/(2R)
  EndpointFit fit;
  fit.radius = radius;
  fit.mean_curvature = (n - 1) / radius;
  fit.slope = 1.0;
  fit.quad_coeff = -0.5 / radius;
  fit.expected_quad = -0.5 / radius;
  fit.nodes_used = static_cast<int>(total);
  sol.endpoint_data = {fit};
  return sol;
}

RadialSolution solve_ball_collocation(int n, double radius, const RadialOptions& opts) {
  check_dimension(n);
  if (!(radius > 0.0)) throw PreconditionError("solve_ball_collocation: radius must be positive");
  if (opts.nodes < 8) throw PreconditionError("solve_ball_collocation: too few nodes");
  RadialSolution sol;
  sol.n = n;
  sol.kind = RadialKind::ball;
  sol.outer = radius;
  sol.r = ball_nodes(radius, opts.nodes + 2);
  const int total = static_cast<int>(sol.r.size());

  Collocation col{n, sol.r, std::vector<double>(total), 0, total - 3, true};
  for (int k = 0; k < total; ++k) col.v[k] = radius - sol.r[k];  // distance function
  const double eps = radius - sol.r[total - 2];
  col.v[total - 2] = eps - eps * eps / (2.0 * radius);
  col.v[total - 1] = 0.0;

  sol.newton_iterations = newton(col, opts, sol.max_residual, sol.max_scaled_residual);
  sol.v = col.v;
  finish(sol, col);
  sol.endpoint_data = boundary_fit(sol);
  return sol;
}

namespace {

// Annulus collocation from a starting profile given at the same Chebyshev
// node indices; the closure nodes are reset from the expansion.
RadialSolution annulus_from(int n, double inner, double outer, const RadialOptions& opts,
                            const std::vector<double>* start) {
  RadialSolution sol;
  sol.n = n;
  sol.kind = RadialKind::annulus;
  sol.inner = inner;
  sol.outer = outer;
  sol.r = chebyshev_nodes(inner, outer, opts.nodes + 2);
  const int total = static_cast<int>(sol.r.size());

  Collocation col{n, sol.r, std::vector<double>(total), 2, total - 3, false};
  if (start)
    col.v = *start;
  else
    for (int k = 0; k < total; ++k) col.v[k] = std::min(sol.r[k] - inner, outer - sol.r[k]);
  // expansion closure: inner sphere has H = -(n-1)/r0, outer H = (n-1)/R
  const double e_in = sol.r[1] - inner;
  const double e_out = outer - sol.r[total - 2];
  col.v[0] = 0.0;
  col.v[1] = e_in + e_in * e_in / (2.0 * inner);
  col.v[total - 2] = e_out - e_out * e_out / (2.0 * outer);
  col.v[total - 1] = 0.0;

  sol.newton_iterations = newton(col, opts, sol.max_residual, sol.max_scaled_residual);
  sol.v = col.v;
  finish(sol, col);
  sol.endpoint_data = boundary_fit(sol);
  return sol;
}

}  // namespace

RadialSolution solve_annulus(int n, double inner, double outer, const RadialOptions& opts) {
  check_dimension(n);
  if (!(inner > 0.0 && inner < outer)) throw PreconditionError("solve_annulus: requires 0 < r0 < R");
  if (!(opts.tol > 0.0)) throw PreconditionError("solve_annulus: tol must be positive");
  if (opts.nodes < 8) throw PreconditionError("solve_annulus: too few nodes");
  try {
    return annulus_from(n, inner, outer, opts, nullptr);
  } catch (const RadialSolveError& direct) {
    // Thin annuli: walk r0 down from a moderate hole with warm starts.
    double r0 = std::max(inner, 0.1 * outer);
    RadialSolution prev;
    try {
      prev = annulus_from(n, r0, outer, opts, nullptr);
    } catch (const RadialSolveError&) {
      throw direct;
    }
    int total_iterations = prev.newton_iterations;
    while (r0 > inner) {
      const double next = std::max(inner, 0.8 * r0);
      const double stretch = (outer - next) / (outer - r0);
      std::vector<double> start(prev.v.size());
      for (std::size_t k = 0; k < start.size(); ++k) start[k] = stretch * prev.v[k];
      prev = annulus_from(n, next, outer, opts, &start);
      total_iterations += prev.newton_iterations;
      r0 = next;
    }
    prev.newton_iterations = total_iterations;
    return prev;
  }
}

TruncatedRadial solve_ball_truncated(int n, double radius, double M, int nodes) {
  check_dimension(n);
  if (!(radius > 0.0)) throw PreconditionError("solve_ball_truncated: radius must be positive");
  if (!(M > 0.0) || !std::isfinite(M)) throw PreconditionError("solve_ball_truncated: M must be positive");
  if (nodes < 8) throw PreconditionError("solve_ball_truncated: too few nodes");
  const double c = n * (n - 2) / 4.0;
  const double p = (n + 2.0) / (n - 2.0);
  if (std::log(c) + p * std::log(M) > 300.0) throw PreconditionError("solve_ball_truncated: M^p overflows");

  TruncatedRadial out;
  out.n = n;
  out.M = M;
  // Geometric grading from the boundary: first gap (16/nodes) of the layer
  // width v(R) = M^(-2/(n-2)), ratio 1 + 16/nodes, capped at R/nodes, then
  // uniform. Much finer gaps only amplify rounding in the second differences.
  {
    const double cap = radius / nodes;
    const double ratio = 1.0 + 16.0 / nodes;
    double gap = std::min(cap, std::pow(M, -2.0 / (n - 2)) * radius * 16.0 / nodes);
    std::vector<double> from_edge{0.0};
    while (gap < cap) {
      from_edge.push_back(from_edge.back() + gap);
      gap *= ratio;
    }
    const double rest = radius - from_edge.back();
    if (rest <= 0.0) throw PreconditionError("solve_ball_truncated: too few nodes for this M");
    const int uniform = std::max(2, static_cast<int>(std::ceil(rest / cap)));
    for (int k = 0; k < uniform; ++k) out.r.push_back(rest * k / uniform);
    for (auto it = from_edge.rbegin(); it != from_edge.rend(); ++it) out.r.push_back(radius - *it);
  }
  const int total = static_cast<int>(out.r.size());
  const int m = total - 1;  // unknowns 0..total-2; last node is u = M
  std::vector<double> u(total, M), f(m), sub(m), diag(m), sup(m), rhs(m);
  const std::vector<double>& x = out.r;

  auto assemble = [&](bool jacobian) {
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
      double lap, jm = 0.0, jc, jp;
      if (k == 0) {
        // symmetric node: Δu -> n u''(0), mirror u_{-1} = u_1
        const double w = 2.0 * n / (x[1] * x[1]);
        lap = w * (u[1] - u[0]);
        jc = -w;
        jp = w;
      } else {
        const double a = x[k + 1] - x[k], b = x[k] - x[k - 1];
        const Weights w1 = first_derivative(a, b), w2 = second_derivative(a, b);
        const double g = (n - 1) / x[k];
        lap = (w2.m + g * w1.m) * u[k - 1] + (w2.c + g * w1.c) * u[k] + (w2.p + g * w1.p) * u[k + 1];
        jm = w2.m + g * w1.m;
        jc = w2.c + g * w1.c;
        jp = w2.p + g * w1.p;
      }
      const double power = c * std::pow(u[k], p);
      f[k] = lap - power;
      worst = std::max(worst, std::abs(f[k]) / (power + std::abs(jc * u[k])));
      if (jacobian) {
        sub[k] = jm;
        diag[k] = jc - c * p * std::pow(u[k], p - 1.0);
        sup[k] = k + 1 < m ? jp : 0.0;
        rhs[k] = -f[k];
      }
    }
    return worst;
  };

  // u = M is a supersolution and the nonlinearity is convex, so plain
  // Newton decreases monotonically to the solution
  const int max_iter = 100 + static_cast<int>(std::ceil(std::log(std::max(M, 1.0)) / std::log(p / (p - 1.0))));
  int it = 0;
  // Updates bottom out at a rounding floor (~1e-10 relative on fine grids);
  // once below 1e-8 Newton has converged quadratically and three more steps
  // reach that floor.
  int quiet = 0;
  for (; it < max_iter && quiet < 3; ++it) {
    assemble(true);
    if (!solve_tridiagonal(sub, diag, sup, rhs)) throw RadialSolveError("truncated radial Newton: singular Jacobian", {});
    double change = 0.0;
    for (int k = 0; k < m; ++k) {
      u[k] += rhs[k];
      change = std::max(change, std::abs(rhs[k]) / u[k]);
    }
    if (quiet > 0 || change <= 1e-8) ++quiet;
  }
  if (it == max_iter) throw RadialSolveError("truncated radial Newton: no convergence", {});
  out.newton_iterations = it;
  out.u = u;
  out.v.resize(total);
  for (int k = 0; k < total; ++k) out.v[k] = std::pow(u[k], -2.0 / (n - 2));
  return out;
}

double truncated_center_value(int n, double radius, double M, int nodes) {
  const double coarse = solve_ball_truncated(n, radius, M, nodes).v.front();
  const double fine = solve_ball_truncated(n, radius, M, 2 * nodes).v.front();
  return (4.0 * fine - coarse) / 3.0;
}

RadialCurvature curvature_radial(const RadialSolution& sol) {
  const std::size_t total = sol.r.size();
  const int n = sol.n;
  RadialCurvature c;
  c.K_rad_tan.resize(total);
  c.K_tan_tan.resize(total);
  c.Ric_rad.resize(total);
  c.Ric_tan.resize(total);
  c.trace_defect.resize(total);
  c.max_ricci = -INFINITY;
  c.min_ricci = INFINITY;
  c.min_sectional = INFINITY;
  c.max_sectional = -INFINITY;
  for (std::size_t k = 0; k < total; ++k) {
    const double v = sol.v[k], v1 = sol.dv[k], v2 = sol.d2v[k];
    // r = 0 only occurs at a ball center, where v'/r -> v''(0)
    const double v1_over_r = sol.r[k] == 0.0 ? v2 : v1 / sol.r[k];
    c.K_rad_tan[k] = v * v2 + v * v1_over_r - v1 * v1;
    c.K_tan_tan[k] = 2.0 * v * v1_over_r - v1 * v1;
    c.Ric_rad[k] = (n - 2) * v * v2 - 0.5 * (n - 2) * v1 * v1 - 0.5 * n;
    c.Ric_tan[k] = (n - 2) * v * v1_over_r - 0.5 * (n - 2) * v1 * v1 - 0.5 * n;
    c.trace_defect[k] = std::abs(c.Ric_rad[k] + (n - 1) * c.Ric_tan[k] + n * (n - 1.0));
    const double hi = std::max(c.Ric_rad[k], c.Ric_tan[k]);
    if (hi > c.max_ricci) {
      c.max_ricci = hi;
      c.argmax_radius = sol.r[k];
    }
    c.min_ricci = std::min({c.min_ricci, c.Ric_rad[k], c.Ric_tan[k]});
    c.min_sectional = std::min({c.min_sectional, c.K_rad_tan[k], c.K_tan_tan[k]});
    c.max_sectional = std::max({c.max_sectional, c.K_rad_tan[k], c.K_tan_tan[k]});
  }
  return c;
}

std::vector<EndpointFit> boundary_fit(const RadialSolution& sol, const FitOptions& opts) {
  const int n = sol.n;
  const double extent = sol.outer - sol.inner;
  const double window = opts.window_fraction * extent;

  auto fit = [&](double radius, double H, auto distance_of) {
    // least squares v = a d + b d^2 + c d^3 with columns scaled by the window
    double ata[3][3] = {}, atb[3] = {};
    int used = 0;
    for (std::size_t k = 0; k < sol.r.size(); ++k) {
      const double d = distance_of(sol.r[k]);
      if (d < 0.0 || d > window) continue;
      const double s = d / window;
      const double col[3] = {s, s * s, s * s * s};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) ata[i][j] += col[i] * col[j];
        atb[i] += col[i] * sol.v[k];
      }
      ++used;
    }
    if (used < opts.min_nodes) throw PreconditionError("boundary_fit: too few nodes in fit window");
    // Gaussian elimination with partial pivoting on the 3x3 normal equations
    double m[3][4];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = ata[i][j];
      m[i][3] = atb[i];
    }
    for (int p = 0; p < 3; ++p) {
      int piv = p;
      for (int i = p + 1; i < 3; ++i)
        if (std::abs(m[i][p]) > std::abs(m[piv][p])) piv = i;
      std::swap(m[p], m[piv]);
      for (int i = p + 1; i < 3; ++i) {
        const double f = m[i][p] / m[p][p];
        for (int j = p; j < 4; ++j) m[i][j] -= f * m[p][j];
      }
    }
    double coef[3];
    for (int i = 2; i >= 0; --i) {
      double s = m[i][3];
      for (int j = i + 1; j < 3; ++j) s -= m[i][j] * coef[j];
      coef[i] = s / m[i][i];
    }
    EndpointFit f;
    f.radius = radius;
    f.mean_curvature = H;
    f.slope = coef[0] / window;
    f.quad_coeff = coef[1] / (window * window);
    f.expected_quad = -H / (2.0 * (n - 1));
    f.nodes_used = used;
    return f;
  };

  std::vector<EndpointFit> fits;
  if (sol.kind == RadialKind::annulus)
    fits.push_back(fit(sol.inner, -(n - 1) / sol.inner, [&](double r) { return r - sol.inner; }));
  fits.push_back(fit(sol.outer, (n - 1) / sol.outer, [&](double r) { return sol.outer - r; }));
  return fits;
}

void write_radial_csv(std::ostream& os, const RadialSolution& sol, const RadialCurvature& curv) {
  os << "r,v,v',v'',residual,K_rad_tan,K_tan_tan,Ric_rad,Ric_tan\n";
  for (std::size_t k = 0; k < sol.r.size(); ++k) {
    os << fmt17(sol.r[k]) << ',' << fmt17(sol.v[k]) << ',' << fmt17(sol.dv[k]) << ',' << fmt17(sol.d2v[k]) << ','
       << fmt17(sol.residual[k]) << ',' << fmt17(curv.K_rad_tan[k]) << ',' << fmt17(curv.K_tan_tan[k]) << ','
       << fmt17(curv.Ric_rad[k]) << ',' << fmt17(curv.Ric_tan[k]) << '\n';
  }
}

}  // namespace ylab
