#include "ylab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ylab {

namespace {

Assertion make_assertion(std::string name, double worst, double bound, bool strict, const Vec& where) {
  Assertion a;
  a.name = std::move(name);
  a.worst = worst;
  a.bound = bound;
  a.margin = bound - worst;
  a.strict = strict;
  a.pass = strict ? worst < bound : worst <= bound;
  a.where = where;
  return a;
}

}  // namespace

ConvexVerdict verify_convex(const GridField& v, const Domain& domain, const SolveReport& solve) {
  if (domain.classify() != DomainClass::convex)
    throw PreconditionError("verify_convex: domain is not convex (" + domain.describe() + ")");
  const int n = v.n;
  std::vector<CurvaturePoint> pts;
  ConvexVerdict out;
  out.curvature = curvature_report(v, domain, &pts);
  out.domain = domain.describe();
  out.h = v.h;
  out.nodes = out.curvature.reported_nodes;
  out.solve = solve;
  out.eps_concave = 10.0 * v.h * v.h * out.curvature.max_abs_v;

  const double inf = std::numeric_limits<double>::infinity();
  double lap = -inf, grad = -inf, hess = -inf, sec = -inf, ric = -inf;
  Vec at_lap, at_grad, at_hess, at_sec, at_ric;
  for (const CurvaturePoint& p : pts) {
    if (p.laplacian > lap) lap = p.laplacian, at_lap = p.position;
    const double g = norm(p.grad);
    if (g > grad) grad = g, at_grad = p.position;
    if (p.hess_eigenvalues[n - 1] > hess) hess = p.hess_eigenvalues[n - 1], at_hess = p.position;
    if (p.max_plane_sectional > sec) sec = p.max_plane_sectional, at_sec = p.position;
    if (p.ricci_eigenvalues[n - 1] > ric) ric = p.ricci_eigenvalues[n - 1], at_ric = p.position;
  }
  out.assertions.push_back(make_assertion("laplacian", lap, 0.0, true, at_lap));
  out.assertions.push_back(make_assertion("grad_norm", grad, 1.0, true, at_grad));
  out.assertions.push_back(make_assertion("hessian_eigenvalue", hess, out.eps_concave, false, at_hess));
  out.assertions.push_back(make_assertion("sectional", sec, 0.0, true, at_sec));
  out.assertions.push_back(make_assertion("ricci", ric, -n / 2.0, true, at_ric));
  out.strictness = -sec;
  out.pass = std::all_of(out.assertions.begin(), out.assertions.end(), [](const Assertion& a) { return a.pass; });
  return out;
}

ConvexVerdict verify_convex(const Domain& domain, double h, const SolveOptions& opts) {
  if (domain.classify() != DomainClass::convex)
    throw PreconditionError("verify_convex: domain is not convex (" + domain.describe() + ")");
  const VSolution sol = solve_v(domain, h, opts);
  return verify_convex(sol.field, domain, sol.report);
}

namespace {

ScanRow run_row(int n, double r0, double R, const ScanOptions& opts) {
  ScanRow row;
  row.r0 = r0;
  row.R = R;
  try {
    if (opts.path == ScanPath::radial) {
      const RadialSolution s = solve_annulus(n, r0, R, opts.radial);
      const RadialCurvature c = curvature_radial(s);
      row.max_ricci = c.max_ricci;
      row.min_ricci = c.min_ricci;
      row.min_sectional = c.min_sectional;
      row.max_sectional = c.max_sectional;
      row.residual = s.max_residual;
      row.argmax_radius = c.argmax_radius;
    } else {
      const Domain d = Domain::annulus(n, r0, R);
      const VSolution s = solve_v(d, opts.h, opts.grid);
      const CurvatureReport c = curvature_report(s.field, d);
      row.max_ricci = c.max_ricci;
      row.min_ricci = c.min_ricci;
      row.min_sectional = c.min_plane_sectional;
      row.max_sectional = c.max_plane_sectional;
      row.residual = s.report.residual_inf;
      row.argmax_radius = norm(c.argmax);
    }
    row.ok = true;
    row.positive = row.max_ricci > 0.0;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

void summarize(ScanResult& res) {
  res.positive_found = false;
  res.threshold_r0.reset();
  res.failed_rows = 0;
  res.monotone = true;
  int compared = 0;
  for (std::size_t k = 0; k < res.rows.size(); ++k) {
    const ScanRow& row = res.rows[k];
    if (!row.ok) {
      ++res.failed_rows;
      continue;
    }
    if (row.positive) {
      res.positive_found = true;
      if (!res.threshold_r0 || row.r0 > *res.threshold_r0) res.threshold_r0 = row.r0;
    }
    if (k > 0 && res.rows[k - 1].ok) {
      ++compared;
      if (!(row.max_ricci > res.rows[k - 1].max_ricci)) res.monotone = false;
    }
  }
  if (compared == 0) res.monotone = false;
}

}  // namespace

ScanResult scan_annulus(int n, const std::vector<double>& r0s, const std::vector<double>& Rs, const ScanOptions& opts) {
  if (r0s.empty() || Rs.empty()) throw PreconditionError("scan_annulus: empty parameter list");
  std::vector<double> rs = Rs, r0 = r0s;
  std::sort(rs.begin(), rs.end());
  std::sort(r0.begin(), r0.end(), std::greater<>());
  for (double R : rs)
    for (double a : r0)
      if (!(a > 0.0 && a < R)) throw PreconditionError("scan_annulus: need 0 < r0 < R for every pair");
  ScanResult res;
  res.family = "annulus";
  res.n = n;
  res.path = opts.path;
  res.h = opts.path == ScanPath::grid ? opts.h : 0.0;
  for (double R : rs)
    for (double a : r0) {
      ScanRow row;
      row.r0 = a;
      row.R = R;
      res.rows.push_back(row);
    }
  const auto m = static_cast<std::int64_t>(res.rows.size());
  // radial rows are independent serial solves; grid rows use the threads inside
#pragma omp parallel for schedule(dynamic, 1) if (opts.path == ScanPath::radial)
  for (std::int64_t k = 0; k < m; ++k) res.rows[k] = run_row(n, res.rows[k].r0, res.rows[k].R, opts);
  // monotonicity is judged along each nested run of equal R
  summarize(res);
  bool mono = true;
  int compared = 0;
  for (std::size_t k = 1; k < res.rows.size(); ++k) {
    const ScanRow &a = res.rows[k - 1], &b = res.rows[k];
    if (a.R != b.R || !a.ok || !b.ok) continue;
    ++compared;
    if (!(b.max_ricci > a.max_ricci)) mono = false;
  }
  res.monotone = mono && compared > 0;
  return res;
}

ScanResult extend_annulus_scan(int n, double r0, double R, double r0_factor, double R_factor, int max_rows, int after,
                               const ScanOptions& opts) {
  if (!(r0 > 0.0 && r0 < R)) throw PreconditionError("extend_annulus_scan: need 0 < r0 < R");
  if (!(r0_factor > 0.0 && r0_factor <= 1.0) || !(R_factor >= 1.0) || (r0_factor == 1.0 && R_factor == 1.0))
    throw PreconditionError("extend_annulus_scan: factors must shrink r0 or grow R");
  if (max_rows < 1 || after < 0) throw PreconditionError("extend_annulus_scan: bad row limits");
  ScanResult res;
  res.family = "annulus";
  res.n = n;
  res.path = opts.path;
  res.h = opts.path == ScanPath::grid ? opts.h : 0.0;
  int remaining = -1;
  for (int k = 0; k < max_rows && remaining != 0; ++k) {
    res.rows.push_back(run_row(n, r0, R, opts));
    if (remaining > 0) --remaining;
    if (remaining < 0 && res.rows.back().positive) remaining = after;
    r0 *= r0_factor;
    R *= R_factor;
  }
  summarize(res);
  return res;
}

Vec stereographic_lift(const Vec& x) {
  const int n = x.dim();
  if (n + 1 > kMaxDim) throw PreconditionError("stereographic_lift: dimension too large");
  const double s = dot(x, x);
  Vec y(n + 1);
  for (int k = 0; k < n; ++k) y[k] = 2.0 * x[k] / (1.0 + s);
  y[n] = (s - 1.0) / (1.0 + s);
  return y;
}

Vec stereographic_inverse(const Vec& y) {
  const int n = y.dim() - 1;
  if (n < 1) throw PreconditionError("stereographic_inverse: need a point of R^(n+1)");
  const double den = 1.0 - y[n];
  if (!(den > 0.0)) throw PreconditionError("stereographic_inverse: point at infinity (north pole)");
  Vec x(n);
  for (int k = 0; k < n; ++k) x[k] = y[k] / den;
  return x;
}

double cap_image_radius(int i) {
  if (i < 1) throw PreconditionError("cap_image_radius: i must be at least 1");
  return 1.0 / std::tan(0.5 / i);
}

CapVerdict cap_complement_check(int i, int n, double h, double tol, const SolveOptions& opts) {
  if (!(h > 0.0) || !(tol > 0.0)) throw PreconditionError("cap_complement_check: h and tol must be positive");
  CapVerdict out;
  out.i = i;
  out.n = n;
  out.h = h;
  out.tol = tol;
  out.radius = cap_image_radius(i);
  // rim of the cap: angle 1/i from the north pole, on a few great circles
  const double theta = 1.0 / i;
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < 16; ++s) {
      const double phi = 2.0 * std::numbers::pi * s / 16.0;
      Vec y(n + 1);
      y[n] = std::cos(theta);
      y[a] = std::sin(theta) * std::cos(phi);
      y[(a + 1) % n] += std::sin(theta) * std::sin(phi);
      out.map_error = std::max(out.map_error, std::abs(norm(stereographic_inverse(y)) - out.radius));
    }
  const Domain ball = Domain::ball(n, out.radius);
  const VSolution sol = solve_v(ball, h * out.radius, opts);
  std::vector<CurvaturePoint> pts;
  const CurvatureReport rep = curvature_report(sol.field, ball, &pts);
  out.min_sectional = rep.min_plane_sectional;
  out.max_sectional = rep.max_plane_sectional;
  out.min_ricci = rep.min_ricci;
  out.max_ricci = rep.max_ricci;
  out.pass = std::abs(out.min_sectional + 1.0) <= tol && std::abs(out.max_sectional + 1.0) <= tol &&
             std::abs(out.min_ricci + (n - 1)) <= tol && std::abs(out.max_ricci + (n - 1)) <= tol &&
             out.map_error <= 1e-10 * out.radius;
  return out;
}

std::vector<Domain> star_shaped_slab(int n, const StarFamily& f) {
  if (n != 4) throw PreconditionError("star_shaped_slab: the construction needs n = 4");
  if (f.members < 1 || !(f.angle_ratio > 0.0 && f.angle_ratio < 1.0) || !(f.radius_growth >= 1.0))
    throw PreconditionError("star_shaped_slab: bad family parameters");
  // every tip sits at |x_4| = 1; the first ball of a thinner cone is then
  // internally tangent to the previous one, so the holes are nested
  std::vector<Domain> out;
  double R = f.radius, sb = f.sin_half_angle;
  for (int k = 0; k < f.members; ++k) {
    out.push_back(Domain::ball_minus_cones(n, R, sb, 1.0 / (1.0 - sb)));
    R *= f.radius_growth;
    sb *= f.angle_ratio;
  }
  return out;
}

bool star_shaped_sampled(const Domain& domain, int samples, std::uint64_t seed, int steps) {
  if (!(domain.signed_distance(Vec(domain.dim())) > 0.0)) return false;
  std::mt19937_64 rng(seed);
  const auto [lo, hi] = domain.bounding_box();
  std::vector<std::uniform_real_distribution<double>> axis;
  for (int k = 0; k < domain.dim(); ++k) axis.emplace_back(lo[k], hi[k]);
  for (int s = 0; s < samples; ++s) {
    Vec x(domain.dim());
    for (int k = 0; k < domain.dim(); ++k) x[k] = axis[k](rng);
    if (!(domain.signed_distance(x) > 0.0)) continue;
    for (int t = 1; t < steps; ++t)
      if (!(domain.signed_distance(x * (static_cast<double>(t) / steps)) > 0.0)) return false;
  }
  return true;
}

StarScan star_scan(const StarFamily& family, double h, std::uint64_t seed, const SolveOptions& opts) {
  StarScan out;
  out.h = h;
  for (const Domain& d : star_shaped_slab(4, family)) {
    StarRow row;
    row.domain = d.describe();
    row.star_shaped = star_shaped_sampled(d, 2000, seed);
    try {
      const VSolution s = solve_v(d, h, opts);
      const CurvatureReport c = curvature_report(s.field, d);
      row.max_ricci = c.max_ricci;
      row.min_ricci = c.min_ricci;
      row.max_sectional = c.max_plane_sectional;
      row.residual = s.report.residual_inf;
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    out.rows.push_back(row);
  }
  out.monotone = out.rows.size() > 1;
  for (std::size_t k = 0; k < out.rows.size(); ++k) {
    if (out.rows[k].ok && out.rows[k].max_ricci > 0.0) out.positive_found = true;
    if (k > 0 && !(out.rows[k].ok && out.rows[k - 1].ok && out.rows[k].max_ricci > out.rows[k - 1].max_ricci))
      out.monotone = false;
  }
  return out;
}

}  // namespace ylab
