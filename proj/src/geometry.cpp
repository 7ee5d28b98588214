#include "ylab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "ylab/format.hpp"

namespace ylab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vec origin(int dim) { return Vec(dim); }

// Unit vector along x, or e_0 when x vanishes.
Vec direction(const Vec& x) {
  const double r = norm(x);
  if (r == 0.0) return Vec::unit(x.dim(), 0);
  return x * (1.0 / r);
}

BoundaryPoint sphere_point(const Vec& center, double radius, const Vec& x, bool inside_is_ball) {
  const int n = x.dim();
  const Vec dir = direction(x - center);
  BoundaryPoint bp;
  bp.position = center + radius * dir;
  bp.interior_normal = inside_is_ball ? -dir : dir;
  bp.mean_curvature = (inside_is_ball ? 1.0 : -1.0) * (n - 1) / radius;
  return bp;
}

std::string fmt_vec(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) s += ",";
    s += fmt_short(v[i]);
  }
  return s + ")";
}

// ---- ellipsoid ----------------------------------------------------------

// Nearest point for y >= 0 componentwise, with e sorted descending.
// Works on the first m entries; writes the result into out.
void ellipsoid_project_sorted(const std::vector<double>& e, const std::vector<double>& y, int m,
                              std::vector<double>& out, const GeometryOptions& opts) {
  if (m == 1) {
    out[0] = e[0];
    return;
  }
  const int last = m - 1;
  const double el = e[last];
  const double el2 = el * el;

  if (y[last] > 0.0) {
    // Solve f(u) = sum (e_i y_i / (e_i^2 - e_l^2 + u))^2 - 1 = 0 for u > 0,
    // where u = e_l^2 + t and t is the Lagrange multiplier.
    std::vector<double> shift(m);
    double sum_ey2 = 0.0;
    for (int i = 0; i < m; ++i) {
      shift[i] = e[i] * e[i] - el2;
      sum_ey2 += (e[i] * y[i]) * (e[i] * y[i]);
    }
    auto f_and_df = [&](double u, double& df) {
      double f = -1.0;
      df = 0.0;
      for (int i = 0; i < m; ++i) {
        if (y[i] == 0.0) continue;
        const double q = e[i] * y[i] / (shift[i] + u);
        f += q * q;
        df += -2.0 * q * q / (shift[i] + u);
      }
      return f;
    };
    double lo = el * y[last];                // f(lo) >= 0
    double hi = el2 + std::sqrt(sum_ey2);    // f(hi) <= 0
    // Seed from the scaled-radial point y/rho on the ellipsoid.
    double rho2 = 0.0;
    for (int i = 0; i < m; ++i) rho2 += (y[i] / e[i]) * (y[i] / e[i]);
    const double rho = std::sqrt(rho2);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double p = y[i] / rho;
      const double g = p / (e[i] * e[i]);
      num += (y[i] - p) * g;
      den += g * g;
    }
    double u = el2 + (den > 0.0 ? num / den : 0.0);
    if (!(u > lo && u < hi)) u = 0.5 * (lo + hi);

    bool converged = false;
    for (int it = 0; it < opts.max_iter; ++it) {
      double df = 0.0;
      const double f = f_and_df(u, df);
      if (f == 0.0) {
        converged = true;
        break;
      }
      if (f > 0.0)
        lo = u;
      else
        hi = u;
      double next = u - f / df;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // damped fallback
      const double step = std::abs(next - u);
      u = next;
      if (step <= opts.tol * std::max(1.0, std::abs(u)) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
        converged = true;
        break;
      }
    }
    for (int i = 0; i < m; ++i) out[i] = e[i] * e[i] * y[i] / (shift[i] + u);
    if (!converged) {
      Vec last_it(m);
      for (int i = 0; i < m; ++i) last_it[i] = out[i];
      throw ProjectionError("ellipsoid projection did not converge", last_it);
    }
    return;
  }

  // y[last] == 0: the nearest point either leaves the plane y_last = 0
  // (interior points near the shortest axis) or stays in it.
  double sum = 0.0;
  for (int i = 0; i < last; ++i) {
    const double denom = e[i] * e[i] - el2;
    out[i] = (denom > 0.0 && y[i] > 0.0) ? e[i] * e[i] * y[i] / denom : 0.0;
    sum += (out[i] / e[i]) * (out[i] / e[i]);
  }
  if (sum < 1.0) {
    out[last] = el * std::sqrt(1.0 - sum);
    return;
  }
  out[last] = 0.0;
  ellipsoid_project_sorted(e, y, m - 1, out, opts);
}

double ellipsoid_inside_measure(const std::vector<double>& a, const Vec& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (x[i] / a[i]) * (x[i] / a[i]);
  return s;
}

// Mean curvature (interior normal) of the level set sum (x_i/a_i)^2 = 1 at p.
double ellipsoid_mean_curvature(const std::vector<double>& a, const Vec& p, Vec& interior_normal) {
  const int n = p.dim();
  Vec g(n);
  double lap = 0.0, ghg = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a2 = a[i] * a[i];
    g[i] = 2.0 * p[i] / a2;
    lap += 2.0 / a2;
    ghg += g[i] * g[i] * (2.0 / a2);
  }
  const double gn = norm(g);
  interior_normal = g * (-1.0 / gn);
  return (lap * gn * gn - ghg) / (gn * gn * gn);
}

// ---- half-space cap -------------------------------------------------------

struct CapFrame {
  double rho;  // eroded ball radius
  double o;    // eroded plane offset
  double s;    // fillet radius
};

CapFrame cap_frame(const HalfSpaceCap& c) {
  return {c.ball.radius - c.smoothing, c.offset - c.smoothing, c.smoothing};
}

// Projection of y (relative to the ball center) onto the eroded body K.
Vec cap_project_outside(const HalfSpaceCap& c, const CapFrame& f, const Vec& y, int& region) {
  const Vec& nu = c.normal;
  const double tiny = 1e-14 * c.ball.radius;
  double best = std::numeric_limits<double>::infinity();
  Vec q;
  const double ry = norm(y);
  if (ry > 0.0) {
    const Vec ys = y * (f.rho / ry);
    if (dot(ys, nu) <= f.o + tiny) {
      best = norm(y - ys);
      q = ys;
      region = 0;
    }
  }
  const Vec yp = y - (dot(y, nu) - f.o) * nu;
  if (norm(yp) <= f.rho + tiny) {
    const double dp = norm(y - yp);
    if (dp < best) {
      best = dp;
      q = yp;
      region = 1;
    }
  }
  const Vec plane_center = f.o * nu;
  const double rim_r = std::sqrt(std::max(0.0, f.rho * f.rho - f.o * f.o));
  Vec radial = yp - plane_center;
  if (norm(radial) == 0.0) {
    // any direction orthogonal to nu
    for (int k = 0; k < y.dim(); ++k) {
      Vec e = Vec::unit(y.dim(), k);
      radial = e - dot(e, nu) * nu;
      if (norm(radial) > 0.5) break;
    }
  }
  const Vec qr = plane_center + rim_r * direction(radial);
  const double dr = norm(y - qr);
  if (dr < best) {
    q = qr;
    region = 2;
  }
  return q;
}

double cap_signed_distance(const HalfSpaceCap& c, const Vec& x) {
  const CapFrame f = cap_frame(c);
  const Vec y = x - c.ball.center;
  const double depth = std::min(f.rho - norm(y), f.o - dot(y, c.normal));
  if (depth >= 0.0) return f.s + depth;
  int region = 0;
  const Vec q = cap_project_outside(c, f, y, region);
  return f.s - norm(y - q);
}

BoundaryPoint cap_nearest(const HalfSpaceCap& c, const Vec& x) {
  const int n = x.dim();
  const CapFrame f = cap_frame(c);
  const Vec y = x - c.ball.center;
  const double ds = f.rho - norm(y);
  const double dp = f.o - dot(y, c.normal);
  BoundaryPoint bp;
  if (std::min(ds, dp) >= 0.0) {
    if (ds <= dp) return sphere_point(c.ball.center, c.ball.radius, x, true);
    bp.position = x + (c.offset - dot(y, c.normal)) * c.normal;
    bp.interior_normal = -c.normal;
    bp.mean_curvature = 0.0;
    return bp;
  }
  int region = 0;
  const Vec q = cap_project_outside(c, f, y, region);
  const Vec gap = y - q;
  if (f.s == 0.0) {
    if (region == 2) throw NonSmoothBoundary("non-smooth boundary point (cap rim without fillet)");
    bp.position = c.ball.center + q;
    bp.interior_normal = region == 0 ? -direction(q) : -c.normal;
    bp.mean_curvature = region == 0 ? (n - 1) / c.ball.radius : 0.0;
    return bp;
  }
  const Vec dir = direction(gap);
  const Vec p = q + f.s * dir;
  bp.position = c.ball.center + p;
  bp.interior_normal = -dir;
  if (region == 0) {
    bp.mean_curvature = (n - 1) / c.ball.radius;
  } else if (region == 1) {
    bp.mean_curvature = 0.0;
  } else {
    // torus fillet around the rim sphere of radius rim_r in the plane
    const double rim_r = std::sqrt(std::max(0.0, f.rho * f.rho - f.o * f.o));
    const Vec perp = p - dot(p, c.normal) * c.normal;
    const double w = norm(perp);
    bp.mean_curvature = 1.0 / f.s + (n - 2) * (w - rim_r) / (w * f.s);
  }
  return bp;
}

// ---- capped cones ---------------------------------------------------------

struct ConeQuery {
  double g;      // min_t |x - t e| - t sin(beta)
  double t;      // minimizing ball parameter
  double rho;    // distance of x from the axis
  double a;      // coordinate of x along e
};

ConeQuery cone_query(const BallMinusCones& c, const Vec& x, double sign) {
  const int n = x.dim();
  const double sb = c.sin_half_angle;
  const double cb = std::sqrt(1.0 - sb * sb);
  ConeQuery q;
  q.a = sign * x[n - 1];
  double rho2 = 0.0;
  for (int i = 0; i < n - 1; ++i) rho2 += x[i] * x[i];
  q.rho = std::sqrt(rho2);
  q.t = std::max(c.start, q.a + q.rho * sb / cb);
  q.g = std::hypot(q.rho, q.a - q.t) - q.t * sb;
  return q;
}

BoundaryPoint cone_point(const BallMinusCones& c, const Vec& x, double sign, const ConeQuery& q) {
  const int n = x.dim();
  const double sb = c.sin_half_angle;
  const double cb = std::sqrt(1.0 - sb * sb);
  const Vec center = Vec::unit(n, n - 1, sign) * q.t;
  const Vec dir = direction(x - center);
  BoundaryPoint bp;
  bp.position = center + (q.t * sb) * dir;
  bp.interior_normal = dir;
  if (q.t > c.start) {
    double rho2 = 0.0;
    for (int i = 0; i < n - 1; ++i) rho2 += bp.position[i] * bp.position[i];
    bp.mean_curvature = -(n - 2) * cb / std::sqrt(rho2);
  } else {
    bp.mean_curvature = -(n - 1) / (c.start * sb);
  }
  return bp;
}

}  // namespace

const char* to_string(DomainClass c) {
  switch (c) {
    case DomainClass::convex: return "convex";
    case DomainClass::annular: return "annular";
    case DomainClass::multi_hole: return "multi_hole";
    case DomainClass::other: return "other";
  }
  return "other";
}

Vec ellipsoid_nearest_point(const std::vector<double>& a, const Vec& x, const GeometryOptions& opts) {
  const int n = static_cast<int>(a.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Descending semi-axes; among equal axes the largest |x_i| goes last so that
  // the degenerate branch is only taken when it is needed.
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (a[i] != a[j]) return a[i] > a[j];
    return std::abs(x[i]) < std::abs(x[j]);
  });
  std::vector<double> e(n), y(n), out(n, 0.0);
  for (int k = 0; k < n; ++k) {
    e[k] = a[order[k]];
    y[k] = std::abs(x[order[k]]);
  }
  try {
    ellipsoid_project_sorted(e, y, n, out, opts);
  } catch (const ProjectionError& err) {
    Vec last(n);
    for (int k = 0; k < n; ++k) last[order[k]] = std::copysign(err.last_iterate()[k], x[order[k]]);
    throw ProjectionError(err.what(), last);
  }
  Vec p(n);
  for (int k = 0; k < n; ++k) p[order[k]] = std::copysign(out[k], x[order[k]]);
  return p;
}

Domain Domain::ball(int dim, double radius, Vec center) {
  if (center.dim() == 0) center = origin(dim);
  Domain d(dim, Ball{center, radius});
  d.validate();
  return d;
}

Domain Domain::annulus(int dim, double inner, double outer) {
  Domain d(dim, Annulus{inner, outer});
  d.validate();
  return d;
}

Domain Domain::ellipsoid(std::vector<double> semi_axes) {
  const int dim = static_cast<int>(semi_axes.size());
  Domain d(dim, Ellipsoid{std::move(semi_axes)});
  d.validate();
  return d;
}

Domain Domain::ball_minus_balls(Ball outer, std::vector<Ball> holes) {
  const int dim = outer.center.dim();
  Domain d(dim, BallMinusBalls{outer, std::move(holes)});
  d.validate();
  return d;
}

Domain Domain::half_space_cap(Ball ball, Vec normal, double offset, double smoothing) {
  const int dim = ball.center.dim();
  if (smoothing < 0.0) smoothing = 0.05 * ball.radius;
  const double nn = norm(normal);
  if (!(nn > 0.0)) throw PreconditionError("half_space_cap: normal must be nonzero");
  Domain d(dim, HalfSpaceCap{ball, normal * (1.0 / nn), offset, smoothing});
  d.validate();
  return d;
}

Domain Domain::ball_minus_cones(int dim, double radius, double sin_half_angle, double start) {
  Domain d(dim, BallMinusCones{radius, sin_half_angle, start});
  d.validate();
  return d;
}

Domain Domain::with_options(GeometryOptions opts) const {
  Domain d = *this;
  d.opts_ = opts;
  return d;
}

void Domain::validate() const {
  if (dim_ < 3) throw PreconditionError("domain dimension must be at least 3");
  if (dim_ > kMaxDim) throw PreconditionError("domain dimension exceeds kMaxDim");
  auto check_ball = [&](const Ball& b, const char* what) {
    if (b.center.dim() != dim_) throw PreconditionError(std::string(what) + ": center dimension mismatch");
    if (!(b.radius > 0.0) || !std::isfinite(b.radius))
      throw PreconditionError(std::string(what) + ": radius must be positive");
  };
  std::visit(Overloaded{
                 [&](const Ball& b) { check_ball(b, "ball"); },
                 [&](const Annulus& a) {
                   if (!(a.inner > 0.0 && a.inner < a.outer))
                     throw PreconditionError("annulus: requires 0 < r0 < R");
                 },
                 [&](const Ellipsoid& e) {
                   for (double ai : e.semi_axes)
                     if (!(ai > 0.0) || !std::isfinite(ai))
                       throw PreconditionError("ellipsoid: semi-axes must be positive");
                 },
                 [&](const BallMinusBalls& b) {
                   check_ball(b.outer, "ball_minus_balls outer");
                   for (std::size_t i = 0; i < b.holes.size(); ++i) {
                     const Ball& h = b.holes[i];
                     check_ball(h, "ball_minus_balls hole");
                     if (norm(h.center - b.outer.center) + h.radius >= b.outer.radius)
                       throw PreconditionError("ball_minus_balls: hole must lie strictly inside the outer ball");
                     for (std::size_t j = 0; j < i; ++j) {
                       const Ball& g = b.holes[j];
                       if (norm(h.center - g.center) <= h.radius + g.radius)
                         throw PreconditionError("ball_minus_balls: hole closures must be pairwise disjoint");
                     }
                   }
                 },
                 [&](const HalfSpaceCap& c) {
                   check_ball(c.ball, "half_space_cap");
                   if (c.normal.dim() != dim_) throw PreconditionError("half_space_cap: normal dimension mismatch");
                   if (!(c.smoothing >= 0.0 && c.smoothing < 0.5 * c.ball.radius))
                     throw PreconditionError("half_space_cap: smoothing radius must lie in [0, R/2)");
                   const double rho = c.ball.radius - c.smoothing;
                   const double o = c.offset - c.smoothing;
                   if (!(o > -rho && o < rho))
                     throw PreconditionError("half_space_cap: plane must cut the ball (|offset - s| < R - s)");
                 },
                 [&](const BallMinusCones& c) {
                   if (!(c.radius > 0.0)) throw PreconditionError("ball_minus_cones: radius must be positive");
                   if (!(c.sin_half_angle > 0.0 && c.sin_half_angle < 1.0))
                     throw PreconditionError("ball_minus_cones: sin_half_angle must lie in (0, 1)");
                   const double tip = c.start * (1.0 - c.sin_half_angle);
                   if (!(tip > 0.0 && tip < c.radius))
                     throw PreconditionError("ball_minus_cones: cone tips must lie inside the ball, away from the origin");
                 },
             },
             shape_);
}

double Domain::signed_distance(const Vec& x) const {
  return std::visit(
      Overloaded{
          [&](const Ball& b) { return b.radius - norm(x - b.center); },
          [&](const Annulus& a) {
            const double r = norm(x);
            return std::min(r - a.inner, a.outer - r);
          },
          [&](const Ellipsoid& e) {
            const Vec p = ellipsoid_nearest_point(e.semi_axes, x, opts_);
            const double dist = norm(x - p);
            return ellipsoid_inside_measure(e.semi_axes, x) < 1.0 ? dist : -dist;
          },
          [&](const BallMinusBalls& b) {
            double d = b.outer.radius - norm(x - b.outer.center);
            for (const Ball& h : b.holes) d = std::min(d, norm(x - h.center) - h.radius);
            return d;
          },
          [&](const HalfSpaceCap& c) { return cap_signed_distance(c, x); },
          [&](const BallMinusCones& c) {
            double d = c.radius - norm(x);
            d = std::min(d, cone_query(c, x, 1.0).g);
            d = std::min(d, cone_query(c, x, -1.0).g);
            return d;
          },
      },
      shape_);
}

BoundaryPoint Domain::nearest_boundary_point(const Vec& x) const {
  return std::visit(
      Overloaded{
          [&](const Ball& b) { return sphere_point(b.center, b.radius, x, true); },
          [&](const Annulus& a) {
            const double r = norm(x);
            if (r - a.inner < a.outer - r) return sphere_point(origin(dim_), a.inner, x, false);
            return sphere_point(origin(dim_), a.outer, x, true);
          },
          [&](const Ellipsoid& e) {
            BoundaryPoint bp;
            bp.position = ellipsoid_nearest_point(e.semi_axes, x, opts_);
            bp.mean_curvature = ellipsoid_mean_curvature(e.semi_axes, bp.position, bp.interior_normal);
            return bp;
          },
          [&](const BallMinusBalls& b) {
            double best = b.outer.radius - norm(x - b.outer.center);
            const Ball* hole = nullptr;
            for (const Ball& h : b.holes) {
              const double d = norm(x - h.center) - h.radius;
              if (d < best) {
                best = d;
                hole = &h;
              }
            }
            if (hole) return sphere_point(hole->center, hole->radius, x, false);
            return sphere_point(b.outer.center, b.outer.radius, x, true);
          },
          [&](const HalfSpaceCap& c) { return cap_nearest(c, x); },
          [&](const BallMinusCones& c) {
            const double ds = c.radius - norm(x);
            const ConeQuery up = cone_query(c, x, 1.0);
            const ConeQuery down = cone_query(c, x, -1.0);
            if (ds <= up.g && ds <= down.g) return sphere_point(origin(dim_), c.radius, x, true);
            if (up.g <= down.g) return cone_point(c, x, 1.0, up);
            return cone_point(c, x, -1.0, down);
          },
      },
      shape_);
}

BoundaryPoint Domain::mean_curvature(const Vec& p) const {
  const double d = signed_distance(p);
  if (std::abs(d) > opts_.tol * std::max(1.0, diameter()))
    throw PreconditionError("mean_curvature: point is not on the boundary");
  if (const auto* c = std::get_if<HalfSpaceCap>(&shape_); c && c->smoothing == 0.0) {
    const Vec y = p - c->ball.center;
    const double tol = 1e-9 * c->ball.radius;
    if (std::abs(norm(y) - c->ball.radius) <= tol && std::abs(dot(y, c->normal) - c->offset) <= tol)
      throw NonSmoothBoundary("non-smooth boundary point");
  }
  return nearest_boundary_point(p);
}

DomainClass Domain::classify() const {
  return std::visit(Overloaded{
                        [](const Ball&) { return DomainClass::convex; },
                        [](const Annulus&) { return DomainClass::annular; },
                        [](const Ellipsoid&) { return DomainClass::convex; },
                        [](const BallMinusBalls& b) {
                          return b.holes.empty() ? DomainClass::convex : DomainClass::multi_hole;
                        },
                        [](const HalfSpaceCap&) { return DomainClass::convex; },
                        [](const BallMinusCones&) { return DomainClass::other; },
                    },
                    shape_);
}

std::pair<Vec, Vec> Domain::bounding_box() const {
  Vec lo(dim_), hi(dim_);
  auto ball_box = [&](const Ball& b) {
    for (int i = 0; i < dim_; ++i) {
      lo[i] = b.center[i] - b.radius;
      hi[i] = b.center[i] + b.radius;
    }
  };
  auto origin_box = [&](double r) { ball_box(Ball{origin(dim_), r}); };
  std::visit(Overloaded{
                 [&](const Ball& b) { ball_box(b); },
                 [&](const Annulus& a) { origin_box(a.outer); },
                 [&](const Ellipsoid& e) {
                   for (int i = 0; i < dim_; ++i) {
                     lo[i] = -e.semi_axes[i];
                     hi[i] = e.semi_axes[i];
                   }
                 },
                 [&](const BallMinusBalls& b) { ball_box(b.outer); },
                 [&](const HalfSpaceCap& c) { ball_box(c.ball); },
                 [&](const BallMinusCones& c) { origin_box(c.radius); },
             },
             shape_);
  return {lo, hi};
}

double Domain::diameter() const {
  return std::visit(Overloaded{
                        [](const Ball& b) { return 2.0 * b.radius; },
                        [](const Annulus& a) { return 2.0 * a.outer; },
                        [](const Ellipsoid& e) {
                          return 2.0 * *std::max_element(e.semi_axes.begin(), e.semi_axes.end());
                        },
                        [](const BallMinusBalls& b) { return 2.0 * b.outer.radius; },
                        [](const HalfSpaceCap& c) { return 2.0 * c.ball.radius; },
                        [](const BallMinusCones& c) { return 2.0 * c.radius; },
                    },
                    shape_);
}

double Domain::axis_crossing(const Vec& x, int axis, double sign, double max_step) const {
  auto phi = [&](double t) {
    Vec y = x;
    y[axis] += sign * t;
    return signed_distance(y);
  };
  const double f0 = phi(0.0);
  const double f1 = phi(max_step);
  // lattice neighbors sitting on the boundary can evaluate to +-1 ulp here
  if (f0 > 0.0 && f1 >= 0.0 && f1 <= opts_.tol * std::max(1.0, diameter())) return max_step;
  if (!(f0 > 0.0) || f1 > 0.0) throw PreconditionError("axis_crossing: segment does not cross the boundary");
  std::uintmax_t iters = 100;
  auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
  auto bracket = boost::math::tools::toms748_solve(phi, 0.0, max_step, f0, f1, tol, iters);
  return 0.5 * (bracket.first + bracket.second);
}

Domain Domain::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw PreconditionError("scaled: factor must be positive");
  Domain d = *this;
  auto scale_ball = [&](Ball& b) {
    b.center *= lambda;
    b.radius *= lambda;
  };
  std::visit(Overloaded{
                 [&](Ball& b) { scale_ball(b); },
                 [&](Annulus& a) {
                   a.inner *= lambda;
                   a.outer *= lambda;
                 },
                 [&](Ellipsoid& e) {
                   for (double& ai : e.semi_axes) ai *= lambda;
                 },
                 [&](BallMinusBalls& b) {
                   scale_ball(b.outer);
                   for (Ball& h : b.holes) scale_ball(h);
                 },
                 [&](HalfSpaceCap& c) {
                   scale_ball(c.ball);
                   c.offset *= lambda;
                   c.smoothing *= lambda;
                 },
                 [&](BallMinusCones& c) {
                   c.radius *= lambda;
                   c.start *= lambda;
                 },
             },
             d.shape_);
  return d;
}

std::string Domain::describe() const {
  std::ostringstream os;
  const std::string n = "n=" + std::to_string(dim_);
  std::visit(Overloaded{
                 [&](const Ball& b) { os << "ball(" << n << ",R=" << fmt_short(b.radius) << ",center=" << fmt_vec(b.center) << ")"; },
                 [&](const Annulus& a) { os << "annulus(" << n << ",r0=" << fmt_short(a.inner) << ",R=" << fmt_short(a.outer) << ")"; },
                 [&](const Ellipsoid& e) {
                   os << "ellipsoid(" << n << ",axes=";
                   for (std::size_t i = 0; i < e.semi_axes.size(); ++i) os << (i ? "," : "") << fmt_short(e.semi_axes[i]);
                   os << ")";
                 },
                 [&](const BallMinusBalls& b) {
                   os << "ball_minus_balls(" << n << ",R=" << fmt_short(b.outer.radius) << ",holes=" << b.holes.size() << ")";
                 },
                 [&](const HalfSpaceCap& c) {
                   os << "half_space_cap(" << n << ",R=" << fmt_short(c.ball.radius) << ",offset=" << fmt_short(c.offset)
                      << ",s=" << fmt_short(c.smoothing) << ")";
                 },
                 [&](const BallMinusCones& c) {
                   os << "ball_minus_cones(" << n << ",R=" << fmt_short(c.radius) << ",sin_beta=" << fmt_short(c.sin_half_angle)
                      << ",start=" << fmt_short(c.start) << ")";
                 },
             },
             shape_);
  return os.str();
}

}  // namespace ylab
