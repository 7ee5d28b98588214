#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ylab/errors.hpp"
#include "ylab/vec.hpp"

namespace ylab {

// Sign conventions used everywhere in the library:
//   signed distance d > 0 inside, 0 on the boundary, < 0 outside;
//   mean curvature H is the trace (sum of principal curvatures) of the shape
//   operator with respect to the interior unit normal, so the unit sphere
//   bounding the unit ball in R^n has H = n - 1.

struct Ball {
  Vec center;
  double radius = 1.0;
};

// {r0 < |x| < R}, centered at the origin.
struct Annulus {
  double inner = 0.5;
  double outer = 1.0;
};

// Axis-aligned, centered at the origin.
struct Ellipsoid {
  std::vector<double> semi_axes;
};

struct BallMinusBalls {
  Ball outer;
  std::vector<Ball> holes;
};

// ball ∩ {(x - center)·normal <= offset}, with the rim rounded by a torus
// fillet of radius `smoothing` (0 leaves a sharp edge).
struct HalfSpaceCap {
  Ball ball;
  Vec normal;
  double offset = 0.0;
  double smoothing = 0.0;
};

// Ball of radius R centered at the origin minus two capped cones along ±e_n.
// Each cone is the continuous ball chain ∪_{t >= start} B(t e, t sin_half_angle),
// which keeps the domain star-shaped with respect to the origin.
struct BallMinusCones {
  double radius = 2.0;
  double sin_half_angle = 0.2;
  double start = 1.25;
};

using Shape = std::variant<Ball, Annulus, Ellipsoid, BallMinusBalls, HalfSpaceCap, BallMinusCones>;

enum class DomainClass { convex, annular, multi_hole, other };

const char* to_string(DomainClass c);

struct BoundaryPoint {
  Vec position;
  Vec interior_normal;
  double mean_curvature = 0.0;
};

struct GeometryOptions {
  double tol = 1e-12;  // tol_geom
  int max_iter = 50;
};

// Nearest-point projection onto an ellipsoid failed to converge.
class ProjectionError : public ConvergenceError {
 public:
  ProjectionError(const std::string& what, Vec last_iterate)
      : ConvergenceError(what), last_iterate_(last_iterate) {}
  const Vec& last_iterate() const { return last_iterate_; }

 private:
  Vec last_iterate_;
};

// Immutable description of a bounded domain in R^n, n >= 3.
// All queries are const and thread-safe.
class Domain {
 public:
  static Domain ball(int dim, double radius, Vec center = {});
  static Domain annulus(int dim, double inner, double outer);
  static Domain ellipsoid(std::vector<double> semi_axes);
  static Domain ball_minus_balls(Ball outer, std::vector<Ball> holes);
  // smoothing < 0 selects the default fillet radius 0.05 R.
  static Domain half_space_cap(Ball ball, Vec normal, double offset, double smoothing = -1.0);
  static Domain ball_minus_cones(int dim, double radius, double sin_half_angle, double start);

  int dim() const { return dim_; }
  const Shape& shape() const { return shape_; }
  const GeometryOptions& options() const { return opts_; }
  Domain with_options(GeometryOptions opts) const;

  double signed_distance(const Vec& x) const;
  bool contains(const Vec& x) const { return signed_distance(x) > 0.0; }

  // Nearest boundary point of x together with its interior normal and H.
  BoundaryPoint nearest_boundary_point(const Vec& x) const;

  // Requires p within tol_geom (scaled by max(1, diameter)) of the boundary.
  BoundaryPoint mean_curvature(const Vec& p) const;

  DomainClass classify() const;

  std::pair<Vec, Vec> bounding_box() const;
  double diameter() const;

  // Distance t in (0, max_step] along x + t*sign*e_axis at which the signed
  // distance changes sign. Requires d(x) > 0 >= d(x + max_step*sign*e_axis).
  double axis_crossing(const Vec& x, int axis, double sign, double max_step) const;

  // The domain {lambda x : x in this}.
  Domain scaled(double lambda) const;

  std::string describe() const;

 private:
  Domain(int dim, Shape shape) : dim_(dim), shape_(std::move(shape)) {}
  void validate() const;

  int dim_ = 3;
  Shape shape_;
  GeometryOptions opts_;
};

// Nearest point on the ellipsoid sum (x_i/a_i)^2 = 1 to x (any x in R^n).
Vec ellipsoid_nearest_point(const std::vector<double>& semi_axes, const Vec& x,
                            const GeometryOptions& opts = {});

}  // namespace ylab
