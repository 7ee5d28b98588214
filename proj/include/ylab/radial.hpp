#pragma once

#include <iosfwd>
#include <vector>

#include "ylab/errors.hpp"

namespace ylab {

enum class RadialKind { ball, annulus };

// Fitted two-term boundary expansion v = slope*d + quad_coeff*d^2 (+ cubic
// nuisance term) at one boundary sphere.
struct EndpointFit {
  double radius = 0.0;
  double mean_curvature = 0.0;   // H of that sphere, interior normal
  double slope = 0.0;
  double quad_coeff = 0.0;
  double expected_quad = 0.0;    // -H / (2(n-1))
  int nodes_used = 0;
};

// Rotationally symmetric solution v(r) of v Δv = (n/2)(|∇v|^2 - 1).
// r is strictly increasing and includes the boundary radii, where v = 0.
struct RadialSolution {
  int n = 3;
  RadialKind kind = RadialKind::ball;
  double inner = 0.0;  // r0 for annuli, 0 for balls
  double outer = 1.0;
  std::vector<double> r, v, dv, d2v;
  std::vector<double> residual;  // v(v'' + (n-1)v'/r) - (n/2)(v'^2 - 1) per node
  std::vector<EndpointFit> endpoint_data;
  int newton_iterations = 0;
  double max_residual = 0.0;         // over interior collocation nodes
  double max_scaled_residual = 0.0;  // |F| / (sum of |terms| of F)

  // Cubic Hermite interpolation of v and v' (r clamped to [inner, outer]).
  double value_at(double radius) const;
  double derivative_at(double radius) const;
  // max_r v(r) by Hermite refinement around the largest node value.
  double max_value() const;
};

struct RadialOptions {
  int nodes = 4096;       // collocation nodes, Chebyshev-clustered at the ends
  double tol = 1e-10;     // scaled residual tolerance
  int max_newton = 100;
  int max_halvings = 30;
};

class RadialSolveError : public ConvergenceError {
 public:
  RadialSolveError(const std::string& what, std::vector<double> history)
      : ConvergenceError(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

// Closed form v = (R^2 - r^2)/(2R) sampled on `nodes` + 2 radii in [0, R].
RadialSolution solve_ball(int n, double radius, int nodes = 4096);

// Same profile obtained by damped-Newton collocation (cross-check path).
RadialSolution solve_ball_collocation(int n, double radius, const RadialOptions& opts = {});

// Two-point problem v(r0) = v(R) = 0 by damped-Newton collocation with the
// end nodes offset by one mesh width and closed by v = d - H d^2/(2(n-1)).
RadialSolution solve_annulus(int n, double inner, double outer, const RadialOptions& opts = {});

// Truncated problem u'' + (n-1)u'/r = (n(n-2)/4) u^((n+2)/(n-2)) on [0, R]
// with u(R) = M, by Newton collocation on nodes graded geometrically toward R
// so that the layer of width ~M^(-2/(n-2)) is resolved; `nodes` sets the
// coarsest spacing R/nodes. v = u^(-2/(n-2)).
struct TruncatedRadial {
  int n = 3;
  double M = 0.0;
  std::vector<double> r, u, v;
  int newton_iterations = 0;
};

TruncatedRadial solve_ball_truncated(int n, double radius, double M, int nodes = 4000);

// v_M(0) from solve_ball_truncated at `nodes` and 2*nodes plus one Richardson
// step. Finer single grids lose more to rounding than they gain.
double truncated_center_value(int n, double radius, double M, int nodes = 4000);

struct RadialCurvature {
  std::vector<double> K_rad_tan, K_tan_tan, Ric_rad, Ric_tan;
  std::vector<double> trace_defect;  // |Ric_rad + (n-1) Ric_tan + n(n-1)|
  double max_ricci = 0.0;
  double min_ricci = 0.0;
  double argmax_radius = 0.0;
  double min_sectional = 0.0;
  double max_sectional = 0.0;
};

RadialCurvature curvature_radial(const RadialSolution& sol);

struct FitOptions {
  double window_fraction = 0.02;  // of the radial extent
  int min_nodes = 8;
};

std::vector<EndpointFit> boundary_fit(const RadialSolution& sol, const FitOptions& opts = {});

// CSV columns: r,v,v',v'',residual,K_rad_tan,K_tan_tan,Ric_rad,Ric_tan
void write_radial_csv(std::ostream& os, const RadialSolution& sol, const RadialCurvature& curv);

}  // namespace ylab
