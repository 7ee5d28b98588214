#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ylab/curvature.hpp"
#include "ylab/pde.hpp"
#include "ylab/radial.hpp"

namespace ylab {

// One inequality checked over the reported nodes. margin = bound - worst,
// positive when the inequality holds everywhere.
struct Assertion {
  std::string name;
  double worst = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool strict = true;  // worst < bound, otherwise worst <= bound
  bool pass = false;
  Vec where;
};

struct ConvexVerdict {
  std::string domain;
  double h = 0.0;
  std::int64_t nodes = 0;
  double eps_concave = 0.0;  // 10 h^2 max|v|
  // laplacian < 0, grad_norm < 1, hessian <= eps_concave, sectional < 0,
  // ricci < -n/2, in that order
  std::vector<Assertion> assertions;
  double strictness = 0.0;  // -(max sectional over all planes)
  bool pass = false;
  CurvatureReport curvature;
  SolveReport solve;
};

// Solves on `domain` and checks the convex-domain inequalities on nodes with
// d >= 2h. Throws PreconditionError unless classify() is convex.
ConvexVerdict verify_convex(const Domain& domain, double h, const SolveOptions& opts = {});
// Same checks on an already solved field.
ConvexVerdict verify_convex(const GridField& v, const Domain& domain, const SolveReport& solve = {});

enum class ScanPath { radial, grid };

struct ScanRow {
  double r0 = 0.0;
  double R = 0.0;
  bool ok = false;
  std::string error;
  double max_ricci = 0.0;
  double min_ricci = 0.0;
  double min_sectional = 0.0;
  double max_sectional = 0.0;
  double residual = 0.0;
  double argmax_radius = 0.0;
  bool positive = false;  // max_ricci > 0
};

struct ScanResult {
  std::string family;
  int n = 3;
  ScanPath path = ScanPath::radial;
  double h = 0.0;  // grid path only
  std::vector<ScanRow> rows;
  bool positive_found = false;
  std::optional<double> threshold_r0;  // largest r0 with a positive row
  // max_ricci strictly increases along the row order wherever both rows ran
  bool monotone = false;
  std::int64_t failed_rows = 0;
};

struct ScanOptions {
  ScanPath path = ScanPath::radial;
  double h = 1.0 / 16;  // grid path mesh width
  RadialOptions radial;
  SolveOptions grid;
};

// Every (r0, R) pair, ordered by R ascending then r0 descending, so that
// consecutive rows with equal R form a nested family. A row whose solve
// fails is kept with ok = false.
ScanResult scan_annulus(int n, const std::vector<double>& r0s, const std::vector<double>& Rs,
                        const ScanOptions& opts = {});

// Extends r0 <- r0 * r0_factor and R <- R * R_factor from (r0, R) until
// a row turns positive, then runs `after` more rows; stops at max_rows.
ScanResult extend_annulus_scan(int n, double r0, double R, double r0_factor = 0.5, double R_factor = 1.0,
                               int max_rows = 12, int after = 1, const ScanOptions& opts = {});

// T(x) = (2x/(1+|x|^2), (|x|^2-1)/(1+|x|^2)) on R^n -> S^n in R^(n+1).
Vec stereographic_lift(const Vec& x);
// y' / (1 - y_(n+1)). Throws PreconditionError at the north pole.
Vec stereographic_inverse(const Vec& y);

// Radius of T^-1(S^n minus the geodesic cap of radius 1/i about the north
// pole), cot(1/(2i)).
double cap_image_radius(int i);

struct CapVerdict {
  int i = 0;
  int n = 3;
  double h = 0.0;       // relative to the image radius
  double radius = 0.0;  // image ball radius
  double map_error = 0.0;   // max | |T^-1(y)| - radius | over sampled cap rim points
  double min_sectional = 0.0;
  double max_sectional = 0.0;
  double min_ricci = 0.0;
  double max_ricci = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Maps the cap complement to a ball, solves with mesh width h * radius and
// checks all sectional values within tol of -1 and all Ricci eigenvalues
// within tol of -(n-1) on reported nodes.
CapVerdict cap_complement_check(int i, int n, double h, double tol = 5e-3, const SolveOptions& opts = {});

// Nested star-shaped family in R^4: balls of radius R_k minus capped cones of
// half-angle sine b_k about the x_4 axis, starting beyond |x_4| = 1.
struct StarFamily {
  double radius = 1.5;
  double radius_growth = 1.0;
  double sin_half_angle = 0.5;
  double angle_ratio = 0.7;
  int members = 4;
};

std::vector<Domain> star_shaped_slab(int n, const StarFamily& family = {});

// Ray test from the origin at `samples` seeded random points of the bounding box.
bool star_shaped_sampled(const Domain& domain, int samples, std::uint64_t seed, int steps = 64);

struct StarRow {
  std::string domain;
  bool ok = false;
  std::string error;
  double max_ricci = 0.0;
  double min_ricci = 0.0;
  double max_sectional = 0.0;
  double residual = 0.0;
  bool star_shaped = false;
};

struct StarScan {
  double h = 0.0;
  std::vector<StarRow> rows;
  bool monotone = false;
  bool positive_found = false;
};

StarScan star_scan(const StarFamily& family, double h, std::uint64_t seed = 1, const SolveOptions& opts = {});

}  // namespace ylab
