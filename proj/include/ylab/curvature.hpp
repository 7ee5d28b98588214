#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ylab/geometry.hpp"
#include "ylab/grid.hpp"
#include "ylab/kernels.hpp"
#include "ylab/symeig.hpp"

namespace ylab {

// Curvature of g = v^-2 g_E in the frame {v e_i}, which is orthonormal for g.

// Ricci and scalar curvature of the background metric. Only the flat
// background (all zero) is used by the solvers.
struct Background {
  SymMatrix ricci;
  double scalar = 0.0;
};

// v v_ii + v v_jj - |∇v|^2. Throws PreconditionError for i == j.
double sectional(double v, const Vec& grad, const SymMatrix& hess, int i, int j);

// v^2 Ric_b - v^2 S_b/(2(n-1)) I + (n-2) v Hess v - ((n-2)/2 |∇v|^2 + n/2) I
SymMatrix ricci(double v, const Vec& grad, const SymMatrix& hess, const Background* background = nullptr);

struct CurvaturePoint {
  std::int64_t node = -1;  // lattice index, -1 off the grid
  Vec position;
  double distance = 0.0;   // to the boundary
  double v = 0.0;
  Vec grad;
  SymMatrix hess;
  SymMatrix ricci_matrix;
  Spectrum ricci_eigenvalues{};  // ascending
  Spectrum hess_eigenvalues{};
  // over coordinate planes i < j
  double min_sectional = 0.0;
  double max_sectional = 0.0;
  // over all 2-planes
  double min_plane_sectional = 0.0;
  double max_plane_sectional = 0.0;
  double laplacian = 0.0;
  double residual = 0.0;      // v Δv - (n/2)(|∇v|^2 - 1) with these derivatives
  double trace_defect = 0.0;  // |tr Ric + n(n-1)|
};

CurvaturePoint curvature_point(const Vec& position, double v, const Vec& grad, const SymMatrix& hess);

// Gradient and Hessian at one interior lattice node. Central differences
// where the neighbors exist; unequal arms to the boundary crossing (v = 0)
// along axes, and one-sided quadrant formulas for mixed terms otherwise.
struct NodeDerivatives {
  std::int64_t node = -1;
  double distance = 0.0;
  bool reported = false;  // distance >= 2h
  bool one_sided = false;
  Vec grad;
  SymMatrix hess;
};

std::vector<NodeDerivatives> hessian_field(const GridField& v, const Domain& domain, Exec exec = Exec::parallel);

// Derivatives of v = u^(-2/(n-2)) from those of u.
void hessian_from_u(int n, double u, const Vec& grad_u, const SymMatrix& hess_u, double& v, Vec& grad_v,
                    SymMatrix& hess_v);

struct CurvatureReport {
  std::string domain;
  int n = 3;
  double h = 0.0;
  std::int64_t reported_nodes = 0;
  double min_ricci = 0.0;
  double max_ricci = 0.0;
  Vec argmax;  // position of max_ricci
  Vec argmin;
  double min_sectional = 0.0;  // coordinate planes
  double max_sectional = 0.0;
  double min_plane_sectional = 0.0;  // all planes
  double max_plane_sectional = 0.0;
  Vec argmax_sectional;
  double trace_defect_max = 0.0;
  double residual_max = 0.0;
  double max_laplacian = 0.0;
  double max_grad_norm = 0.0;
  double max_hess_eigenvalue = 0.0;
  double max_abs_v = 0.0;
  double fraction_nonnegative_sectional = 0.0;
  double fraction_ricci_above_half_n = 0.0;  // max eigenvalue >= -n/2
};

// Field-wide summary over reported nodes (distance >= 2h). If `points` is
// given it receives one record per reported node in lattice order.
CurvatureReport curvature_report(const GridField& v, const Domain& domain, std::vector<CurvaturePoint>* points = nullptr,
                                 Exec exec = Exec::parallel);

struct AsymptoticsCheck {
  double shell_inner = 0.0;  // h
  double shell_outer = 0.0;  // 4h
  std::int64_t nodes = 0;
  double max_deviation = 0.0;   // max |lambda + (n-1)| over Ricci eigenvalues
  double max_ratio = 0.0;       // max of deviation / d
  Vec worst;
};

// Ricci eigenvalues against -(n-1) on interior nodes with h < d < 4h.
// Throws PreconditionError when the shell holds no node.
AsymptoticsCheck boundary_asymptotics_check(const GridField& v, const Domain& domain, Exec exec = Exec::parallel);

// x -> c + s (x - c) for dilations, x -> c + rho^2 (x - c)/|x - c|^2 for
// inversions.
struct Mobius {
  enum class Kind { identity, dilation, inversion };
  Kind kind = Kind::identity;
  Vec center;
  double scale = 1.0;  // dilation factor or inversion radius

  static Mobius identity(int n);
  static Mobius dilation(Vec center, double factor);
  static Mobius inversion(Vec center, double radius);

  Vec apply(const Vec& x) const;
  Vec inverse(const Vec& y) const;
  // |dφ(x)|
  double conformal_factor(const Vec& x) const;
  // Image of a ball. Throws PreconditionError if it is unbounded.
  Ball image(const Ball& b) const;
};

// v_img(φ(x)) = |dφ(x)| v(x), evaluated at y = φ(x).
double mobius_pushforward(const Mobius& phi, const std::function<double(const Vec&)>& v, const Vec& y);

// Pushforward sampled on the lattice of the image domain: interior and cut
// nodes get the predicted value. Throws PreconditionError if the image of
// the ball is unbounded.
GridField mobius_pushforward(const Ball& ball, const std::function<double(const Vec&)>& v, const Mobius& phi,
                             double h, double safety = 0.25);

}  // namespace ylab
