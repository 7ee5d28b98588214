#pragma once

#include <vector>

#include "ylab/grid.hpp"
#include "ylab/kernels.hpp"

namespace ylab {

struct SolveOptions {
  double tol = 1e-10;          // residual infinity norm on interior nodes
  double krylov_rtol = 1e-10;
  int max_krylov = 4000;
  int max_newton = 60;
  int max_halvings = 30;
  int stall_steps = 10;        // consecutive damped steps without progress
  double safety = 0.25;        // cut band, in units of h
  int coarse_levels = 0;       // solve on 2h, 4h, ... first and interpolate
  Exec exec = Exec::parallel;
};

struct SolveReport {
  int iterations = 0;
  int krylov_iterations = 0;
  double residual_inf = 0.0;
  std::vector<double> residual_history;  // infinity norm before each step
  std::vector<double> damping;           // accepted step length per step
  double h = 0.0;
  double wall_seconds = 0.0;
  int unknowns = 0;
};

class SolveError : public ConvergenceError {
 public:
  SolveError(const std::string& what, SolveReport report) : ConvergenceError(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

struct VSolution {
  GridField field;
  SolveReport report;
};

// Damped Newton-Krylov solve of v Δv = (n/2)(|∇v|^2 - 1) on the lattice of
// width h. Starts from the signed distance (or an interpolated coarse solve).
VSolution solve_v(const Domain& domain, double h, const SolveOptions& opts = {});

// Δu = (n(n-2)/4) u^((n+2)/(n-2)) with u = M at boundary crossings and cut
// nodes. Returned field holds u; cut nodes hold M.
struct USolution {
  GridField field;
  SolveReport report;
};
USolution solve_u_truncated(const Domain& domain, double h, double M, const SolveOptions& opts = {});

// v = u^(-2/(n-2)) node-wise on interior and cut nodes.
GridField v_from_u(const GridField& u);

// Infinity norm of the discrete v-equation residual over interior nodes,
// using the field's own cut values.
double residual(const GridField& field, const Domain& domain);

// Per lattice node residual (0 off the interior).
std::vector<double> residual_values(const GridField& field, const Domain& domain);

}  // namespace ylab
