#pragma once

#include <functional>
#include <vector>

#include "ylab/kernels.hpp"

namespace ylab {

struct KrylovResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// y = A x for vectors of the operator's size.
using LinearOperator = std::function<void(const double* x, double* y)>;

// BiCGSTAB with right Jacobi preconditioning. Starts from the given x and
// stops when |b - A x| <= rtol |b|.
KrylovResult bicgstab(const LinearOperator& A, const std::vector<double>& inv_diag, const std::vector<double>& b,
                      std::vector<double>& x, double rtol, int max_iter, Exec exec = Exec::parallel);

}  // namespace ylab
