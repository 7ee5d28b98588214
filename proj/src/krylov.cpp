#include "ylab/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace ylab {

namespace {

// y = a*x + y
void axpy(double a, const std::vector<double>& x, std::vector<double>& y, Exec exec) {
  const auto m = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < m; ++i) y[i] += a * x[i];
}

void scale_into(const std::vector<double>& d, const std::vector<double>& x, std::vector<double>& y, Exec exec) {
  const auto m = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < m; ++i) y[i] = d[i] * x[i];
}

}  // namespace

KrylovResult bicgstab(const LinearOperator& A, const std::vector<double>& inv_diag, const std::vector<double>& b,
                      std::vector<double>& x, double rtol, int max_iter, Exec exec) {
  const auto m = static_cast<std::int64_t>(b.size());
  auto ddot = [&](const std::vector<double>& p, const std::vector<double>& q) { return dot(p.data(), q.data(), m, exec); };
  KrylovResult res;
  x.resize(m, 0.0);
  const double bnorm = std::sqrt(ddot(b, b));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    return res;
  }
  std::vector<double> r(m), r0(m), p(m, 0.0), v(m, 0.0), s(m), t(m), y(m), z(m);
  A(x.data(), r.data());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < m; ++i) r[i] = b[i] - r[i];
  r0 = r;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  double rnorm = std::sqrt(ddot(r, r));
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (res.relative_residual <= rtol) {
      res.converged = true;
      return res;
    }
    const double rho_new = ddot(r0, r);
    if (rho_new == 0.0 || omega == 0.0) break;  // breakdown
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < m; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    scale_into(inv_diag, p, y, exec);
    A(y.data(), v.data());
    const double r0v = ddot(r0, v);
    if (r0v == 0.0) break;
    alpha = rho / r0v;
    s = r;
    axpy(-alpha, v, s, exec);
    const double snorm = std::sqrt(ddot(s, s));
    if (snorm / bnorm <= rtol) {
      axpy(alpha, y, x, exec);
      res.iterations = it + 1;
      res.relative_residual = snorm / bnorm;
      res.converged = true;
      return res;
    }
    scale_into(inv_diag, s, z, exec);
    A(z.data(), t.data());
    const double tt = ddot(t, t);
    omega = tt > 0.0 ? ddot(t, s) / tt : 0.0;
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t i = 0; i < m; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    rnorm = std::sqrt(ddot(r, r));
  }
  // report the true residual on exit
  A(x.data(), r.data());
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < m; ++i) r[i] = b[i] - r[i];
  res.relative_residual = std::sqrt(ddot(r, r)) / bnorm;
  res.converged = res.relative_residual <= rtol;
  return res;
}

}  // namespace ylab
