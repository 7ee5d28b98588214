#include "ylab/symeig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ylab/errors.hpp"

namespace ylab {

SymMatrix::SymMatrix(int order) : n(order) {
  if (order < 1 || order > kSymMaxDim) throw PreconditionError("SymMatrix: order out of range");
}

SymMatrix SymMatrix::identity(int order, double scale) {
  SymMatrix m(order);
  for (int i = 0; i < order; ++i) m(i, i) = scale;
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

Spectrum eigenvalues_3x3(const SymMatrix& m) {
  if (m.n != 3) throw PreconditionError("eigenvalues_3x3: matrix is not 3x3");
  Spectrum e{};
  const double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  if (off == 0.0) {
    e = {m(0, 0), m(1, 1), m(2, 2), 0.0};
    std::sort(e.begin(), e.begin() + 3);
    return e;
  }
  const double q = m.trace() / 3.0;
  const double d0 = m(0, 0) - q, d1 = m(1, 1) - q, d2 = m(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  // B = (A - qI)/p, r = det(B)/2
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const double b01 = m(0, 1) / p, b02 = m(0, 2) / p, b12 = m(1, 2) / p;
  const double det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  e = {lo, 3.0 * q - hi - lo, hi, 0.0};
  std::sort(e.begin(), e.begin() + 3);
  return e;
}

Spectrum eigenvalues_jacobi(const SymMatrix& m) {
  const int n = m.n;
  SymMatrix a = m;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  Spectrum e{};
  for (int i = 0; i < n; ++i) e[i] = a(i, i);
  std::sort(e.begin(), e.begin() + n);
  return e;
}

Spectrum eigenvalues(const SymMatrix& m) { return m.n == 3 ? eigenvalues_3x3(m) : eigenvalues_jacobi(m); }

}  // namespace ylab
