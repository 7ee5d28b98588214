#pragma once

#include <array>

namespace ylab {

inline constexpr int kSymMaxDim = 4;

// Dense symmetric matrix of order n <= 4, row-major in a fixed 4x4 block.
struct SymMatrix {
  int n = 3;
  std::array<double, kSymMaxDim * kSymMaxDim> a{};

  SymMatrix() = default;
  explicit SymMatrix(int order);
  static SymMatrix identity(int order, double scale = 1.0);

  double& operator()(int i, int j) { return a[i * kSymMaxDim + j]; }
  double operator()(int i, int j) const { return a[i * kSymMaxDim + j]; }
  double trace() const;
  // max |a_ij - a_ji|
  double asymmetry() const;
};

// Eigenvalues in ascending order; slots past n are zero.
using Spectrum = std::array<double, kSymMaxDim>;

// Trigonometric closed form for n = 3.
Spectrum eigenvalues_3x3(const SymMatrix& m);
// Cyclic Jacobi rotations, any n <= 4.
Spectrum eigenvalues_jacobi(const SymMatrix& m);
// Closed form for n = 3, Jacobi otherwise.
Spectrum eigenvalues(const SymMatrix& m);

}  // namespace ylab
