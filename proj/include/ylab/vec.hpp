#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace ylab {

// Largest ambient dimension handled by the geometry catalog. The radial
// solvers take any n >= 3 and do not go through Vec.
inline constexpr int kMaxDim = 8;

// Point or vector in R^n with inline storage.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: dimension out of range");
  }
  Vec(std::initializer_list<double> xs) : Vec(static_cast<int>(xs.size())) {
    int i = 0;
    for (double x : xs) c_[i++] = x;
  }

  static Vec unit(int dim, int axis, double sign = 1.0) {
    Vec e(dim);
    e[axis] = sign;
    return e;
  }

  int dim() const { return dim_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  const double* begin() const { return c_.data(); }
  const double* end() const { return c_.data() + dim_; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  friend double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim_; ++i) s += a.c_[i] * b.c_[i];
    return s;
  }
  friend double norm2(const Vec& a) { return dot(a, a); }
  friend double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

  bool operator==(const Vec& o) const {
    if (dim_ != o.dim_) return false;
    for (int i = 0; i < dim_; ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }

 private:
  int dim_ = 0;
  std::array<double, kMaxDim> c_{};
};

}  // namespace ylab
