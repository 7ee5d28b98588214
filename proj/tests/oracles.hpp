#pragma once

// Reference values computed independently of the library solvers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>

namespace oracle {

// Radial profile of v (v'' + (n-1)v'/r) = (n/2)(v'^2 - 1) shot from an interior
// maximum v(1) = m, v'(1) = 0. Near the max r is the independent variable;
// once |v'| >= 1/2 the roles swap and r, v' are integrated as functions of v,
// which is stable all the way down to v = 0.
struct Shot {
  double inner;  // where v reaches 0 going inward (0 if the profile reaches r = 0 first)
  double outer;
};

inline Shot shoot(int n, double m, int steps) {
  const double hn = 0.5 * n;
  auto rhs_r = [&](double r, const std::array<double, 2>& y) {
    // y = (v, p)
    return std::array<double, 2>{y[1], (hn * (y[1] * y[1] - 1.0)) / y[0] - (n - 1) * y[1] / r};
  };
  auto rhs_v = [&](double v, const std::array<double, 2>& y) {
    // y = (r, p), derivatives with respect to v
    const double r = y[0], p = y[1];
    return std::array<double, 2>{1.0 / p, ((hn * (p * p - 1.0)) / v - (n - 1) * p / r) / p};
  };
  auto rk4 = [](auto f, double t, std::array<double, 2> y, double dt) {
    auto add = [](std::array<double, 2> a, const std::array<double, 2>& b, double s) {
      a[0] += s * b[0];
      a[1] += s * b[1];
      return a;
    };
    const auto k1 = f(t, y);
    const auto k2 = f(t + 0.5 * dt, add(y, k1, 0.5 * dt));
    const auto k3 = f(t + 0.5 * dt, add(y, k2, 0.5 * dt));
    const auto k4 = f(t + dt, add(y, k3, dt));
    for (int i = 0; i < 2; ++i) y[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return y;
  };

  Shot out{};
  for (int dir : {-1, 1}) {
    // phase 1: in r until |p| >= 1/2
    double r = 1.0;
    std::array<double, 2> y{m, 0.0};
    const double dr = dir * m / steps;
    bool hit_center = false;
    while (std::abs(y[1]) < 0.5) {
      if (r + dr <= 0.0) {
        hit_center = true;
        break;
      }
      y = rk4(rhs_r, r, y, dr);
      r += dr;
    }
    if (hit_center) {
      out.inner = 0.0;
      continue;
    }
    // phase 2: in v from y[0] down to a tiny value
    const double v_start = y[0];
    const double v_end = 1e-9 * m;
    std::array<double, 2> z{r, y[1]};
    const int nv = steps;
    const double dv = (v_end - v_start) / nv;
    double v = v_start;
    bool hit = false;
    for (int i = 0; i < nv; ++i) {
      if (z[0] <= 0.0 || !std::isfinite(z[0])) {
        hit = true;
        break;
      }
      z = rk4(rhs_v, v, z, dv);
      v += dv;
    }
    if (hit) {
      out.inner = 0.0;
      continue;
    }
    const double edge = z[0] - v_end / z[1];
    (dir < 0 ? out.inner : out.outer) = edge;
  }
  return out;
}

// max_r v on the annulus r0 < r < R, by shooting on the one-parameter family
// (scale fixed by r* = 1) and root-finding on the ratio of the end radii.
inline double annulus_max_value(int n, double r0, double R, int steps) {
  const double target = R / r0;
  auto ratio_gap = [&](double m) {
    const Shot s = shoot(n, m, steps);
    if (s.inner <= 0.0) return 1e6;
    return s.outer / s.inner - target;
  };
  // bracket: small m gives a thin shell (ratio -> 1), large m a wide one
  double lo = 1e-3, hi = lo;
  while (ratio_gap(hi) < 0.0) hi *= 1.5;
  lo = hi / 1.5;
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
  const auto br = boost::math::tools::toms748_solve(ratio_gap, lo, hi, tol, iters);
  const double m = 0.5 * (br.first + br.second);
  const Shot s = shoot(n, m, steps);
  return m * (r0 / s.inner);
}

// Richardson extrapolation of the RK4 shooting over step counts N, 2N.
inline double annulus_max_value_extrapolated(int n, double r0, double R) {
  const double a = annulus_max_value(n, r0, R, 4000);
  const double b = annulus_max_value(n, r0, R, 8000);
  return b + (b - a) / 15.0;
}

}  // namespace oracle
