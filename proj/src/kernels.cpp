#include "ylab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ylab {

namespace {

// Derivatives of one field along one axis at one unknown.
struct AxisDiff {
  double d1, d2;      // first and second difference
  double c1, c2;      // weights of the center value
  double wp1, wm1;    // first-difference weights of the + and - neighbors
  double wp2, wm2;    // second-difference weights
  std::int32_t up, um;  // neighbor unknowns, -1 for Dirichlet slots
};

inline AxisDiff axis_diff(const Stencil& st, const double* bc, const double* x, std::int32_t u, int k) {
  const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(u) * 2 * st.n;
  const std::int32_t sp = nb[2 * k], sm = nb[2 * k + 1];
  double a = st.h, b = st.h, fp, fm;
  AxisDiff r;
  if (sp >= 0) {
    fp = x[sp];
    r.up = sp;
  } else {
    a = st.special[-sp - 1].arm;
    fp = bc[-sp - 1];
    r.up = -1;
  }
  if (sm >= 0) {
    fm = x[sm];
    r.um = sm;
  } else {
    b = st.special[-sm - 1].arm;
    fm = bc[-sm - 1];
    r.um = -1;
  }
  const double den = a * b * (a + b);
  r.wp1 = b * b / den;
  r.wm1 = -a * a / den;
  r.c1 = (a * a - b * b) / den;
  r.wp2 = 2.0 * b / den;
  r.wm2 = 2.0 * a / den;
  r.c2 = -2.0 / (a * b);
  const double f0 = x[u];
  r.d1 = r.wp1 * fp + r.wm1 * fm + r.c1 * f0;
  r.d2 = r.wp2 * fp + r.wm2 * fm + r.c2 * f0;
  return r;
}

constexpr std::int64_t kBlock = 4096;

}  // namespace

void v_residual(const Stencil& st, const double* bc, const double* v, double* f, Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
  const double inv2h = 0.5 / st.h, invh2 = 1.0 / (st.h * st.h);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t u = 0; u < m; ++u) {
    double lap = 0.0, grad2 = 0.0;
    if (st.regular[u]) {
      const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(u) * 2 * n;
      for (int k = 0; k < n; ++k) {
        const double fp = v[nb[2 * k]], fm = v[nb[2 * k + 1]];
        const double d1 = (fp - fm) * inv2h;
        lap += (fp - 2.0 * v[u] + fm) * invh2;
        grad2 += d1 * d1;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        const AxisDiff d = axis_diff(st, bc, v, u, k);
        lap += d.d2;
        grad2 += d.d1 * d.d1;
      }
    }
    f[u] = v[u] * lap - 0.5 * n * (grad2 - 1.0);
  }
}

void v_jacobian_apply(const Stencil& st, const double* bc, const double* v, const double* w, double* out,
                      Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
  const double inv2h = 0.5 / st.h, invh2 = 1.0 / (st.h * st.h);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t u = 0; u < m; ++u) {
    double lap = 0.0, lapw = 0.0, cross = 0.0;
    if (st.regular[u]) {
      const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(u) * 2 * n;
      for (int k = 0; k < n; ++k) {
        const std::int32_t p = nb[2 * k], q = nb[2 * k + 1];
        lap += (v[p] - 2.0 * v[u] + v[q]) * invh2;
        lapw += (w[p] - 2.0 * w[u] + w[q]) * invh2;
        cross += (v[p] - v[q]) * (w[p] - w[q]) * inv2h * inv2h;
      }
    } else {
      for (int k = 0; k < n; ++k) {
        const AxisDiff d = axis_diff(st, bc, v, u, k);
        const double wp = d.up >= 0 ? w[d.up] : 0.0;
        const double wm = d.um >= 0 ? w[d.um] : 0.0;
        lap += d.d2;
        lapw += d.wp2 * wp + d.wm2 * wm + d.c2 * w[u];
        cross += d.d1 * (d.wp1 * wp + d.wm1 * wm + d.c1 * w[u]);
      }
    }
    out[u] = w[u] * lap + v[u] * lapw - n * cross;
  }
}

void v_jacobian_diagonal(const Stencil& st, const double* bc, const double* v, double* diag, Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t u = 0; u < m; ++u) {
    double lap = 0.0, center = 0.0, cross = 0.0;
    for (int k = 0; k < n; ++k) {
      const AxisDiff d = axis_diff(st, bc, v, u, k);
      lap += d.d2;
      center += d.c2;
      cross += d.d1 * d.c1;
    }
    diag[u] = lap + v[u] * center - n * cross;
  }
}

void u_residual(const Stencil& st, const double* bc, double c, double p, const double* u, double* f, Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
  const double invh2 = 1.0 / (st.h * st.h);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t i = 0; i < m; ++i) {
    double lap = 0.0;
    if (st.regular[i]) {
      const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(i) * 2 * n;
      for (int k = 0; k < n; ++k) lap += (u[nb[2 * k]] - 2.0 * u[i] + u[nb[2 * k + 1]]) * invh2;
    } else {
      for (int k = 0; k < n; ++k) lap += axis_diff(st, bc, u, i, k).d2;
    }
    f[i] = lap - c * std::pow(u[i], p);
  }
}

void u_jacobian_apply(const Stencil& st, double c, double p, const double* u, const double* w, double* out,
                      Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
  const double invh2 = 1.0 / (st.h * st.h);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t i = 0; i < m; ++i) {
    double lapw = 0.0;
    const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(i) * 2 * n;
    if (st.regular[i]) {
      for (int k = 0; k < n; ++k) lapw += (w[nb[2 * k]] - 2.0 * w[i] + w[nb[2 * k + 1]]) * invh2;
    } else {
      for (int k = 0; k < n; ++k) {
        const std::int32_t sp = nb[2 * k], sm = nb[2 * k + 1];
        const double a = sp >= 0 ? st.h : st.special[-sp - 1].arm;
        const double b = sm >= 0 ? st.h : st.special[-sm - 1].arm;
        const double den = a * b * (a + b);
        lapw += (sp >= 0 ? 2.0 * b / den * w[sp] : 0.0) + (sm >= 0 ? 2.0 * a / den * w[sm] : 0.0) -
                2.0 / (a * b) * w[i];
      }
    }
    out[i] = lapw - c * p * std::pow(u[i], p - 1.0) * w[i];
  }
}

void u_jacobian_diagonal(const Stencil& st, double c, double p, const double* u, double* diag, Exec exec) {
  const int n = st.n;
  const std::int32_t m = st.size();
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int32_t i = 0; i < m; ++i) {
    const std::int32_t* nb = st.nbr.data() + static_cast<std::size_t>(i) * 2 * n;
    double center = 0.0;
    for (int k = 0; k < n; ++k) {
      const std::int32_t sp = nb[2 * k], sm = nb[2 * k + 1];
      const double a = sp >= 0 ? st.h : st.special[-sp - 1].arm;
      const double b = sm >= 0 ? st.h : st.special[-sm - 1].arm;
      center -= 2.0 / (a * b);
    }
    diag[i] = center - c * p * std::pow(u[i], p - 1.0);
  }
}

double dot(const double* x, const double* y, std::int64_t count, Exec exec) {
  const std::int64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t lo = b * kBlock, hi = std::min(count, lo + kBlock);
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += x[i] * y[i];
    partial[b] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

double max_abs(const double* x, std::int64_t count) {
  double m = 0.0;
  for (std::int64_t i = 0; i < count; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

namespace reference {

namespace {

// Arm lengths and neighbor values along one axis; w-values are 0 at Dirichlet slots.
struct Arms {
  double a, b;     // + and - arm lengths
  double fp, fm;   // field values
  double wp, wm;   // direction values
};

Arms arms(const Stencil& st, const double* bc, const double* x, const double* w, std::int32_t u, int k) {
  Arms r{};
  const std::int32_t sp = st.nbr[static_cast<std::size_t>(u) * 2 * st.n + 2 * k];
  const std::int32_t sm = st.nbr[static_cast<std::size_t>(u) * 2 * st.n + 2 * k + 1];
  if (sp >= 0) {
    r.a = st.h;
    r.fp = x[sp];
    r.wp = w ? w[sp] : 0.0;
  } else {
    r.a = st.special[-sp - 1].arm;
    r.fp = bc ? bc[-sp - 1] : 0.0;
    r.wp = 0.0;
  }
  if (sm >= 0) {
    r.b = st.h;
    r.fm = x[sm];
    r.wm = w ? w[sm] : 0.0;
  } else {
    r.b = st.special[-sm - 1].arm;
    r.fm = bc ? bc[-sm - 1] : 0.0;
    r.wm = 0.0;
  }
  return r;
}

double first(double a, double b, double fp, double f0, double fm) {
  return (b * b * (fp - f0) - a * a * (fm - f0)) / (a * b * (a + b));
}

double second(double a, double b, double fp, double f0, double fm) {
  return 2.0 * (b * (fp - f0) + a * (fm - f0)) / (a * b * (a + b));
}

}  // namespace

void v_residual(const Stencil& st, const double* bc, const double* v, double* f) {
  for (std::int32_t u = 0; u < st.size(); ++u) {
    double lap = 0.0, grad2 = 0.0;
    for (int k = 0; k < st.n; ++k) {
      const Arms r = arms(st, bc, v, nullptr, u, k);
      lap += second(r.a, r.b, r.fp, v[u], r.fm);
      const double g = first(r.a, r.b, r.fp, v[u], r.fm);
      grad2 += g * g;
    }
    f[u] = v[u] * lap - 0.5 * st.n * (grad2 - 1.0);
  }
}

void v_jacobian_apply(const Stencil& st, const double* bc, const double* v, const double* w, double* out) {
  for (std::int32_t u = 0; u < st.size(); ++u) {
    double lap = 0.0, lapw = 0.0, cross = 0.0;
    for (int k = 0; k < st.n; ++k) {
      const Arms r = arms(st, bc, v, w, u, k);
      lap += second(r.a, r.b, r.fp, v[u], r.fm);
      lapw += second(r.a, r.b, r.wp, w[u], r.wm);
      cross += first(r.a, r.b, r.fp, v[u], r.fm) * first(r.a, r.b, r.wp, w[u], r.wm);
    }
    out[u] = w[u] * lap + v[u] * lapw - st.n * cross;
  }
}

void v_jacobian_diagonal(const Stencil& st, const double* bc, const double* v, double* diag) {
  // column u of the Jacobian applied to the unit vector e_u, read at row u
  for (std::int32_t u = 0; u < st.size(); ++u) {
    double lap = 0.0, lapw = 0.0, cross = 0.0;
    for (int k = 0; k < st.n; ++k) {
      const Arms r = arms(st, bc, v, nullptr, u, k);
      lap += second(r.a, r.b, r.fp, v[u], r.fm);
      lapw += second(r.a, r.b, 0.0, 1.0, 0.0);
      cross += first(r.a, r.b, r.fp, v[u], r.fm) * first(r.a, r.b, 0.0, 1.0, 0.0);
    }
    diag[u] = lap + v[u] * lapw - st.n * cross;
  }
}

void u_residual(const Stencil& st, const double* bc, double c, double p, const double* u, double* f) {
  for (std::int32_t i = 0; i < st.size(); ++i) {
    double lap = 0.0;
    for (int k = 0; k < st.n; ++k) {
      const Arms r = arms(st, bc, u, nullptr, i, k);
      lap += second(r.a, r.b, r.fp, u[i], r.fm);
    }
    f[i] = lap - c * std::pow(u[i], p);
  }
}

void u_jacobian_apply(const Stencil& st, double c, double p, const double* u, const double* w, double* out) {
  for (std::int32_t i = 0; i < st.size(); ++i) {
    double lapw = 0.0;
    for (int k = 0; k < st.n; ++k) {
      const Arms r = arms(st, nullptr, u, w, i, k);
      lapw += second(r.a, r.b, r.wp, w[i], r.wm);
    }
    out[i] = lapw - c * p * std::pow(u[i], p - 1.0) * w[i];
  }
}

double dot(const double* x, const double* y, std::int64_t count) {
  double s = 0.0;
  for (std::int64_t i = 0; i < count; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace reference

}  // namespace ylab
