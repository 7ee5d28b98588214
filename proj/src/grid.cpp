#include "ylab/grid.hpp"

#include <cmath>

namespace ylab {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::exterior: return "exterior";
    case NodeKind::cut: return "cut";
    case NodeKind::interior: return "interior";
  }
  return "?";
}

std::int64_t GridField::count(NodeKind k) const {
  std::int64_t c = 0;
  for (NodeKind m : mask) c += m == k;
  return c;
}

GridField make_grid(const Domain& domain, double h, double safety) {
  const int n = domain.dim();
  if (n < 3 || n > kGridMaxDim) throw PreconditionError("make_grid: full-grid solves need n = 3 or 4");
  if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("make_grid: mesh width must be positive");
  if (!(safety >= 0.0 && safety < 1.0)) throw PreconditionError("make_grid: safety factor must be in [0, 1)");

  GridField g;
  g.n = n;
  g.h = h;
  const auto [bmin, bmax] = domain.bounding_box();
  std::int64_t total = 1;
  for (int k = 0; k < n; ++k) {
    g.lo[k] = static_cast<std::int64_t>(std::floor(bmin[k] / h)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(bmax[k] / h)) + 1;
    g.dims[k] = hi - g.lo[k] + 1;
    total *= g.dims[k];
  }
  if (total > (std::int64_t{1} << 31)) throw PreconditionError("make_grid: lattice too large");
  g.mask.assign(total, NodeKind::exterior);
  g.values.assign(total, 0.0);

  const double band = safety * h;
#pragma omp parallel for schedule(dynamic, 4096)
  for (std::int64_t i = 0; i < total; ++i) {
    const double d = domain.signed_distance(g.position(i));
    if (d > band)
      g.mask[i] = NodeKind::interior;
    else if (d > 0.0)
      g.mask[i] = NodeKind::cut;
  }

  for (std::int64_t i = 0; i < total; ++i)
    if (g.mask[i] == NodeKind::cut) g.cut.push_back(CutNode{i, 0.0, 0.0, {}});

  const int cuts = static_cast<int>(g.cut.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int c = 0; c < cuts; ++c) {
    CutNode& cn = g.cut[c];
    const Vec x = g.position(cn.node);
    cn.distance = domain.signed_distance(x);
    cn.mean_curvature = domain.nearest_boundary_point(x).mean_curvature;
    g.values[cn.node] = cn.distance - cn.mean_curvature * cn.distance * cn.distance / (2.0 * (n - 1));
    for (int k = 0; k < n; ++k)
      for (int s = 0; s < 2; ++s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        Vec y = x;
        y[k] += sign * h;
        cn.arm_fraction[2 * k + s] =
            domain.signed_distance(y) > 0.0 ? 1.0 : domain.axis_crossing(x, k, sign, h) / h;
      }
  }
  return g;
}

double interpolate(const GridField& field, const Vec& x, double fallback) {
  const int n = field.n;
  std::array<std::int64_t, kGridMaxDim> base{};
  std::array<double, kGridMaxDim> t{};
  for (int k = 0; k < n; ++k) {
    const double s = x[k] / field.h - static_cast<double>(field.lo[k]);
    auto b = static_cast<std::int64_t>(std::floor(s));
    if (b < 0 || b + 1 >= field.dims[k]) return fallback;
    base[k] = b;
    t[k] = s - static_cast<double>(b);
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << n); ++corner) {
    auto c = base;
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
      const bool up = (corner >> k) & 1;
      c[k] += up;
      w *= up ? t[k] : 1.0 - t[k];
    }
    const std::int64_t idx = field.index(c);
    if (field.mask[idx] == NodeKind::exterior) return fallback;
    acc += w * field.values[idx];
  }
  return acc;
}

}  // namespace ylab
