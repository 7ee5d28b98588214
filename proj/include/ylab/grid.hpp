#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ylab/geometry.hpp"

namespace ylab {

// Full-grid solves run in 3 or 4 dimensions.
inline constexpr int kGridMaxDim = 4;

enum class NodeKind : std::uint8_t { exterior = 0, cut = 1, interior = 2 };

const char* to_string(NodeKind k);

// Lattice node with 0 < d <= safety*h. It carries a fixed value from the
// two-term boundary expansion instead of an equation.
struct CutNode {
  std::int64_t node = 0;
  double distance = 0.0;
  double mean_curvature = 0.0;
  // Distance to the boundary along +e_k (slot 2k) and -e_k (slot 2k+1) in
  // units of h; 1 when the neighbor in that direction is inside.
  std::array<double, 2 * kGridMaxDim> arm_fraction{};
};

// Values on the lattice {h * (lo + i)}, i in [0, dims), with a node mask.
// Axis 0 varies fastest.
struct GridField {
  int n = 3;
  double h = 0.0;
  std::array<std::int64_t, kGridMaxDim> lo{};
  std::array<std::int64_t, kGridMaxDim> dims{};
  std::vector<NodeKind> mask;
  std::vector<double> values;  // 0 on exterior nodes
  std::vector<CutNode> cut;

  std::int64_t size() const { return static_cast<std::int64_t>(mask.size()); }
  std::int64_t stride(int axis) const {
    std::int64_t s = 1;
    for (int k = 0; k < axis; ++k) s *= dims[k];
    return s;
  }
  // Per-axis offsets of a linear index.
  std::array<std::int64_t, kGridMaxDim> coords(std::int64_t index) const {
    std::array<std::int64_t, kGridMaxDim> c{};
    for (int k = 0; k < n; ++k) {
      c[k] = index % dims[k];
      index /= dims[k];
    }
    return c;
  }
  std::int64_t index(const std::array<std::int64_t, kGridMaxDim>& c) const {
    std::int64_t idx = 0;
    for (int k = n - 1; k >= 0; --k) idx = idx * dims[k] + c[k];
    return idx;
  }
  Vec position(std::int64_t index) const {
    const auto c = coords(index);
    Vec x(n);
    for (int k = 0; k < n; ++k) x[k] = h * static_cast<double>(lo[k] + c[k]);
    return x;
  }
  std::int64_t count(NodeKind k) const;
};

// Classifies every lattice node of the padded bounding box: exterior for
// d <= 0, cut for 0 < d <= safety*h, interior otherwise. Cut nodes get
// v = d - H d^2 / (2(n-1)) with H at their nearest boundary point.
GridField make_grid(const Domain& domain, double h, double safety = 0.25);

// Linear interpolation of a field's interior/cut values at x. Cells touching
// an exterior node return `fallback`.
double interpolate(const GridField& field, const Vec& x, double fallback);

}  // namespace ylab
