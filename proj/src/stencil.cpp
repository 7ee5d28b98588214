#include "ylab/stencil.hpp"

#include <deque>

namespace ylab {

Stencil build_stencil(const GridField& field, const Domain& domain) {
  const int n = field.n;
  if (domain.dim() != n) throw PreconditionError("build_stencil: dimension mismatch");
  Stencil st;
  st.n = n;
  st.h = field.h;
  st.unknown_of.assign(field.size(), -1);
  for (std::int64_t i = 0; i < field.size(); ++i)
    if (field.mask[i] == NodeKind::interior) {
      st.unknown_of[i] = st.size();
      st.node.push_back(i);
    }
  const std::int32_t m = st.size();
  st.nbr.assign(static_cast<std::size_t>(m) * 2 * n, 0);
  st.regular.assign(m, 1);

  // first pass: neighbor kinds; specials are appended serially for a stable order
  for (std::int32_t u = 0; u < m; ++u) {
    const std::int64_t i = st.node[u];
    for (int k = 0; k < n; ++k) {
      const std::int64_t s = field.stride(k);
      for (int sgn = 0; sgn < 2; ++sgn) {
        const std::int64_t j = sgn == 0 ? i + s : i - s;
        std::int32_t& slot = st.nbr[static_cast<std::size_t>(u) * 2 * n + 2 * k + sgn];
        if (field.mask[j] == NodeKind::interior) {
          slot = st.unknown_of[j];
          continue;
        }
        st.regular[u] = 0;
        Stencil::Special sp;
        if (field.mask[j] == NodeKind::cut) {
          sp.arm = field.h;
          sp.cut_node = j;
        } else {
          sp.crossing = true;
        }
        slot = -static_cast<std::int32_t>(st.special.size()) - 1;
        st.special.push_back(sp);
      }
    }
  }

  // second pass: crossing distances, the expensive part
  const auto count = static_cast<std::int64_t>(st.special.size());
  std::vector<std::int32_t> owner(count), dir(count);
  for (std::int32_t u = 0; u < m; ++u)
    for (int q = 0; q < 2 * n; ++q) {
      const std::int32_t slot = st.nbr[static_cast<std::size_t>(u) * 2 * n + q];
      if (slot < 0) {
        owner[-slot - 1] = u;
        dir[-slot - 1] = q;
      }
    }
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t s = 0; s < count; ++s) {
    Stencil::Special& sp = st.special[s];
    if (!sp.crossing) continue;
    const int axis = dir[s] / 2;
    const double sign = dir[s] % 2 == 0 ? 1.0 : -1.0;
    sp.arm = domain.axis_crossing(field.position(st.node[owner[s]]), axis, sign, field.h);
  }
  return st;
}

int component_count(const Stencil& st) {
  const std::int32_t m = st.size();
  std::vector<std::uint8_t> seen(m, 0);
  int components = 0;
  std::deque<std::int32_t> queue;
  for (std::int32_t start = 0; start < m; ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::int32_t u = queue.front();
      queue.pop_front();
      for (int q = 0; q < 2 * st.n; ++q) {
        const std::int32_t v = st.nbr[static_cast<std::size_t>(u) * 2 * st.n + q];
        if (v >= 0 && !seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
      }
    }
  }
  return components;
}

std::vector<double> v_boundary_data(const Stencil& st, const GridField& field) {
  std::vector<double> data(st.special.size(), 0.0);
  for (std::size_t s = 0; s < data.size(); ++s)
    if (!st.special[s].crossing) data[s] = field.values[st.special[s].cut_node];
  return data;
}

}  // namespace ylab
