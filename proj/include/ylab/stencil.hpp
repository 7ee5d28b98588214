#pragma once

#include <cstdint>
#include <vector>

#include "ylab/grid.hpp"

namespace ylab {

// Compact operator layout over the interior (unknown) nodes of a GridField.
//
// nbr holds 2n entries per unknown, slot 2k for +e_k and 2k+1 for -e_k:
//   >= 0   index of the neighboring unknown, arm h
//   <  0   -(s + 1) where s indexes `special`: a Dirichlet datum at distance arm
struct Stencil {
  struct Special {
    double arm = 0.0;
    bool crossing = false;  // true: boundary intersection; false: cut node
    std::int64_t cut_node = -1;
  };

  int n = 3;
  double h = 0.0;
  std::vector<std::int64_t> node;        // unknown -> lattice index
  std::vector<std::int32_t> unknown_of;  // lattice index -> unknown or -1
  std::vector<std::int32_t> nbr;
  std::vector<std::uint8_t> regular;     // all 2n neighbors are unknowns
  std::vector<Special> special;

  std::int32_t size() const { return static_cast<std::int32_t>(node.size()); }
};

// Shortley-Weller arms come from Domain::axis_crossing for exterior neighbors.
Stencil build_stencil(const GridField& field, const Domain& domain);

// Number of connected components of the unknown graph.
int component_count(const Stencil& st);

// Dirichlet data per special slot for the v-equation: 0 at crossings, the
// field value at cut nodes.
std::vector<double> v_boundary_data(const Stencil& st, const GridField& field);

}  // namespace ylab
