#pragma once

#include <cstdint>
#include <vector>

#include "ylab/stencil.hpp"

namespace ylab {

enum class Exec { serial, parallel };

// Matrix-free operators on a Stencil. `bc` holds one Dirichlet value per
// special slot. All arrays are indexed by unknown.
//
// v-equation:  F(v) = v Δ_h v - (n/2)(|∇_h v|^2 - 1)
// u-equation:  G(u) = Δ_h u - c u^p
// with three-point unequal-arm differences along each axis.

void v_residual(const Stencil& st, const double* bc, const double* v, double* f, Exec exec = Exec::parallel);
// out = F'(v) w = w Δv + v Δw - n ∇v·∇w  (w vanishes at special slots)
void v_jacobian_apply(const Stencil& st, const double* bc, const double* v, const double* w, double* out,
                      Exec exec = Exec::parallel);
void v_jacobian_diagonal(const Stencil& st, const double* bc, const double* v, double* diag,
                         Exec exec = Exec::parallel);

void u_residual(const Stencil& st, const double* bc, double c, double p, const double* u, double* f,
                Exec exec = Exec::parallel);
void u_jacobian_apply(const Stencil& st, double c, double p, const double* u, const double* w, double* out,
                      Exec exec = Exec::parallel);
void u_jacobian_diagonal(const Stencil& st, double c, double p, const double* u, double* diag,
                         Exec exec = Exec::parallel);

// Deterministic blocked reduction: the result does not depend on the thread count.
double dot(const double* x, const double* y, std::int64_t count, Exec exec = Exec::parallel);
double max_abs(const double* x, std::int64_t count);

// Straightforward serial versions kept as the test oracle for the kernels
// above and as the benchmark baseline.
namespace reference {
void v_residual(const Stencil& st, const double* bc, const double* v, double* f);
void v_jacobian_apply(const Stencil& st, const double* bc, const double* v, const double* w, double* out);
void v_jacobian_diagonal(const Stencil& st, const double* bc, const double* v, double* diag);
void u_residual(const Stencil& st, const double* bc, double c, double p, const double* u, double* f);
void u_jacobian_apply(const Stencil& st, double c, double p, const double* u, const double* w, double* out);
double dot(const double* x, const double* y, std::int64_t count);
}  // namespace reference

}  // namespace ylab
