#pragma once

#include <iosfwd>

#include "ylab/config.hpp"

namespace ylab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;      // parse, precondition or solver failure
inline constexpr int kExitViolation = 2;  // a checked predicate failed

// Runs one task and writes <dir>/<prefix>.csv, .json (and .grid when asked)
// once at the end. Progress and verdict lines go to `log`. YLAB_THREADS caps
// the OpenMP thread count.
int run(const RunConfig& cfg, std::ostream& log);

// Mesh width used when the config leaves h unset.
double default_h(const RunConfig& cfg);

}  // namespace ylab
