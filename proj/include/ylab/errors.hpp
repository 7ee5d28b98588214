#pragma once

#include <stdexcept>
#include <string>

namespace ylab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A boundary query landed on a corner/edge where the mean curvature is undefined.
class NonSmoothBoundary : public Error {
 public:
  using Error::Error;
};

// An iterative method (projection, Newton, Krylov) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ylab
