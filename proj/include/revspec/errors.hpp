#pragma once

#include <stdexcept>
#include <string>

namespace revspec {

// Base class for all toolkit errors. The what() string always starts with
// the error name so batch drivers can report which check tripped.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& msg)
      : std::runtime_error(name + ": " + msg) {}
};

#define REVSPEC_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

REVSPEC_DEFINE_ERROR(UnsupportedOrder);
REVSPEC_DEFINE_ERROR(NonpositiveRadius);
REVSPEC_DEFINE_ERROR(SlopeTooSteep);
REVSPEC_DEFINE_ERROR(FitFailed);
REVSPEC_DEFINE_ERROR(NoConvergence);
REVSPEC_DEFINE_ERROR(SolverStall);
REVSPEC_DEFINE_ERROR(DegenerateBoundaryValue);
REVSPEC_DEFINE_ERROR(PoleHit);
REVSPEC_DEFINE_ERROR(HypothesisViolation);

#undef REVSPEC_DEFINE_ERROR

}  // namespace revspec
