#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fwcuts {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (dimension mismatch, bad config).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The enumeration oracle refuses dimensions that would blow up.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// No feasible point exists for an oracle predicate.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// iteration_bound called with the target inside the polytope.
class UndefinedBoundError : public Error {
 public:
  using Error::Error;
};

/// gap_closed called on an instance whose root LP is already integral.
class UndefinedGapError : public Error {
 public:
  using Error::Error;
};

/// Fixings of a row leave a negative residual capacity.
class InfeasibleFixingError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken; always indicates a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The simplex lost primal feasibility beyond tolerance even after a restart.
class NumericalInstabilityError : public Error {
 public:
  using Error::Error;
};

/// The LP became infeasible after a cut was added.
class InvalidCutError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance stream. `token_offset` is the 0-based index of the
/// offending token (equal to the token count for truncated input).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t token_offset)
      : Error(what), token_offset_(token_offset) {}

  std::size_t token_offset() const { return token_offset_; }

 private:
  std::size_t token_offset_;
};

}  // namespace fwcuts
