// include/beq/errors.hpp
//
// Exception types shared by every module. Each carries enough context for the
// CLI and the run manifest to report a precise exit reason.

#pragma once

#include <stdexcept>
#include <string>

namespace beq {

/// Input that violates an operation's precondition (unknown preset, b = -1,
/// sigma <= 0, mismatched grids, too-narrow stencils, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at or beyond the blowup time t >= T.
class BlowupDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A field does not decay at the edges of the truncated line.
class DomainTooSmallError : public std::runtime_error {
 public:
  DomainTooSmallError(const std::string& what, double suggested_half_width)
      : std::runtime_error(what), suggested_half_width_(suggested_half_width) {}

  double suggested_half_width() const noexcept { return suggested_half_width_; }

 private:
  double suggested_half_width_;
};

/// Requested time step exceeds the transport CFL limit.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double limit)
      : std::runtime_error(what), limit_(limit) {}

  double limit() const noexcept { return limit_; }

 private:
  double limit_;
};

/// A non-finite value appeared during integration.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rate fitting is impossible (too few samples, zero norms in window).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace beq
