#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastqz/types.hpp"

namespace fastqz {

/// Bad user-facing input: non-finite numbers, zero polynomials, bad degree.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generator dimensions that do not chain, or a matrix of the wrong shape.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical consistency check failed (non-finite intermediate, lost
/// orthonormality).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::ptrdiff_t step = -1)
      : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
        step_(step) {}

  std::ptrdiff_t step() const noexcept { return step_; }

 private:
  std::ptrdiff_t step_;
};

/// The eigenvalue driver ran out of sweeps. Carries whatever was deflated
/// so far; entries in [active_lo, active_hi] are not valid.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<EigenPair> partial, std::size_t active_lo,
                   std::size_t active_hi)
      : std::runtime_error(what),
        partial_(std::move(partial)),
        active_lo_(active_lo),
        active_hi_(active_hi) {}

  const std::vector<EigenPair>& partial() const noexcept { return partial_; }
  std::size_t active_lo() const noexcept { return active_lo_; }
  std::size_t active_hi() const noexcept { return active_hi_; }

 private:
  std::vector<EigenPair> partial_;
  std::size_t active_lo_;
  std::size_t active_hi_;
};

}  // namespace fastqz
