#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fastqz/double_double.hpp"
#include "fastqz/generators.hpp"

namespace fastqz {

/// Test polynomial families used by the experiments and the CLI.
enum class Family {
  random,      ///< re, im uniform in [-1, 1]
  cyclotomic,  ///< z^N - i
  power_sum,   ///< x^N + ... + x + 1
  equispaced,  ///< roots equally spaced in [-2.1, 1.9]
  chebyshev,   ///< T_N, first kind
  bernoulli,   ///< B_N
  unbalanced,  ///< p_k = 10^(6 (-1)^(k+1) - 3)
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct TestPolynomial {
  Family family;
  Polynomial poly;                          ///< double coefficients, not normalized
  std::vector<DoubleDoubleComplex> exact;   ///< the same coefficients carried to double-double
  std::vector<Complex> roots;               ///< closed-form roots, empty when none is known
};

TestPolynomial make_polynomial(Family f, std::size_t degree, std::uint64_t seed = 0);

/// Newton's method in double-double on the exact coefficients, started from
/// each approximate root. Converges to simple roots to far below double
/// precision, which makes the result usable as a forward-error reference.
std::vector<Complex> polish_roots(const std::vector<DoubleDoubleComplex>& coeffs, std::vector<Complex> roots);

/// Closed-form roots when the family has them, otherwise `approx` polished
/// against the exact coefficients.
std::vector<Complex> reference_roots(const TestPolynomial& tp, const std::vector<Complex>& approx);

/// max over reference roots of the distance to the nearest computed root.
double forward_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference);
/// Same matching, each distance divided by max(1, |reference root|): absolute
/// for roots inside the unit disk, relative outside. Meaningful when the
/// roots span many orders of magnitude.
double mixed_forward_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference);

}  // namespace fastqz
