#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace fastqz {

using Complex = std::complex<double>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Generalized eigenvalue alpha/beta. beta == 0 marks an infinite eigenvalue.
struct EigenPair {
  Complex alpha{};
  Complex beta{1.0, 0.0};

  bool infinite() const noexcept { return beta == Complex{}; }
  Complex value() const { return alpha / beta; }
};

struct EigenResult {
  std::vector<EigenPair> eigenvalues;
  /// Sweeps spent before each deflation, in deflation order.
  std::vector<int> iterations;
  int total_sweeps = 0;

  double average_iterations() const {
    return eigenvalues.empty() ? 0.0
                               : static_cast<double>(total_sweeps) /
                                     static_cast<double>(eigenvalues.size());
  }

  /// Finite eigenvalues only, as plain complex numbers.
  std::vector<Complex> finite_values() const {
    std::vector<Complex> out;
    out.reserve(eigenvalues.size());
    for (const auto& e : eigenvalues)
      if (!e.infinite()) out.push_back(e.value());
    return out;
  }
};

/// Complex product without the C99 Annex G NaN recovery path; inputs in
/// this library are checked for finiteness where it matters.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace fastqz
