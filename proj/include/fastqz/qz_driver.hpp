#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fastqz/errors.hpp"
#include "fastqz/generators.hpp"
#include "fastqz/types.hpp"

namespace fastqz {

/// Shift and deflation policy shared by the structured and dense drivers so
/// both follow exactly the same iteration.
struct QzOptions {
  int max_iter_per_eig = 30;
  double tol_a = kEps;
  double tol_b = kEps;
  int exceptional_period = 12;
  double exceptional_angle = 0.4;
};

/// Root of det(A - lambda B) = 0 on a 2x2 block closest to A(1,1)/B(1,1).
/// Singular B falls back to a11/b11, then a00/b00, then a11.
Complex wilkinson_shift(const TrailingBlock& t);

/// True when the subdiagonal entry is negligible next to its diagonal
/// neighbours, or below the absolute floor eps * scale.
bool negligible_subdiagonal(Complex sub, Complex left, Complex right, double tol, double scale);

namespace detail {

// Backend requirements:
//   size(), subdiag(k), zero_subdiag(k), diag_a(k), diag_b(k), max_abs_diag_b(),
//   block(last) -> TrailingBlock, scale(), sweep(alpha, lo, hi)
template <class Backend>
EigenResult run_qz(Backend& be, const QzOptions& opt) {
  const std::size_t n = be.size();
  EigenResult res;
  res.eigenvalues.assign(n, EigenPair{});
  const double scale = be.scale();
  const double bnorm = be.max_abs_diag_b();
  const long long budget = static_cast<long long>(opt.max_iter_per_eig) * static_cast<long long>(n);

  auto record = [&](std::size_t k, int its) {
    EigenPair e{be.diag_a(k), be.diag_b(k)};
    if (std::abs(e.beta) <= opt.tol_b * bnorm) e.beta = 0.0;
    res.eigenvalues[k] = e;
    res.iterations.push_back(its);
  };

  std::size_t hi = n - 1;
  int since = 0;
  bool done = false;
  while (!done) {
    // Find the bottom of the unreduced active block ending at hi.
    std::size_t lo = 0;
    for (std::size_t k = hi; k-- > 0;) {
      if (negligible_subdiagonal(be.subdiag(k), be.diag_a(k), be.diag_a(k + 1), opt.tol_a, scale)) {
        be.zero_subdiag(k);
        lo = k + 1;
        break;
      }
    }
    if (lo == hi) {
      record(hi, since);
      since = 0;
      if (hi == 0) {
        done = true;
      } else {
        --hi;
      }
      continue;
    }
    if (res.total_sweeps >= budget) {
      std::vector<EigenPair> partial = res.eigenvalues;
      throw ConvergenceError("QZ iteration did not converge after " + std::to_string(res.total_sweeps) +
                                 " sweeps",
                             std::move(partial), lo, hi);
    }
    Complex alpha = wilkinson_shift(be.block(hi));
    if (since > 0 && since % opt.exceptional_period == 0) {
      if (!(std::abs(alpha) > kEps * scale)) alpha = std::abs(be.subdiag(hi - 1)) + std::abs(be.diag_a(hi));
      if (!(std::abs(alpha) > 0.0)) alpha = 1.0;
      alpha *= std::polar(1.0, opt.exceptional_angle);
    }
    be.sweep(alpha, lo, hi);
    ++res.total_sweeps;
    ++since;
  }
  return res;
}

}  // namespace detail

}  // namespace fastqz
