#pragma once

#include <utility>

#include "fastqz/small_matrix.hpp"
#include "fastqz/types.hpp"

namespace fastqz {

/// Complex plane rotation G = [[c, -conj(s)], [s, conj(c)]].
///
/// Embedded at position k it acts on coordinates (k, k+1). Row updates use
/// G* from the left, column updates use G from the right.
struct GivensRotation {
  Complex c{1.0, 0.0};
  Complex s{};

  static GivensRotation identity() noexcept { return {}; }

  bool is_identity() const noexcept { return c == Complex{1.0, 0.0} && s == Complex{}; }

  /// G* (x, y)^T
  std::pair<Complex, Complex> apply_adjoint(Complex x, Complex y) const noexcept {
    return {mul(std::conj(c), x) + mul(std::conj(s), y), mul(c, y) - mul(s, x)};
  }

  /// G (x, y)^T
  std::pair<Complex, Complex> apply(Complex x, Complex y) const noexcept {
    return {mul(c, x) - mul(std::conj(s), y), mul(s, x) + mul(std::conj(c), y)};
  }

  /// (x, y) G for a row vector.
  std::pair<Complex, Complex> apply_right(Complex x, Complex y) const noexcept {
    return {mul(x, c) + mul(y, s), mul(y, std::conj(c)) - mul(x, std::conj(s))};
  }

  SmallMatrix matrix() const { return SmallMatrix(2, 2, {c, -std::conj(s), s, std::conj(c)}); }
  SmallMatrix adjoint_matrix() const {
    return SmallMatrix(2, 2, {std::conj(c), std::conj(s), -s, c});
  }
};

/// Rotation with G* (v1, v2)^T = (r, 0)^T, r = |(v1, v2)| real and nonnegative.
///
/// Ties: (0, 0) gives the identity; (v1, 0) gives c = v1/|v1|, s = 0.
/// Throws InvalidInput on NaN or Inf.
GivensRotation make_givens(Complex v1, Complex v2);

/// Rotation with (x, y) G = (0, r), r real and nonnegative. This is the
/// column rotation that clears the left entry of a row.
GivensRotation make_givens_right(Complex x, Complex y);

/// Apply G* to rows (i, i+1) of a block, in place.
void rotate_rows(SmallMatrix& m, std::size_t i, const GivensRotation& g);
/// Apply G to columns (j, j+1) of a block from the right, in place.
void rotate_cols(SmallMatrix& m, std::size_t j, const GivensRotation& g);

}  // namespace fastqz
