#include "fastqz/givens.hpp"

#include <cmath>

#include "fastqz/errors.hpp"

namespace fastqz {

GivensRotation make_givens(Complex v1, Complex v2) {
  if (!is_finite(v1) || !is_finite(v2)) throw InvalidInput("make_givens: non-finite input");
  if (v2 == Complex{}) {
    if (v1 == Complex{}) return GivensRotation::identity();
    return {v1 / std::abs(v1), Complex{}};
  }
  // Plain sum of squares inside a safe range, scaled hypot outside it.
  const double sq = std::norm(v1) + std::norm(v2);
  const double r = sq > 1e-280 && sq < 1e280 ? std::sqrt(sq) : std::hypot(std::abs(v1), std::abs(v2));
  return {v1 / r, v2 / r};
}

GivensRotation make_givens_right(Complex x, Complex y) {
  // G = make_givens(conj y, conj x) satisfies c y + s x = r and
  // conj(c) x - conj(s) y = 0, so R = [[conj c, s], [-conj s, c]] clears x.
  const GivensRotation g = make_givens(std::conj(y), std::conj(x));
  return {std::conj(g.c), -std::conj(g.s)};
}

void rotate_rows(SmallMatrix& m, std::size_t i, const GivensRotation& g) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto [x, y] = g.apply_adjoint(m(i, j), m(i + 1, j));
    m(i, j) = x;
    m(i + 1, j) = y;
  }
}

void rotate_cols(SmallMatrix& m, std::size_t j, const GivensRotation& g) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto [x, y] = g.apply_right(m(i, j), m(i, j + 1));
    m(i, j) = x;
    m(i, j + 1) = y;
  }
}

}  // namespace fastqz
