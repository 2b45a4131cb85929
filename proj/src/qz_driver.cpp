#include "fastqz/qz_driver.hpp"

#include <algorithm>
#include <cmath>

namespace fastqz {

Complex wilkinson_shift(const TrailingBlock& t) {
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      sa = std::max(sa, std::abs(t.a[i][j]));
      sb = std::max(sb, std::abs(t.b[i][j]));
    }
  if (sa == 0.0) return 0.0;
  if (sb == 0.0) return t.a[1][1];
  const Complex a00 = t.a[0][0] / sa, a01 = t.a[0][1] / sa, a10 = t.a[1][0] / sa, a11 = t.a[1][1] / sa;
  const Complex b00 = t.b[0][0] / sb, b01 = t.b[0][1] / sb, b11 = t.b[1][1] / sb;
  const double ratio = sa / sb;

  const Complex qa = b00 * b11;
  if (std::abs(qa) <= kEps) {
    if (std::abs(b11) > kEps) return ratio * a11 / b11;
    if (std::abs(b00) > kEps) return ratio * a00 / b00;
    return t.a[1][1];
  }
  const Complex qb = -(a00 * b11 + a11 * b00 - a10 * b01);
  const Complex qc = a00 * a11 - a01 * a10;
  const Complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const Complex d1 = -qb + disc, d2 = -qb - disc;
  const Complex big = std::abs(d1) >= std::abs(d2) ? d1 : d2;
  Complex r1, r2;
  if (big == Complex{}) {
    r1 = r2 = 0.0;
  } else {
    r1 = big / (2.0 * qa);
    r2 = 2.0 * qc / big;
  }
  const Complex target = a11 / b11;
  const Complex pick = std::abs(r1 - target) <= std::abs(r2 - target) ? r1 : r2;
  return ratio * pick;
}

bool negligible_subdiagonal(Complex sub, Complex left, Complex right, double tol, double scale) {
  const double s = std::abs(sub);
  return s <= tol * (std::abs(left) + std::abs(right)) || s <= kEps * scale;
}

}  // namespace fastqz
