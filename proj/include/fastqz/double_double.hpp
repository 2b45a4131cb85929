#pragma once

#include <algorithm>
#include <cmath>

#include "fastqz/types.hpp"

namespace fastqz {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2, about 32 significant
/// digits. Enough to expand root products when measuring backward errors
/// near machine precision.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi(x) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double value() const noexcept { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
  const DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
  // Two Newton-style correction steps on the double quotient.
  const double q1 = a.hi / b.hi;
  DoubleDouble r = a - DoubleDouble(q1) * b;
  const double q2 = r.hi / b.hi;
  r = r - DoubleDouble(q2) * b;
  const double q3 = r.hi / b.hi;
  return dd_detail::quick_two_sum(q1, q2) + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, DoubleDouble b) { return a = a * b; }

inline DoubleDouble sqrt(DoubleDouble a) {
  if (a.hi <= 0.0) return {};
  const double x = std::sqrt(a.hi);
  // One Newton step: x + (a - x^2) / (2x).
  const DoubleDouble r = a - dd_detail::two_prod(x, x);
  return dd_detail::quick_two_sum(x, r.hi / (2.0 * x));
}

struct DoubleDoubleComplex {
  DoubleDouble re;
  DoubleDouble im;

  constexpr DoubleDoubleComplex() = default;
  constexpr DoubleDoubleComplex(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}
  explicit DoubleDoubleComplex(DoubleDouble r) : re(r) {}
  explicit DoubleDoubleComplex(double r) : re(r) {}
  DoubleDoubleComplex(Complex z) : re(z.real()), im(z.imag()) {}  // NOLINT(google-explicit-constructor)

  Complex value() const { return {re.value(), im.value()}; }
};

inline DoubleDoubleComplex operator+(const DoubleDoubleComplex& a, const DoubleDoubleComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline DoubleDoubleComplex operator-(const DoubleDoubleComplex& a, const DoubleDoubleComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
inline DoubleDoubleComplex operator*(const DoubleDoubleComplex& a, const DoubleDoubleComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DoubleDouble scaled(DoubleDouble x, int e) { return {std::ldexp(x.hi, e), std::ldexp(x.lo, e)}; }

inline DoubleDoubleComplex operator/(const DoubleDoubleComplex& a, const DoubleDoubleComplex& b) {
  // Scale the divisor by a power of two so |b|^2 cannot overflow.
  const double big = std::max(std::abs(b.re.hi), std::abs(b.im.hi));
  const int e = big > 0.0 ? -std::ilogb(big) : 0;
  const DoubleDouble br = scaled(b.re, e), bi = scaled(b.im, e);
  const DoubleDouble den = br * br + bi * bi;
  return {scaled((a.re * br + a.im * bi) / den, e), scaled((a.im * br - a.re * bi) / den, e)};
}
inline DoubleDoubleComplex& operator+=(DoubleDoubleComplex& a, const DoubleDoubleComplex& b) {
  return a = a + b;
}

inline DoubleDouble norm(const DoubleDoubleComplex& z) { return z.re * z.re + z.im * z.im; }
inline DoubleDouble abs(const DoubleDoubleComplex& z) { return sqrt(norm(z)); }

}  // namespace fastqz
