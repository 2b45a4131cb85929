#include <doctest.h>

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "fastqz/double_double.hpp"
#include "support.hpp"

using namespace fastqz;
using boost::multiprecision::cpp_rational;

namespace {

cpp_rational exact(DoubleDouble x) { return cpp_rational(x.hi) + cpp_rational(x.lo); }

double rel_error(DoubleDouble x, const cpp_rational& want) {
  return std::abs(cpp_rational((exact(x) - want) / want).convert_to<double>());
}

}  // namespace

TEST_CASE("two_sum and two_prod are error-free") {
  testing::Rng rng(61);
  for (int t = 0; t < 1000; ++t) {
    const double a = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.index(0, 60)) - 30);
    const double b = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.index(0, 60)) - 30);
    const auto s = dd_detail::two_sum(a, b);
    CHECK(exact(s) == cpp_rational(a) + cpp_rational(b));
    CHECK(s.hi == a + b);
    const auto p = dd_detail::two_prod(a, b);
    CHECK(exact(p) == cpp_rational(a) * cpp_rational(b));
    CHECK(p.hi == a * b);
  }
  const auto s = dd_detail::two_sum(1.0, 1e-20);
  CHECK(s.hi == 1.0);
  CHECK(s.lo == 1e-20);
}

TEST_CASE("arithmetic carries about 32 digits") {
  const DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
  CHECK(rel_error(third, cpp_rational(1, 3)) <= 1e-31);
  CHECK(std::abs((third * DoubleDouble(3.0) - DoubleDouble(1.0)).value()) <= 1e-31);

  const DoubleDouble r2 = sqrt(DoubleDouble(2.0));
  CHECK(std::abs((r2 * r2 - DoubleDouble(2.0)).value()) <= 2e-31);

  testing::Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    const DoubleDouble x{rng.uniform(-1, 1), rng.uniform(-1, 1) * 1e-17}, y{rng.uniform(0.5, 2), rng.uniform(-1, 1) * 1e-17};
    CHECK(rel_error(x * y, exact(x) * exact(y)) <= 1e-31);
    CHECK(rel_error(x / y, exact(x) / exact(y)) <= 1e-31);
    const cpp_rational sum = exact(x) + exact(y);
    // Sums only carry an absolute error bound relative to the inputs.
    CHECK(std::abs(cpp_rational(exact(x + y) - sum).convert_to<double>()) <=
          1e-31 * (std::abs(x.hi) + std::abs(y.hi)));
  }
}

TEST_CASE("complex division does not overflow near the top of the range") {
  const DoubleDoubleComplex a(Complex{3e300, -4e300});
  const DoubleDoubleComplex b(Complex{1e300, 2e300});
  const Complex q = (a / b).value();
  // (3 - 4i) / (1 + 2i) = -1 - 2i
  CHECK(std::isfinite(q.real()));
  CHECK(std::isfinite(q.imag()));
  CHECK(std::abs(q - Complex{-1.0, -2.0}) <= 1e-15);

  const DoubleDoubleComplex tiny(Complex{3e-300, -4e-300});
  const DoubleDoubleComplex tb(Complex{1e-300, 2e-300});
  CHECK(std::abs((tiny / tb).value() - Complex{-1.0, -2.0}) <= 1e-15);
}

TEST_CASE("complex product and quotient round-trip") {
  testing::Rng rng(63);
  for (int t = 0; t < 100; ++t) {
    const DoubleDoubleComplex x(rng()), y(rng());
    const DoubleDoubleComplex back = (x * y) / y;
    CHECK(abs(back - x).hi <= 1e-30 * abs(x).hi);
  }
}
