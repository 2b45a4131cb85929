#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "fastqz/errors.hpp"
#include "fastqz/families.hpp"

using namespace fastqz;
using boost::multiprecision::cpp_rational;

namespace {

Complex horner(const Polynomial& p, Complex x) {
  Complex acc{};
  for (std::size_t k = p.coeffs.size(); k-- > 0;) acc = acc * x + p.coeffs[k];
  return acc;
}

cpp_rational exact(const DoubleDoubleComplex& z) { return cpp_rational(z.re.hi) + cpp_rational(z.re.lo); }

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : {Family::random, Family::cyclotomic, Family::power_sum, Family::equispaced, Family::chebyshev,
                   Family::bernoulli, Family::unbalanced})
    CHECK(parse_family(family_name(f)) == f);
  CHECK(parse_family("power_sum") == Family::power_sum);
  CHECK_THROWS_AS(parse_family("legendre"), InvalidInput);
  CHECK_THROWS_AS(make_polynomial(Family::random, 0), InvalidInput);
  CHECK_THROWS_AS(make_polynomial(Family::equispaced, 1), InvalidInput);
}

TEST_CASE("random coefficients are seeded and lie in the unit square") {
  const auto a = make_polynomial(Family::random, 30, 7);
  const auto b = make_polynomial(Family::random, 30, 7);
  const auto c = make_polynomial(Family::random, 30, 8);
  CHECK(a.poly.coeffs == b.poly.coeffs);
  CHECK(a.poly.coeffs != c.poly.coeffs);
  REQUIRE(a.poly.coeffs.size() == 31);
  for (auto z : a.poly.coeffs) {
    CHECK(std::abs(z.real()) <= 1.0);
    CHECK(std::abs(z.imag()) <= 1.0);
  }
  CHECK(a.roots.empty());
}

TEST_CASE("cyclotomic degree 4 is z^4 - i with roots exp(i pi (4k+1)/8)") {
  const auto tp = make_polynomial(Family::cyclotomic, 4);
  CHECK(tp.poly.coeffs == std::vector<Complex>{Complex{0, -1}, 0.0, 0.0, 0.0, 1.0});
  REQUIRE(tp.roots.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(tp.roots[k] - std::exp(Complex{0, std::numbers::pi * (4.0 * k + 1.0) / 8.0})) <= 1e-15);
    CHECK(std::abs(std::pow(tp.roots[k], 4) - Complex{0, 1}) <= 1e-14);
  }
}

TEST_CASE("power sum roots are the nontrivial (N+1)-th roots of unity") {
  const auto tp = make_polynomial(Family::power_sum, 20);
  CHECK(tp.poly.coeffs == std::vector<Complex>(21, 1.0));
  REQUIRE(tp.roots.size() == 20);
  for (auto r : tp.roots) {
    CHECK(std::abs(horner(tp.poly, r)) <= 1e-13);
    CHECK(std::abs(r - 1.0) > 0.1);
  }
}

TEST_CASE("equispaced roots cover [-2.1, 1.9]") {
  const auto tp = make_polynomial(Family::equispaced, 20);
  REQUIRE(tp.roots.size() == 20);
  CHECK(tp.roots.front().real() == doctest::Approx(-2.1).epsilon(1e-15));
  CHECK(tp.roots.back().real() == doctest::Approx(1.9).epsilon(1e-15));
  for (std::size_t k = 1; k < 20; ++k) CHECK(tp.roots[k].real() - tp.roots[k - 1].real() == doctest::Approx(4.0 / 19.0));
  CHECK(tp.poly.coeffs.back() == Complex{1.0});
  // Degree 2: (x + 2.1)(x - 1.9) = x^2 + 0.2 x - 3.99
  const auto q = make_polynomial(Family::equispaced, 2);
  CHECK(std::abs(q.poly.coeffs[0] - Complex{-3.99}) <= 1e-15);
  CHECK(std::abs(q.poly.coeffs[1] - Complex{0.2}) <= 1e-15);
}

TEST_CASE("Chebyshev coefficients from the recurrence") {
  const auto t4 = make_polynomial(Family::chebyshev, 4);
  CHECK(t4.poly.coeffs == std::vector<Complex>{1.0, 0.0, -8.0, 0.0, 8.0});
  const auto t20 = make_polynomial(Family::chebyshev, 20);
  CHECK(t20.poly.coeffs[20] == Complex{524288.0});  // 2^19
  CHECK(t20.poly.coeffs[0] == Complex{1.0});
  CHECK(t20.poly.coeffs[2] == Complex{-200.0});  // (-1)^(n/2 - 1) n^2 / 2
  for (auto r : t20.roots) CHECK(std::abs(std::cos(20.0 * std::acos(r.real()))) <= 1e-13);
}

TEST_CASE("Bernoulli polynomial B_20 has the known rational coefficients") {
  const auto tp = make_polynomial(Family::bernoulli, 20);
  REQUIRE(tp.exact.size() == 21);
  // B_20(x) = sum_k C(20, k) B_k x^(20-k): x^20 - 10 x^19 + 95/3 x^18 - ... - 174611/330
  const std::pair<std::size_t, cpp_rational> known[] = {
      {20, cpp_rational(1)},           {19, cpp_rational(-10)},          {18, cpp_rational(95, 3)},
      {16, cpp_rational(-323, 2)},     {14, cpp_rational(6460, 7)},         {0, cpp_rational(-174611, 330)},
      {2, cpp_rational(1 * 190 * 43867, 798)}, {17, cpp_rational(0)},
  };
  for (const auto& [k, want] : known) {
    CAPTURE(k);
    const cpp_rational got = exact(tp.exact[k]);
    if (want == 0)
      CHECK(got == 0);
    else
      CHECK(std::abs(cpp_rational((got - want) / want).convert_to<double>()) <= 1e-30);
  }
  // B_2(x) = x^2 - x + 1/6
  const auto b2 = make_polynomial(Family::bernoulli, 2);
  CHECK(b2.poly.coeffs[2] == Complex{1.0});
  CHECK(b2.poly.coeffs[1] == Complex{-1.0});
  CHECK(b2.poly.coeffs[0] == Complex{1.0 / 6.0});
}

TEST_CASE("unbalanced coefficients alternate between 1e3 and 1e-9") {
  const auto tp = make_polynomial(Family::unbalanced, 20);
  REQUIRE(tp.poly.coeffs.size() == 21);
  for (std::size_t k = 0; k <= 20; ++k)
    CHECK(tp.poly.coeffs[k] == Complex{std::pow(10.0, 6.0 * (k % 2 ? 1 : -1) - 3.0)});
}

TEST_CASE("forward error measures") {
  const std::vector<Complex> ref{1.0, Complex{0, 10}};
  const std::vector<Complex> got{Complex{0, 10.5}, 1.25};
  CHECK(forward_error(got, ref) == doctest::Approx(0.5));
  // 0.25 absolute at |a| = 1, 0.5 / 10 relative at |a| = 10.
  CHECK(mixed_forward_error(got, ref) == doctest::Approx(0.25));
  CHECK(forward_error(ref, ref) == 0.0);
}

TEST_CASE("Newton polishing recovers roots to double-double accuracy") {
  const auto tp = make_polynomial(Family::equispaced, 12);
  std::vector<Complex> rough;
  for (auto r : tp.roots) rough.push_back(r + Complex{1e-4, -1e-4});
  const auto polished = polish_roots(tp.exact, rough);
  CHECK(forward_error(polished, tp.roots) <= 1e-15);
  CHECK(reference_roots(tp, rough) == tp.roots);
}
