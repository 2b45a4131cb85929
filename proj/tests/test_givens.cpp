#include <doctest.h>

#include <random>

#include "fastqz/errors.hpp"
#include "fastqz/givens.hpp"

using namespace fastqz;

TEST_CASE("make_givens tie-breaks") {
  const auto id = make_givens(1.0, 0.0);
  CHECK(id.c == Complex{1.0, 0.0});
  CHECK(id.s == Complex{});

  const auto zero = make_givens(0.0, 0.0);
  CHECK(zero.is_identity());

  const auto phase = make_givens(Complex{0.0, 2.0}, 0.0);
  CHECK(std::abs(phase.c - Complex{0.0, 1.0}) < 1e-15);
  CHECK(phase.s == Complex{});
}

TEST_CASE("make_givens pure swap") {
  const auto g = make_givens(0.0, 1.0);
  CHECK(std::abs(g.c) == 0.0);
  CHECK(std::abs(g.s - 1.0) == 0.0);
  auto [r, zero] = g.apply_adjoint(0.0, 1.0);
  CHECK(std::abs(r - 1.0) < 1e-15);
  CHECK(std::abs(zero) == 0.0);
}

TEST_CASE("make_givens on (3, 4)") {
  const auto g = make_givens(3.0, 4.0);
  CHECK(std::abs(std::abs(g.c) - 0.6) < 1e-15);
  CHECK(std::abs(std::abs(g.s) - 0.8) < 1e-15);
  auto [r, zero] = g.apply_adjoint(3.0, 4.0);
  CHECK(std::abs(r - 5.0) < 1e-14);
  CHECK(r.imag() == 0.0);
  CHECK(std::abs(zero) < 1e-15);
}

TEST_CASE("make_givens annihilates random complex input") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 1000; ++t) {
    const double scale = std::pow(10.0, (t % 41) - 20);
    const Complex v1{nd(rng) * scale, nd(rng) * scale};
    const Complex v2{nd(rng) * scale, nd(rng) * scale};
    const auto g = make_givens(v1, v2);
    const double norm = std::hypot(std::abs(v1), std::abs(v2));
    auto [r, zero] = g.apply_adjoint(v1, v2);
    CHECK(std::abs(zero) <= 4 * kEps * norm);
    CHECK(r.real() >= 0.0);
    CHECK(std::abs(r.imag()) <= 4 * kEps * norm);
    CHECK(std::abs(std::norm(g.c) + std::norm(g.s) - 1.0) < 4 * kEps);
    // G is unitary, so G G* = I.
    const SmallMatrix p = g.matrix() * g.adjoint_matrix();
    CHECK((p - SmallMatrix::identity(2)).max_abs() < 4 * kEps);
  }
}

TEST_CASE("make_givens_right clears the left entry of a row") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    const Complex x{nd(rng), nd(rng)}, y{nd(rng), nd(rng)};
    const auto g = make_givens_right(x, y);
    auto [zero, r] = g.apply_right(x, y);
    CHECK(std::abs(zero) < 4 * kEps * std::hypot(std::abs(x), std::abs(y)));
    CHECK(std::abs(r) > 0.0);
  }
}

TEST_CASE("make_givens rejects non-finite input") {
  CHECK_THROWS_AS(make_givens(std::nan(""), 1.0), InvalidInput);
  CHECK_THROWS_AS(make_givens(1.0, Complex{0.0, INFINITY}), InvalidInput);
}

TEST_CASE("rotate_rows and rotate_cols match explicit products") {
  SmallMatrix m(3, 3, {1.0, 2.0, Complex{0, 1}, 4.0, 5.0, 6.0, 7.0, Complex{8, 1}, 9.0});
  const auto g = make_givens(Complex{1, 2}, Complex{3, -1});
  SmallMatrix rows = m;
  rotate_rows(rows, 1, g);
  SmallMatrix embed = SmallMatrix::identity(3);
  embed.set_block(1, 1, g.adjoint_matrix());
  CHECK((rows - embed * m).max_abs() < 1e-14);

  SmallMatrix cols = m;
  rotate_cols(cols, 0, g);
  SmallMatrix right = SmallMatrix::identity(3);
  right.set_block(0, 0, g.matrix());
  CHECK((cols - m * right).max_abs() < 1e-14);
}
