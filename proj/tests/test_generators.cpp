#include <doctest.h>

#include <random>

#include "fastqz/errors.hpp"
#include "fastqz/generators.hpp"

using namespace fastqz;

namespace {

Polynomial random_poly(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Polynomial p;
  for (std::size_t k = 0; k <= n; ++k) p.coeffs.emplace_back(nd(rng), nd(rng));
  return p;
}

}  // namespace

TEST_CASE("companion of x^3 - 1 is the cyclic shift") {
  Polynomial p{{-1.0, 0.0, 0.0, 1.0}};
  const auto gen = build_companion_pencil(p, false);
  for (auto z : gen.z) CHECK(z == Complex{});
  const auto r = reconstruct_dense(gen);
  const DenseMatrix shift = [] {
    DenseMatrix s(3, 3);
    s(0, 2) = 1.0;
    s(1, 0) = 1.0;
    s(2, 1) = 1.0;
    return s;
  }();
  CHECK(max_abs_diff(r.A, shift) == 0.0);
  CHECK(max_abs_diff(r.V, shift) == 0.0);
  CHECK(max_abs_diff(r.B, DenseMatrix::identity(3)) == 0.0);
  CHECK(max_abs_diff(r.U, DenseMatrix::identity(3)) == 0.0);
  for (auto d : diag_entries_A(gen)) CHECK(d == Complex{});
  const auto t = trailing_block(gen);
  CHECK(t.a[0][0] == Complex{});
  CHECK(t.a[0][1] == Complex{});
  CHECK(t.a[1][0] == Complex{1.0, 0.0});
  CHECK(t.a[1][1] == Complex{});
}

TEST_CASE("monic input gives B = I and q = 0") {
  Polynomial p{{2.0, Complex{0, 1}, 5.0, 1.0}};
  const auto gen = build_companion_pencil(p, false);
  for (auto d : gen.d_b) CHECK(d == Complex{1.0, 0.0});
  for (auto q : gen.q) CHECK(q == Complex{});
  CHECK(diag_entry_A(gen, 2) == Complex{-5.0, 0.0});
}

TEST_CASE("quadratic companion trailing block") {
  const Complex b{3.0, 1.0}, c{-2.0, 0.5};
  Polynomial p{{c, b, 1.0}};
  const auto t = trailing_block(build_companion_pencil(p, false));
  CHECK(std::abs(t.a[0][0]) == 0.0);
  CHECK(std::abs(t.a[0][1] + c) == 0.0);
  CHECK(std::abs(t.a[1][0] - 1.0) == 0.0);
  CHECK(std::abs(t.a[1][1] + b) == 0.0);
  CHECK(std::abs(t.b[0][0] - 1.0) == 0.0);
  CHECK(std::abs(t.b[0][1]) == 0.0);
  CHECK(std::abs(t.b[1][1] - 1.0) == 0.0);
}

TEST_CASE("random companion pencil reconstructs exactly") {
  std::mt19937_64 rng(3);
  for (bool normalize : {false, true}) {
    const auto p = random_poly(5, rng);
    const auto gen = build_companion_pencil(p, normalize);
    const auto r = reconstruct_dense(gen);
    const auto d = companion_dense(p, normalize);
    // z(0) = a_0 + 1 rounds once, so A(0, n-1) = 1 - z(0) may differ from
    // -a_0 in the last bit; every other entry is an exact copy.
    CHECK(max_abs_diff(r.A, d.A) <= 2 * kEps * (1.0 + std::abs(d.A(0, 4))));
    DenseMatrix ra = r.A, da = d.A;
    ra(0, 4) = da(0, 4) = 0.0;
    CHECK(max_abs_diff(ra, da) == 0.0);
    CHECK(max_abs_diff(r.B, d.B) == 0.0);
    CHECK(unitarity_defect(r.V) < 1e-15);
    CHECK(unitarity_defect(r.U) < 1e-15);
  }
}

TEST_CASE("normalization divides by the coefficient 2-norm") {
  Polynomial p{{3.0, 4.0}};
  const auto n = p.normalized();
  CHECK(n.scale == doctest::Approx(5.0));
  CHECK(std::abs(n.coeffs[0] - 0.6) < 1e-16);
  CHECK(std::abs(n.coeffs[1] - 0.8) < 1e-16);
}

TEST_CASE("degree one pencil") {
  Polynomial p{{Complex{1, 1}, 2.0}};
  const auto gen = build_companion_pencil(p, false);
  CHECK(gen.n == 1);
  CHECK(gen.sigma_a.empty());
  const auto r = reconstruct_dense(gen);
  CHECK(std::abs(r.A(0, 0) + Complex(1, 1)) == 0.0);
  CHECK(std::abs(r.B(0, 0) - 2.0) == 0.0);
}

TEST_CASE("invalid polynomials are rejected") {
  CHECK_THROWS_AS(build_companion_pencil(Polynomial{{0.0, 0.0, 0.0}}), InvalidInput);
  CHECK_THROWS_AS(build_companion_pencil(Polynomial{{1.0}}), InvalidInput);
  CHECK_THROWS_AS(build_companion_pencil(Polynomial{{1.0, 2.0, 0.0}}, false), InvalidInput);
  CHECK_THROWS_AS(build_companion_pencil(Polynomial{{1.0, std::nan("")}}), InvalidInput);
}

TEST_CASE("generator products follow the chained formula") {
  // Order-(1, 2) triangular generators checked against an independent loop.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  auto rnd = [&] { return Complex{nd(rng), nd(rng)}; };
  const std::size_t n = 6;
  PencilGenerators gen = build_companion_pencil(random_poly(n, rng), true);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = i == 0 ? 1 : 2;
    gen.v.g[i] = SmallMatrix(1, r);
    gen.v.h[i] = SmallMatrix(r, 1);
    for (std::size_t k = 0; k < r; ++k) {
      gen.v.g[i](0, k) = rnd();
      gen.v.h[i](k, 0) = rnd();
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    gen.v.b[k] = SmallMatrix(gen.v.g[k].cols(), gen.v.g[k + 1].cols());
    for (std::size_t i = 0; i < gen.v.b[k].rows(); ++i)
      for (std::size_t j = 0; j < gen.v.b[k].cols(); ++j) gen.v.b[k](i, j) = rnd();
  }
  for (auto& z : gen.z) z = rnd();
  for (auto& w : gen.w) w = rnd();
  gen.validate();
  const auto r = reconstruct_dense(gen);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      SmallMatrix row = gen.v.g[i];
      for (std::size_t k = i; k < j; ++k) row = row * gen.v.b[k];
      const Complex acc = dot(row, gen.v.h[j]);
      CHECK(std::abs(r.V(i, j) - acc) < 1e-13);
      CHECK(std::abs(r.A(i, j) - (acc - gen.z[i] * std::conj(gen.w[j]))) < 1e-13);
    }
  const auto d = diag_entries_A(gen);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(d[k] - r.A(k, k)) < 1e-14);
  const auto t = trailing_block(gen);
  CHECK(std::abs(t.a[0][1] - r.A(n - 2, n - 1)) < 1e-14);
  CHECK(std::abs(t.a[1][1] - r.A(n - 1, n - 1)) < 1e-14);
}

TEST_CASE("inconsistent generator shapes are structural errors") {
  Polynomial p{{1.0, 2.0, 3.0, 4.0}};
  auto gen = build_companion_pencil(p);
  gen.v.b[1] = SmallMatrix(2, 1);
  CHECK_THROWS_AS(reconstruct_dense(gen), StructuralError);
  auto gen2 = build_companion_pencil(p);
  gen2.z.pop_back();
  CHECK_THROWS_AS(gen2.validate(), StructuralError);
  CHECK_THROWS_AS(trailing_block(build_companion_pencil(Polynomial{{1.0, 1.0}})), StructuralError);
}
