#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fastqz/dense_qz.hpp"
#include "fastqz/errors.hpp"
#include "support.hpp"

using namespace fastqz;
using namespace fastqz::testing;

namespace {

DenseMatrixPair random_ht_pair(std::size_t n, Rng& rng) {
  DenseMatrixPair p{DenseMatrix(n, n), DenseMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 >= i) p.A(i, j) = rng();
      if (j >= i) p.B(i, j) = rng();
    }
  return p;
}

// Monic companion matrix (ones on the subdiagonal, -a in the last column)
// of prod (x - r).
DenseMatrix companion_of_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (auto r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  const std::size_t n = roots.size();
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i + 1, i) = 1.0;
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -c[i];
  return a;
}

double nearest(const std::vector<Complex>& xs, Complex y) {
  double best = 1e300;
  for (auto x : xs) best = std::min(best, std::abs(x - y));
  return best;
}

}  // namespace

TEST_CASE("bulges of a 4x4 sweep sit where the chasing diagrams put them") {
  Rng rng(41);
  const auto start = random_ht_pair(4, rng);
  const Complex alpha = rng();
  auto pair = start;
  const auto rot = dense_qz_sweep(pair, alpha);

  // Replay the captured rotations one at a time.
  DenseMatrix a = start.A, b = start.B;
  auto only_below = [](const DenseMatrix& m, std::size_t band, std::size_t bi, std::size_t bj) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j + band < i; ++j)
        if (!(i == bi && j == bj) && std::abs(m(i, j)) > 1e-13) return false;
    return std::abs(m(bi, bj)) > 1e-3;
  };
  a.rotate_rows(0, rot.q[0], 0, 4);
  b.rotate_rows(0, rot.q[0], 0, 4);
  CHECK(only_below(b, 0, 1, 0));
  for (std::size_t k = 0; k < 3; ++k) {
    a.rotate_cols(k, rot.z[k], 0, 4);
    b.rotate_cols(k, rot.z[k], 0, 4);
    CHECK(below_triangular(b) <= 1e-13);
    if (k + 1 < 3) {
      CHECK(only_below(a, 1, k + 2, k));
      a.rotate_rows(k + 1, rot.q[k + 1], 0, 4);
      b.rotate_rows(k + 1, rot.q[k + 1], 0, 4);
      CHECK(below_hessenberg(a) <= 1e-13);
      CHECK(only_below(b, 0, k + 2, k + 1));
    }
  }
  CHECK(max_abs_diff(a, pair.A) <= 1e-13);
  CHECK(max_abs_diff(b, pair.B) <= 1e-13);
  CHECK(below_hessenberg(pair.A) == 0.0);
  CHECK(below_triangular(pair.B) == 0.0);
}

TEST_CASE("accumulated rotations are unitary and transport the pair") {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = rng.index(2, 12);
    const auto start = random_ht_pair(n, rng);
    auto pair = start;
    const auto rot = dense_qz_sweep(pair, rng());
    const DenseMatrix q = accumulate(rot.q, n), z = accumulate(rot.z, n);
    CHECK(max_abs_diff(q.adjoint() * q, DenseMatrix::identity(n)) <= 1e-12);
    CHECK(max_abs_diff(z.adjoint() * z, DenseMatrix::identity(n)) <= 1e-12);
    CHECK(max_abs_diff(q.adjoint() * start.A * z, pair.A) <= 1e-11);
    CHECK(max_abs_diff(q.adjoint() * start.B * z, pair.B) <= 1e-11);
  }
}

TEST_CASE("with B = I the sweep is a QR step") {
  const std::vector<Complex> roots{1.0, 2.0, 3.0, 4.0};
  DenseMatrixPair pair{companion_of_roots(roots), DenseMatrix::identity(4)};
  dense_qz_sweep(pair, 3.7);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j)
        CHECK(std::abs(std::abs(pair.B(i, j)) - 1.0) <= 1e-13);
      else
        CHECK(std::abs(pair.B(i, j)) <= 1e-13);
    }
  const auto ev = dense_eigenvalues(pair).finite_values();
  REQUIRE(ev.size() == 4);
  for (auto r : roots) CHECK(nearest(ev, r) <= 1e-11);
}

TEST_CASE("an exact eigenvalue as shift splits off the last row") {
  const std::vector<Complex> roots{Complex{0.5, 1.0}, -2.0, 3.0};
  DenseMatrixPair pair{companion_of_roots(roots), DenseMatrix::identity(3)};
  Rng rng(43);
  // Make B a generic triangular matrix without changing the spectrum of
  // B^{-1} A: A <- T A, B <- T.
  DenseMatrix t(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) t(i, j) = i == j ? Complex{2.0} + rng() * 0.1 : rng();
  pair.A = t * pair.A;
  pair.B = t;
  dense_qz_sweep(pair, roots[1]);
  CHECK(std::abs(pair.A(2, 1)) <= 1e-10);
  CHECK(std::abs(pair.A(2, 2) / pair.B(2, 2) - roots[1]) <= 1e-10);
}

TEST_CASE("dense eigenvalues of z^4 - 1") {
  const Polynomial p{{-1.0, 0.0, 0.0, 0.0, 1.0}};
  const auto ev = dense_eigenvalues(companion_dense(p)).finite_values();
  REQUIRE(ev.size() == 4);
  for (Complex w : {Complex{1.0}, Complex{0.0, 1.0}, Complex{-1.0}, Complex{0.0, -1.0}})
    CHECK(nearest(ev, w) <= 1e-13);
}

TEST_CASE("diagonal pencil needs no sweeps") {
  DenseMatrixPair pair{DenseMatrix(5, 5), DenseMatrix::identity(5)};
  for (std::size_t i = 0; i < 5; ++i) pair.A(i, i) = static_cast<double>(i + 1);
  const auto res = dense_eigenvalues(pair);
  CHECK(res.total_sweeps == 0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(res.eigenvalues[i].value() == Complex(static_cast<double>(i + 1)));
}

TEST_CASE("power sum of degree 20") {
  Polynomial p;
  p.coeffs.assign(21, 1.0);
  const auto ev = dense_eigenvalues(companion_dense(p)).finite_values();
  REQUIRE(ev.size() == 20);
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) worst = std::max(worst, nearest(ev, std::polar(1.0, 2.0 * std::numbers::pi * k / 21.0)));
  CHECK(worst <= 1e-13);
}

TEST_CASE("well-conditioned polynomials up to degree 50") {
  for (std::size_t n : {10, 30, 50}) {
    // z^n - i
    Polynomial p;
    p.coeffs.assign(n + 1, 0.0);
    p.coeffs[0] = Complex{0.0, -1.0};
    p.coeffs[n] = 1.0;
    const auto ev = dense_eigenvalues(companion_dense(p)).finite_values();
    REQUIRE(ev.size() == n);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(nearest(ev, std::polar(1.0, std::numbers::pi * static_cast<double>(4 * k + 1) /
                                            static_cast<double>(2 * n))) <= 1e-10);
  }
}

TEST_CASE("dense QZ rejects malformed input") {
  Rng rng(44);
  auto pair = random_ht_pair(5, rng);
  pair.A(4, 1) = 1.0;
  CHECK_THROWS_AS(dense_qz_sweep(pair, 0.0), StructuralError);
  CHECK_THROWS_AS(dense_eigenvalues(pair), StructuralError);
  auto pair2 = random_ht_pair(5, rng);
  pair2.B(3, 2) = 1.0;
  CHECK_THROWS_AS(dense_qz_sweep(pair2, 0.0), StructuralError);
  DenseMatrixPair bad{DenseMatrix(3, 3), DenseMatrix(4, 4)};
  CHECK_THROWS_AS(dense_eigenvalues(bad), StructuralError);
  auto pair3 = random_ht_pair(5, rng);
  CHECK_THROWS_AS(dense_qz_sweep(pair3, 0.0, 2, 2, true), StructuralError);
}
