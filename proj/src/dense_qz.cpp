#include "fastqz/dense_qz.hpp"

#include <algorithm>
#include <cmath>

#include "fastqz/errors.hpp"

namespace fastqz {

namespace {

constexpr std::size_t kMaxDense = 2000;

void check_pair(const DenseMatrixPair& pair) {
  const std::size_t n = pair.A.rows();
  if (pair.A.cols() != n || pair.B.rows() != n || pair.B.cols() != n)
    throw StructuralError("dense QZ: A and B must be square of equal size");
}

}  // namespace

SweepRotations dense_qz_sweep(DenseMatrixPair& pair, Complex alpha, std::size_t lo, std::size_t hi,
                              bool full) {
  check_pair(pair);
  const std::size_t n = pair.A.rows();
  if (n < 2 || lo >= hi || hi >= n) throw StructuralError("dense_qz_sweep: bad window");
  // The driver's windowed calls skip this O(N^2) check.
  if (full && (below_hessenberg(pair.A) > 1e-8 * std::max(1.0, pair.A.max_abs()) ||
               below_triangular(pair.B) > 1e-8 * std::max(1.0, pair.B.max_abs())))
    throw StructuralError("dense_qz_sweep: pair is not Hessenberg-triangular");
  DenseMatrix& a = pair.A;
  DenseMatrix& b = pair.B;
  SweepRotations rot{std::vector<GivensRotation>(n - 1), std::vector<GivensRotation>(n - 1)};

  // Row ranges for column updates and column ranges for row updates.
  auto rows_from = [&](std::size_t) { return full ? std::size_t{0} : lo; };
  auto rows_to = [&](std::size_t k) { return full ? n : std::min(k + 3, hi + 1); };
  auto cols_from = [&](std::size_t k) { return full ? std::size_t{0} : (k > lo ? k - 1 : lo); };
  auto cols_to = [&](std::size_t) { return full ? n : hi + 1; };

  auto apply_q = [&](std::size_t k, const GivensRotation& g) {
    rot.q[k] = g;
    a.rotate_rows(k, g, cols_from(k), cols_to(k));
    b.rotate_rows(k, g, full ? 0 : k, cols_to(k));
  };

  apply_q(lo, make_givens(a(lo, lo) - alpha * b(lo, lo), a(lo + 1, lo)));
  for (std::size_t k = lo; k < hi; ++k) {
    // Bulge in B at (k+1, k).
    const GivensRotation z = make_givens_right(b(k + 1, k), b(k + 1, k + 1));
    rot.z[k] = z;
    a.rotate_cols(k, z, rows_from(k), rows_to(k));
    b.rotate_cols(k, z, rows_from(k), full ? n : k + 2);
    b(k + 1, k) = 0.0;
    // Bulge in A at (k+2, k).
    if (k + 1 < hi) {
      apply_q(k + 1, make_givens(a(k + 1, k), a(k + 2, k)));
      a(k + 2, k) = 0.0;
    }
  }
  return rot;
}

SweepRotations dense_qz_sweep(DenseMatrixPair& pair, Complex alpha) {
  return dense_qz_sweep(pair, alpha, 0, pair.A.rows() - 1, true);
}

DenseMatrix accumulate(const std::vector<GivensRotation>& rots, std::size_t n) {
  DenseMatrix m = DenseMatrix::identity(n);
  for (std::size_t k = 0; k < rots.size(); ++k)
    if (!rots[k].is_identity()) m.rotate_cols(k, rots[k], 0, n);
  return m;
}

namespace {

class DenseBackend {
 public:
  explicit DenseBackend(DenseMatrixPair& p) : p_(p) {}
  std::size_t size() const { return p_.A.rows(); }
  Complex subdiag(std::size_t k) const { return p_.A(k + 1, k); }
  void zero_subdiag(std::size_t k) { p_.A(k + 1, k) = 0.0; }
  Complex diag_a(std::size_t k) const { return p_.A(k, k); }
  Complex diag_b(std::size_t k) const { return p_.B(k, k); }
  double max_abs_diag_b() const {
    double m = 0.0;
    for (std::size_t k = 0; k < size(); ++k) m = std::max(m, std::abs(p_.B(k, k)));
    return m;
  }
  double scale() const { return p_.A.max_abs(); }
  TrailingBlock block(std::size_t last) const {
    TrailingBlock t;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        t.a[i][j] = p_.A(last - 1 + i, last - 1 + j);
        t.b[i][j] = p_.B(last - 1 + i, last - 1 + j);
      }
    t.b[1][0] = 0.0;
    return t;
  }
  void sweep(Complex alpha, std::size_t lo, std::size_t hi) { dense_qz_sweep(p_, alpha, lo, hi, false); }

 private:
  DenseMatrixPair& p_;
};

}  // namespace

EigenResult dense_eigenvalues(DenseMatrixPair pair, const QzOptions& opt) {
  check_pair(pair);
  const std::size_t n = pair.A.rows();
  if (n == 0) throw InvalidInput("dense_eigenvalues: empty pencil");
  if (n > kMaxDense) throw InvalidInput("dense_eigenvalues: N > 2000 is not supported");
  if (below_hessenberg(pair.A) != 0.0 || below_triangular(pair.B) != 0.0)
    throw StructuralError("dense_eigenvalues: pair is not Hessenberg-triangular");
  DenseBackend be(pair);
  return detail::run_qz(be, opt);
}

}  // namespace fastqz
