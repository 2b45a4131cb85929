#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fastqz/dense_matrix.hpp"
#include "fastqz/small_matrix.hpp"
#include "fastqz/types.hpp"

namespace fastqz {

/// Diagonal-inclusive upper generators of an N x N matrix C:
///   C(i, j) = g[i] * b[i] * ... * b[j-1] * h[j],  i <= j.
/// g[i] is 1 x r_i, h[i] is r_i x 1, b[k] is r_k x r_{k+1} (k < N-1).
struct TriangularGenerators {
  std::vector<SmallMatrix> g;
  std::vector<SmallMatrix> h;
  std::vector<SmallMatrix> b;

  std::size_t size() const noexcept { return g.size(); }
  std::vector<std::size_t> orders() const;
  void validate() const;
};

/// Strictly-upper quasiseparable generators of an N x N matrix C:
///   C(i, j) = g[i] * b[i+1] * ... * b[j-1] * h[j],  i < j.
/// All three vectors have N slots; g[N-1], h[0], b[0] and b[N-1] are unused
/// and kept empty. g[i] is 1 x r_i, h[j] is r_{j-1} x 1, b[k] is r_{k-1} x r_k.
struct QuasiseparableGenerators {
  std::vector<SmallMatrix> g;
  std::vector<SmallMatrix> h;
  std::vector<SmallMatrix> b;

  std::size_t size() const noexcept { return g.size(); }
  /// r_0 .. r_{N-2}
  std::vector<std::size_t> orders() const;
  void validate() const;
};

/// Condensed representation of a pair (A, B) with A = V - z w*, B = U - p q*,
/// A upper Hessenberg, B upper triangular, V and U unitary.
///
/// Stored vectors hold un-conjugated entries; every formula conjugates w and q
/// at the point of use.
struct PencilGenerators {
  std::size_t n = 0;
  std::vector<Complex> sigma_a;  ///< A(k+1, k), k = 0..n-2
  TriangularGenerators v;        ///< upper triangle of V including the diagonal
  std::vector<Complex> d_b;      ///< B(k, k)
  QuasiseparableGenerators u;    ///< strict upper triangle of U
  std::vector<Complex> z, w, p, q;

  void validate() const;

  /// V(k+1, k) = sigma_a[k] + z[k+1] conj(w[k])
  Complex sigma_v(std::size_t k) const { return sigma_a[k] + z[k + 1] * std::conj(w[k]); }
  /// U(k, k) = d_b[k] + p[k] conj(q[k])
  Complex d_u(std::size_t k) const { return d_b[k] + p[k] * std::conj(q[k]); }
};

/// Polynomial a_0 + a_1 x + ... + a_n x^n. `scale` is the divisor already
/// applied to the original coefficients (1 when not normalized).
struct Polynomial {
  std::vector<Complex> coeffs;
  double scale = 1.0;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Complex leading() const { return coeffs.back(); }

  /// Copy divided by the Euclidean norm of the coefficient vector.
  Polynomial normalized() const;
  Complex evaluate(Complex x) const;
};

/// Companion pencil: A has ones on the subdiagonal and -a_0..-a_{n-1} in its
/// last column, B = diag(1, .., 1, a_n). Generators use V = cyclic down shift,
/// w = e_n, z = (a_0 + 1, a_1, .., a_{n-1}), U = I, p = e_n, q = conj(1 - a_n) e_n.
PencilGenerators build_companion_pencil(const Polynomial& poly, bool normalize = true);

/// The same pencil assembled entry by entry, without generators.
DenseMatrixPair companion_dense(const Polynomial& poly, bool normalize = true);

struct DenseReconstruction {
  DenseMatrix A, B, V, U;
};

DenseReconstruction reconstruct_dense(const PencilGenerators& gen);

/// A(k, k) for every k, in O(N).
std::vector<Complex> diag_entries_A(const PencilGenerators& gen);

/// A(k, k) for a single k.
Complex diag_entry_A(const PencilGenerators& gen, std::size_t k);

struct TrailingBlock {
  std::array<std::array<Complex, 2>, 2> a{};
  std::array<std::array<Complex, 2>, 2> b{};
};

/// Rows/columns (last-1, last) of A and B; defaults to the bottom-right block.
TrailingBlock trailing_block(const PencilGenerators& gen);
TrailingBlock trailing_block(const PencilGenerators& gen, std::size_t last);

}  // namespace fastqz
