#pragma once

#include <cstddef>
#include <vector>

#include "fastqz/dense_matrix.hpp"
#include "fastqz/generators.hpp"
#include "fastqz/small_matrix.hpp"

namespace fastqz {

/// Block matrix with M x M blocks of sizes m[i] x n[j], given by lower and
/// upper quasiseparable generators and diagonal blocks:
///   block(i, j) = p[i] a[i-1] ... a[j+1] q[j]   (i > j)
///               = d[i]                          (i = j)
///               = g[i] b[i+1] ... b[j-1] h[j]   (i < j)
/// Shapes: p[i] m_i x rL_{i-1}, q[j] rL_j x n_j, a[k] rL_k x rL_{k-1},
///         g[i] m_i x rU_i,  h[j] rU_{j-1} x n_j, b[k] rU_{k-1} x rU_k.
/// Every vector has M slots; slots outside the ranges above are ignored.
struct BlockQuasiseparable {
  std::vector<std::size_t> m;
  std::vector<std::size_t> n;
  std::vector<SmallMatrix> p, q, a;
  std::vector<SmallMatrix> g, h, b;
  std::vector<SmallMatrix> d;

  std::size_t blocks() const noexcept { return m.size(); }
  void validate() const;
  DenseMatrix to_dense() const;
};

/// Minimal-order upper generators. g[i] for i < M-1, h[j] for j >= 1,
/// b[k] for 1 <= k <= M-2; orders s[k] = g[k].cols().
struct UpperGenerators {
  std::vector<SmallMatrix> g, h, b;
  std::vector<std::size_t> s;
};

/// Per-step unitary factors, kept for the U = W F consistency check.
struct CompressionTrace {
  std::vector<SmallMatrix> w;  ///< W_k, (n_k + rho_{k-1}) square
  std::vector<SmallMatrix> f;  ///< F_k, (s_{k-1} + m_k) square, k = 0..M-1
  std::vector<std::size_t> nu;
  std::vector<std::size_t> rho;
};

/// Expected orders s_k from the block sizes and the lower orders.
std::vector<std::size_t> minimal_upper_orders(const std::vector<std::size_t>& m,
                                              const std::vector<std::size_t>& n,
                                              const std::vector<std::size_t>& lower_orders);

/// Forward compression of redundant upper generators of a unitary block
/// matrix. Throws NumericalError when a column block that must be
/// orthonormal is not (within 1e-8), which means the input is not unitary.
UpperGenerators compress_unitary(const BlockQuasiseparable& mat, CompressionTrace* trace = nullptr);

/// Assemble the dense block matrix from output upper generators plus the
/// original lower generators and diagonal.
DenseMatrix assemble_with_upper(const BlockQuasiseparable& mat, const UpperGenerators& up);

/// max |R L - U| where L = F_0 ... F_{M-1} acts on block rows and
/// R = W_{M-2} ... W_0 on block columns, each factor embedded at its running
/// offset.
double wf_factorization_check(const DenseMatrix& u, const BlockQuasiseparable& mat,
                              const CompressionTrace& trace);

/// V in the (N+1)-block form where block diagonals are the subdiagonal of V.
BlockQuasiseparable v_block_form(const PencilGenerators& gen);
/// U with scalar blocks.
BlockQuasiseparable u_block_form(const PencilGenerators& gen);

/// Recompress V and U generators of a pencil in place: afterwards V has
/// orders (1, 2, .., 2) and U has orders 1.
/// Uses closed-form step shapes for the two block forms; the result agrees
/// with compress_pencil_generic to rounding.
void compress_pencil(PencilGenerators& gen);

/// Compression for a pencil whose redundant slots all lie at or before
/// `last` (V) and `last - 1` (U), as left by a sweep on a window ending at
/// `last`. Later slots keep their old basis; the link into them absorbs the
/// basis change, so the result is minimal but not the canonical one.
void compress_pencil(PencilGenerators& gen, std::size_t last);

/// The same through compress_unitary on v_block_form / u_block_form.
void compress_pencil_generic(PencilGenerators& gen);

}  // namespace fastqz
