#pragma once

#include <cstddef>
#include <vector>

#include "fastqz/dense_matrix.hpp"
#include "fastqz/givens.hpp"
#include "fastqz/qz_driver.hpp"

namespace fastqz {

/// Rotations of one sweep. q[k] acts on rows (k, k+1), z[k] on columns
/// (k, k+1); entries outside the active window are identities.
struct SweepRotations {
  std::vector<GivensRotation> q;
  std::vector<GivensRotation> z;
};

/// One implicit single-shift QZ sweep on the active block [lo, hi] of a
/// Hessenberg-triangular pair, in place. With `full` the rotations update
/// whole rows and columns, so the result is Q* A Z, Q* B Z of the full
/// matrices. Otherwise only the entries inside the window that can be
/// nonzero are touched, which is all the eigenvalue driver needs.
SweepRotations dense_qz_sweep(DenseMatrixPair& pair, Complex alpha, std::size_t lo, std::size_t hi,
                              bool full = true);

/// Whole-matrix sweep.
SweepRotations dense_qz_sweep(DenseMatrixPair& pair, Complex alpha);

/// Q = Q~_0 ... Q~_{N-2} (or the Z product) as a dense matrix.
DenseMatrix accumulate(const std::vector<GivensRotation>& rots, std::size_t n);

/// Classical QZ in O(N^3) with the same shift and deflation policy as the
/// structured driver. Rejects N > 2000.
EigenResult dense_eigenvalues(DenseMatrixPair pair, const QzOptions& opt = {});

}  // namespace fastqz
