#pragma once

#include <cstddef>
#include <vector>

#include "fastqz/dense_qz.hpp"
#include "fastqz/generators.hpp"
#include "fastqz/qz_driver.hpp"

namespace fastqz {

struct SweepResult {
  PencilGenerators gen;    ///< redundant orders: V up to 3, U up to 2
  SweepRotations rotations;  ///< filled only when captured
};

/// One structured implicit single-shift QZ sweep over the whole pencil.
SweepResult qz_sweep(const PencilGenerators& gen, Complex alpha, bool capture = false);

/// Sweep restricted to the active block [lo, hi]: rotations outside the
/// block are identities, so the generators keep describing the full pencil.
/// The block must be decoupled: A(lo, lo-1) = 0 and A(hi+1, hi) = 0.
SweepResult qz_sweep(const PencilGenerators& gen, Complex alpha, std::size_t lo, std::size_t hi,
                     bool capture = false);

/// In-place form used by the driver. Requires A(lo, lo-1) = 0 and
/// A(hi+1, hi) = 0. Only slots lo-1 .. hi change, so a sweep costs
/// O(hi - lo); the generators are left with redundant orders inside the
/// window and must be recompressed through slot hi.
void sweep_in_place(PencilGenerators& gen, Complex alpha, std::size_t lo, std::size_t hi,
                    SweepRotations* rot);

/// Shift from the trailing 2x2 block of the whole pencil.
Complex wilkinson_shift(const PencilGenerators& gen);

struct DeflationReport {
  std::vector<std::size_t> splits;    ///< k with A(k+1, k) set to zero
  std::vector<std::size_t> infinite;  ///< k with a negligible B(k, k)
};

/// Zero every negligible subdiagonal entry of A and flag negligible
/// diagonal entries of B.
DeflationReport deflation_scan(PencilGenerators& gen, double tol_a = kEps, double tol_b = kEps);

/// Full eigenvalue computation: shift, windowed sweep, compression and
/// deflation until every eigenvalue is isolated.
EigenResult eigenvalues(PencilGenerators gen, const QzOptions& opt = {});

}  // namespace fastqz
