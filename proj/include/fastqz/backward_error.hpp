#pragma once

#include <vector>

#include "fastqz/dense_matrix.hpp"
#include "fastqz/double_double.hpp"
#include "fastqz/generators.hpp"

namespace fastqz {

/// First-order change of det(sI - A - E) - det(sI - A) for the companion
/// matrix A of the monic polynomial `a` (a_n must be exactly 1). Returns the
/// coefficients of s^0 .. s^{n-1}:
///   da_{k-1} = sum_{m<k} a_m sum_{i>k} E(i, i+m-k) - sum_{m>=k} a_m sum_{i<=k} E(i, i+m-k)
/// with 1-based indices and out-of-range entries of E taken as zero.
std::vector<Complex> em_coefficient_perturbation(const Polynomial& a, const DenseMatrix& E);

/// First-order change of det(s(B+G) - (A+E)) - det(sB - A) for the companion
/// pencil of `a` (a_n != 0). Coefficients of s^0 .. s^n.
std::vector<Complex> pencil_perturbation_poly(const Polynomial& a, const DenseMatrix& E, const DenseMatrix& G);

/// leading * prod (x - r_j) in double-double, coefficients ascending. Uses a
/// balanced product tree whose subtrees hold interleaved roots.
std::vector<DoubleDoubleComplex> expand_roots(const std::vector<Complex>& roots, Complex leading);

/// max_k |pt_k - p_k| after scaling both coefficient vectors to unit 2-norm,
/// where pt is expanded from the roots. The leading coefficient fixes the
/// phase of pt; pass a_exact.leading() to compare like with like.
double measured_backward_error(const Polynomial& a_exact, const std::vector<Complex>& roots, Complex leading);

/// Model perturbations of the QZ backward error: every entry of
/// triu(ones(N), -2) in E and of triu(ones(N), -1) in G equals
/// scale_factor * N * eps.
DenseMatrixPair model_perturbation(std::size_t n, double scale_factor = 10.0);

/// |dp_k| from pencil_perturbation_poly under model_perturbation, k = 0..n.
std::vector<double> predicted_backward_error(const Polynomial& a, double scale_factor = 10.0);

/// log10 of predicted_backward_error rounded to the nearest integer;
/// -infinity where the prediction is exactly zero.
std::vector<double> predicted_backward_error_table(const Polynomial& a, double scale_factor = 10.0);

/// Per-coefficient |pt_k - p_k| after normalization, as used for the
/// measured columns of the coefficient table.
std::vector<double> coefficient_errors(const Polynomial& a_exact, const std::vector<Complex>& roots,
                                       Complex leading);

/// log10 rounded to the nearest integer, -infinity for 0.
double rounded_log10(double x);

}  // namespace fastqz
