#pragma once

#include <cstddef>
#include <vector>

#include "fastqz/givens.hpp"
#include "fastqz/types.hpp"

namespace fastqz {

/// Row-major N x M complex matrix. Used by the dense reference solver and
/// by tests; the structured solver never builds one.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  DenseMatrix adjoint() const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  double max_abs() const noexcept;
  double frobenius() const noexcept;

  /// Apply G* to rows (i, i+1) over columns [c0, c1).
  void rotate_rows(std::size_t i, const GivensRotation& g, std::size_t c0, std::size_t c1);
  /// Apply G from the right to columns (j, j+1) over rows [r0, r1).
  void rotate_cols(std::size_t j, const GivensRotation& g, std::size_t r0, std::size_t r1);

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// max |M M* - I|
double unitarity_defect(const DenseMatrix& m);
/// Largest entry below the first subdiagonal.
double below_hessenberg(const DenseMatrix& a);
/// Largest entry below the diagonal.
double below_triangular(const DenseMatrix& b);

struct DenseMatrixPair {
  DenseMatrix A;
  DenseMatrix B;
};

}  // namespace fastqz
