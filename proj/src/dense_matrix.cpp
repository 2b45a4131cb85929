#include "fastqz/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "fastqz/errors.hpp"

namespace fastqz {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw StructuralError("DenseMatrix::block out of range");
  DenseMatrix r(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

double DenseMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (auto v : data_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (auto v : data_) s += std::norm(v);
  return std::sqrt(s);
}

void DenseMatrix::rotate_rows(std::size_t i, const GivensRotation& g, std::size_t c0, std::size_t c1) {
  Complex* r0 = &data_[i * cols_];
  Complex* r1 = &data_[(i + 1) * cols_];
  for (std::size_t j = c0; j < c1; ++j) {
    auto [x, y] = g.apply_adjoint(r0[j], r1[j]);
    r0[j] = x;
    r1[j] = y;
  }
}

void DenseMatrix::rotate_cols(std::size_t j, const GivensRotation& g, std::size_t r0, std::size_t r1) {
  for (std::size_t i = r0; i < r1; ++i) {
    Complex& a = data_[i * cols_ + j];
    Complex& b = data_[i * cols_ + j + 1];
    auto [x, y] = g.apply_right(a, b);
    a = x;
    b = y;
  }
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_) throw StructuralError("DenseMatrix product: dimension mismatch");
  DenseMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("DenseMatrix difference: shape");
  DenseMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
  return r;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("DenseMatrix sum: shape");
  DenseMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).max_abs(); }

double unitarity_defect(const DenseMatrix& m) {
  return max_abs_diff(m * m.adjoint(), DenseMatrix::identity(m.rows()));
}

double below_hessenberg(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 2; i < a.rows(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double below_triangular(const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 1; i < b.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) m = std::max(m, std::abs(b(i, j)));
  return m;
}

}  // namespace fastqz
