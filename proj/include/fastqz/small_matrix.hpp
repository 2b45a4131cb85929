#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <initializer_list>

#include "fastqz/errors.hpp"
#include "fastqz/types.hpp"

namespace fastqz {

/// Dense complex matrix with inline storage for generator blocks.
///
/// Generators have orders of at most three, so every block and every
/// intermediate of a sweep or compression step fits in kCapacity entries.
/// Zero-sized dimensions are legal; an (m x 0) * (0 x n) product is the
/// m x n zero matrix.
class SmallMatrix {
 public:
  static constexpr std::size_t kCapacity = 16;

  SmallMatrix() = default;

  SmallMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows * cols > kCapacity) throw StructuralError("SmallMatrix: block exceeds capacity");
    for (std::size_t k = 0; k < rows * cols; ++k) data_[k] = Complex{};
  }

  // Only the used prefix of the storage is ever read, so copies move just
  // that part.
  SmallMatrix(const SmallMatrix& o) : rows_(o.rows_), cols_(o.cols_) { copy_from(o); }
  SmallMatrix& operator=(const SmallMatrix& o) {
    rows_ = o.rows_;
    cols_ = o.cols_;
    copy_from(o);
    return *this;
  }

  SmallMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> values)
      : SmallMatrix(rows, cols) {
    if (values.size() != rows * cols) throw StructuralError("SmallMatrix: initializer size");
    std::size_t k = 0;
    for (auto v : values) data_[k++] = v;
  }

  static SmallMatrix scalar(Complex v) { return SmallMatrix(1, 1, {v}); }

  static SmallMatrix identity(std::size_t n) {
    SmallMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  Complex operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  SmallMatrix adjoint() const {
    SmallMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  /// Copy of the block starting at (r0, c0) with the given extent.
  SmallMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw StructuralError("SmallMatrix: block out of range");
    SmallMatrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

  void set_block(std::size_t r0, std::size_t c0, const SmallMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw StructuralError("SmallMatrix: set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// Single entry of a 1x1 block, or 0 for an empty block.
  Complex value() const {
    if (empty()) return {};
    if (rows_ != 1 || cols_ != 1) throw StructuralError("SmallMatrix: value() on non-scalar block");
    return data_[0];
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < rows_ * cols_; ++k) m = std::max(m, std::abs(data_[k]));
    return m;
  }

  bool all_finite() const noexcept {
    for (std::size_t k = 0; k < rows_ * cols_; ++k)
      if (!is_finite(data_[k])) return false;
    return true;
  }

  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("SmallMatrix: product dimension mismatch");
    SmallMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Complex acc{};
        for (std::size_t k = 0; k < a.cols_; ++k) acc += mul(a(i, k), b(k, j));
        r(i, j) = acc;
      }
    return r;
  }

  friend SmallMatrix operator+(SmallMatrix a, const SmallMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("SmallMatrix: sum shape");
    for (std::size_t k = 0; k < a.rows_ * a.cols_; ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend SmallMatrix operator-(SmallMatrix a, const SmallMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("SmallMatrix: difference shape");
    for (std::size_t k = 0; k < a.rows_ * a.cols_; ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend SmallMatrix operator*(Complex s, SmallMatrix a) {
    for (std::size_t k = 0; k < a.rows_ * a.cols_; ++k) a.data_[k] *= s;
    return a;
  }

 private:
  void copy_from(const SmallMatrix& o) noexcept {
    for (std::size_t k = 0; k < rows_ * cols_; ++k) data_[k] = o.data_[k];
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<Complex, kCapacity> data_;
};

/// [a b] side by side.
SmallMatrix hcat(const SmallMatrix& a, const SmallMatrix& b);
/// [a; b] stacked.
SmallMatrix vcat(const SmallMatrix& a, const SmallMatrix& b);
/// Row vector times column vector of matching length, as a scalar.
Complex dot(const SmallMatrix& row, const SmallMatrix& col);

}  // namespace fastqz
