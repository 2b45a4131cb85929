#include "fastqz/small_matrix.hpp"

namespace fastqz {

SmallMatrix hcat(const SmallMatrix& a, const SmallMatrix& b) {
  if (a.rows() != b.rows()) throw StructuralError("hcat: row mismatch");
  SmallMatrix r(a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

SmallMatrix vcat(const SmallMatrix& a, const SmallMatrix& b) {
  if (a.cols() != b.cols()) throw StructuralError("vcat: column mismatch");
  SmallMatrix r(a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Complex dot(const SmallMatrix& row, const SmallMatrix& col) {
  if (row.rows() != 1 || col.cols() != 1 || row.cols() != col.rows())
    throw StructuralError("dot: shape mismatch");
  Complex s{};
  for (std::size_t k = 0; k < row.cols(); ++k) s += row(0, k) * col(k, 0);
  return s;
}

}  // namespace fastqz
