#include "fastqz/generators.hpp"

#include <cmath>
#include <string>

#include "fastqz/errors.hpp"

namespace fastqz {

std::vector<std::size_t> TriangularGenerators::orders() const {
  std::vector<std::size_t> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[i].cols();
  return r;
}

void TriangularGenerators::validate() const {
  const std::size_t n = g.size();
  if (h.size() != n || b.size() + 1 != std::max<std::size_t>(n, 1))
    throw StructuralError("TriangularGenerators: sequence lengths do not match");
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].rows() != 1 || h[i].cols() != 1 || h[i].rows() != g[i].cols())
      throw StructuralError("TriangularGenerators: g/h shape at index " + std::to_string(i));
    if (i + 1 < n && (b[i].rows() != g[i].cols() || b[i].cols() != g[i + 1].cols()))
      throw StructuralError("TriangularGenerators: b shape at index " + std::to_string(i));
  }
}

std::vector<std::size_t> QuasiseparableGenerators::orders() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) r.push_back(g[i].cols());
  return r;
}

void QuasiseparableGenerators::validate() const {
  const std::size_t n = g.size();
  if (h.size() != n || b.size() != n) throw StructuralError("QuasiseparableGenerators: sequence lengths");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (g[i].rows() != 1) throw StructuralError("QuasiseparableGenerators: g must be a row");
    const std::size_t r = g[i].cols();
    if (h[i + 1].cols() != 1 || h[i + 1].rows() != r)
      throw StructuralError("QuasiseparableGenerators: h shape at index " + std::to_string(i + 1));
    if (i >= 1 && (b[i].rows() != g[i - 1].cols() || b[i].cols() != r))
      throw StructuralError("QuasiseparableGenerators: b shape at index " + std::to_string(i));
  }
}

void PencilGenerators::validate() const {
  if (n == 0) throw StructuralError("PencilGenerators: empty pencil");
  if (sigma_a.size() != n - 1 || d_b.size() != n || z.size() != n || w.size() != n || p.size() != n ||
      q.size() != n)
    throw StructuralError("PencilGenerators: vector lengths do not match n");
  if (v.size() != n || u.size() != n) throw StructuralError("PencilGenerators: generator count");
  v.validate();
  u.validate();
}

Polynomial Polynomial::normalized() const {
  double s = 0.0;
  for (auto c : coeffs) s += std::norm(c);
  s = std::sqrt(s);
  if (s == 0.0) throw InvalidInput("cannot normalize the zero polynomial");
  Polynomial r;
  r.coeffs.reserve(coeffs.size());
  for (auto c : coeffs) r.coeffs.push_back(c / s);
  r.scale = scale * s;
  return r;
}

Complex Polynomial::evaluate(Complex x) const {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

namespace {

Polynomial checked_input(const Polynomial& poly, bool normalize) {
  if (poly.coeffs.size() < 2) throw InvalidInput("companion pencil needs degree >= 1");
  bool any = false;
  for (auto c : poly.coeffs) {
    if (!is_finite(c)) throw InvalidInput("polynomial has non-finite coefficients");
    any = any || c != Complex{};
  }
  if (!any) throw InvalidInput("zero polynomial");
  Polynomial a = normalize ? poly.normalized() : poly;
  if (a.leading() == Complex{}) throw InvalidInput("leading coefficient is zero");
  return a;
}

}  // namespace

PencilGenerators build_companion_pencil(const Polynomial& poly, bool normalize) {
  const Polynomial a = checked_input(poly, normalize);
  const std::size_t n = a.degree();

  PencilGenerators gen;
  gen.n = n;
  gen.sigma_a.assign(n - 1, Complex{1.0, 0.0});
  gen.d_b.assign(n, Complex{1.0, 0.0});
  gen.d_b[n - 1] = a.leading();

  // V: only V(0, n-1) = 1 lies on or above the diagonal (V(0,0) when n = 1).
  gen.v.g.assign(n, SmallMatrix::scalar(0.0));
  gen.v.h.assign(n, SmallMatrix::scalar(0.0));
  gen.v.b.assign(n - 1, SmallMatrix::scalar(1.0));
  gen.v.g[0] = SmallMatrix::scalar(1.0);
  gen.v.h[n - 1] = SmallMatrix::scalar(1.0);

  // U = I has a zero strict upper part.
  gen.u.g.assign(n, SmallMatrix::scalar(0.0));
  gen.u.h.assign(n, SmallMatrix::scalar(0.0));
  gen.u.b.assign(n, SmallMatrix::scalar(0.0));
  gen.u.g[n - 1] = SmallMatrix();
  gen.u.h[0] = SmallMatrix();
  gen.u.b[0] = SmallMatrix();
  gen.u.b[n - 1] = SmallMatrix();

  gen.z.assign(n, Complex{});
  for (std::size_t k = 0; k < n; ++k) gen.z[k] = a.coeffs[k];
  gen.z[0] += 1.0;
  gen.w.assign(n, Complex{});
  gen.w[n - 1] = 1.0;
  gen.p.assign(n, Complex{});
  gen.p[n - 1] = 1.0;
  gen.q.assign(n, Complex{});
  gen.q[n - 1] = std::conj(Complex{1.0, 0.0} - a.leading());
  return gen;
}

DenseMatrixPair companion_dense(const Polynomial& poly, bool normalize) {
  const Polynomial a = checked_input(poly, normalize);
  const std::size_t n = a.degree();
  DenseMatrixPair pair{DenseMatrix(n, n), DenseMatrix::identity(n)};
  for (std::size_t k = 0; k + 1 < n; ++k) pair.A(k + 1, k) = 1.0;
  for (std::size_t k = 0; k < n; ++k) pair.A(k, n - 1) = -a.coeffs[k];
  pair.B(n - 1, n - 1) = a.leading();
  return pair;
}

DenseReconstruction reconstruct_dense(const PencilGenerators& gen) {
  gen.validate();
  const std::size_t n = gen.n;
  DenseReconstruction r{DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n)};

  for (std::size_t i = 0; i < n; ++i) {
    SmallMatrix row = gen.v.g[i];
    for (std::size_t j = i; j < n; ++j) {
      r.V(i, j) = dot(row, gen.v.h[j]);
      if (j + 1 < n) row = row * gen.v.b[j];
    }
    for (std::size_t j = 0; j + 1 < i; ++j) r.V(i, j) = gen.z[i] * std::conj(gen.w[j]);
    if (i >= 1) r.V(i, i - 1) = gen.sigma_v(i - 1);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n) {
      SmallMatrix row = gen.u.g[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        r.U(i, j) = dot(row, gen.u.h[j]);
        if (j + 1 < n) row = row * gen.u.b[j];
      }
    }
    r.U(i, i) = gen.d_u(i);
    for (std::size_t j = 0; j < i; ++j) r.U(i, j) = gen.p[i] * std::conj(gen.q[j]);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r.A(i, j) = r.V(i, j) - gen.z[i] * std::conj(gen.w[j]);
      r.B(i, j) = r.U(i, j) - gen.p[i] * std::conj(gen.q[j]);
    }
  // Stored entries are exact by definition; avoid the cancellation above.
  for (std::size_t k = 0; k + 1 < n; ++k) r.A(k + 1, k) = gen.sigma_a[k];
  for (std::size_t k = 0; k < n; ++k) r.B(k, k) = gen.d_b[k];
  return r;
}

Complex diag_entry_A(const PencilGenerators& gen, std::size_t k) {
  return dot(gen.v.g[k], gen.v.h[k]) - gen.z[k] * std::conj(gen.w[k]);
}

std::vector<Complex> diag_entries_A(const PencilGenerators& gen) {
  std::vector<Complex> d(gen.n);
  for (std::size_t k = 0; k < gen.n; ++k) d[k] = diag_entry_A(gen, k);
  return d;
}

TrailingBlock trailing_block(const PencilGenerators& gen) {
  if (gen.n < 2) throw StructuralError("trailing_block needs n >= 2");
  return trailing_block(gen, gen.n - 1);
}

TrailingBlock trailing_block(const PencilGenerators& gen, std::size_t last) {
  if (last < 1 || last >= gen.n) throw StructuralError("trailing_block: index out of range");
  const std::size_t f = last - 1;
  TrailingBlock t;
  t.a[0][0] = diag_entry_A(gen, f);
  t.a[0][1] = dot(gen.v.g[f] * gen.v.b[f], gen.v.h[last]) - gen.z[f] * std::conj(gen.w[last]);
  t.a[1][0] = gen.sigma_a[f];
  t.a[1][1] = diag_entry_A(gen, last);
  t.b[0][0] = gen.d_b[f];
  t.b[0][1] = dot(gen.u.g[f], gen.u.h[last]) - gen.p[f] * std::conj(gen.q[last]);
  t.b[1][0] = 0.0;
  t.b[1][1] = gen.d_b[last];
  return t;
}

}  // namespace fastqz
