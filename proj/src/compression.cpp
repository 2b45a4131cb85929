#include "fastqz/compression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fastqz/errors.hpp"
#include "fastqz/givens.hpp"

namespace fastqz {

namespace {

constexpr double kOrthonormalTol = 1e-8;

std::vector<std::size_t> offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), off.begin() + 1);
  return off;
}

// Column rotations W* with m W* = [0, X]; X keeps the trailing min(cols, rows)
// columns. Returns W*.
SmallMatrix compress_columns(SmallMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmallMatrix wstar = SmallMatrix::identity(cols);
  if (cols <= rows) return wstar;
  const std::size_t shift = cols - rows;
  for (std::size_t i = rows; i-- > 0;) {
    for (std::size_t j = 0; j < shift + i; ++j) {
      const GivensRotation r = make_givens_right(m(i, j), m(i, j + 1));
      rotate_cols(m, j, r);
      rotate_cols(wstar, j, r);
    }
  }
  return wstar;
}

// Unitary F with F* cols = [I; 0] for a block with orthonormal columns.
SmallMatrix complete_to_unitary(SmallMatrix cols, std::size_t step) {
  const std::size_t r = cols.rows();
  const std::size_t nu = cols.cols();
  SmallMatrix f = SmallMatrix::identity(r);
  for (std::size_t j = 0; j < nu; ++j) {
    for (std::size_t i = r; i-- > j + 1;) {
      const GivensRotation g = make_givens(cols(i - 1, j), cols(i, j));
      rotate_rows(cols, i - 1, g);
      rotate_cols(f, i - 1, g);
    }
  }
  // cols is now [R; 0] with R unitary and upper triangular, hence diagonal.
  for (std::size_t j = 0; j < nu; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(std::abs(cols(i, j)) - expected) > kOrthonormalTol)
        throw NumericalError("compression: column block is not orthonormal; input is not unitary",
                             static_cast<std::ptrdiff_t>(step));
    }
    const Complex phase = cols(j, j) / std::abs(cols(j, j));
    for (std::size_t i = 0; i < r; ++i) f(i, j) *= phase;
  }
  return f;
}

}  // namespace

void BlockQuasiseparable::validate() const {
  const std::size_t mm = blocks();
  if (n.size() != mm || p.size() != mm || q.size() != mm || a.size() != mm || g.size() != mm ||
      h.size() != mm || b.size() != mm || d.size() != mm)
    throw StructuralError("BlockQuasiseparable: sequence lengths differ");
  std::size_t rows = 0, cols = 0;
  for (std::size_t k = 0; k < mm; ++k) {
    rows += m[k];
    cols += n[k];
    if (d[k].rows() != m[k] || d[k].cols() != n[k])
      throw StructuralError("BlockQuasiseparable: diagonal block " + std::to_string(k));
    if (k + 1 < mm) {
      if (q[k].cols() != n[k] || g[k].rows() != m[k])
        throw StructuralError("BlockQuasiseparable: q/g shape at " + std::to_string(k));
      if (p[k + 1].rows() != m[k + 1] || p[k + 1].cols() != q[k].rows())
        throw StructuralError("BlockQuasiseparable: p shape at " + std::to_string(k + 1));
      if (h[k + 1].cols() != n[k + 1] || h[k + 1].rows() != g[k].cols())
        throw StructuralError("BlockQuasiseparable: h shape at " + std::to_string(k + 1));
      if (k >= 1) {
        if (a[k].rows() != q[k].rows() || a[k].cols() != q[k - 1].rows())
          throw StructuralError("BlockQuasiseparable: a shape at " + std::to_string(k));
        if (b[k].rows() != g[k - 1].cols() || b[k].cols() != g[k].cols())
          throw StructuralError("BlockQuasiseparable: b shape at " + std::to_string(k));
      }
    }
  }
  if (rows != cols) throw StructuralError("BlockQuasiseparable: matrix is not square");
}

namespace {

DenseMatrix assemble(const BlockQuasiseparable& mat, const std::vector<SmallMatrix>& g,
                     const std::vector<SmallMatrix>& h, const std::vector<SmallMatrix>& b) {
  const std::size_t mm = mat.blocks();
  const auto ro = offsets(mat.m);
  const auto co = offsets(mat.n);
  DenseMatrix out(ro.back(), co.back());
  auto put = [&](std::size_t i, std::size_t j, const SmallMatrix& blk) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) out(ro[i] + r, co[j] + c) = blk(r, c);
  };
  for (std::size_t j = 0; j < mm; ++j) {
    put(j, j, mat.d[j]);
    if (j + 1 >= mm) continue;
    // Lower part of column j: p[i] a[i-1] .. a[j+1] q[j].
    SmallMatrix col = mat.q[j];
    for (std::size_t i = j + 1; i < mm; ++i) {
      put(i, j, mat.p[i] * col);
      if (i + 1 < mm) col = mat.a[i] * col;
    }
    // Upper part of row j: g[j] b[j+1] .. b[k-1] h[k].
    SmallMatrix row = g[j];
    for (std::size_t k = j + 1; k < mm; ++k) {
      put(j, k, row * h[k]);
      if (k + 1 < mm) row = row * b[k];
    }
  }
  return out;
}

}  // namespace

DenseMatrix BlockQuasiseparable::to_dense() const {
  validate();
  return assemble(*this, g, h, b);
}

DenseMatrix assemble_with_upper(const BlockQuasiseparable& mat, const UpperGenerators& up) {
  return assemble(mat, up.g, up.h, up.b);
}

std::vector<std::size_t> minimal_upper_orders(const std::vector<std::size_t>& m,
                                              const std::vector<std::size_t>& n,
                                              const std::vector<std::size_t>& lower_orders) {
  std::vector<std::size_t> s;
  std::ptrdiff_t rho_prev = 0, s_prev = 0;
  for (std::size_t k = 0; k + 1 < m.size(); ++k) {
    const auto avail = static_cast<std::ptrdiff_t>(n[k]) + rho_prev;
    const auto rho = std::min<std::ptrdiff_t>(avail, static_cast<std::ptrdiff_t>(lower_orders[k]));
    const auto nu = avail - rho;
    const auto sk = static_cast<std::ptrdiff_t>(m[k]) + s_prev - nu;
    if (sk < 0) throw StructuralError("minimal_upper_orders: negative order at " + std::to_string(k));
    s.push_back(static_cast<std::size_t>(sk));
    rho_prev = rho;
    s_prev = sk;
  }
  return s;
}

UpperGenerators compress_unitary(const BlockQuasiseparable& mat, CompressionTrace* trace) {
  mat.validate();
  const std::size_t mm = mat.blocks();
  UpperGenerators out;
  out.g.assign(mm, SmallMatrix());
  out.h.assign(mm, SmallMatrix());
  out.b.assign(mm, SmallMatrix());
  if (trace) *trace = CompressionTrace{};

  std::size_t rho_prev = 0, s_prev = 0;
  SmallMatrix x_prev;   // rL_{k-1} x rho_{k-1}
  SmallMatrix zc_prev;  // s_{k-1} x rho_{k-1}
  SmallMatrix y_prev;   // s_{k-1} x rU_{k-1}
  SmallMatrix hs(0, mat.n[0]);

  for (std::size_t k = 0; k + 1 < mm; ++k) {
    const std::size_t rl = mat.q[k].rows();
    const std::size_t avail = rho_prev + mat.n[k];
    const std::size_t rho = std::min(avail, rl);
    const std::size_t nu = avail - rho;
    if (mat.m[k] + s_prev < nu) throw StructuralError("compress_unitary: negative order");
    const std::size_t s = mat.m[k] + s_prev - nu;

    // [a(k) X_{k-1}, q(k)] W* = [0, X_k]
    SmallMatrix ax = k == 0 ? SmallMatrix(rl, 0) : mat.a[k] * x_prev;
    SmallMatrix lower = hcat(ax, mat.q[k]);
    const SmallMatrix wstar = compress_columns(lower);
    const SmallMatrix x = lower.block(0, nu, rl, rho);

    // The bottom-left block is p(k) X_{k-1}: lower part of U seen through
    // the columns already folded into X_{k-1}.
    const SmallMatrix px = k == 0 ? SmallMatrix(mat.m[k], 0) : mat.p[k] * x_prev;
    const SmallMatrix zk = vcat(hcat(zc_prev, hs), hcat(px, mat.d[k])) * wstar;

    const SmallMatrix f = complete_to_unitary(zk.block(0, 0, zk.rows(), nu), k);
    const SmallMatrix h1 = zk.block(0, nu, s_prev, rho);
    const SmallMatrix h2 = zk.block(s_prev, nu, mat.m[k], rho);
    const SmallMatrix bs = f.block(0, nu, s_prev, s);
    const SmallMatrix gs = f.block(s_prev, nu, mat.m[k], s);

    SmallMatrix y = gs.adjoint() * mat.g[k];
    if (k > 0) y = y + bs.adjoint() * y_prev * mat.b[k];
    const SmallMatrix zc = gs.adjoint() * h2 + bs.adjoint() * h1;

    out.g[k] = gs;
    if (k > 0) out.b[k] = bs;
    out.s.push_back(s);
    hs = y * mat.h[k + 1];
    out.h[k + 1] = hs;

    if (trace) {
      trace->w.push_back(wstar.adjoint());
      trace->f.push_back(f);
      trace->nu.push_back(nu);
      trace->rho.push_back(rho);
    }
    if (!y.all_finite() || !zc.all_finite())
      throw NumericalError("compression: non-finite intermediate", static_cast<std::ptrdiff_t>(k));

    x_prev = x;
    zc_prev = zc;
    y_prev = y;
    rho_prev = rho;
    s_prev = s;
  }

  if (trace) {
    const std::size_t last = mm - 1;
    const SmallMatrix px = last == 0 ? SmallMatrix(mat.m[last], 0) : mat.p[last] * x_prev;
    trace->f.push_back(vcat(hcat(zc_prev, hs), hcat(px, mat.d[last])));
    trace->nu.push_back(mat.n[last] + rho_prev);
  }
  return out;
}

double wf_factorization_check(const DenseMatrix& u, const BlockQuasiseparable& mat,
                              const CompressionTrace& trace) {
  const std::size_t dim = u.rows();
  DenseMatrix left = DenseMatrix::identity(dim);
  DenseMatrix right = DenseMatrix::identity(dim);
  std::size_t done = 0;
  for (std::size_t k = 0; k < trace.f.size(); ++k) {
    const SmallMatrix& f = trace.f[k];
    DenseMatrix emb = DenseMatrix::identity(dim);
    for (std::size_t i = 0; i < f.rows(); ++i)
      for (std::size_t j = 0; j < f.cols(); ++j) emb(done + i, done + j) = f(i, j);
    left = left * emb;
    if (k < trace.w.size()) {
      const SmallMatrix& w = trace.w[k];
      DenseMatrix wemb = DenseMatrix::identity(dim);
      for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) wemb(done + i, done + j) = w(i, j);
      right = wemb * right;
      done += trace.nu[k];
    }
  }
  (void)mat;
  return max_abs_diff(left * right, u);
}

BlockQuasiseparable v_block_form(const PencilGenerators& gen) {
  const std::size_t n = gen.n;
  const std::size_t mm = n + 1;
  BlockQuasiseparable bq;
  bq.m.assign(mm, 1);
  bq.m[n] = 0;
  bq.n.assign(mm, 1);
  bq.n[0] = 0;
  bq.p.assign(mm, SmallMatrix());
  bq.q.assign(mm, SmallMatrix());
  bq.a.assign(mm, SmallMatrix());
  bq.g.assign(mm, SmallMatrix());
  bq.h.assign(mm, SmallMatrix());
  bq.b.assign(mm, SmallMatrix());
  bq.d.assign(mm, SmallMatrix());

  bq.q[0] = SmallMatrix(1, 0);
  for (std::size_t j = 1; j < n; ++j) bq.q[j] = SmallMatrix::scalar(std::conj(gen.w[j - 1]));
  for (std::size_t i = 1; i < n; ++i) bq.p[i] = SmallMatrix::scalar(gen.z[i]);
  bq.p[n] = SmallMatrix(0, 1);
  for (std::size_t k = 1; k < n; ++k) bq.a[k] = SmallMatrix::scalar(1.0);

  bq.d[0] = SmallMatrix(1, 0);
  for (std::size_t i = 1; i < n; ++i) bq.d[i] = SmallMatrix::scalar(gen.sigma_v(i - 1));
  bq.d[n] = SmallMatrix(0, 1);

  for (std::size_t i = 0; i < n; ++i) bq.g[i] = gen.v.g[i];
  for (std::size_t j = 1; j <= n; ++j) bq.h[j] = gen.v.h[j - 1];
  for (std::size_t k = 1; k < n; ++k) bq.b[k] = gen.v.b[k - 1];
  return bq;
}

BlockQuasiseparable u_block_form(const PencilGenerators& gen) {
  const std::size_t n = gen.n;
  BlockQuasiseparable bq;
  bq.m.assign(n, 1);
  bq.n.assign(n, 1);
  bq.p.assign(n, SmallMatrix());
  bq.q.assign(n, SmallMatrix());
  bq.a.assign(n, SmallMatrix());
  bq.g = gen.u.g;
  bq.h = gen.u.h;
  bq.b = gen.u.b;
  bq.d.assign(n, SmallMatrix());
  for (std::size_t i = 0; i < n; ++i) {
    bq.d[i] = SmallMatrix::scalar(gen.d_u(i));
    if (i >= 1) bq.p[i] = SmallMatrix::scalar(gen.p[i]);
    if (i + 1 < n) bq.q[i] = SmallMatrix::scalar(std::conj(gen.q[i]));
    if (i >= 1 && i + 1 < n) bq.a[i] = SmallMatrix::scalar(1.0);
  }
  return bq;
}

namespace {

void require_unit(double r, std::size_t k) {
  if (std::abs(r - 1.0) > kOrthonormalTol)
    throw NumericalError("compression: column block is not orthonormal; input is not unitary",
                         static_cast<std::ptrdiff_t>(k));
}

// compress_unitary(v_block_form(gen)) written out for the fixed block
// shapes of V: scalar lower generators, output orders (1, 2, .., 2).
void compress_v(PencilGenerators& gen, std::size_t last) {
  const std::size_t n = gen.n;
  TriangularGenerators& v = gen.v;

  SmallMatrix y = v.g[0];
  v.h[0] = SmallMatrix::scalar(dot(y, v.h[0]));
  v.g[0] = SmallMatrix::scalar(1.0);
  if (n == 1) return;
  if (last == 0) {
    v.b[0] = y * v.b[0];
    return;
  }

  Complex zc0 = v.h[0].value();
  Complex zc1 = gen.sigma_v(0);
  Complex x = std::conj(gen.w[0]);
  y = vcat(y * v.b[0], v.g[1]);
  v.h[1] = y * v.h[1];
  v.g[1] = SmallMatrix(1, 2, {0.0, 1.0});
  v.b[0] = SmallMatrix(1, 2, {1.0, 0.0});

  for (std::size_t k = 2; k <= last; ++k) {
    const GivensRotation w = make_givens_right(x, std::conj(gen.w[k - 1]));
    const Complex x_prev = x;
    x = w.apply_right(x, std::conj(gen.w[k - 1])).second;

    // Z = [[zc, hs], [z(k) X, sigma_v(k-1)]] W*
    const SmallMatrix& hs = v.h[k - 1];
    auto [z00, z01] = w.apply_right(zc0, hs(0, 0));
    auto [z10, z11] = w.apply_right(zc1, hs(1, 0));
    auto [z20, z21] = w.apply_right(mul(gen.z[k], x_prev), gen.sigma_v(k - 1));

    const GivensRotation g1 = make_givens(z10, z20);
    const Complex t1 = g1.apply_adjoint(z10, z20).first;
    const GivensRotation g0 = make_givens(z00, t1);
    require_unit(std::abs(g0.apply_adjoint(z00, t1).first), k);
    SmallMatrix f = SmallMatrix::identity(3);
    rotate_cols(f, 1, g1);
    rotate_cols(f, 0, g0);
    const SmallMatrix bs = f.block(0, 1, 2, 2);
    const SmallMatrix gs = f.block(2, 1, 1, 2);

    y = gs.adjoint() * v.g[k] + bs.adjoint() * (y * v.b[k - 1]);
    const Complex n0 = std::conj(gs(0, 0)) * z21 + std::conj(bs(0, 0)) * z01 + std::conj(bs(1, 0)) * z11;
    const Complex n1 = std::conj(gs(0, 1)) * z21 + std::conj(bs(0, 1)) * z01 + std::conj(bs(1, 1)) * z11;
    zc0 = n0;
    zc1 = n1;
    v.h[k] = y * v.h[k];
    v.g[k] = gs;
    v.b[k - 1] = bs;
    if (!y.all_finite() || !is_finite(zc0) || !is_finite(zc1))
      throw NumericalError("compression: non-finite intermediate", static_cast<std::ptrdiff_t>(k));
  }
  // Stopping early: hand the basis change to the first untouched link.
  if (last + 1 < n) v.b[last] = y * v.b[last];
}

// The same for U with scalar blocks: every output order is 1.
void compress_u(PencilGenerators& gen, std::size_t last) {
  const std::size_t n = gen.n;
  QuasiseparableGenerators& u = gen.u;
  SmallMatrix y = u.g[0];
  Complex x = std::conj(gen.q[0]);
  Complex zc = gen.d_u(0);
  Complex hs = dot(y, u.h[1]);
  u.g[0] = SmallMatrix::scalar(1.0);
  u.h[1] = SmallMatrix::scalar(hs);
  if (n >= 3) u.b[0] = SmallMatrix(0, 1);

  for (std::size_t k = 1; k <= last; ++k) {
    const Complex qk = std::conj(gen.q[k]);
    const GivensRotation w = make_givens_right(x, qk);
    const Complex x_prev = x;
    x = w.apply_right(x, qk).second;

    auto [z00, z01] = w.apply_right(zc, hs);
    auto [z10, z11] = w.apply_right(mul(gen.p[k], x_prev), gen.d_u(k));
    const GivensRotation g = make_givens(z00, z10);
    require_unit(std::abs(g.apply_adjoint(z00, z10).first), k);
    const Complex bs = -std::conj(g.s);
    const Complex gs = std::conj(g.c);

    y = std::conj(gs) * u.g[k] + std::conj(bs) * (y * u.b[k]);
    zc = std::conj(gs) * z11 + std::conj(bs) * z01;
    hs = dot(y, u.h[k + 1]);
    u.g[k] = SmallMatrix::scalar(gs);
    u.b[k] = SmallMatrix::scalar(bs);
    u.h[k + 1] = SmallMatrix::scalar(hs);
    if (!is_finite(hs) || !is_finite(zc))
      throw NumericalError("compression: non-finite intermediate", static_cast<std::ptrdiff_t>(k));
  }
  if (last + 2 < n) u.b[last + 1] = y * u.b[last + 1];
}

}  // namespace

void compress_pencil(PencilGenerators& gen) {
  if (gen.n == 0) return;
  compress_pencil(gen, gen.n - 1);
}

void compress_pencil(PencilGenerators& gen, std::size_t last) {
  if (gen.n == 0) return;
  if (last >= gen.n) last = gen.n - 1;
  compress_v(gen, last);
  if (gen.n >= 2) compress_u(gen, last == 0 ? 0 : std::min(last - 1, gen.n - 2));
}

void compress_pencil_generic(PencilGenerators& gen) {
  const std::size_t n = gen.n;
  const UpperGenerators vs = compress_unitary(v_block_form(gen));
  for (std::size_t i = 0; i < n; ++i) gen.v.g[i] = vs.g[i];
  for (std::size_t j = 0; j < n; ++j) gen.v.h[j] = vs.h[j + 1];
  for (std::size_t k = 0; k + 1 < n; ++k) gen.v.b[k] = vs.b[k + 1];

  if (n < 2) return;
  const UpperGenerators us = compress_unitary(u_block_form(gen));
  for (std::size_t i = 0; i + 1 < n; ++i) gen.u.g[i] = us.g[i];
  for (std::size_t j = 1; j < n; ++j) gen.u.h[j] = us.h[j];
  for (std::size_t k = 1; k + 1 < n; ++k) gen.u.b[k] = us.b[k];
}

}  // namespace fastqz
