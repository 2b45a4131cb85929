#include "fastqz/structured_qz.hpp"
#include <tuple>

#include <algorithm>
#include <cmath>
#include <string>

#include "fastqz/compression.hpp"
#include "fastqz/errors.hpp"
#include "fastqz/givens.hpp"

namespace fastqz {

namespace {

SmallMatrix sc(Complex v) { return SmallMatrix::scalar(v); }

SmallMatrix row3(Complex a, Complex b, const SmallMatrix& rest) { return hcat(hcat(sc(a), sc(b)), rest); }

// [[1, 0, 0], [0, h, b]] with the first two columns rotated by Z: the new
// column generator and the carried chain.
SmallMatrix chain_update(const SmallMatrix& h, const SmallMatrix& b, const GivensRotation& z) {
  const std::size_t r = h.rows();
  SmallMatrix c(1 + r, 1 + 1 + b.cols());
  c(0, 0) = 1.0;
  c.set_block(1, 1, h);
  c.set_block(1, 2, b);
  rotate_cols(c, 0, z);
  return c;
}

void check_finite(bool ok, std::size_t k) {
  if (!ok) throw NumericalError("qz_sweep: non-finite intermediate", static_cast<std::ptrdiff_t>(k));
}

}  // namespace

void sweep_in_place(PencilGenerators& gen, Complex alpha, std::size_t lo, std::size_t hi,
                    SweepRotations* rot) {
  const std::size_t n = gen.n;
  if (n < 2) throw StructuralError("qz_sweep: N must be at least 2");
  if (lo >= hi || hi >= n) throw StructuralError("qz_sweep: bad active window");
  if (!is_finite(alpha)) throw InvalidInput("qz_sweep: non-finite shift");
  TriangularGenerators& v = gen.v;
  QuasiseparableGenerators& u = gen.u;
  if (rot) {
    rot->q.assign(n - 1, GivensRotation::identity());
    rot->z.assign(n - 1, GivensRotation::identity());
  }

  // The shift only enters through the first rotation of the window.
  const Complex lead = diag_entry_A(gen, lo) - alpha * gen.d_b[lo];
  check_finite(is_finite(lead), lo);
  GivensRotation qk = make_givens(lead, gen.sigma_a[lo]);

  // Rows above the window reach its columns through the old chain at slot
  // lo; re-express that link in the slot layout the sweep produces.
  if (lo >= 1) {
    v.b[lo - 1] = v.b[lo - 1] * hcat(v.h[lo], v.b[lo]);
    const SmallMatrix conn_u = hcat(u.h[lo], u.b[lo]);
    u.g[lo - 1] = u.g[lo - 1] * conn_u;
    if (lo >= 2) u.b[lo - 1] = u.b[lo - 1] * conn_u;
  }

  // Rows lo and lo+1 of V after Q_lo*.
  SmallMatrix gam =
      vcat(hcat(sc(dot(v.g[lo], v.h[lo])), v.g[lo] * v.b[lo]), hcat(sc(gen.sigma_v(lo)), v.g[lo + 1]));
  rotate_rows(gam, 0, qk);
  Complex f_v = gam(1, 0);
  SmallMatrix phi_v = gam.block(1, 1, 1, gam.cols() - 1);
  v.g[lo] = gam.block(0, 0, 1, gam.cols());

  Complex f_u = gen.d_u(lo);
  Complex f_b = gen.d_b[lo];
  SmallMatrix phi_u = u.g[lo];
  Complex gamma = gen.w[lo];
  Complex c = gen.p[lo];
  Complex theta = gen.q[lo];
  Complex chi;
  std::tie(gen.z[lo], chi) = qk.apply_adjoint(gen.z[lo], gen.z[lo + 1]);
  Complex f_a = f_v - chi * std::conj(gamma);

  const std::size_t stop = std::min(hi, n - 2);
  for (std::size_t k = lo; k < stop; ++k) {
    // Bulge blocks of B (rows k, k+1) and A (rows k+1, k+2).
    const Complex eps_b = dot(phi_u, u.h[k + 1]) - c * std::conj(gen.q[k + 1]);
    const Complex eps_a = dot(phi_v, v.h[k + 1]) - chi * std::conj(gen.w[k + 1]);
    SmallMatrix phi(2, 2, {f_b, eps_b, 0.0, gen.d_b[k + 1]});
    rotate_rows(phi, 0, qk);
    check_finite(phi.all_finite(), k);
    const GivensRotation zk = make_givens_right(phi(1, 0), phi(1, 1));
    // The new diagonal of B comes from this block, not from U - p q*: the
    // difference form loses all relative accuracy when B(k, k) is tiny.
    rotate_cols(phi, 0, zk);

    SmallMatrix omega(2, 2, {f_a, eps_a, 0.0, gen.sigma_a[k + 1]});
    rotate_cols(omega, 0, zk);
    check_finite(omega.all_finite(), k);
    const GivensRotation qn = k + 1 < hi ? make_givens(omega(0, 0), omega(1, 0)) : GivensRotation{};
    rotate_rows(omega, 0, qn);
    gen.sigma_a[k] = omega(0, 0);

    // V: rows k+1, k+2 under Q_{k+1}*, columns k, k+1 under Z_k.
    SmallMatrix g = vcat(row3(f_v, dot(phi_v, v.h[k + 1]), phi_v * v.b[k + 1]),
                         row3(gen.z[k + 2] * std::conj(gamma), gen.sigma_v(k + 1), v.g[k + 2]));
    rotate_rows(g, 0, qn);
    rotate_cols(g, 0, zk);
    f_v = g(1, 1);
    phi_v = g.block(1, 2, 1, g.cols() - 2);
    const SmallMatrix cv = chain_update(v.h[k + 1], v.b[k + 1], zk);
    v.g[k + 1] = g.block(0, 1, 1, g.cols() - 1);
    v.h[k] = cv.block(0, 0, cv.rows(), 1);
    v.b[k] = cv.block(0, 1, cv.rows(), cv.cols() - 1);

    // U: rows k, k+1 under Q_k*, columns k, k+1 under Z_k.
    SmallMatrix l = vcat(row3(f_u, dot(phi_u, u.h[k + 1]), phi_u * u.b[k + 1]),
                         row3(gen.p[k + 1] * std::conj(theta), gen.d_u(k + 1), u.g[k + 1]));
    rotate_rows(l, 0, qk);
    rotate_cols(l, 0, zk);
    f_u = l(1, 1);
    phi_u = l.block(1, 2, 1, l.cols() - 2);
    if (k >= 1) {
      const SmallMatrix cu = chain_update(u.h[k + 1], u.b[k + 1], zk);
      u.h[k] = cu.block(0, 0, cu.rows(), 1);
      u.b[k] = cu.block(0, 1, cu.rows(), cu.cols() - 1);
    }
    u.g[k] = l.block(0, 1, 1, l.cols() - 1);

    std::tie(gen.z[k + 1], chi) = qn.apply_adjoint(chi, gen.z[k + 2]);
    std::tie(gen.w[k], gamma) = zk.apply_adjoint(gamma, gen.w[k + 1]);
    std::tie(gen.q[k], theta) = zk.apply_adjoint(theta, gen.q[k + 1]);
    std::tie(gen.p[k], c) = qk.apply_adjoint(c, gen.p[k + 1]);
    gen.d_b[k] = phi(0, 0);
    f_a = f_v - chi * std::conj(gamma);
    f_b = phi(1, 1);
    check_finite(is_finite(f_a) && is_finite(f_b) && is_finite(gen.d_b[k]), k);

    if (rot) {
      rot->q[k] = qk;
      rot->z[k] = zk;
    }
    qk = qn;
  }

  if (hi < n - 1) {
    // Back to the old layout after the window: slot hi holds the column hi
    // entry followed by the untouched chain.
    const std::size_t rv = v.g[hi + 1].cols();
    SmallMatrix hv(1 + rv, 1), bv(1 + rv, rv);
    hv(0, 0) = 1.0;
    for (std::size_t i = 0; i < rv; ++i) bv(1 + i, i) = 1.0;
    v.h[hi] = hv;
    v.b[hi] = bv;
    const std::size_t ru = phi_u.cols();
    SmallMatrix hu(1 + ru, 1), bu(1 + ru, ru);
    hu(0, 0) = 1.0;
    for (std::size_t i = 0; i < ru; ++i) bu(1 + i, i) = 1.0;
    u.g[hi] = phi_u;
    u.h[hi] = hu;
    u.b[hi] = bu;
    gen.w[hi] = gamma;
    gen.q[hi] = theta;
    gen.p[hi] = c;
    gen.d_b[hi] = f_b;
    return;
  }

  // Last column pair: k = n-2, no further Q.
  const std::size_t k = n - 2;
  const Complex eps_b = dot(phi_u, u.h[k + 1]) - c * std::conj(gen.q[k + 1]);
  SmallMatrix phi(2, 2, {f_b, eps_b, 0.0, gen.d_b[k + 1]});
  rotate_rows(phi, 0, qk);
  check_finite(phi.all_finite(), k);
  const GivensRotation zk = make_givens_right(phi(1, 0), phi(1, 1));
  rotate_cols(phi, 0, zk);

  auto [v_sub, v_last] = zk.apply_right(f_v, dot(phi_v, v.h[k + 1]));
  SmallMatrix cv(1 + v.h[k + 1].rows(), 2);
  cv(0, 0) = 1.0;
  cv.set_block(1, 1, v.h[k + 1]);
  rotate_cols(cv, 0, zk);
  v.h[k] = cv.block(0, 0, cv.rows(), 1);
  v.b[k] = cv.block(0, 1, cv.rows(), 1);
  v.g[k + 1] = sc(v_last);
  v.h[k + 1] = sc(1.0);

  SmallMatrix l(2, 2, {f_u, dot(phi_u, u.h[k + 1]), gen.p[k + 1] * std::conj(theta), gen.d_u(k + 1)});
  rotate_rows(l, 0, qk);
  rotate_cols(l, 0, zk);
  if (k >= 1) {
    SmallMatrix cu(1 + u.h[k + 1].rows(), 2);
    cu(0, 0) = 1.0;
    cu.set_block(1, 1, u.h[k + 1]);
    rotate_cols(cu, 0, zk);
    u.h[k] = cu.block(0, 0, cu.rows(), 1);
    u.b[k] = cu.block(0, 1, cu.rows(), 1);
  }
  u.g[k] = sc(l(0, 1));
  u.h[k + 1] = sc(1.0);

  std::tie(gen.w[k], gen.w[k + 1]) = zk.apply_adjoint(gamma, gen.w[k + 1]);
  std::tie(gen.q[k], gen.q[k + 1]) = zk.apply_adjoint(theta, gen.q[k + 1]);
  std::tie(gen.p[k], gen.p[k + 1]) = qk.apply_adjoint(c, gen.p[k + 1]);
  gen.z[k + 1] = chi;
  gen.sigma_a[k] = v_sub - gen.z[k + 1] * std::conj(gen.w[k]);
  gen.d_b[k] = phi(0, 0);
  gen.d_b[k + 1] = phi(1, 1);
  check_finite(is_finite(gen.sigma_a[k]) && is_finite(gen.d_b[k]) && is_finite(gen.d_b[k + 1]), k);
  if (rot) {
    rot->q[k] = qk;
    rot->z[k] = zk;
  }
}

SweepResult qz_sweep(const PencilGenerators& gen, Complex alpha, bool capture) {
  return qz_sweep(gen, alpha, 0, gen.n - 1, capture);
}

SweepResult qz_sweep(const PencilGenerators& gen, Complex alpha, std::size_t lo, std::size_t hi,
                     bool capture) {
  gen.validate();
  SweepResult res{gen, {}};
  sweep_in_place(res.gen, alpha, lo, hi, capture ? &res.rotations : nullptr);
  return res;
}

Complex wilkinson_shift(const PencilGenerators& gen) { return wilkinson_shift(trailing_block(gen)); }

DeflationReport deflation_scan(PencilGenerators& gen, double tol_a, double tol_b) {
  DeflationReport rep;
  const std::size_t n = gen.n;
  double zn = 0.0, wn = 0.0, bmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    zn += std::norm(gen.z[k]);
    wn += std::norm(gen.w[k]);
    bmax = std::max(bmax, std::abs(gen.d_b[k]));
  }
  const double scale = 1.0 + std::sqrt(zn * wn);
  const auto diag = diag_entries_A(gen);
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (negligible_subdiagonal(gen.sigma_a[k], diag[k], diag[k + 1], tol_a, scale)) {
      gen.sigma_a[k] = 0.0;
      rep.splits.push_back(k);
    }
  for (std::size_t k = 0; k < n; ++k) {
    const bool isolated = (k == 0 || gen.sigma_a[k - 1] == Complex{}) && (k + 1 == n || gen.sigma_a[k] == Complex{});
    if (isolated && std::abs(gen.d_b[k]) <= tol_b * bmax) rep.infinite.push_back(k);
  }
  return rep;
}

namespace {

class StructuredBackend {
 public:
  explicit StructuredBackend(PencilGenerators& g) : g_(g) {}
  std::size_t size() const { return g_.n; }
  Complex subdiag(std::size_t k) const { return g_.sigma_a[k]; }
  void zero_subdiag(std::size_t k) { g_.sigma_a[k] = 0.0; }
  Complex diag_a(std::size_t k) const { return diag_entry_A(g_, k); }
  Complex diag_b(std::size_t k) const { return g_.d_b[k]; }
  double max_abs_diag_b() const {
    double m = 0.0;
    for (auto d : g_.d_b) m = std::max(m, std::abs(d));
    return m;
  }
  double scale() const {
    double zn = 0.0, wn = 0.0;
    for (std::size_t k = 0; k < g_.n; ++k) {
      zn += std::norm(g_.z[k]);
      wn += std::norm(g_.w[k]);
    }
    return 1.0 + std::sqrt(zn * wn);
  }
  TrailingBlock block(std::size_t last) const { return trailing_block(g_, last); }
  void sweep(Complex alpha, std::size_t lo, std::size_t hi) {
    sweep_in_place(g_, alpha, lo, hi, nullptr);
    compress_pencil(g_, hi);
  }

 private:
  PencilGenerators& g_;
};

}  // namespace

EigenResult eigenvalues(PencilGenerators gen, const QzOptions& opt) {
  gen.validate();
  StructuredBackend be(gen);
  return detail::run_qz(be, opt);
}

}  // namespace fastqz
