#include "fastqz/backward_error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastqz/errors.hpp"

namespace fastqz {

namespace {

void require_square(const DenseMatrix& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) throw StructuralError(std::string(what) + ": matrix size does not match degree");
}

// The double sum with coefficients a_0..a_n (a_n = 1), via prefix sums along
// the diagonals of E so the whole vector costs O(n^2).
std::vector<Complex> em_sum(const std::vector<Complex>& a, const DenseMatrix& E) {
  const std::size_t n = a.size() - 1;
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  // pre[t + n][i] = sum over rows 1..i of E(row, row + t), 1-based.
  std::vector<std::vector<Complex>> pre(2 * n + 1, std::vector<Complex>(n + 1));
  for (std::ptrdiff_t t = -sn; t <= sn; ++t) {
    auto& p = pre[static_cast<std::size_t>(t + sn)];
    for (std::ptrdiff_t i = 1; i <= sn; ++i) {
      const std::ptrdiff_t j = i + t;
      const Complex e = j >= 1 && j <= sn ? E(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) : 0.0;
      p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] + e;
    }
  }
  auto diag_sum = [&](std::ptrdiff_t t, std::ptrdiff_t from, std::ptrdiff_t to) -> Complex {
    if (t < -sn || t > sn || from > to) return 0.0;
    const auto& p = pre[static_cast<std::size_t>(t + sn)];
    return p[static_cast<std::size_t>(to)] - p[static_cast<std::size_t>(from - 1)];
  };

  std::vector<Complex> out(n);
  for (std::ptrdiff_t k = 1; k <= sn; ++k) {
    Complex acc = 0.0;
    for (std::ptrdiff_t m = 0; m < k; ++m) acc += a[static_cast<std::size_t>(m)] * diag_sum(m - k, k + 1, sn);
    for (std::ptrdiff_t m = k; m <= sn; ++m) acc -= a[static_cast<std::size_t>(m)] * diag_sum(m - k, 1, k);
    out[static_cast<std::size_t>(k - 1)] = acc;
  }
  return out;
}

Complex trace(const DenseMatrix& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

std::vector<DoubleDoubleComplex> convolve(const std::vector<DoubleDoubleComplex>& x,
                                          const std::vector<DoubleDoubleComplex>& y) {
  std::vector<DoubleDoubleComplex> r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

std::vector<DoubleDoubleComplex> expand_interleaved(const std::vector<Complex>& r) {
  if (r.size() == 1) return {DoubleDoubleComplex(-r[0]), DoubleDoubleComplex(1.0)};
  std::vector<Complex> even, odd;
  for (std::size_t i = 0; i < r.size(); ++i) (i % 2 ? odd : even).push_back(r[i]);
  return convolve(expand_interleaved(even), expand_interleaved(odd));
}

std::vector<DoubleDoubleComplex> normalized(std::vector<DoubleDoubleComplex> v) {
  DoubleDouble s;
  for (const auto& c : v) s += norm(c);
  const DoubleDouble r = sqrt(s);
  if (r.hi == 0.0) throw InvalidInput("cannot normalize the zero polynomial");
  for (auto& c : v) c = {c.re / r, c.im / r};
  return v;
}

}  // namespace

std::vector<Complex> em_coefficient_perturbation(const Polynomial& a, const DenseMatrix& E) {
  const std::size_t n = a.degree();
  if (n < 1) throw InvalidInput("em_coefficient_perturbation: degree must be at least 1");
  if (a.leading() != Complex{1.0, 0.0}) throw InvalidInput("em_coefficient_perturbation: polynomial must be monic");
  require_square(E, n, "em_coefficient_perturbation");
  return em_sum(a.coeffs, E);
}

std::vector<Complex> pencil_perturbation_poly(const Polynomial& a, const DenseMatrix& E, const DenseMatrix& G) {
  const std::size_t n = a.degree();
  if (n < 1) throw InvalidInput("pencil_perturbation_poly: degree must be at least 1");
  if (a.leading() == Complex{}) throw InvalidInput("pencil_perturbation_poly: leading coefficient is zero");
  require_square(E, n, "pencil_perturbation_poly");
  require_square(G, n, "pencil_perturbation_poly");

  // det(s(I+G) - (A+E)) = (1 + tr G) det(sI - A - (E - G A)) at first order,
  // where det(sI - A) = q(s), the monic polynomial with a_0 .. a_{n-1}.
  const DenseMatrix A = companion_dense(a, false).A;
  std::vector<Complex> q(a.coeffs.begin(), a.coeffs.end());
  q[n] = 1.0;
  const std::vector<Complex> da = em_sum(q, E - G * A);

  std::vector<Complex> dp(n + 1);
  const Complex trg = trace(G);
  for (std::size_t j = 0; j <= n; ++j) dp[j] = trg * q[j];
  for (std::size_t j = 0; j < n; ++j) dp[j] += da[j];

  // B = I + (a_n - 1) e_n e_n^T adds s (a_n - 1) times the leading
  // (n-1) x (n-1) minor, whose matrix is the companion of s^{n-1}.
  const Complex lead = a.leading() - 1.0;
  if (n >= 2 && lead != Complex{}) {
    const DenseMatrix At = A.block(0, 0, n - 1, n - 1);
    const DenseMatrix Et = E.block(0, 0, n - 1, n - 1);
    const DenseMatrix Gt = G.block(0, 0, n - 1, n - 1);
    std::vector<Complex> qt(n, 0.0);
    qt[n - 1] = 1.0;
    const std::vector<Complex> dat = em_sum(qt, Et - Gt * At);
    for (std::size_t j = 0; j + 1 < n; ++j) dp[j + 1] += lead * dat[j];
    dp[n] += lead * trace(Gt);
  }
  return dp;
}

std::vector<DoubleDoubleComplex> expand_roots(const std::vector<Complex>& roots, Complex leading) {
  if (roots.empty()) return {DoubleDoubleComplex(leading)};
  // Subproducts over neighbouring roots have coefficients like binomials
  // and cancel later. Sorting by angle and splitting into even and odd
  // positions keeps every subtree spread around the circle.
  std::vector<Complex> sorted = roots;
  std::sort(sorted.begin(), sorted.end(), [](Complex x, Complex y) { return std::arg(x) < std::arg(y); });
  std::vector<DoubleDoubleComplex> out = expand_interleaved(sorted);
  const DoubleDoubleComplex l(leading);
  for (auto& c : out) c = c * l;
  return out;
}

std::vector<double> coefficient_errors(const Polynomial& a_exact, const std::vector<Complex>& roots,
                                       Complex leading) {
  if (roots.size() != a_exact.degree())
    throw InvalidInput("backward error: number of roots does not match the degree");
  std::vector<DoubleDoubleComplex> exact;
  exact.reserve(a_exact.coeffs.size());
  for (auto c : a_exact.coeffs) exact.emplace_back(c);
  const auto pe = normalized(std::move(exact));
  const auto pt = normalized(expand_roots(roots, leading));
  std::vector<double> err(pe.size());
  for (std::size_t k = 0; k < pe.size(); ++k) err[k] = abs(pt[k] - pe[k]).value();
  return err;
}

double measured_backward_error(const Polynomial& a_exact, const std::vector<Complex>& roots, Complex leading) {
  const auto err = coefficient_errors(a_exact, roots, leading);
  return *std::max_element(err.begin(), err.end());
}

DenseMatrixPair model_perturbation(std::size_t n, double scale_factor) {
  const double v = scale_factor * static_cast<double>(n) * kEps;
  DenseMatrixPair eg{DenseMatrix(n, n), DenseMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 2 >= i) eg.A(i, j) = v;
      if (j + 1 >= i) eg.B(i, j) = v;
    }
  return eg;
}

std::vector<double> predicted_backward_error(const Polynomial& a, double scale_factor) {
  const auto eg = model_perturbation(a.degree(), scale_factor);
  const auto dp = pencil_perturbation_poly(a, eg.A, eg.B);
  std::vector<double> out(dp.size());
  for (std::size_t k = 0; k < dp.size(); ++k) out[k] = std::abs(dp[k]);
  return out;
}

double rounded_log10(double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return std::round(std::log10(x));
}

std::vector<double> predicted_backward_error_table(const Polynomial& a, double scale_factor) {
  auto p = predicted_backward_error(a, scale_factor);
  for (auto& x : p) x = rounded_log10(x);
  return p;
}

}  // namespace fastqz
