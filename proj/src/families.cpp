#include "fastqz/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "fastqz/backward_error.hpp"
#include "fastqz/errors.hpp"

namespace fastqz {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

DoubleDouble to_dd(const cpp_rational& r) {
  const double hi = r.convert_to<double>();
  const double lo = cpp_rational(r - cpp_rational(hi)).convert_to<double>();
  return {hi, lo};
}

// B_0 .. B_n with B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0.
std::vector<cpp_rational> bernoulli_numbers(std::size_t n) {
  std::vector<cpp_rational> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    cpp_rational acc = 0;
    cpp_int binom = 1;  // C(m+1, k)
    for (std::size_t k = 0; k < m; ++k) {
      acc += cpp_rational(binom) * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / cpp_rational(m + 1);
  }
  return b;
}

std::vector<DoubleDoubleComplex> real_dd(const std::vector<DoubleDouble>& v) {
  std::vector<DoubleDoubleComplex> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

Polynomial to_poly(const std::vector<DoubleDoubleComplex>& v) {
  Polynomial p;
  p.coeffs.reserve(v.size());
  for (const auto& c : v) p.coeffs.push_back(c.value());
  return p;
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "random") return Family::random;
  if (name == "cyclotomic") return Family::cyclotomic;
  if (name == "powersum" || name == "power_sum") return Family::power_sum;
  if (name == "equispaced") return Family::equispaced;
  if (name == "chebyshev") return Family::chebyshev;
  if (name == "bernoulli") return Family::bernoulli;
  if (name == "unbalanced") return Family::unbalanced;
  throw InvalidInput("unknown polynomial family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::random: return "random";
    case Family::cyclotomic: return "cyclotomic";
    case Family::power_sum: return "powersum";
    case Family::equispaced: return "equispaced";
    case Family::chebyshev: return "chebyshev";
    case Family::bernoulli: return "bernoulli";
    case Family::unbalanced: return "unbalanced";
  }
  return "?";
}

TestPolynomial make_polynomial(Family f, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("degree must be at least 1");
  if (f == Family::equispaced && n < 2) throw InvalidInput("equispaced family needs degree >= 2");
  TestPolynomial tp{f, {}, {}, {}};
  const double pi = std::numbers::pi;

  switch (f) {
    case Family::random: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (std::size_t k = 0; k <= n; ++k) {
        const double re = u(rng);
        const double im = u(rng);
        tp.poly.coeffs.emplace_back(re, im);
      }
      break;
    }
    case Family::cyclotomic: {
      tp.poly.coeffs.assign(n + 1, 0.0);
      tp.poly.coeffs[0] = Complex(0.0, -1.0);
      tp.poly.coeffs[n] = 1.0;
      for (std::size_t k = 0; k < n; ++k)
        tp.roots.push_back(std::polar(1.0, pi * static_cast<double>(4 * k + 1) / static_cast<double>(2 * n)));
      break;
    }
    case Family::power_sum: {
      tp.poly.coeffs.assign(n + 1, 1.0);
      for (std::size_t k = 1; k <= n; ++k)
        tp.roots.push_back(std::polar(1.0, 2.0 * pi * static_cast<double>(k) / static_cast<double>(n + 1)));
      break;
    }
    case Family::equispaced: {
      // x_k = (-21 (n-1) + 40 k) / (10 (n-1)), formed in double-double.
      std::vector<Complex> dbl;
      std::vector<DoubleDoubleComplex> prod{DoubleDoubleComplex(1.0)};
      const double den = 10.0 * static_cast<double>(n - 1);
      for (std::size_t k = 0; k < n; ++k) {
        const DoubleDouble x =
            DoubleDouble(-21.0 * static_cast<double>(n - 1) + 40.0 * static_cast<double>(k)) / DoubleDouble(den);
        dbl.emplace_back(x.value());
        std::vector<DoubleDoubleComplex> next(prod.size() + 1);
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] = next[i] - prod[i] * DoubleDoubleComplex(x);
        }
        prod = std::move(next);
      }
      tp.exact = prod;
      tp.poly = to_poly(prod);
      tp.roots = dbl;
      return tp;
    }
    case Family::chebyshev: {
      // T_{k+1} = 2x T_k - T_{k-1}; integer coefficients, exact in double
      // for the degrees used here.
      std::vector<double> t0{1.0}, t1{0.0, 1.0};
      for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> t2(t1.size() + 1, 0.0);
        for (std::size_t i = 0; i < t1.size(); ++i) t2[i + 1] += 2.0 * t1[i];
        for (std::size_t i = 0; i < t0.size(); ++i) t2[i] -= t0[i];
        t0 = std::move(t1);
        t1 = std::move(t2);
      }
      for (double c : t1) tp.poly.coeffs.emplace_back(c);
      for (std::size_t k = 1; k <= n; ++k)
        tp.roots.emplace_back(std::cos(pi * static_cast<double>(2 * k - 1) / static_cast<double>(2 * n)));
      break;
    }
    case Family::bernoulli: {
      // B_n(x) = sum_k C(n, k) B_k x^{n-k}
      const auto b = bernoulli_numbers(n);
      std::vector<DoubleDouble> c(n + 1);
      cpp_int binom = 1;
      for (std::size_t k = 0; k <= n; ++k) {
        c[n - k] = to_dd(cpp_rational(binom) * b[k]);
        binom = binom * (n - k) / (k + 1);
      }
      tp.exact = real_dd(c);
      tp.poly = to_poly(tp.exact);
      return tp;
    }
    case Family::unbalanced: {
      std::vector<DoubleDouble> c(n + 1);
      for (std::size_t k = 0; k <= n; ++k)
        c[k] = k % 2 ? DoubleDouble(1e3) : DoubleDouble(1.0) / DoubleDouble(1e9);
      tp.exact = real_dd(c);
      tp.poly = to_poly(tp.exact);
      return tp;
    }
  }
  for (auto x : tp.poly.coeffs) tp.exact.emplace_back(x);
  return tp;
}

std::vector<Complex> polish_roots(const std::vector<DoubleDoubleComplex>& coeffs, std::vector<Complex> roots) {
  for (auto& r : roots) {
    DoubleDoubleComplex x(r);
    for (int it = 0; it < 12; ++it) {
      DoubleDoubleComplex p = coeffs.back(), dp;
      for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        dp = dp * x + p;
        p = p * x + coeffs[k];
      }
      if (norm(dp).hi == 0.0) break;
      const DoubleDoubleComplex step = p / dp;
      x = x - step;
      if (abs(step).hi <= 1e-30 * std::max(1.0, abs(x).hi)) break;
    }
    r = x.value();
  }
  return roots;
}

std::vector<Complex> reference_roots(const TestPolynomial& tp, const std::vector<Complex>& approx) {
  if (!tp.roots.empty()) return tp.roots;
  return polish_roots(tp.exact, approx);
}

double forward_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference) {
  double worst = 0.0;
  for (auto a : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (auto l : computed) best = std::min(best, std::abs(l - a));
    worst = std::max(worst, best);
  }
  return worst;
}

double mixed_forward_error(const std::vector<Complex>& computed, const std::vector<Complex>& reference) {
  double worst = 0.0;
  for (auto a : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (auto l : computed) best = std::min(best, std::abs(l - a));
    worst = std::max(worst, best / std::max(1.0, std::abs(a)));
  }
  return worst;
}

}  // namespace fastqz
