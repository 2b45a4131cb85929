#include "fastqz/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fastqz/backward_error.hpp"
#include "fastqz/dense_qz.hpp"
#include "fastqz/errors.hpp"
#include "fastqz/structured_qz.hpp"

namespace fastqz {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string log_cell(double x) {
  if (std::isinf(x)) return "-Inf";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d", static_cast<int>(x));
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Complex> dense_reference_roots(const TestPolynomial& tp) {
  if (!tp.roots.empty()) return tp.roots;
  SolveOptions opt;
  opt.method = Method::dense;
  return reference_roots(tp, solve_polynomial(tp.poly, opt).finite_values());
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "fast") return Method::fast;
  if (name == "dense") return Method::dense;
  if (name == "qr" || name == "dense-qr") return Method::dense_qr;
  throw InvalidInput("unknown method '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::fast: return "fast-qz";
    case Method::dense: return "dense-qz";
    case Method::dense_qr: return "dense-qr";
  }
  return "?";
}

EigenResult solve_polynomial(const Polynomial& p, const SolveOptions& opt) {
  switch (opt.method) {
    case Method::fast: return eigenvalues(build_companion_pencil(p, opt.normalize), opt.qz);
    case Method::dense: return dense_eigenvalues(companion_dense(p, opt.normalize), opt.qz);
    case Method::dense_qr: {
      if (p.coeffs.empty() || p.leading() == Complex{}) throw InvalidInput("leading coefficient is zero");
      Polynomial monic = p;
      for (auto& c : monic.coeffs) c /= p.leading();
      monic.coeffs.back() = 1.0;
      return dense_eigenvalues(companion_dense(monic, false), opt.qz);
    }
  }
  throw InvalidInput("unknown method");
}

double backward_error_of(const TestPolynomial& tp, const std::vector<Complex>& roots) {
  return measured_backward_error(tp.poly, roots, tp.poly.leading());
}

RunReport run_test_polynomial(const TestPolynomial& tp, const SolveOptions& opt) {
  RunReport r;
  r.method = opt.method;
  r.degree = tp.poly.degree();
  const auto t0 = std::chrono::steady_clock::now();
  const EigenResult res = solve_polynomial(tp.poly, opt);
  r.seconds = seconds_since(t0);
  r.avg_iterations = res.average_iterations();
  r.roots = res.finite_values();
  r.forward_error = forward_error(r.roots, dense_reference_roots(tp));
  if (r.roots.size() == r.degree) r.backward_error = backward_error_of(tp, r.roots);
  return r;
}

std::string format_table(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto grow = [&](std::size_t i, const std::string& s) {
    if (i < width.size()) width[i] = std::max(width[i], s.size());
  };
  for (std::size_t i = 0; i < t.header.size(); ++i) grow(i, t.header[i]);
  for (const auto& row : t.rows) {
    grow(0, row.label);
    for (std::size_t i = 0; i < row.cells.size(); ++i) grow(i + 1, row.cells[i]);
  }
  std::ostringstream out;
  out << t.title << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::size_t w = i < width.size() ? width[i] : cells[i].size();
      out << (i ? "  " : "") << cells[i] << std::string(w - std::min(w, cells[i].size()), ' ');
    }
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) {
    std::vector<std::string> cells{row.label};
    cells.insert(cells.end(), row.cells.begin(), row.cells.end());
    line(cells);
  }
  return out.str();
}

Table table_random(const std::vector<std::size_t>& degrees, int trials, std::uint64_t seed) {
  Table t{"Structured QZ on random polynomials (means over " + std::to_string(trials) + " trials)",
          {"N", "forward error", "backward error", "avg iterations"},
          {}};
  for (std::size_t n : degrees) {
    double fe = 0.0, be = 0.0, it = 0.0;
    for (int k = 0; k < trials; ++k) {
      const auto tp = make_polynomial(Family::random, n, seed + static_cast<std::uint64_t>(k));
      const auto r = run_test_polynomial(tp, {});
      fe += r.forward_error.value_or(NAN);
      be += r.backward_error.value_or(NAN);
      it += r.avg_iterations;
    }
    t.rows.push_back({std::to_string(n), {sci(fe / trials), sci(be / trials), fixed2(it / trials)}});
  }
  return t;
}

Table table_cyclotomic(const std::vector<std::size_t>& degrees) {
  Table t{"Structured QZ on z^N - i", {"N", "forward error", "backward error", "avg iterations"}, {}};
  for (std::size_t n : degrees) {
    const auto r = run_test_polynomial(make_polynomial(Family::cyclotomic, n), {});
    t.rows.push_back({std::to_string(n), {sci(*r.forward_error), sci(r.backward_error.value_or(NAN)),
                                          fixed2(r.avg_iterations)}});
  }
  return t;
}

Table table_degree20() {
  Table t{"Forward errors, degree-20 polynomials", {"polynomial", "fast QZ", "classical QZ", "QR stand-in"}, {}};
  for (Family f : {Family::power_sum, Family::equispaced, Family::chebyshev, Family::bernoulli}) {
    const auto tp = make_polynomial(f, 20);
    const auto ref = dense_reference_roots(tp);
    std::vector<std::string> cells;
    for (Method m : {Method::fast, Method::dense, Method::dense_qr}) {
      SolveOptions opt;
      opt.method = m;
      cells.push_back(sci(forward_error(solve_polynomial(tp.poly, opt).finite_values(), ref)));
    }
    t.rows.push_back({family_name(f), cells});
  }
  return t;
}

Table table_backward_coefficients() {
  const std::vector<Family> fams{Family::power_sum, Family::equispaced, Family::chebyshev, Family::bernoulli,
                                 Family::unbalanced};
  Table t{"log10 backward error per coefficient: fast QZ, classical QZ, predicted", {"coeff"}, {}};
  std::vector<std::vector<std::string>> cols;
  for (Family f : fams) {
    t.header.push_back(family_name(f));
    const auto tp = make_polynomial(f, 20);
    const Polynomial normed = tp.poly.normalized();
    SolveOptions fast, dense;
    dense.method = Method::dense;
    const auto ef = coefficient_errors(tp.poly, solve_polynomial(tp.poly, fast).finite_values(), tp.poly.leading());
    const auto ed = coefficient_errors(tp.poly, solve_polynomial(tp.poly, dense).finite_values(), tp.poly.leading());
    const auto pr = predicted_backward_error_table(normed);
    std::vector<std::string> col;
    for (std::size_t k = 0; k < pr.size(); ++k)
      col.push_back(log_cell(rounded_log10(ef[k])) + "," + log_cell(rounded_log10(ed[k])) + "," + log_cell(pr[k]));
    cols.push_back(col);
  }
  const std::size_t n = cols.front().size();
  for (std::size_t k = n; k-- > 0;) {
    TableRow row{"z^" + std::to_string(k), {}};
    for (const auto& c : cols) row.cells.push_back(c[k]);
    t.rows.push_back(row);
  }
  return t;
}

Table table_unbalanced() {
  Table t{"Unbalanced coefficients p_k = 10^(6(-1)^(k+1) - 3), degree 20",
          {"method", "backward error", "forward error", "mixed forward error"},
          {}};
  const auto tp = make_polynomial(Family::unbalanced, 20);
  for (Method m : {Method::fast, Method::dense, Method::dense_qr}) {
    SolveOptions opt;
    opt.method = m;
    const auto r = run_test_polynomial(tp, opt);
    const double rel = mixed_forward_error(r.roots, dense_reference_roots(tp));
    t.rows.push_back({method_name(m), {sci(r.backward_error.value_or(NAN)), sci(*r.forward_error), sci(rel)}});
  }
  return t;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2 || x.size() != y.size()) return std::nullopt;
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

BenchResult run_bench(const std::vector<std::size_t>& degrees, int trials, std::uint64_t seed, bool with_dense) {
  if (trials < 1) throw InvalidInput("bench needs at least one trial");
  for (std::size_t n : degrees)
    if (n < 2) throw InvalidInput("bench degrees must be at least 2");
  BenchResult out;
  if (degrees.empty()) return out;
  // Page in code and allocator state so the first timed degree is not penalized.
  (void)solve_polynomial(make_polynomial(Family::random, degrees.front(), seed).poly, {});

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  };
  std::vector<double> xs, ys;
  for (std::size_t n : degrees) {
    std::vector<double> fast, dense;
    for (int k = 0; k < trials; ++k) {
      const auto tp = make_polynomial(Family::random, n, seed + static_cast<std::uint64_t>(k));
      auto t0 = std::chrono::steady_clock::now();
      (void)solve_polynomial(tp.poly, {});
      fast.push_back(seconds_since(t0));
      if (with_dense) {
        SolveOptions d;
        d.method = Method::dense;
        t0 = std::chrono::steady_clock::now();
        (void)solve_polynomial(tp.poly, d);
        dense.push_back(seconds_since(t0));
      }
    }
    const BenchRow row{n, median(fast), with_dense ? median(dense) : 0.0};
    xs.push_back(static_cast<double>(n));
    ys.push_back(row.fast_seconds);
    out.rows.push_back(row);
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

std::string bench_csv(const BenchResult& r) {
  std::ostringstream out;
  out << "degree,median_time_fast,median_time_dense,ratio,slope\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    char buf[160];
    const double ratio = row.dense_seconds > 0 ? row.fast_seconds / row.dense_seconds : NAN;
    std::snprintf(buf, sizeof buf, "%zu,%.6e,%.6e,%.4f,", row.degree, row.fast_seconds, row.dense_seconds, ratio);
    out << buf;
    if (r.slope) {
      std::snprintf(buf, sizeof buf, "%.4f", *r.slope);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fastqz
