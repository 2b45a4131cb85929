#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fastqz/families.hpp"
#include "fastqz/qz_driver.hpp"

namespace fastqz {

enum class Method {
  fast,      ///< structured QZ on generators
  dense,     ///< classical QZ on the explicit companion pencil
  dense_qr,  ///< classical QZ with B = I on the monic companion matrix (QR stand-in)
};

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct SolveOptions {
  Method method = Method::fast;
  bool normalize = true;
  QzOptions qz{};
};

/// Roots of `p` by the chosen method. The dense_qr method divides by the
/// leading coefficient and ignores `normalize`.
EigenResult solve_polynomial(const Polynomial& p, const SolveOptions& opt);

struct RunReport {
  Method method = Method::fast;
  std::size_t degree = 0;
  std::optional<double> forward_error;
  std::optional<double> backward_error;
  double avg_iterations = 0.0;
  double seconds = 0.0;
  std::vector<Complex> roots;
};

/// Solve, time and score one test polynomial. Forward errors use
/// reference_roots (closed form, or the dense roots polished in
/// double-double); backward errors compare against the exact coefficients.
RunReport run_test_polynomial(const TestPolynomial& tp, const SolveOptions& opt);

/// Backward error of computed roots against the exact coefficients of tp.
double backward_error_of(const TestPolynomial& tp, const std::vector<Complex>& roots);

struct TableRow {
  std::string label;
  std::vector<std::string> cells;
};

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<TableRow> rows;
};

std::string format_table(const Table& t);

/// Random polynomials: mean forward error and iterations over `trials`.
Table table_random(const std::vector<std::size_t>& degrees, int trials, std::uint64_t seed);
/// z^N - i.
Table table_cyclotomic(const std::vector<std::size_t>& degrees);
/// The four degree-20 polynomials: forward errors for fast QZ, dense QZ and
/// the QR stand-in (the latter without normalization).
Table table_degree20();
/// log10 of measured (fast, dense) and predicted backward errors per
/// coefficient, highest degree first.
Table table_backward_coefficients();
/// Unbalanced coefficients: backward, absolute and mixed forward errors
/// per method.
Table table_unbalanced();

struct BenchRow {
  std::size_t degree = 0;
  double fast_seconds = 0.0;
  double dense_seconds = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::optional<double> slope;  ///< log-log least-squares slope of fast times
};

/// Median wall time per method on identical seeded random polynomials,
/// after one untimed warm-up solve.
/// Dense timings are skipped (reported as 0) when `with_dense` is false.
BenchResult run_bench(const std::vector<std::size_t>& degrees, int trials, std::uint64_t seed, bool with_dense = true);
std::string bench_csv(const BenchResult& r);

/// Least-squares slope of log(y) against log(x).
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fastqz
