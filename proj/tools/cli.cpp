#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastqz/experiments.hpp"
#include "fastqz/families.hpp"

namespace fastqz::cli {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

struct RootsArgs {
  std::string input;
  std::string method = "fast";
  bool no_normalize = false;
  int max_iter = 30;
  bool json = false;
  bool partial = false;
};

void print_roots(std::ostream& out, const std::vector<EigenPair>& eig) {
  for (const auto& e : eig) {
    if (e.infinite()) {
      out << "inf\n";
    } else {
      const Complex v = e.value();
      out << fmt(v.real()) << ' ' << fmt(v.imag()) << '\n';
    }
  }
}

nlohmann::json roots_json(const std::vector<EigenPair>& eig) {
  auto arr = nlohmann::json::array();
  for (const auto& e : eig) {
    if (e.infinite())
      arr.push_back("inf");
    else
      arr.push_back({e.value().real(), e.value().imag()});
  }
  return arr;
}

int cmd_roots(const RootsArgs& a, std::ostream& out, std::ostream& err) {
  Polynomial p;
  if (a.input == "-") {
    p = read_polynomial(std::cin);
  } else {
    std::ifstream f(a.input);
    if (!f) {
      err << "cannot open " << a.input << '\n';
      return kBadInput;
    }
    p = read_polynomial(f);
  }

  SolveOptions opt;
  opt.method = parse_method(a.method);
  opt.normalize = !a.no_normalize;
  opt.qz.max_iter_per_eig = a.max_iter;

  nlohmann::json doc{{"method", method_name(opt.method)}, {"degree", p.degree()}, {"normalized", opt.normalize}};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EigenResult res = solve_polynomial(p, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (a.json) {
      doc["converged"] = true;
      doc["roots"] = roots_json(res.eigenvalues);
      doc["iterations"] = res.iterations;
      doc["total_sweeps"] = res.total_sweeps;
      doc["average_iterations"] = res.average_iterations();
      doc["seconds"] = secs;
      out << doc.dump(2) << '\n';
    } else {
      print_roots(out, res.eigenvalues);
    }
    return kOk;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    if (!a.partial) return kNoConvergence;
    // Entries inside the unfinished window are garbage; drop them.
    std::vector<EigenPair> good;
    for (std::size_t k = 0; k < e.partial().size(); ++k)
      if (k < e.active_lo() || k > e.active_hi()) good.push_back(e.partial()[k]);
    if (a.json) {
      doc["converged"] = false;
      doc["roots"] = roots_json(good);
      doc["unconverged"] = e.active_hi() - e.active_lo() + 1;
      out << doc.dump(2) << '\n';
    } else {
      print_roots(out, good);
    }
    return kNoConvergence;
  }
}

int cmd_gen(const std::string& family, std::size_t degree, std::uint64_t seed, const std::string& output,
            std::ostream& out, std::ostream& err) {
  const auto tp = make_polynomial(parse_family(family), degree, seed);
  std::ostringstream body;
  body << "# " << family_name(tp.family) << " degree " << degree;
  if (tp.family == Family::random) body << " seed " << seed;
  body << '\n';
  write_coefficients(body, tp.poly.coeffs);
  if (output.empty()) {
    out << body.str();
    return kOk;
  }
  std::ofstream f(output);
  if (!f) {
    err << "cannot write " << output << '\n';
    return kFailure;
  }
  f << body.str();
  if (!tp.roots.empty()) {
    std::ofstream r(output + ".roots");
    r << "# reference roots\n";
    write_coefficients(r, tp.roots);
  }
  return kOk;
}

Table make_table(int which, const std::vector<std::size_t>& degrees, int trials, std::uint64_t seed) {
  switch (which) {
    case 1: return table_random(degrees, trials, seed);
    case 2: return table_cyclotomic(degrees);
    case 3: return table_degree20();
    case 4: return table_backward_coefficients();
    default: return table_unbalanced();
  }
}

}  // namespace

Polynomial read_polynomial(std::istream& in) {
  Polynomial p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::vector<std::string> fields;
    for (std::string s; tok >> s;) fields.push_back(s);
    if (fields.empty()) continue;
    if (fields.size() != 2)
      throw ParseError("expected \"re im\", got " + std::to_string(fields.size()) + " field(s)", lineno);
    const auto re = to_double(fields[0]);
    const auto im = to_double(fields[1]);
    if (!re || !im) throw ParseError("not a number", lineno);
    if (!std::isfinite(*re) || !std::isfinite(*im)) throw ParseError("non-finite coefficient", lineno);
    p.coeffs.emplace_back(*re, *im);
  }
  if (p.coeffs.empty()) throw ParseError("no coefficients", 0);
  return p;
}

void write_coefficients(std::ostream& out, const std::vector<Complex>& values) {
  for (auto v : values) out << fmt(v.real()) << ' ' << fmt(v.imag()) << '\n';
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("FASTQZ_SEED");
  if (!s || !*s) return fallback;
  std::uint64_t v = 0;
  const std::string str(s);
  const auto [end, ec] = std::from_chars(str.data(), str.data() + str.size(), v);
  if (ec != std::errc() || end != str.data() + str.size()) throw InvalidInput("FASTQZ_SEED is not an unsigned integer");
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Roots of polynomials by structured QZ on companion pencils"};
  app.require_subcommand(1);

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "Compute the roots of a polynomial read from a coefficient file");
  roots->add_option("input", ra.input, "Coefficient file ('-' for stdin)")->required();
  roots->add_option("--method", ra.method, "fast or dense")->check(CLI::IsMember({"fast", "dense"}));
  roots->add_flag("--no-normalize", ra.no_normalize, "Keep the coefficients unscaled");
  roots->add_option("--max-iter", ra.max_iter, "Sweeps allowed per eigenvalue")->check(CLI::PositiveNumber);
  roots->add_flag("--json", ra.json, "Structured output with iteration counts");
  roots->add_flag("--partial", ra.partial, "Print converged roots when iteration fails");

  std::vector<std::size_t> bench_degrees{100, 200, 400, 800};
  int bench_trials = 5;
  std::optional<std::uint64_t> seed_opt;
  bool no_dense = false;
  auto* bench = app.add_subcommand("bench", "Time fast and dense QZ on seeded random polynomials (CSV)");
  bench->add_option("--degrees", bench_degrees, "Comma-separated degrees")->delimiter(',');
  bench->add_option("--trials", bench_trials, "Trials per degree")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed_opt, "Base seed (default: FASTQZ_SEED or 1)");
  bench->add_flag("--no-dense", no_dense, "Skip the dense baseline");

  int which = 1;
  std::vector<std::size_t> table_degrees{50, 100, 150, 200};
  int table_trials = 10;
  auto* tables = app.add_subcommand("tables", "Regenerate one of the experiment tables");
  tables->add_option("which", which, "1 random, 2 cyclotomic, 3 degree 20, 4 backward coefficients, 5 unbalanced")
      ->required()
      ->check(CLI::Range(1, 5));
  tables->add_option("--degrees", table_degrees, "Degrees for tables 1 and 2")->delimiter(',');
  tables->add_option("--trials", table_trials, "Trials per degree for table 1")->check(CLI::PositiveNumber);
  tables->add_option("--seed", seed_opt, "Base seed for table 1 (default: FASTQZ_SEED or 1)");

  std::string family;
  std::size_t degree = 0;
  std::string output;
  auto* gen = app.add_subcommand("gen", "Write the coefficients of a test polynomial");
  gen->add_option("family", family, "random, cyclotomic, powersum, chebyshev, equispaced, bernoulli, unbalanced")
      ->required();
  gen->add_option("degree", degree, "Degree")->required();
  gen->add_option("--seed", seed_opt, "Seed for the random family (default: FASTQZ_SEED or 1)");
  gen->add_option("-o,--output", output, "Output file; reference roots go to <output>.roots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    const auto seed = [&] { return seed_opt ? *seed_opt : seed_from_env(1); };
    if (*roots) return cmd_roots(ra, out, err);
    if (*bench) {
      out << bench_csv(run_bench(bench_degrees, bench_trials, seed(), !no_dense));
      return kOk;
    }
    if (*tables) {
      out << format_table(make_table(which, table_degrees, table_trials, seed()));
      return kOk;
    }
    if (*gen) return cmd_gen(family, degree, seed(), output, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace fastqz::cli
