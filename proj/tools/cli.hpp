#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastqz/errors.hpp"
#include "fastqz/generators.hpp"

namespace fastqz::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kBadInput = 2, kNoConvergence = 3 };

/// Malformed coefficient file. line() is 1-based; 0 when the problem is not
/// tied to a line (an empty file).
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InvalidInput(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Ascending coefficients, one "re im" pair per line; '#' starts a comment.
Polynomial read_polynomial(std::istream& in);
void write_coefficients(std::ostream& out, const std::vector<Complex>& values);

/// FASTQZ_SEED when set, else `fallback`. Throws InvalidInput on garbage.
std::uint64_t seed_from_env(std::uint64_t fallback);

/// Entry point behind the executable; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fastqz::cli
