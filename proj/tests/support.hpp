#pragma once

#include <random>

#include "fastqz/compression.hpp"
#include "fastqz/generators.hpp"
#include "fastqz/structured_qz.hpp"

namespace fastqz::testing {

struct Rng {
  std::mt19937_64 eng;
  std::normal_distribution<double> nd;
  explicit Rng(unsigned long long seed) : eng(seed) {}
  Complex operator()() { return {nd(eng), nd(eng)}; }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng);
  }
};

inline Polynomial random_polynomial(std::size_t n, Rng& rng) {
  Polynomial p;
  for (std::size_t k = 0; k <= n; ++k) p.coeffs.push_back(rng());
  return p;
}

/// Companion pencil of a random polynomial moved away from the companion
/// pattern by a few random-shift sweeps, so every generator is generic.
inline PencilGenerators random_pencil(std::size_t n, Rng& rng, int warmup = 2) {
  PencilGenerators gen = build_companion_pencil(random_polynomial(n, rng));
  for (int s = 0; s < warmup; ++s) {
    gen = qz_sweep(gen, rng(), false).gen;
    compress_pencil(gen);
  }
  return gen;
}

inline DenseMatrixPair dense_pair(const PencilGenerators& gen) {
  auto r = reconstruct_dense(gen);
  return {r.A, r.B};
}

}  // namespace fastqz::testing
