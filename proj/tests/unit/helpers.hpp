#pragma once

#include <random>
#include <vector>

#include "qosp/config.hpp"

namespace qosp::testing {

/// Desk-scale counting configuration: collection and noise probabilities
/// boosted at a fixed signal-to-noise ratio so Monte Carlo runs of 1e6-1e8
/// slots carry the same relative errors as the real acquisition. Physics
/// parameters are untouched.
inline ExperimentConfig bench_config() {
  ExperimentConfig cfg;
  cfg.p_herald = 0.05;
  cfg.eta_h = 0.13;
  cfg.p_noise = 3.8e-4;
  return cfg;
}

/// Deterministic Poisson sampler for test oracles.
class PoissonSampler {
public:
  explicit PoissonSampler(std::uint64_t seed) : rng_(seed) {}

  double sample(double mean) {
    if (mean <= 0.0) return 0.0;
    std::poisson_distribution<long> dist(mean);
    return static_cast<double>(dist(rng_));
  }

private:
  std::mt19937_64 rng_;
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  v.reserve(n);
  if (n == 1) {
    v.push_back(lo);
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

} // namespace qosp::testing
