#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kpl/types.hpp"

namespace kpl {

struct SimConfig {
  MultiplicityVector vector;
  double true_phase = 0.0;
  std::uint64_t samples = 100000;
  std::uint64_t rng_seed = 0;
  unsigned threads = 0;

  void validate() const;
  /// true_phase wrapped into [0, 2 pi).
  double wrapped_phase() const;
};

struct SimResult {
  double mean_cost = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t proposals = 0;
  /// Largest density value met while sampling; never above the envelope.
  double max_density_seen = 0.0;
};

/// Density of the optimal covariant measurement's estimate relative to the
/// true phase: |sum_n sqrt J(n) e^{i n theta}|^2 / (2 pi 2^M).
class OutcomeDensity {
 public:
  explicit OutcomeDensity(const PhaseProfile& profile);

  double operator()(double theta) const;
  /// (N + 1) / 2 pi, an upper bound by Cauchy-Schwarz since sum J = 2^M.
  double envelope() const noexcept { return envelope_; }

 private:
  std::vector<double> amplitudes_;  // sqrt(J(n) / 2^M)
  double envelope_;
};

double outcome_density(const PhaseProfile& profile, double theta);

/**
 * Draws estimates from the covariant measurement by rejection sampling under
 * the uniform envelope and averages 4 sin^2((estimate - phase) / 2).
 *
 * Samples are generated in fixed shards of kShardSize. Shard s uses
 * std::mt19937_64 seeded with splitmix64(rng_seed + s * 0x9E3779B97F4A7C15);
 * uniforms are (draw >> 11) * 2^-53. Results are therefore identical for any
 * thread count and any conforming standard library.
 */
SimResult simulate_cost(const SimConfig& cfg);

inline constexpr std::uint64_t kShardSize = 8192;

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace kpl
