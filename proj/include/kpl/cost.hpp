#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kpl/types.hpp"

namespace kpl {

/// C(x) = 4 sin^2(x / 2). Periodic; averages to 2 over a flat prior.
double phase_cost(double delta);

/// First off-diagonal band Pi_{n,n+1}, n = 0..N-1, of a covariant seed
/// operator whose diagonal is fixed to 1. Entries are real with |r| <= 1.
class SeedOffDiagonals {
 public:
  explicit SeedOffDiagonals(std::vector<double> values);
  static SeedOffDiagonals ones(std::uint64_t n_total);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// Mean cost 2 - 2^{1-M} sum_n r(n) sqrt(J(n) J(n+1)) of the covariant
/// measurement generated by a seed with off-diagonal band `seed`.
double cost_with_seed(const PhaseProfile& profile, const SeedOffDiagonals& seed);

/**
 * Minimal mean cost over all covariant measurements, attained by the seed with
 * every matrix element equal to 1:
 *
 *   2 - 2^{1-M} sum_{n<N} sqrt(J(n) J(n+1))
 *     = 2^{-M} [ J(0) + J(N) + sum_{n<N} (sqrt J(n) - sqrt J(n+1))^2 ].
 *
 * The second form is a sum of nonnegative terms and is the one evaluated here,
 * since the first loses all significant digits once the cost drops towards
 * 1/N^2. Each squared difference is formed as (J(n) - J(n+1))^2 /
 * (sqrt J(n) + sqrt J(n+1))^2 from the exact integer difference.
 */
double optimal_cost(const PhaseProfile& profile);

/// Entangled-input optimum 2 [1 - cos(pi / (N + 2))].
double optimum_cost(std::uint64_t n_total);

/// Same as optimum_cost but for real-valued N, used when plotting against
/// non-integer (loss-adjusted) resource counts.
double optimum_cost_real(double n_total);

CostReport make_report(const MultiplicityVector& v);

}  // namespace kpl
