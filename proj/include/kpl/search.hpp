#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kpl/types.hpp"

namespace kpl {

/// Best strategy found for one resource bucket.
struct SearchEntry {
  /// N for noiseless searches, ceil(adjusted resources) for lossy ones.
  std::uint64_t key = 0;
  /// Resources charged to the winning vector (equal to N when noiseless).
  double resources = 0.0;
  CostReport report;
};

struct SearchResult {
  /// Strictly increasing in key; buckets with no candidate are absent.
  std::vector<SearchEntry> entries;
  std::uint64_t candidates_evaluated = 0;

  const SearchEntry* find(std::uint64_t key) const;
};

/// Minimum of the optimal cost over every partition of n_target. Ties go to
/// the lexicographically smallest nondecreasing vector. Uses the exact
/// arbitrary-precision profile path so it can serve as an oracle for the
/// enumeration kernel behind search_constrained.
CostReport search_exhaustive(std::uint64_t n_target,
                             std::uint64_t limit = SearchConfig::kDefaultExhaustiveLimit);

/// Best vector per N over nondecreasing vectors drawn from the configured
/// alphabet, honoring qubit cap and repetition tiers. With
/// SearchStrategy::Exhaustive each N is delegated to search_exhaustive.
SearchResult search_constrained(const SearchConfig& cfg);

/// Same enumeration, but each vector is charged lossy_resource_count(v, eta)
/// and bucketed by the ceiling of that value; its cost is the noiseless
/// optimal cost. n_min / n_max bound the adjusted resources.
SearchResult search_lossy(const SearchConfig& cfg, double eta);

/// Running minimum of the table: entry i carries the best cost among keys <=
/// entries[i].key.
std::vector<SearchEntry> lower_envelope(const SearchResult& result);

/// Partition of n_target minimizing the exact loss-mixture cost. `cost` in the
/// report is the lossy cost; optimum_ratio is relative to the noiseless
/// optimum at N.
CostReport search_exhaustive_lossy(std::uint64_t n_target, double eta,
                                   std::uint64_t limit = SearchConfig::kDefaultExhaustiveLimit);

struct KitaevOptimalityCheck {
  bool passed = false;
  std::vector<MultiplicityVector> minimizers;
  double min_cost = 0.0;
  /// Lowest cost among evaluated non-minimizers, if any were evaluated.
  std::optional<double> runner_up_cost;
  std::uint64_t leaves_evaluated = 0;
  std::uint64_t subtrees_pruned = 0;
};

/**
 * Enumerates every nondecreasing vector of exactly m_count entries in
 * [1, entry_cap] and reports the cost minimizers when each qubit counts as one
 * resource regardless of its multiplicity.
 *
 * With `prune` set, a prefix is cut when every completion is certain to have a
 * non-flat profile: a prefix coefficient >= 2 never decreases, and a zero
 * below the last entry can no longer be filled. A non-flat profile has
 * J(i) != 1 at a first and a last index, each contributing at least
 * (sqrt 2 - 1)^2 to the squared-root-difference sum, so its cost is at least
 * 2^{-M} (2 + 2 (sqrt 2 - 1)^2), strictly above the flat profile's 2^{1-M}.
 */
KitaevOptimalityCheck check_kitaev_qubit_optimality(std::size_t m_count,
                                                    Multiplicity entry_cap,
                                                    bool prune = true);

/// True iff (1, 2, ..., 2^{M-1}) is the unique minimizer.
bool verify_kitaev_qubit_optimality(std::size_t m_count, Multiplicity entry_cap);

}  // namespace kpl
