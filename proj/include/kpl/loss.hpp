#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kpl/types.hpp"

namespace kpl {

inline constexpr std::size_t kDefaultExactLossCap = 20;

/// One surviving-qubit pattern class of the loss mixture: every subset of
/// qubits that leaves the same multiset behind, with their total probability.
struct LossPattern {
  MultiplicityVector survivors;
  double weight = 0.0;
};

/// Loss patterns of v grouped by surviving multiset. A block of m gates
/// survives with probability eta^m; weights sum to 1.
std::vector<LossPattern> loss_patterns(const MultiplicityVector& v, double eta,
                                       std::size_t max_qubits = kDefaultExactLossCap);

/// Mixture of noiseless optimal costs over all 2^M loss patterns. A lost
/// qubit carries no phase information but is always detected.
double lossy_cost_exact(const MultiplicityVector& v, double eta,
                        std::size_t max_qubits = kDefaultExactLossCap);

/// sum_i m_i / eta^{m_i}: expected gate uses until each block has run once
/// without loss.
double lossy_resource_count(const MultiplicityVector& v, double eta);

struct AdjustedCost {
  double cost = 2.0;
  double resources = 0.0;
};

/// Noiseless optimal cost of v paired with its loss-adjusted resource count.
AdjustedCost lossy_cost_resource_adjusted(const MultiplicityVector& v, double eta);

}  // namespace kpl
