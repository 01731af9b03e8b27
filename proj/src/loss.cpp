#include "kpl/loss.hpp"

#include <cmath>
#include <map>
#include <string>

#include "kpl/cost.hpp"
#include "kpl/profile.hpp"

namespace kpl {

namespace {

void check_eta(double eta) { LossConfig{eta, LossMode::ExactMixture}.validate(); }

struct Block {
  Multiplicity value;
  std::size_t count;
  double survive;
};

std::vector<Block> blocks_of(const MultiplicityVector& v, double eta) {
  std::map<Multiplicity, std::size_t> histogram;
  for (auto m : v.entries()) ++histogram[m];
  std::vector<Block> blocks;
  for (auto [value, count] : histogram) {
    blocks.push_back({value, count, std::pow(eta, static_cast<double>(value))});
  }
  return blocks;
}

double binomial(std::size_t n, std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / i;
  return out;
}

}  // namespace

std::vector<LossPattern> loss_patterns(const MultiplicityVector& v, double eta,
                                       std::size_t max_qubits) {
  check_eta(eta);
  if (v.m_count() > max_qubits) {
    throw ResourceLimitError("exact loss mixture: " + std::to_string(v.m_count()) +
                             " qubits exceeds the cap of " + std::to_string(max_qubits));
  }
  const auto blocks = blocks_of(v, eta);
  std::vector<LossPattern> patterns;
  std::vector<std::size_t> kept(blocks.size(), 0);
  // Odometer over survivor counts 0..count for each distinct multiplicity.
  while (true) {
    double weight = 1.0;
    std::vector<Multiplicity> survivors;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& blk = blocks[b];
      weight *= binomial(blk.count, kept[b]) *
                std::pow(blk.survive, static_cast<double>(kept[b])) *
                std::pow(1.0 - blk.survive, static_cast<double>(blk.count - kept[b]));
      survivors.insert(survivors.end(), kept[b], blk.value);
    }
    patterns.push_back({MultiplicityVector(std::move(survivors)), weight});

    std::size_t b = 0;
    while (b < blocks.size() && kept[b] == blocks[b].count) kept[b++] = 0;
    if (b == blocks.size()) break;
    ++kept[b];
  }
  return patterns;
}

double lossy_cost_exact(const MultiplicityVector& v, double eta, std::size_t max_qubits) {
  const auto patterns = loss_patterns(v, eta, max_qubits);
  double total = 0.0;
  double weights = 0.0;
  for (const auto& p : patterns) {
    weights += p.weight;
    if (p.weight == 0.0) continue;
    total += p.weight * optimal_cost(compute_profile(p.survivors));
  }
  if (std::fabs(weights - 1.0) > 1e-12) {
    throw Error("exact loss mixture: pattern weights sum to " + std::to_string(weights));
  }
  return total;
}

double lossy_resource_count(const MultiplicityVector& v, double eta) {
  check_eta(eta);
  double total = 0.0;
  for (auto m : v.entries()) {
    const double x = static_cast<double>(m);
    total += x / std::pow(eta, x);
  }
  return total;
}

AdjustedCost lossy_cost_resource_adjusted(const MultiplicityVector& v, double eta) {
  check_eta(eta);
  return {optimal_cost(compute_profile(v)), lossy_resource_count(v, eta)};
}

}  // namespace kpl
