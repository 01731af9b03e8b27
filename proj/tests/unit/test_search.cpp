#include <doctest.h>

#include <cmath>
#include <functional>

#include "kpl/bounds.hpp"
#include "kpl/cost.hpp"
#include "kpl/loss.hpp"
#include "kpl/profile.hpp"
#include "kpl/search.hpp"

using namespace kpl;
using doctest::Approx;

namespace {

// Best cost over partitions of n into powers of two, by plain recursion.
double pow2_partition_best(std::uint64_t n, std::size_t max_len) {
  double best = 2.0;
  std::vector<Multiplicity> parts;
  std::function<void(std::uint64_t, Multiplicity)> walk = [&](std::uint64_t left, Multiplicity top) {
    if (parts.size() > max_len) return;
    if (left == 0) {
      best = std::min(best, optimal_cost(compute_profile(MultiplicityVector(parts))));
      return;
    }
    for (Multiplicity p = top; p >= 1; p /= 2) {
      if (p > left) continue;
      parts.push_back(p);
      walk(left - p, p);
      parts.pop_back();
    }
  };
  Multiplicity top = 1;
  while (top * 2 <= n) top *= 2;
  walk(n, top);
  return best;
}

SearchConfig noiseless(std::uint64_t n_min, std::uint64_t n_max) {
  SearchConfig cfg;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  return cfg;
}

}  // namespace

TEST_CASE("exhaustive examples") {
  const auto r2 = search_exhaustive(2);
  CHECK(r2.vector == MultiplicityVector{1, 1});
  CHECK(r2.cost == Approx(2 - std::sqrt(2.0)));
  const auto r3 = search_exhaustive(3);
  CHECK(r3.vector == MultiplicityVector{1, 1, 1});
  CHECK(r3.cost == Approx(0.383975).epsilon(1e-6));
  const auto r1 = search_exhaustive(1);
  CHECK(r1.vector == MultiplicityVector{1});
  CHECK(r1.cost == Approx(1.0));
  CHECK(search_exhaustive(4).vector == MultiplicityVector{1, 1, 1, 1});
  CHECK_THROWS_AS(search_exhaustive(25), ResourceLimitError);
  CHECK_THROWS_AS(search_exhaustive(26, 24), ResourceLimitError);
}

TEST_CASE("any-positive constrained search equals the exhaustive oracle") {
  auto cfg = noiseless(1, 16);
  cfg.alphabet = Alphabet::AnyPositive;
  const auto result = search_constrained(cfg);
  REQUIRE(result.entries.size() == 16u);
  for (std::uint64_t n = 1; n <= 16; ++n) {
    const auto* e = result.find(n);
    REQUIRE(e != nullptr);
    const auto oracle = search_exhaustive(n);
    CHECK(e->report.cost == Approx(oracle.cost).epsilon(1e-12));
    CHECK(e->report.n_total == n);
    CHECK(e->resources == static_cast<double>(n));
  }
}

TEST_CASE("power-of-two search equals a recursive oracle") {
  const auto result = search_constrained(noiseless(1, 20));
  for (std::uint64_t n = 1; n <= 20; ++n) {
    const auto* e = result.find(n);
    REQUIRE(e != nullptr);
    CHECK(e->report.cost == Approx(pow2_partition_best(n, 32)).epsilon(1e-12));
    for (auto m : e->report.vector.entries()) CHECK((m & (m - 1)) == 0);
  }
}

TEST_CASE("exhaustive strategy delegates to the oracle") {
  auto cfg = noiseless(5, 9);
  cfg.strategy = SearchStrategy::Exhaustive;
  const auto result = search_constrained(cfg);
  REQUIRE(result.entries.size() == 5u);
  for (const auto& e : result.entries) {
    CHECK(e.report.vector == search_exhaustive(e.key).vector);
  }
}

TEST_CASE("N = 7 finds something at least as good as the standard vector") {
  const auto result = search_constrained(noiseless(7, 7));
  REQUIRE(result.entries.size() == 1u);
  CHECK(result.entries[0].report.cost <= 0.25);
  CHECK(result.entries[0].report.vector != MultiplicityVector{1, 2, 4});
}

TEST_CASE("repetition constraint") {
  auto cfg = noiseless(1, 30);
  cfg.min_repetitions = 2;
  const auto result = search_constrained(cfg);
  for (const auto& e : result.entries) {
    const auto& v = e.report.vector.entries();
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      CHECK(j - i >= 2);
      i = j;
    }
  }
  CHECK(result.find(1) == nullptr);
  // The doubled vectors are feasible, so every m2 shape is at or below its bound.
  for (std::uint64_t n : {2u, 6u, 14u, 30u}) {
    const auto* e = result.find(n);
    REQUIRE(e != nullptr);
    CHECK(e->report.cost <= optimal_cost(compute_profile(kitaev_vector(*doubled_shape(n) / 2, 2))));
    CHECK(e->report.cost <= bound_doubled(n));
  }
}

TEST_CASE("tiers restrict long vectors") {
  auto cfg = noiseless(1, 40);
  cfg.m_max = 12;
  cfg.tiers = {{4, 1}, {12, 3}};
  const auto result = search_constrained(cfg);
  for (const auto& e : result.entries) {
    const auto& v = e.report.vector.entries();
    if (v.size() <= 4) continue;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      CHECK(j - i >= 3);
      i = j;
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto cfg = SearchConfig::staged_powers_of_two(1, 120);
  cfg.threads = 1;
  const auto a = search_constrained(cfg);
  cfg.threads = 4;
  const auto b = search_constrained(cfg);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].report.vector == b.entries[i].report.vector);
    CHECK(a.entries[i].report.cost == b.entries[i].report.cost);
  }
  CHECK(a.candidates_evaluated == b.candidates_evaluated);
}

TEST_CASE("lower envelope") {
  const auto result = search_constrained(noiseless(1, 30));
  const auto env = lower_envelope(result);
  REQUIRE(env.size() == result.entries.size());
  for (std::size_t i = 0; i < env.size(); ++i) {
    CHECK(env[i].report.cost <= result.entries[i].report.cost);
    if (i > 0) CHECK(env[i].report.cost <= env[i - 1].report.cost);
  }
}

TEST_CASE("lossy search") {
  auto cfg = noiseless(1, 24);
  const auto plain = search_constrained(cfg);
  const auto lossless = search_lossy(cfg, 1.0);
  REQUIRE(plain.entries.size() == lossless.entries.size());
  for (std::size_t i = 0; i < plain.entries.size(); ++i) {
    CHECK(plain.entries[i].report.vector == lossless.entries[i].report.vector);
  }

  auto budget = noiseless(1, 100);
  const auto lossy = search_lossy(budget, 0.9);
  for (const auto& e : lossy.entries) {
    CHECK(e.resources == Approx(lossy_resource_count(e.report.vector, 0.9)).epsilon(1e-14));
    CHECK(static_cast<double>(e.key) == std::ceil(e.resources));
    CHECK(e.report.cost > lossy_general_bound(0.9, e.resources));
  }

  const auto heavy = search_lossy(noiseless(1, 60), 0.5);
  const auto light = search_lossy(noiseless(1, 60), 0.9);
  CHECK(heavy.entries.back().report.vector.max_entry() <=
        light.entries.back().report.vector.max_entry());

  auto exhaustive = cfg;
  exhaustive.strategy = SearchStrategy::Exhaustive;
  CHECK_THROWS_AS(search_lossy(exhaustive, 0.9), InvalidArgument);
}

TEST_CASE("exhaustive lossy oracle") {
  const auto r = search_exhaustive_lossy(3, 1.0);
  CHECK(r.cost == Approx(search_exhaustive(3).cost));
  const auto lossy = search_exhaustive_lossy(6, 0.7);
  CHECK(lossy.cost == Approx(lossy_cost_exact(lossy.vector, 0.7)));
  CHECK(lossy.cost > search_exhaustive(6).cost);
}

TEST_CASE("qubit accounting: small cases") {
  CHECK(verify_kitaev_qubit_optimality(1, 1));
  CHECK(verify_kitaev_qubit_optimality(2, 4));
  const auto r3 = check_kitaev_qubit_optimality(3, 8);
  CHECK(r3.passed);
  REQUIRE(r3.minimizers.size() == 1u);
  CHECK(r3.minimizers[0] == MultiplicityVector{1, 2, 4});
  CHECK(r3.min_cost == Approx(0.25));
  CHECK_THROWS_AS(check_kitaev_qubit_optimality(0, 1), InvalidArgument);
  CHECK_THROWS_AS(check_kitaev_qubit_optimality(3, 3), InvalidArgument);
  CHECK_THROWS_AS(check_kitaev_qubit_optimality(13, 1 << 13), ResourceLimitError);
}

TEST_CASE("qubit accounting: pruning changes nothing") {
  for (std::size_t m = 1; m <= 5; ++m) {
    const Multiplicity cap = Multiplicity{1} << m;
    const auto pruned = check_kitaev_qubit_optimality(m, cap, true);
    const auto full = check_kitaev_qubit_optimality(m, cap, false);
    CHECK(pruned.passed == full.passed);
    CHECK(pruned.minimizers == full.minimizers);
    CHECK(pruned.min_cost == full.min_cost);
    CHECK(pruned.leaves_evaluated <= full.leaves_evaluated);
    REQUIRE(full.runner_up_cost.has_value());
    // The bound used for pruning holds on every non-minimizer.
    CHECK(*full.runner_up_cost >= std::ldexp(2 + 2 * std::pow(std::sqrt(2.0) - 1, 2),
                                             -static_cast<int>(m)) - 1e-15);
  }
}
