#include "kpl/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "kpl/cost.hpp"
#include "kpl/loss.hpp"
#include "kpl/profile.hpp"

namespace kpl {

namespace {

// Profile with 64-bit counts, multiplied and divided by (1 + x^m) in place.
// Valid while the qubit count stays below 64.
class WorkingProfile {
 public:
  explicit WorkingProfile(std::uint64_t max_degree) : counts_(max_degree + 1, 0) {
    counts_[0] = 1;
  }

  void multiply(Multiplicity m) {
    for (std::uint64_t n = degree_ + 1; n-- > 0;) counts_[n + m] += counts_[n];
    degree_ += m;
    ++qubits_;
  }

  void divide(Multiplicity m) {
    const std::uint64_t top = degree_;
    degree_ -= m;
    --qubits_;
    for (std::uint64_t n = m; n <= top; ++n) counts_[n] -= counts_[n - m];
  }

  std::uint64_t degree() const noexcept { return degree_; }
  std::size_t qubits() const noexcept { return qubits_; }
  std::uint64_t operator[](std::uint64_t n) const noexcept { return counts_[n]; }

  // Same rearrangement as optimal_cost(), on machine integers.
  double optimal_cost() const {
    double sum = static_cast<double>(counts_[0]) + static_cast<double>(counts_[degree_]);
    double root = std::sqrt(static_cast<double>(counts_[0]));
    for (std::uint64_t n = 0; n < degree_; ++n) {
      const std::uint64_t a = counts_[n];
      const std::uint64_t b = counts_[n + 1];
      const double next = std::sqrt(static_cast<double>(b));
      const double denom = root + next;
      if (denom > 0.0) {
        const double diff = a >= b ? static_cast<double>(a - b) : -static_cast<double>(b - a);
        const double t = diff / denom;
        sum += t * t;
      }
      root = next;
    }
    return std::ldexp(sum, -static_cast<int>(qubits_));
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t degree_ = 0;
  std::size_t qubits_ = 0;
};

struct Best {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Multiplicity> vector;
  bool set = false;

  bool improves(double c, const std::vector<Multiplicity>& v) const {
    return !set || c < cost || (c == cost && v < vector);
  }
};

struct EnumerationSpec {
  std::vector<Multiplicity> values;  // ascending
  std::vector<double> weights;       // resource charge per entry, ascending
  double budget = 0.0;
  std::uint64_t max_degree = 0;
  std::uint64_t key_min = 0;
  std::uint64_t key_max = 0;
  bool lossy = false;
};

struct Task {
  std::size_t value_index;
  std::size_t count;
};

// Depth-first walk over nondecreasing vectors made of value blocks, each
// block repeated at least `reps` times. Only vectors whose length lies in
// (lo, hi] are scored, but shorter prefixes are still expanded.
class Enumerator {
 public:
  Enumerator(const EnumerationSpec& spec, std::size_t lo, std::size_t hi, std::size_t reps)
      : spec_(spec), lo_(lo), hi_(hi), reps_(reps), profile_(spec.max_degree),
        best_(spec.key_max - spec.key_min + 1) {}

  void run(const Task& task) {
    std::size_t pushed = 0;
    for (; pushed < task.count; ++pushed) {
      if (!push(task.value_index)) break;
    }
    if (pushed == task.count) {
      record();
      extend(task.value_index + 1);
    }
    for (; pushed > 0; --pushed) pop();
  }

  std::vector<Best>& best() { return best_; }
  std::uint64_t evaluated() const { return evaluated_; }

 private:
  bool push(std::size_t j) {
    if (stack_.size() >= hi_) return false;
    const double w = weight_.empty() ? spec_.weights[j] : weight_.back() + spec_.weights[j];
    if (w > spec_.budget) return false;
    profile_.multiply(spec_.values[j]);
    stack_.push_back(spec_.values[j]);
    weight_.push_back(w);
    return true;
  }

  void pop() {
    profile_.divide(stack_.back());
    stack_.pop_back();
    weight_.pop_back();
  }

  void record() {
    if (stack_.size() <= lo_ || stack_.size() > hi_) return;
    const std::uint64_t key = spec_.lossy
                                  ? static_cast<std::uint64_t>(std::ceil(weight_.back()))
                                  : profile_.degree();
    if (key < spec_.key_min || key > spec_.key_max) return;
    ++evaluated_;
    const double c = profile_.optimal_cost();
    auto& slot = best_[key - spec_.key_min];
    if (slot.improves(c, stack_)) {
      slot.cost = c;
      slot.vector = stack_;
      slot.set = true;
    }
  }

  void extend(std::size_t first) {
    for (std::size_t j = first; j < spec_.values.size(); ++j) {
      std::size_t pushed = 0;
      while (pushed < reps_ && push(j)) ++pushed;
      const bool fits = pushed == reps_;
      if (fits) {
        while (true) {
          record();
          extend(j + 1);
          if (!push(j)) break;
          ++pushed;
        }
      }
      for (; pushed > 0; --pushed) pop();
      // Larger values need at least as much budget and as many qubits.
      if (!fits) break;
    }
  }

  const EnumerationSpec& spec_;
  std::size_t lo_;
  std::size_t hi_;
  std::size_t reps_;
  WorkingProfile profile_;
  std::vector<Multiplicity> stack_;
  std::vector<double> weight_;
  std::vector<Best> best_;
  std::uint64_t evaluated_ = 0;
};

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void merge_into(std::vector<Best>& into, const std::vector<Best>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    if (from[i].set && into[i].improves(from[i].cost, from[i].vector)) into[i] = from[i];
  }
}

// Runs every tier over the worker pool; reduction is by (cost, vector), so the
// outcome does not depend on how tasks were scheduled.
std::vector<Best> enumerate(const EnumerationSpec& spec, const SearchConfig& cfg,
                            std::uint64_t& evaluated) {
  std::vector<Best> merged(spec.key_max - spec.key_min + 1);
  std::size_t lo = 0;
  for (const auto& tier : cfg.effective_tiers()) {
    const std::size_t hi = tier.max_qubits;
    const std::size_t reps = tier.min_repetitions;
    std::vector<Task> tasks;
    for (std::size_t j = 0; j < spec.values.size(); ++j) {
      double w = 0.0;
      for (std::size_t c = 1; c <= hi; ++c) {
        w += spec.weights[j];
        if (w > spec.budget) break;
        if (c >= reps) tasks.push_back({j, c});
      }
    }
    const unsigned workers =
        std::min<unsigned>(resolve_threads(cfg.threads), std::max<std::size_t>(1, tasks.size()));
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::uint64_t tier_evaluated = 0;
    auto work = [&] {
      Enumerator e(spec, lo, hi, reps);
      for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) e.run(tasks[t]);
      std::lock_guard lock(guard);
      merge_into(merged, e.best());
      tier_evaluated += e.evaluated();
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    evaluated += tier_evaluated;
    lo = hi;
  }
  return merged;
}

EnumerationSpec make_spec(const SearchConfig& cfg, double eta, bool lossy) {
  EnumerationSpec spec;
  spec.lossy = lossy;
  spec.key_min = cfg.n_min;
  spec.key_max = cfg.n_max;
  spec.budget = static_cast<double>(cfg.n_max);
  spec.max_degree = cfg.n_max;
  for (Multiplicity m = 1; m <= cfg.n_max;
       m = cfg.alphabet == Alphabet::PowersOfTwo ? m * 2 : m + 1) {
    const double x = static_cast<double>(m);
    const double w = lossy ? x / std::pow(eta, x) : x;
    if (w > spec.budget) break;
    spec.values.push_back(m);
    spec.weights.push_back(w);
  }
  if (spec.values.empty()) throw InvalidArgument("search: empty alphabet for this budget");
  return spec;
}

SearchResult collect(const std::vector<Best>& best, const EnumerationSpec& spec, double eta,
                     std::uint64_t evaluated) {
  SearchResult result;
  result.candidates_evaluated = evaluated;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (!best[i].set) continue;
    SearchEntry entry;
    entry.key = spec.key_min + i;
    entry.report = make_report(MultiplicityVector(best[i].vector));
    entry.resources = spec.lossy ? lossy_resource_count(entry.report.vector, eta)
                                 : static_cast<double>(entry.report.n_total);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

template <typename Visit>
void for_each_partition(std::uint64_t remaining, Multiplicity smallest,
                        std::vector<Multiplicity>& parts, Visit&& visit) {
  if (remaining == 0) {
    visit(parts);
    return;
  }
  for (Multiplicity m = smallest; m <= remaining; ++m) {
    parts.push_back(m);
    for_each_partition(remaining - m, m, parts, visit);
    parts.pop_back();
  }
}

void check_exhaustive_limit(std::uint64_t n_target, std::uint64_t limit) {
  if (n_target > limit) {
    throw ResourceLimitError("exhaustive search limited to N <= " + std::to_string(limit) +
                             ", got " + std::to_string(n_target));
  }
}

}  // namespace

const SearchEntry* SearchResult::find(std::uint64_t key) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), key,
                             [](const SearchEntry& e, std::uint64_t k) { return e.key < k; });
  return it != entries.end() && it->key == key ? &*it : nullptr;
}

CostReport search_exhaustive(std::uint64_t n_target, std::uint64_t limit) {
  check_exhaustive_limit(n_target, limit);
  std::optional<CostReport> best;
  std::vector<Multiplicity> parts;
  for_each_partition(n_target, 1, parts, [&](const std::vector<Multiplicity>& p) {
    auto report = make_report(MultiplicityVector(p));
    if (!best || report.cost < best->cost ||
        (report.cost == best->cost && report.vector < best->vector)) {
      best = std::move(report);
    }
  });
  return *best;
}

SearchResult search_constrained(const SearchConfig& cfg) {
  cfg.validate();
  if (cfg.strategy == SearchStrategy::Exhaustive) {
    SearchResult result;
    for (std::uint64_t n = cfg.n_min; n <= cfg.n_max; ++n) {
      SearchEntry entry;
      entry.key = n;
      entry.resources = static_cast<double>(n);
      entry.report = search_exhaustive(n, cfg.exhaustive_limit);
      result.entries.push_back(std::move(entry));
    }
    return result;
  }
  const auto spec = make_spec(cfg, 1.0, false);
  std::uint64_t evaluated = 0;
  const auto best = enumerate(spec, cfg, evaluated);
  return collect(best, spec, 1.0, evaluated);
}

SearchResult search_lossy(const SearchConfig& cfg, double eta) {
  LossConfig{eta, LossMode::ResourceAdjusted}.validate();
  cfg.validate();
  if (cfg.strategy == SearchStrategy::Exhaustive) {
    throw InvalidArgument("search_lossy: use the constrained strategy; adjusted resources "
                          "are not integer partitions");
  }
  const auto spec = make_spec(cfg, eta, true);
  std::uint64_t evaluated = 0;
  const auto best = enumerate(spec, cfg, evaluated);
  return collect(best, spec, eta, evaluated);
}

std::vector<SearchEntry> lower_envelope(const SearchResult& result) {
  std::vector<SearchEntry> out;
  for (const auto& e : result.entries) {
    if (out.empty() || e.report.cost < out.back().report.cost) {
      out.push_back(e);
    } else {
      auto carried = out.back();
      carried.key = e.key;
      out.push_back(std::move(carried));
    }
  }
  return out;
}

CostReport search_exhaustive_lossy(std::uint64_t n_target, double eta, std::uint64_t limit) {
  check_exhaustive_limit(n_target, limit);
  std::optional<CostReport> best;
  std::vector<Multiplicity> parts;
  for_each_partition(n_target, 1, parts, [&](const std::vector<Multiplicity>& p) {
    MultiplicityVector v(p);
    const double c = lossy_cost_exact(v, eta, std::max<std::size_t>(n_target, 1));
    if (!best || c < best->cost || (c == best->cost && v < best->vector)) {
      CostReport r;
      r.vector = v;
      r.n_total = v.n_total();
      r.m_count = v.m_count();
      r.cost = c;
      r.optimum_ratio = c / optimum_cost(v.n_total());
      best = std::move(r);
    }
  });
  return *best;
}

KitaevOptimalityCheck check_kitaev_qubit_optimality(std::size_t m_count,
                                                    Multiplicity entry_cap, bool prune) {
  if (m_count == 0) throw InvalidArgument("verify-shor: m_count must be >= 1");
  if (m_count > 12) {
    throw ResourceLimitError("verify-shor: m_count " + std::to_string(m_count) +
                             " exceeds the enumeration limit of 12");
  }
  const Multiplicity top = Multiplicity{1} << (m_count - 1);
  if (entry_cap < top) {
    throw InvalidArgument("verify-shor: entry cap " + std::to_string(entry_cap) +
                          " is below 2^(M-1) = " + std::to_string(top) +
                          ", so the standard Kitaev vector is excluded");
  }

  const int m = static_cast<int>(m_count);
  const double flat_cost = std::ldexp(2.0, -m);
  const double gap = std::sqrt(2.0) - 1.0;
  const double nonflat_floor = std::ldexp(2.0 + 2.0 * gap * gap, -m);

  KitaevOptimalityCheck out;
  double best = flat_cost;  // incumbent: the standard vector is in the search space
  constexpr double kRel = 1e-12;
  WorkingProfile profile(m_count * entry_cap);
  std::vector<Multiplicity> stack;

  // True when no completion with entries >= last can have J = 1 everywhere.
  auto certainly_nonflat = [&](Multiplicity last) {
    for (std::uint64_t n = 0; n <= profile.degree(); ++n) {
      const auto c = profile[n];
      if (c >= 2) return true;
      if (c == 0 && n < last) return true;
    }
    return false;
  };

  auto visit = [&](auto&& self, Multiplicity first) -> void {
    if (stack.size() == m_count) {
      ++out.leaves_evaluated;
      const double c = profile.optimal_cost();
      if (c < best * (1.0 - kRel)) {
        if (!out.minimizers.empty()) {
          out.runner_up_cost = std::min(out.runner_up_cost.value_or(best), best);
        }
        best = c;
        out.minimizers.clear();
        out.minimizers.emplace_back(stack);
      } else if (c <= best * (1.0 + kRel)) {
        out.minimizers.emplace_back(stack);
      } else {
        out.runner_up_cost = std::min(out.runner_up_cost.value_or(c), c);
      }
      return;
    }
    for (Multiplicity e = first; e <= entry_cap; ++e) {
      profile.multiply(e);
      stack.push_back(e);
      if (prune && stack.size() < m_count && certainly_nonflat(e) &&
          nonflat_floor > best * (1.0 + 1e-9)) {
        ++out.subtrees_pruned;
      } else {
        self(self, e);
      }
      stack.pop_back();
      profile.divide(e);
    }
  };
  visit(visit, 1);

  out.min_cost = out.minimizers.empty() ? best
                                        : optimal_cost(compute_profile(out.minimizers.front()));
  out.passed = out.minimizers.size() == 1 && out.minimizers.front() == kitaev_vector(m_count);
  return out;
}

bool verify_kitaev_qubit_optimality(std::size_t m_count, Multiplicity entry_cap) {
  return check_kitaev_qubit_optimality(m_count, entry_cap).passed;
}

}  // namespace kpl
