#include "kpl/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace kpl {

namespace {

std::uint64_t checked_sum(const std::vector<Multiplicity>& entries) {
  std::uint64_t total = 0;
  for (auto m : entries) {
    if (m == 0) {
      throw InvalidArgument("multiplicity entries must be positive, got 0");
    }
    if (__builtin_add_overflow(total, m, &total)) {
      throw ResourceLimitError("total resource count overflows 64 bits");
    }
  }
  return total;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

MultiplicityVector::MultiplicityVector(std::vector<Multiplicity> entries)
    : entries_(std::move(entries)), n_total_(checked_sum(entries_)) {}

MultiplicityVector::MultiplicityVector(std::initializer_list<Multiplicity> entries)
    : MultiplicityVector(std::vector<Multiplicity>(entries)) {}

MultiplicityVector MultiplicityVector::from_signed(std::span<const long long> entries) {
  std::vector<Multiplicity> out;
  out.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] <= 0) {
      throw InvalidArgument("multiplicity entry " + std::to_string(i) + " is " +
                            std::to_string(entries[i]) + "; entries must be >= 1");
    }
    out.push_back(static_cast<Multiplicity>(entries[i]));
  }
  return MultiplicityVector(std::move(out));
}

MultiplicityVector MultiplicityVector::parse(std::string_view text) {
  std::vector<long long> values;
  if (trim(text).empty()) return {};
  std::size_t index = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    long long value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && token.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last) {
      throw InvalidArgument("multiplicity entry " + std::to_string(index) + " ('" +
                            std::string(token) + "') is not an integer");
    }
    values.push_back(value);
    ++index;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_signed(values);
}

bool MultiplicityVector::is_canonical() const noexcept {
  return std::is_sorted(entries_.begin(), entries_.end());
}

Multiplicity MultiplicityVector::max_entry() const noexcept {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

std::string MultiplicityVector::to_string(char separator) const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out.push_back(separator);
    out += std::to_string(entries_[i]);
  }
  return out;
}

MultiplicityVector canonicalize(const MultiplicityVector& v) {
  auto entries = v.entries();
  std::sort(entries.begin(), entries.end());
  return MultiplicityVector(std::move(entries));
}

MultiplicityVector concat(const MultiplicityVector& a, const MultiplicityVector& b) {
  auto entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return MultiplicityVector(std::move(entries));
}

MultiplicityVector kitaev_vector(std::size_t distinct, std::size_t repeats) {
  if (distinct >= 64) {
    throw ResourceLimitError("kitaev_vector: 2^" + std::to_string(distinct - 1) +
                             " does not fit in a 64-bit multiplicity");
  }
  std::vector<Multiplicity> entries;
  entries.reserve(distinct * repeats);
  for (std::size_t i = 0; i < distinct; ++i) {
    for (std::size_t r = 0; r < repeats; ++r) entries.push_back(Multiplicity{1} << i);
  }
  return MultiplicityVector(std::move(entries));
}

PhaseProfile::PhaseProfile(std::size_t m_count, std::vector<BigCount> counts)
    : m_count_(m_count), counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw InvalidArgument("a phase profile needs at least one count (N >= 0)");
  }
}

bool PhaseProfile::satisfies_invariants() const {
  BigCount total = 0;
  for (const auto& c : counts_) {
    if (c < 0) return false;
    total += c;
  }
  if (total != BigCount(1) << m_count_) return false;
  if (counts_.front() < 1 || counts_.back() < 1) return false;
  const auto n = counts_.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (counts_[i] != counts_[n - 1 - i]) return false;
  }
  return true;
}

void LossConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("transmission eta must lie in (0, 1], got " + std::to_string(eta));
  }
}

std::vector<RepetitionTier> SearchConfig::effective_tiers() const {
  std::vector<RepetitionTier> out =
      tiers.empty() ? std::vector<RepetitionTier>{{m_max, min_repetitions}} : tiers;
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.max_qubits < b.max_qubits; });
  std::vector<RepetitionTier> clipped;
  for (auto t : out) {
    t.max_qubits = std::min(t.max_qubits, m_max);
    if (!clipped.empty() && t.max_qubits <= clipped.back().max_qubits) continue;
    clipped.push_back(t);
  }
  return clipped;
}

void SearchConfig::validate() const {
  if (n_min > n_max) {
    throw InvalidArgument("search: n_min (" + std::to_string(n_min) + ") exceeds n_max (" +
                          std::to_string(n_max) + ")");
  }
  if (n_max == 0) throw InvalidArgument("search: empty alphabet, n_max must be >= 1");
  if (min_repetitions == 0) throw InvalidArgument("search: min_repetitions must be >= 1");
  if (m_max == 0) throw InvalidArgument("search: m_max must be >= 1");
  if (m_max > 63) {
    throw ResourceLimitError("search: m_max " + std::to_string(m_max) +
                             " exceeds the 63-qubit enumeration kernel");
  }
  for (const auto& t : tiers) {
    if (t.min_repetitions == 0) throw InvalidArgument("search: tier repetitions must be >= 1");
    if (t.max_qubits == 0) throw InvalidArgument("search: tier max_qubits must be >= 1");
  }
  if (strategy == SearchStrategy::Exhaustive && n_max > exhaustive_limit) {
    throw ResourceLimitError("search: exhaustive enumeration limited to N <= " +
                             std::to_string(exhaustive_limit) + ", got " +
                             std::to_string(n_max));
  }
  bool feasible = false;
  for (const auto& t : effective_tiers()) feasible |= t.min_repetitions <= t.max_qubits;
  if (!feasible) {
    throw InvalidArgument("search: repetition constraints cannot be met within m_max qubits");
  }
}

SearchConfig SearchConfig::staged_powers_of_two(std::uint64_t n_min, std::uint64_t n_max) {
  SearchConfig cfg;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  cfg.alphabet = Alphabet::PowersOfTwo;
  cfg.m_max = 32;
  cfg.tiers = {{20, 1}, {25, 2}, {32, 3}};
  return cfg;
}

}  // namespace kpl
