#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpl {

// Error hierarchy. InvalidArgument covers caller mistakes (bad vectors,
// out-of-range parameters); the CLI maps it to a usage error. Everything
// else derived from Error is a computation failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A requested size exceeds a configured cap (qubit count, enumeration size).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A closed-form expression was asked for at a resource count that does not
/// have the shape the formula is defined on.
class ShapeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

using Multiplicity = std::uint64_t;
using BigCount = boost::multiprecision::cpp_int;

/**
 * Per-qubit phase-gate counts (m_0, ..., m_{M-1}).
 *
 * Every entry is at least 1. The empty vector is valid and stands for "no
 * qubits"; it is the value left over when every photon of a lossy run is
 * lost. Entry order is preserved as given, but every cost function in this
 * library depends only on the multiset, so canonicalize() is free to sort.
 */
class MultiplicityVector {
 public:
  MultiplicityVector() = default;
  explicit MultiplicityVector(std::vector<Multiplicity> entries);
  MultiplicityVector(std::initializer_list<Multiplicity> entries);

  /// Accepts signed input so that zero and negative entries can be reported
  /// rather than silently wrapped.
  static MultiplicityVector from_signed(std::span<const long long> entries);

  /// Parses "1,2,4". The empty string yields the empty vector. Whitespace
  /// around entries is tolerated.
  static MultiplicityVector parse(std::string_view text);

  const std::vector<Multiplicity>& entries() const noexcept { return entries_; }
  std::size_t m_count() const noexcept { return entries_.size(); }
  std::uint64_t n_total() const noexcept { return n_total_; }
  bool empty() const noexcept { return entries_.empty(); }
  bool is_canonical() const noexcept;
  Multiplicity max_entry() const noexcept;

  /// "1,2,4"; empty vector gives "".
  std::string to_string(char separator = ',') const;

  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
  friend auto operator<=>(const MultiplicityVector& a, const MultiplicityVector& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Multiplicity> entries_;
  std::uint64_t n_total_ = 0;
};

MultiplicityVector canonicalize(const MultiplicityVector& v);

/// Concatenation, written m ∧ m' in the literature on Kitaev variants.
MultiplicityVector concat(const MultiplicityVector& a, const MultiplicityVector& b);

/// (1, 2, 4, ..., 2^{distinct-1}) with each power repeated `repeats` times,
/// in canonical order. repeats = 1 is the standard Kitaev vector.
MultiplicityVector kitaev_vector(std::size_t distinct, std::size_t repeats = 1);

/// Histogram J(n), n = 0..N, of computational basis states by accumulated
/// phase multiplicity. Counts are exact.
class PhaseProfile {
 public:
  PhaseProfile(std::size_t m_count, std::vector<BigCount> counts);

  std::uint64_t n_total() const noexcept { return counts_.size() - 1; }
  std::size_t m_count() const noexcept { return m_count_; }
  const std::vector<BigCount>& counts() const noexcept { return counts_; }
  const BigCount& operator[](std::size_t n) const { return counts_.at(n); }

  /// Checks sum = 2^M, J(0) >= 1, J(N) >= 1 and J(n) = J(N - n).
  bool satisfies_invariants() const;

  friend bool operator==(const PhaseProfile&, const PhaseProfile&) = default;

 private:
  std::size_t m_count_;
  std::vector<BigCount> counts_;
};

struct CostReport {
  MultiplicityVector vector;
  std::uint64_t n_total = 0;
  std::size_t m_count = 0;
  double cost = 2.0;
  double optimum_ratio = 1.0;
};

enum class LossMode { ExactMixture, ResourceAdjusted };

struct LossConfig {
  double eta = 1.0;
  LossMode mode = LossMode::ExactMixture;

  /// Throws InvalidArgument unless 0 < eta <= 1.
  void validate() const;
};

enum class Alphabet { PowersOfTwo, AnyPositive };
enum class SearchStrategy { Exhaustive, Constrained };

/// Minimum repetitions per distinct multiplicity, applied to candidates whose
/// qubit count lies in (previous tier's max_qubits, max_qubits].
struct RepetitionTier {
  std::size_t max_qubits = 0;
  std::size_t min_repetitions = 1;
  friend bool operator==(const RepetitionTier&, const RepetitionTier&) = default;
};

struct SearchConfig {
  static constexpr std::uint64_t kDefaultExhaustiveLimit = 24;

  std::uint64_t n_min = 1;
  std::uint64_t n_max = 20;
  Alphabet alphabet = Alphabet::PowersOfTwo;
  std::size_t min_repetitions = 1;
  std::size_t m_max = 32;
  SearchStrategy strategy = SearchStrategy::Constrained;
  std::uint64_t exhaustive_limit = kDefaultExhaustiveLimit;
  /// When empty, a single tier {m_max, min_repetitions} is used.
  std::vector<RepetitionTier> tiers;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// The tiers actually applied, sorted and clipped to m_max.
  std::vector<RepetitionTier> effective_tiers() const;

  /// Throws InvalidArgument on an inconsistent configuration.
  void validate() const;

  /// Powers of two up to n_max with M <= 32: single repetitions up to 20
  /// qubits, at least two for 21..25 and at least three for 26..32.
  static SearchConfig staged_powers_of_two(std::uint64_t n_min, std::uint64_t n_max);
};

}  // namespace kpl
