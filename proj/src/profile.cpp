#include "kpl/profile.hpp"

#include <string>

namespace kpl {

namespace {

void check_qubits(std::size_t m_count, std::size_t cap) {
  if (m_count > cap) {
    throw ResourceLimitError("profile: " + std::to_string(m_count) +
                             " qubits exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

PhaseProfile compute_profile(const MultiplicityVector& v, std::size_t max_qubits) {
  check_qubits(v.m_count(), max_qubits);
  std::vector<BigCount> counts(v.n_total() + 1);
  counts[0] = 1;
  std::uint64_t degree = 0;
  // Multiply by (1 + x^m): walk downwards so each source count is read
  // before it is overwritten.
  for (auto m : v.entries()) {
    for (std::uint64_t n = degree + 1; n-- > 0;) {
      if (!counts[n].is_zero()) counts[n + m] += counts[n];
    }
    degree += m;
  }
  return PhaseProfile(v.m_count(), std::move(counts));
}

PhaseProfile profile_kitaev(std::size_t m_count) {
  if (m_count >= 64) {
    throw ResourceLimitError("profile_kitaev: N = 2^" + std::to_string(m_count) +
                             " - 1 is too large to tabulate");
  }
  const std::uint64_t n_total = (std::uint64_t{1} << m_count) - 1;
  return PhaseProfile(m_count, std::vector<BigCount>(n_total + 1, BigCount(1)));
}

PhaseProfile profile_product(std::uint64_t n_total) {
  check_qubits(n_total, kMaxProfileQubits);
  std::vector<BigCount> counts(n_total + 1);
  counts[0] = 1;
  for (std::uint64_t n = 1; n <= n_total; ++n) {
    counts[n] = counts[n - 1] * (n_total - n + 1) / n;
  }
  return PhaseProfile(n_total, std::move(counts));
}

PhaseProfile profile_doubled(std::size_t m_count) {
  if (m_count == 0 || m_count % 2 != 0) {
    throw InvalidArgument("profile_doubled: m_count must be even and >= 2, got " +
                          std::to_string(m_count));
  }
  const std::size_t half = m_count / 2;
  if (half >= 63) throw ResourceLimitError("profile_doubled: m_count too large");
  const std::uint64_t width = std::uint64_t{1} << half;
  const std::uint64_t n_total = 2 * (width - 1);
  std::vector<BigCount> counts(n_total + 1);
  for (std::uint64_t n = 0; n < width; ++n) {
    counts[n] = n + 1;
    counts[n_total - n] = n + 1;
  }
  return PhaseProfile(m_count, std::move(counts));
}

}  // namespace kpl
