#pragma once

#include <cstddef>
#include <cstdint>

#include "kpl/types.hpp"

namespace kpl {

/// Qubit-count cap for exact profiles. Counts are arbitrary precision, but the
/// floating-point cost evaluation needs 2^M to stay representable.
inline constexpr std::size_t kMaxProfileQubits = 1000;

/// J(n) = coefficient of x^n in prod_i (1 + x^{m_i}), built by multiplying in
/// one factor per entry. Independent of entry order.
PhaseProfile compute_profile(const MultiplicityVector& v,
                             std::size_t max_qubits = kMaxProfileQubits);

/// Standard Kitaev vector (1, 2, ..., 2^{M-1}): J(n) = 1 for n = 0..2^M - 1.
PhaseProfile profile_kitaev(std::size_t m_count);

/// All-ones vector of length N: J(n) = C(N, n).
PhaseProfile profile_product(std::uint64_t n_total);

/// Each power of two repeated twice, M/2 distinct powers. J(n) = n + 1 on the
/// lower half and mirrored on the upper half. Throws InvalidArgument for odd
/// or zero m_count.
PhaseProfile profile_doubled(std::size_t m_count);

}  // namespace kpl
