#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace kpl {

/// M such that N = 2(2^{M/2} - 1), if N has that shape.
std::optional<std::size_t> doubled_shape(std::uint64_t n_total);
/// M such that N = 3(2^{M/3} - 1), if N has that shape.
std::optional<std::size_t> tripled_shape(std::uint64_t n_total);
/// M such that N = 2^M - 1, if N has that shape.
std::optional<std::size_t> kitaev_shape(std::uint64_t n_total);

/// Upper bound 4 (ln(N+2) - ln 2 + 3) / (N+2)^2 on the cost of the doubled
/// Kitaev vector. Throws ShapeError unless N = 2(2^{M/2} - 1).
double bound_doubled(std::uint64_t n_total);

/// Upper bound 27 (N+1) / (N+3)^3 on the cost of the tripled Kitaev vector.
/// Throws ShapeError unless N = 3(2^{M/3} - 1).
double bound_tripled(std::uint64_t n_total);

/// 2 / (N + 1). Throws ShapeError unless N = 2^M - 1.
double cost_kitaev_closed(std::uint64_t n_total);

// Plotting-only evaluations of the same formulas at arbitrary real N. These
// are curves through the valid points, not bounds in between them.
double bound_doubled_curve(double n_total);
double bound_tripled_curve(double n_total);
double cost_kitaev_curve(double n_total);

/// Cost of the doubled vector with M qubits from the closed sum
/// 2 - 2^{2-M} sum_{n<2^{M/2}} sqrt(n (n+1)).
double cost_doubled_closed(std::size_t m_count);

/**
 * S = sum_{n<N} sqrt(J(n) J(n+1)) for the tripled vector with M qubits,
 * evaluated as
 *
 *   sum_{k=1}^{K-1} (k+1) sqrt(k (k+2)) + (3/4) K^2
 *     + (3/2) sum_{k=1}^{K/2-1} sqrt((K^2 - 4k(k-1)/3) (K^2 - 4k(k+1)/3)),
 *
 * with K = 2^{M/3}. Throws InvalidArgument unless M is a positive multiple
 * of 3.
 */
double tripled_overlap_sum(std::size_t m_count);

/// 2 - 2^{1-M} tripled_overlap_sum(M).
double cost_tripled_closed(std::size_t m_count);

/// e ln(1/eta) / N: asymptotic cost of unentangled strategies under loss.
/// Requires 0 < eta < 1 and N > 0.
double lossy_unentangled_asymptote(double eta, double n_total);

/// (1 - eta) / (eta N): bound for arbitrary (entangled) inputs under loss.
/// Requires 0 < eta <= 1 and N > 0.
double lossy_general_bound(double eta, double n_total);

}  // namespace kpl
