#include "kpl/bounds.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "kpl/types.hpp"

namespace kpl {

namespace {

// M with N = r (2^{M/r} - 1).
std::optional<std::size_t> repeated_shape(std::uint64_t n_total, std::uint64_t repeats) {
  if (n_total == 0 || n_total % repeats != 0) return std::nullopt;
  const std::uint64_t width = n_total / repeats + 1;
  if ((width & (width - 1)) != 0) return std::nullopt;
  return static_cast<std::size_t>(std::countr_zero(width)) * repeats;
}

[[noreturn]] void shape_error(const char* what, std::uint64_t n_total) {
  throw ShapeError(std::string(what) + ": N = " + std::to_string(n_total) +
                   " does not have the required shape");
}

}  // namespace

std::optional<std::size_t> doubled_shape(std::uint64_t n_total) {
  return repeated_shape(n_total, 2);
}
std::optional<std::size_t> tripled_shape(std::uint64_t n_total) {
  return repeated_shape(n_total, 3);
}
std::optional<std::size_t> kitaev_shape(std::uint64_t n_total) {
  return repeated_shape(n_total, 1);
}

double bound_doubled(std::uint64_t n_total) {
  if (!doubled_shape(n_total)) shape_error("bound_doubled", n_total);
  return bound_doubled_curve(static_cast<double>(n_total));
}

double bound_tripled(std::uint64_t n_total) {
  if (!tripled_shape(n_total)) shape_error("bound_tripled", n_total);
  return bound_tripled_curve(static_cast<double>(n_total));
}

double cost_kitaev_closed(std::uint64_t n_total) {
  if (!kitaev_shape(n_total)) shape_error("cost_kitaev_closed", n_total);
  return cost_kitaev_curve(static_cast<double>(n_total));
}

double bound_doubled_curve(double n) {
  return 4.0 * (std::log(n + 2.0) - std::numbers::ln2 + 3.0) / ((n + 2.0) * (n + 2.0));
}

double bound_tripled_curve(double n) {
  const double d = n + 3.0;
  return 27.0 * (n + 1.0) / (d * d * d);
}

double cost_kitaev_curve(double n) { return 2.0 / (n + 1.0); }

double cost_doubled_closed(std::size_t m_count) {
  if (m_count == 0 || m_count % 2 != 0 || m_count / 2 >= 63) {
    throw InvalidArgument("cost_doubled_closed: m_count must be even, 2..124");
  }
  const std::uint64_t width = std::uint64_t{1} << (m_count / 2);
  // With K = 2^{M/2}: sum_{n<K} (n + 1/2) = K^2 / 2, so
  //   2 - (4 / K^2) S = (4 / K^2) sum_{n<K} (n + 1/2 - sqrt(n (n+1))),
  // and n + 1/2 - sqrt(n (n+1)) = 1 / (4 (n + 1/2 + sqrt(n (n+1)))).
  double sum = 0.0;
  for (std::uint64_t n = 0; n < width; ++n) {
    const double x = static_cast<double>(n);
    sum += 0.25 / (x + 0.5 + std::sqrt(x * (x + 1.0)));
  }
  const double w2 = static_cast<double>(width) * static_cast<double>(width);
  return 4.0 * sum / w2;
}

double tripled_overlap_sum(std::size_t m_count) {
  if (m_count == 0 || m_count % 3 != 0 || m_count / 3 >= 31) {
    throw InvalidArgument("tripled_overlap_sum: m_count must be a multiple of 3, 3..90");
  }
  const std::uint64_t width = std::uint64_t{1} << (m_count / 3);
  const double k2 = static_cast<double>(width) * static_cast<double>(width);
  long double rising = 0.0L;
  for (std::uint64_t k = 1; k < width; ++k) {
    const long double x = static_cast<long double>(k);
    rising += (x + 1.0L) * std::sqrt(x * (x + 2.0L));
  }
  long double plateau = 0.0L;
  for (std::uint64_t k = 1; k < width / 2; ++k) {
    const long double x = static_cast<long double>(k);
    plateau += std::sqrt((k2 - 4.0L * x * (x - 1.0L) / 3.0L) * (k2 - 4.0L * x * (x + 1.0L) / 3.0L));
  }
  return static_cast<double>(rising + 0.75L * k2 + 1.5L * plateau);
}

double cost_tripled_closed(std::size_t m_count) {
  return 2.0 - std::ldexp(tripled_overlap_sum(m_count), 1 - static_cast<int>(m_count));
}

double lossy_unentangled_asymptote(double eta, double n_total) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InvalidArgument("unentangled asymptote needs 0 < eta < 1, got " + std::to_string(eta));
  }
  if (!(n_total > 0.0)) throw InvalidArgument("unentangled asymptote needs N > 0");
  return std::numbers::e * std::log(1.0 / eta) / n_total;
}

double lossy_general_bound(double eta, double n_total) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw InvalidArgument("general lossy bound needs 0 < eta <= 1, got " + std::to_string(eta));
  }
  if (!(n_total > 0.0)) throw InvalidArgument("general lossy bound needs N > 0");
  return (1.0 - eta) / (eta * n_total);
}

}  // namespace kpl
