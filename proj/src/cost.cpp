#include "kpl/cost.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpl/profile.hpp"

namespace kpl {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double to_double(const BigCount& c) { return c.convert_to<double>(); }

// sqrt(a * b), exact product while it fits in 128 bits.
double sqrt_product(const BigCount& a, const BigCount& b) {
  if (a.is_zero() || b.is_zero()) return 0.0;
  if (boost::multiprecision::msb(a) + boost::multiprecision::msb(b) < 126) {
    const BigCount product = a * b;
    return static_cast<double>(std::sqrt(product.convert_to<long double>()));
  }
  return std::exp(0.5 * (std::log(to_double(a)) + std::log(to_double(b))));
}

}  // namespace

double phase_cost(double delta) {
  const double s = std::sin(0.5 * delta);
  return 4.0 * s * s;
}

SeedOffDiagonals::SeedOffDiagonals(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(std::fabs(values_[i]) <= 1.0)) {
      throw InvalidArgument("seed off-diagonal " + std::to_string(i) + " = " +
                            std::to_string(values_[i]) +
                            " violates positivity (|Pi_{n,n+1}| <= 1)");
    }
  }
}

SeedOffDiagonals SeedOffDiagonals::ones(std::uint64_t n_total) {
  return SeedOffDiagonals(std::vector<double>(n_total, 1.0));
}

double cost_with_seed(const PhaseProfile& profile, const SeedOffDiagonals& seed) {
  if (seed.size() != profile.n_total()) {
    throw InvalidArgument("cost_with_seed: seed has " + std::to_string(seed.size()) +
                          " off-diagonals, profile needs N = " +
                          std::to_string(profile.n_total()));
  }
  const auto& counts = profile.counts();
  CompensatedSum sum;
  for (std::size_t n = 0; n < seed.size(); ++n) {
    sum.add(seed.values()[n] * sqrt_product(counts[n], counts[n + 1]));
  }
  return 2.0 - std::ldexp(sum.value(), 1 - static_cast<int>(profile.m_count()));
}

double optimal_cost(const PhaseProfile& profile) {
  const auto& counts = profile.counts();
  std::vector<double> roots(counts.size());
  for (std::size_t n = 0; n < counts.size(); ++n) roots[n] = std::sqrt(to_double(counts[n]));

  CompensatedSum sum;
  sum.add(to_double(counts.front()));
  sum.add(to_double(counts.back()));
  for (std::size_t n = 0; n + 1 < counts.size(); ++n) {
    const double denom = roots[n] + roots[n + 1];
    if (denom == 0.0) continue;
    const double t = to_double(BigCount(counts[n] - counts[n + 1])) / denom;
    sum.add(t * t);
  }
  return std::ldexp(sum.value(), -static_cast<int>(profile.m_count()));
}

double optimum_cost(std::uint64_t n_total) {
  return optimum_cost_real(static_cast<double>(n_total));
}

double optimum_cost_real(double n_total) {
  // 2 (1 - cos x) = 4 sin^2(x / 2), which keeps full precision for large N.
  return phase_cost(std::numbers::pi / (n_total + 2.0));
}

CostReport make_report(const MultiplicityVector& v) {
  CostReport report;
  report.vector = canonicalize(v);
  report.n_total = v.n_total();
  report.m_count = v.m_count();
  report.cost = optimal_cost(compute_profile(report.vector));
  report.optimum_ratio = report.cost / optimum_cost(report.n_total);
  return report;
}

}  // namespace kpl
