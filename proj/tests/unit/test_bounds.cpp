#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kpl/bounds.hpp"
#include "kpl/cost.hpp"
#include "kpl/profile.hpp"

using namespace kpl;
using doctest::Approx;

namespace {

long double overlap_sum_direct(const PhaseProfile& p) {
  long double s = 0.0L;
  for (std::size_t n = 0; n + 1 < p.counts().size(); ++n) {
    s += std::sqrt(static_cast<long double>(p[n]) * static_cast<long double>(p[n + 1]));
  }
  return s;
}

}  // namespace

TEST_CASE("shape detection") {
  CHECK(doubled_shape(6) == 4u);
  CHECK(doubled_shape(2) == 2u);
  CHECK(doubled_shape(30) == 8u);
  CHECK_FALSE(doubled_shape(7).has_value());
  CHECK_FALSE(doubled_shape(0).has_value());
  CHECK(tripled_shape(3) == 3u);
  CHECK(tripled_shape(21) == 9u);
  CHECK_FALSE(tripled_shape(6).has_value());
  CHECK(kitaev_shape(1) == 1u);
  CHECK(kitaev_shape(1023) == 10u);
  CHECK_FALSE(kitaev_shape(6).has_value());
}

TEST_CASE("doubled bound") {
  CHECK(bound_doubled(6) == Approx(4 * (std::log(8.0) - std::log(2.0) + 3) / 64).epsilon(1e-14));
  CHECK(bound_doubled(6) == Approx(0.274143).epsilon(1e-6));
  CHECK(bound_doubled(2) == Approx(0.923287).epsilon(1e-6));
  CHECK(optimal_cost(compute_profile({1, 1})) <= bound_doubled(2));
  // 4 (ln 16 + 3) / 1024 is 0.0225492; the value is checked against the formula.
  CHECK(bound_doubled(30) == Approx(4 * (std::log(16.0) + 3) / 1024).epsilon(1e-14));
  CHECK_THROWS_AS(bound_doubled(7), ShapeError);
}

TEST_CASE("tripled bound") {
  CHECK(bound_tripled(3) == Approx(0.5).epsilon(1e-15));
  CHECK(optimal_cost(compute_profile({1, 1, 1})) <= bound_tripled(3));
  CHECK(bound_tripled(9) == Approx(270.0 / 1728).epsilon(1e-15));
  CHECK(bound_tripled(21) == Approx(27.0 * 22 / 13824).epsilon(1e-15));
  CHECK(bound_tripled(21) == Approx(0.042969).epsilon(1e-5));
  CHECK_THROWS_AS(bound_tripled(4), ShapeError);
}

TEST_CASE("standard Kitaev closed form") {
  CHECK(cost_kitaev_closed(7) == 0.25);
  CHECK(cost_kitaev_closed(1) == 1.0);
  CHECK(cost_kitaev_closed(1023) == 2.0 / 1024);
  CHECK_THROWS_AS(cost_kitaev_closed(8), ShapeError);
}

TEST_CASE("curves pass through the valid points") {
  CHECK(bound_doubled_curve(30.0) == bound_doubled(30));
  CHECK(bound_tripled_curve(21.0) == bound_tripled(21));
  CHECK(cost_kitaev_curve(7.0) == cost_kitaev_closed(7));
}

TEST_CASE("doubled closed sum agrees with the profile") {
  for (std::size_t m = 2; m <= 30; m += 2) {
    const double direct = optimal_cost(compute_profile(kitaev_vector(m / 2, 2)));
    CHECK(cost_doubled_closed(m) == Approx(direct).epsilon(1e-10));
  }
  CHECK(cost_doubled_closed(2) == Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("tripled overlap sum agrees with brute force") {
  for (std::size_t m = 3; m <= 24; m += 3) {
    const auto p = compute_profile(kitaev_vector(m / 3, 3));
    const long double direct = overlap_sum_direct(p);
    CHECK(static_cast<double>(tripled_overlap_sum(m)) ==
          Approx(static_cast<double>(direct)).epsilon(1e-13));
    CHECK(cost_tripled_closed(m) == Approx(optimal_cost(p)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(tripled_overlap_sum(4), InvalidArgument);
  CHECK_THROWS_AS(tripled_overlap_sum(0), InvalidArgument);
}

TEST_CASE("bounds dominate the family costs") {
  for (std::size_t m = 2; m <= 24; m += 2) {
    const auto v = kitaev_vector(m / 2, 2);
    CHECK(optimal_cost(compute_profile(v)) <= bound_doubled(v.n_total()));
  }
  for (std::size_t m = 3; m <= 24; m += 3) {
    const auto v = kitaev_vector(m / 3, 3);
    CHECK(optimal_cost(compute_profile(v)) <= bound_tripled(v.n_total()));
  }
}

TEST_CASE("lossy reference curves") {
  CHECK(lossy_unentangled_asymptote(1 / std::numbers::e, std::numbers::e) ==
        Approx(1.0).epsilon(1e-15));
  CHECK(lossy_unentangled_asymptote(0.9, 100) == Approx(std::numbers::e * std::log(10.0 / 9) / 100));
  CHECK(lossy_unentangled_asymptote(0.9, 100) == Approx(0.0028640).epsilon(1e-4));
  CHECK(lossy_unentangled_asymptote(0.5, 1000) == Approx(0.0018841).epsilon(1e-4));
  CHECK_THROWS_AS(lossy_unentangled_asymptote(1.0, 10), InvalidArgument);
  CHECK_THROWS_AS(lossy_unentangled_asymptote(0.5, 0), InvalidArgument);
  CHECK(lossy_general_bound(0.5, 1) == 1.0);
  CHECK(lossy_general_bound(0.9, 100) == Approx(1.0 / 900).epsilon(1e-14));
  CHECK(lossy_general_bound(1.0, 37) == 0.0);
  CHECK_THROWS_AS(lossy_general_bound(0.0, 10), InvalidArgument);
  // Only for moderate loss; at eta = 0.1 the general bound is the larger one.
  for (double eta : {0.5, 0.9, 0.99}) {
    CHECK(lossy_unentangled_asymptote(eta, 50) > lossy_general_bound(eta, 50));
  }
}
