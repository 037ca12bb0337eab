#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "agree/bounds.hpp"
#include "agree/errors.hpp"
#include "agree/stats.hpp"

using namespace agree;

namespace {

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// Values below were computed with mpmath at 40 digits.
constexpr double kT10 = 3.4871041041;
constexpr double kT12 = 3.8419306855;
constexpr double kT16 = 4.4753284247;

}  // namespace

TEST_CASE("trivial agreement") {
  CHECK(trivial_agreement(7, 0.0) == 1.0);
  CHECK(close(trivial_agreement(10, 0.1), 0.3486784401, 1e-12));
  CHECK(trivial_agreement(20, 0.1) < std::pow(2.0, -1.44 * 20 * 0.1));
}

TEST_CASE("upper bound") {
  CHECK(close(upper_bound(16, 0.25), 0.024803141437, 1e-10));
  CHECK(std::abs(upper_bound(16, 0.25, 0.25) - upper_bound(16, 0.25) - 0.5) < 1e-15);
  for (double eps : {0.05, 0.1, 0.2, 0.5}) CHECK(upper_bound(1 / eps, eps) <= 0.5 + 1e-15);
  CHECK(upper_bound(10, 0.0) == 1.0);
  CHECK_THROWS_AS(upper_bound(10, 0.25, -0.1), UsageError);
}

TEST_CASE("lower bound and its hypothesis") {
  CHECK(lower_bound_condition(16, 0.25));
  CHECK_FALSE(lower_bound_condition(15, 0.25));
  CHECK(lower_bound_minimal_k(0.25) == 16);
  CHECK(lower_bound_minimal_k(0.1) == 28);
  CHECK(lower_bound_condition(28, 0.1));
  CHECK(close(lower_bound(16, 0.25), 3.7204712156e-5, 1e-9));
  try {
    lower_bound(12, 0.25);
    FAIL("expected ConditionError");
  } catch (const ConditionError& e) {
    CHECK(e.minimal_k() == 16);
  }
  CHECK_THROWS_AS(lower_bound(100, 0.0), UsageError);
  CHECK_THROWS_AS(ball_fraction(10, -1.0), UsageError);
}

TEST_CASE("gaussian tail and its inverse") {
  CHECK(gaussian_upper_tail(0.0) == 0.5);
  CHECK(close(gaussian_upper_tail(1.0), 0.15865525393, 1e-10));
  CHECK(close(gaussian_upper_tail(3.0), 1.3498980316e-3, 1e-10));
  CHECK(std::abs(inverse_gaussian_tail(gaussian_upper_tail(3.0)) - 3.0) < 1e-9);
  CHECK(close(inverse_gaussian_tail(std::ldexp(1.0, -12)), kT10, 1e-10));

  double previous = gaussian_upper_tail(-5.0);
  for (double y = -4.9; y < 12; y += 0.1) {
    const double q = gaussian_upper_tail(y);
    CHECK(q < previous);
    previous = q;
  }
  for (int e = 2; e <= 66; ++e) {
    const double p = std::ldexp(1.0, -e);
    CHECK(std::abs(gaussian_upper_tail(inverse_gaussian_tail(p)) - p) <= 1e-9 * p);
  }
  for (double p = 0.01; p <= 0.49; p += 0.02) {
    CHECK(std::abs(gaussian_upper_tail(inverse_gaussian_tail(p)) - p) <= 1e-9 * p);
  }
  CHECK_THROWS_AS(inverse_gaussian_tail(0.5), UsageError);
  CHECK_THROWS_AS(inverse_gaussian_tail(0.0), UsageError);
}

TEST_CASE("threshold t") {
  CHECK(close(threshold_t(10), kT10, 1e-10));
  CHECK(close(threshold_t(12), kT12, 1e-10));
  CHECK(close(threshold_t(16), kT16, 1e-10));
  for (std::size_t k = 10; k <= 64; ++k) {
    const double t = threshold_t(k);
    CHECK(t >= 3.0);
    CHECK(t >= std::sqrt(k * std::log(2.0)));
    CHECK(t <= std::sqrt(2.0 * k));
  }
}

TEST_CASE("radius") {
  CHECK(close(radius(1024, 16), 583.60525479, 1e-10));
  for (std::size_t n : {64u, 512u, 4096u}) {
    for (std::size_t k : {4u, 12u, 20u}) {
      CHECK(std::abs(radius(n, k) - n / 2.0 - threshold_t(k) * std::sqrt(double(n)) / 2) < 1e-9);
      CHECK(std::abs(covering_radius(n, k) - (n - radius(n, k))) < 1e-9);
      const double t = threshold_t(k);
      if (n > t * t) CHECK(radius(n, k) < n);
    }
  }
  CHECK(close(covering_radius(4096, 16), 1904.7895, 1e-7));
}

TEST_CASE("ball fraction") {
  CHECK(ball_fraction(12, 12) == 1.0);
  CHECK(ball_fraction(12, 40) == 1.0);
  CHECK(close(ball_fraction(12, 0), std::ldexp(1.0, -12), 1e-12));
  CHECK(close(ball_fraction(10, 2.7), 56.0 / 1024, 1e-12));

  // Mass of the covering ball tracks Q(t) = 2^{-k-2}.
  const double covering = ball_fraction(4096, covering_radius(4096, 16));
  CHECK(close(covering, 0.4753415799 * std::ldexp(1.0, -17), 1e-8));
  CHECK(covering >= 0.5 * std::ldexp(1.0, -18));
  CHECK(covering <= 2.0 * std::ldexp(1.0, -18));
  CHECK(close(ball_fraction(4096, radius(4096, 16)), 0.99999637, 1e-7));
}

TEST_CASE("tail sandwich") {
  const auto one = tail_sandwich(1.0);
  CHECK(close(one.low, 0.12098536226, 1e-10));
  CHECK(close(one.high, 0.24197072452, 1e-10));
  for (double y : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0}) {
    const auto s = tail_sandwich(y);
    const double q = gaussian_upper_tail(y);
    CHECK(s.low <= q);
    CHECK(q <= s.high);
  }
  const auto ten = tail_sandwich(10.0);
  CHECK(ten.high / ten.low < 1.02);
  CHECK_THROWS_AS(tail_sandwich(0.0), UsageError);
}

TEST_CASE("claim bound value") {
  CHECK(close(claim_bound_value(16, 0.25), 6.106834747e-4, 1e-9));
  CHECK(std::abs(claim_bound_value(16, 1e-12) - 1.0 / 16) < 1e-6);
  for (std::size_t k = 4; k <= 64; ++k) {
    for (double eps = 0.02; eps <= 0.5; eps += 0.02) {
      if (!lower_bound_condition(k, eps)) continue;
      const double claim = claim_bound_value(k, eps);
      CHECK(lower_bound(k, eps) <= claim);
      CHECK(claim <= upper_bound(static_cast<double>(k), eps));
    }
  }
}

TEST_CASE("extraction ratio") {
  CHECK(extraction_ratio(0.5) == 1.0);
  CHECK(close(extraction_ratio(0.05), 1.4060110474, 1e-10));
  CHECK(close(extraction_ratio(0.25), 1.2451124978, 1e-10));
  CHECK(close(extraction_ratio(1e-6), 1.4426943195, 1e-10));
  CHECK(close(extraction_ratio(0.0), 1.0 / std::log(2.0), 1e-15));
  double previous = extraction_ratio(0.001);
  for (double eps = 0.002; eps <= 0.5; eps += 0.001) {
    const double r = extraction_ratio(eps);
    CHECK(r < previous);
    CHECK(r > 1.0 - 1e-15);
    CHECK(r < 1.0 / std::log(2.0));
    previous = r;
  }
}

TEST_CASE("bound report rows") {
  const auto row = bound_report(16, 0.25, 1024);
  CHECK(row.condition_met);
  REQUIRE(row.lower);
  CHECK(*row.lower <= row.upper);
  REQUIRE(row.r);
  CHECK(close(*row.r, 583.60525479, 1e-10));
  const auto early = bound_report(12, 0.25);
  CHECK_FALSE(early.condition_met);
  CHECK_FALSE(early.lower);
  CHECK_FALSE(early.r);
  for (std::size_t k : {8u, 12u, 16u, 20u, 24u}) {
    for (double eps : {0.05, 0.1, 0.25, 0.4, 0.5}) {
      const auto b = bound_report(k, eps);
      CHECK(b.lower.has_value() == b.condition_met);
      if (b.lower) CHECK(*b.lower <= b.upper);
    }
  }
}

TEST_CASE("wilson interval") {
  const auto ci = wilson_interval(50, 100);
  CHECK(close(ci.low, 0.4038315, 1e-6));
  CHECK(close(ci.high, 0.5961685, 1e-6));
  const auto none = wilson_interval(0, 1000);
  CHECK(none.low == 0.0);
  CHECK(none.high > 0.0);
  const auto all = wilson_interval(1000, 1000);
  CHECK(all.high == 1.0);
  for (std::uint64_t s = 0; s <= 40; ++s) {
    const auto c = wilson_interval(s, 40);
    CHECK(c.low <= s / 40.0);
    CHECK(s / 40.0 <= c.high);
  }
  CHECK(binomial_sigma(0.5, 100) == 0.05);
}

TEST_CASE("chi square against uniform") {
  const std::vector<std::uint64_t> flat{100, 100, 100, 100};
  const auto f = chi_square_uniform(flat);
  CHECK(f.statistic == 0.0);
  CHECK(f.degrees_of_freedom == 3.0);
  CHECK(f.p_value == 1.0);
  // statistic 6 on 3 degrees of freedom; p from scipy.stats.chi2.sf.
  const std::vector<std::uint64_t> skew{120, 100, 90, 90};
  const auto s = chi_square_uniform(skew);
  CHECK(close(s.statistic, 6.0, 1e-12));
  CHECK(close(s.p_value, 0.11161022509471268, 1e-9));
}
