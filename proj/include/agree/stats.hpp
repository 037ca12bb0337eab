#pragma once

#include <cstdint>
#include <span>

namespace agree {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval; z = 1.96 gives 95% coverage.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

// sqrt(p(1-p)/trials)
double binomial_sigma(double p, std::uint64_t trials);

struct ChiSquare {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
};

// Pearson test of the counts against the uniform distribution on their cells.
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace agree
