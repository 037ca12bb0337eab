#include "agree/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>

#include "agree/errors.hpp"

namespace agree {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw UsageError("wilson_interval: zero trials");
  if (successes > trials) throw UsageError("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Clamp so the interval always contains p despite rounding at p = 0 or 1.
  return {std::min(p, std::max(0.0, centre - half)), std::max(p, std::min(1.0, centre + half))};
}

double binomial_sigma(double p, std::uint64_t trials) {
  if (trials == 0) throw UsageError("binomial_sigma: zero trials");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw UsageError("chi_square_uniform: need at least two cells");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total == 0.0) throw UsageError("chi_square_uniform: no observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return {stat, dof, boost::math::gamma_q(dof / 2.0, stat / 2.0)};
}

}  // namespace agree
