#include "agree/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "agree/errors.hpp"

namespace agree {

namespace {

void require_epsilon(double epsilon, bool allow_zero) {
  const bool ok = allow_zero ? (epsilon >= 0.0 && epsilon <= 0.5) : (epsilon > 0.0 && epsilon <= 0.5);
  if (!ok) {
    throw UsageError(std::string("epsilon must lie in ") + (allow_zero ? "[0" : "(0") +
                     ", 1/2], got " + std::to_string(epsilon));
  }
}

double lower_bound_threshold(double epsilon) { return 10.0 + 2.0 * (1.0 - epsilon) / epsilon; }

// Relative slack so that e.g. eps = 0.1 accepts k = 28 despite rounding.
constexpr double kConditionSlack = 1e-9;

double normal_density(double y) { return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double trivial_agreement(std::size_t k, double epsilon) {
  require_epsilon(epsilon, true);
  return std::pow(1.0 - epsilon, static_cast<double>(k));
}

double upper_bound(double t_entropy, double epsilon, double delta) {
  require_epsilon(epsilon, true);
  if (!(t_entropy >= 0.0)) throw UsageError("upper_bound: min-entropy must be nonnegative");
  if (!(delta >= 0.0)) throw UsageError("upper_bound: delta must be nonnegative");
  if (epsilon == 0.0) return 1.0;
  return std::exp2(-t_entropy * epsilon / (1.0 - epsilon)) + 2.0 * delta;
}

bool lower_bound_condition(std::size_t k, double epsilon) {
  require_epsilon(epsilon, true);
  if (epsilon == 0.0) return false;
  const double threshold = lower_bound_threshold(epsilon);
  return static_cast<double>(k) >= threshold * (1.0 - kConditionSlack);
}

std::size_t lower_bound_minimal_k(double epsilon) {
  require_epsilon(epsilon, false);
  const double threshold = lower_bound_threshold(epsilon);
  auto k = static_cast<std::size_t>(std::ceil(threshold * (1.0 - kConditionSlack)));
  return k;
}

double lower_bound(std::size_t k, double epsilon) {
  require_epsilon(epsilon, false);
  if (!lower_bound_condition(k, epsilon)) {
    const auto minimal = lower_bound_minimal_k(epsilon);
    throw ConditionError("lower bound needs k >= 10 + 2(1-eps)/eps, i.e. k >= " +
                             std::to_string(minimal) + " at eps = " + std::to_string(epsilon),
                         minimal);
  }
  const double ek = epsilon * static_cast<double>(k);
  return 0.003 / std::sqrt(ek) * std::exp2(-ek / (1.0 - epsilon));
}

double gaussian_upper_tail(double y) { return 0.5 * std::erfc(y / std::numbers::sqrt2); }

double inverse_gaussian_tail(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw UsageError("inverse_gaussian_tail: p must lie in (0, 1/2), got " + std::to_string(p));
  }
  // Newton on log Q(y) - log p, kept inside a shrinking bracket [lo, hi].
  double lo = 0.0;
  double hi = 40.0;
  const double target = std::log(p);
  double y = std::sqrt(-2.0 * target);
  if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double q = gaussian_upper_tail(y);
    const double g = std::log(q) - target;
    if (g > 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    // d/dy log Q(y) = -phi(y)/Q(y)
    const double slope = -normal_density(y) / q;
    double next = y - g / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-14 * std::max(1.0, y) || hi - lo <= 1e-15 * std::max(1.0, y)) {
      return next;
    }
    y = next;
  }
  return y;
}

double threshold_t(std::size_t k) {
  if (k < 1) throw UsageError("threshold_t: k must be at least 1");
  return inverse_gaussian_tail(std::ldexp(1.0, -static_cast<int>(k) - 2));
}

double radius(std::size_t n, std::size_t k) {
  if (n < 1) throw UsageError("radius: n must be at least 1");
  const double nd = static_cast<double>(n);
  return nd / 2.0 + threshold_t(k) * std::sqrt(nd) / 2.0;
}

double covering_radius(std::size_t n, std::size_t k) {
  if (n < 1) throw UsageError("covering_radius: n must be at least 1");
  const double nd = static_cast<double>(n);
  return nd / 2.0 - threshold_t(k) * std::sqrt(nd) / 2.0;
}

double ball_fraction(std::size_t n, double r) {
  const double nd = static_cast<double>(n);
  if (!(r >= 0.0)) throw UsageError("ball_fraction: need r >= 0");
  if (r >= nd) return 1.0;
  const auto top = static_cast<std::size_t>(std::floor(r));
  // log-sum-exp of log C(n, i) - n log 2, anchored at the largest term.
  auto log_term = [&](std::size_t i) {
    const double id = static_cast<double>(i);
    return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) -
           nd * std::numbers::ln2;
  };
  const std::size_t peak = std::min(top, n / 2);
  const double anchor = log_term(peak);
  double sum = 0.0;
  for (std::size_t i = 0; i <= top; ++i) sum += std::exp(log_term(i) - anchor);
  return std::min(1.0, std::exp(anchor) * sum);
}

TailSandwich tail_sandwich(double y) {
  if (!(y > 0.0)) throw UsageError("tail_sandwich: y must be positive");
  const double phi = normal_density(y);
  return {y / (y * y + 1.0) * phi, phi / y};
}

double claim_bound_value(std::size_t k, double epsilon) {
  require_epsilon(epsilon, false);
  return gaussian_upper_tail(std::sqrt(epsilon / (1.0 - epsilon)) * threshold_t(k)) / 8.0;
}

double extraction_ratio(double epsilon) {
  require_epsilon(epsilon, true);
  if (epsilon == 0.0) return 1.0 / std::numbers::ln2;
  return (1.0 - epsilon) / epsilon * (-std::log1p(-epsilon) / std::numbers::ln2);
}

BoundReport bound_report(std::size_t k, double epsilon, std::optional<std::size_t> n) {
  BoundReport row;
  row.k = k;
  row.epsilon = epsilon;
  row.trivial = trivial_agreement(k, epsilon);
  row.upper = upper_bound(static_cast<double>(k), epsilon, 0.0);
  row.condition_met = lower_bound_condition(k, epsilon);
  if (row.condition_met) row.lower = lower_bound(k, epsilon);
  row.t = threshold_t(k);
  if (n) row.r = radius(*n, k);
  return row;
}

}  // namespace agree
