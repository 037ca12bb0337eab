#pragma once

#include <cstddef>
#include <optional>

namespace agree {

// Agreement probability (1 - eps)^k of the first-k-bits strategy.
double trivial_agreement(std::size_t k, double epsilon);

// Upper bound 2^{-t eps/(1-eps)} + 2 delta on Pr[f(x) = g(y)] for outputs
// delta-close to min-entropy t. eps = 0 returns 1 (no constraint).
double upper_bound(double t_entropy, double epsilon, double delta = 0.0);

// Whether k >= 10 + 2(1-eps)/eps, and the least such k.
bool lower_bound_condition(std::size_t k, double epsilon);
std::size_t lower_bound_minimal_k(double epsilon);

// Guarantee 0.003 (eps k)^{-1/2} 2^{-k eps/(1-eps)} of the affine-code
// strategy for large n. Throws ConditionError (carrying the least valid k)
// when the hypothesis fails.
double lower_bound(std::size_t k, double epsilon);

// Q(y) = Pr[Z > y] for a standard normal Z.
double gaussian_upper_tail(double y);
// y with Q(y) = p, for p in (0, 1/2).
double inverse_gaussian_tail(double p);

// Gaussian quantile with upper-tail mass 2^{-k-2}.
double threshold_t(std::size_t k);

// n/2 + t sqrt(n)/2.
double radius(std::size_t n, std::size_t k);
// n/2 - t sqrt(n)/2 = n - radius(n, k). A Hamming ball of this radius holds
// about Q(t) = 2^{-k-2} of the cube; covering uses this radius.
double covering_radius(std::size_t n, std::size_t k);

// Fraction of {0,1}^n within Hamming distance floor(r) of a fixed point.
double ball_fraction(std::size_t n, double r);

struct TailSandwich {
  double low = 0.0;
  double high = 0.0;
};

// y/(y^2+1) phi(y) <= Q(y) <= phi(y)/y for y > 0.
TailSandwich tail_sandwich(double y);

// (1/8) Q(sqrt(eps/(1-eps)) t): the limiting unique-covering probability target.
double claim_bound_value(std::size_t k, double epsilon);

// ((1-eps)/eps) log2(1/(1-eps)): how many more bits than the trivial strategy
// any protocol can extract at equal agreement probability. eps = 0 gives the
// limit 1/ln 2.
double extraction_ratio(double epsilon);

struct BoundReport {
  std::size_t k = 0;
  double epsilon = 0.0;
  double trivial = 0.0;
  double upper = 0.0;
  std::optional<double> lower;
  double t = 0.0;
  std::optional<double> r;
  bool condition_met = false;
};

BoundReport bound_report(std::size_t k, double epsilon, std::optional<std::size_t> n = std::nullopt);

}  // namespace agree
