#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "agree/source.hpp"

namespace agree {

inline constexpr std::size_t kMaxTableDimension = 20;

// Real-valued function on {0,1}^n. Entry x holds f at the point whose bit i
// is bit i of x.
class TruthTable {
 public:
  TruthTable(std::size_t n, std::vector<double> values);
  static TruthTable from_function(std::size_t n, const std::function<double(std::uint32_t)>& f);

  std::size_t n() const noexcept { return n_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t x) const { return values_[x]; }
  double mean() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Coefficient S (a bit mask of the subset) is E_x[f(x) chi_S(x)] with
// chi_S(x) = (-1)^{|S & x|}.
class FourierSpectrum {
 public:
  FourierSpectrum(std::size_t n, std::vector<double> coefficients);

  std::size_t n() const noexcept { return n_; }
  std::span<const double> coefficients() const noexcept { return coefficients_; }
  double operator[](std::size_t s) const { return coefficients_[s]; }

 private:
  std::size_t n_;
  std::vector<double> coefficients_;
};

FourierSpectrum wht(const TruthTable& f);
TruthTable inverse_wht(const FourierSpectrum& spectrum);

// (T_rho f) = sum_S f_S rho^{|S|} chi_S.
TruthTable noise_operator(const TruthTable& f, double rho);

// E_{(x,y)_eps}[f(x) g(y)] through the spectrum: sum_S f_S g_S theta^{|S|}.
double correlated_expectation(const TruthTable& f, const TruthTable& g, const NoiseParam& noise);
// Same quantity as a direct double sum over (x, y); O(4^n), n <= 12.
double correlated_expectation_direct(const TruthTable& f, const TruthTable& g,
                                     const NoiseParam& noise);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double tolerance = 1e-10) const { return lhs <= rhs + tolerance; }
};

// E[f(x)g(y)] <= sqrt(E[f(x)f(y)] E[g(x)g(y)]).
InequalitySides check_geometric(const TruthTable& f, const TruthTable& g, const NoiseParam& noise);
// E[h(x)h(y)] <= E[h]^{1/(1-eps)} for 0/1-valued h.
InequalitySides check_boundary(const TruthTable& h, const NoiseParam& noise);
// E[(T_rho f)^2]^{1/2} <= E[f^{1+rho^2}]^{1/(1+rho^2)} for f >= 0.
InequalitySides check_hypercontractive(const TruthTable& f, double rho);

// Pr[f(x) = z and g(y) = z] for every z in {0,1}^k, via one transform per
// output class. Tables map each of the 2^n points to an output in [0, 2^k).
std::vector<double> agreement_by_class(std::span<const std::uint32_t> f_map,
                                       std::span<const std::uint32_t> g_map, std::size_t k,
                                       const NoiseParam& noise);

// Pr[f(x) = g(y)] under (x,y)_eps. Spectral path, n <= 12.
double exact_agreement_probability(std::span<const std::uint32_t> f_map,
                                   std::span<const std::uint32_t> g_map, std::size_t k,
                                   const NoiseParam& noise);
// Direct pair sum, n <= 8.
double exact_agreement_probability_direct(std::span<const std::uint32_t> f_map,
                                          std::span<const std::uint32_t> g_map,
                                          const NoiseParam& noise);

}  // namespace agree
