#include "agree/fourier.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <string>

#include "agree/errors.hpp"

namespace agree {

namespace {

void require_dimension(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw ResourceError(std::string(what) + ": dimension " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap));
  }
}

// Unnormalized in-place Walsh-Hadamard butterfly.
void butterfly(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

// pow_table[d] = base^d for d = 0..n.
std::vector<double> powers(double base, std::size_t n) {
  std::vector<double> out(n + 1, 1.0);
  for (std::size_t d = 1; d <= n; ++d) out[d] = out[d - 1] * base;
  return out;
}

std::size_t map_dimension(std::size_t entries, const char* what) {
  if (entries == 0 || !std::has_single_bit(entries)) {
    throw UsageError(std::string(what) + ": table size must be a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(entries));
}

}  // namespace

TruthTable::TruthTable(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  require_dimension(n, kMaxTableDimension, "TruthTable");
  if (values_.size() != (std::size_t{1} << n)) throw UsageError("TruthTable: expected 2^n values");
  for (double v : values_) {
    if (!std::isfinite(v)) throw UsageError("TruthTable: values must be finite");
  }
}

TruthTable TruthTable::from_function(std::size_t n, const std::function<double(std::uint32_t)>& f) {
  require_dimension(n, kMaxTableDimension, "TruthTable");
  std::vector<double> values(std::size_t{1} << n);
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = f(static_cast<std::uint32_t>(x));
  return TruthTable(n, std::move(values));
}

double TruthTable::mean() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

FourierSpectrum::FourierSpectrum(std::size_t n, std::vector<double> coefficients)
    : n_(n), coefficients_(std::move(coefficients)) {
  require_dimension(n, kMaxTableDimension, "FourierSpectrum");
  if (coefficients_.size() != (std::size_t{1} << n)) {
    throw UsageError("FourierSpectrum: expected 2^n coefficients");
  }
}

FourierSpectrum wht(const TruthTable& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  butterfly(v);
  const double scale = std::ldexp(1.0, -static_cast<int>(f.n()));
  for (double& c : v) c *= scale;
  return FourierSpectrum(f.n(), std::move(v));
}

TruthTable inverse_wht(const FourierSpectrum& spectrum) {
  std::vector<double> v(spectrum.coefficients().begin(), spectrum.coefficients().end());
  butterfly(v);
  return TruthTable(spectrum.n(), std::move(v));
}

TruthTable noise_operator(const TruthTable& f, double rho) {
  if (!(std::abs(rho) <= 1.0)) throw UsageError("noise_operator: |rho| must be at most 1");
  const auto spectrum = wht(f);
  const auto scale = powers(rho, f.n());
  std::vector<double> damped(spectrum.coefficients().begin(), spectrum.coefficients().end());
  for (std::size_t s = 0; s < damped.size(); ++s) {
    damped[s] *= scale[static_cast<std::size_t>(std::popcount(s))];
  }
  return inverse_wht(FourierSpectrum(f.n(), std::move(damped)));
}

double correlated_expectation(const TruthTable& f, const TruthTable& g, const NoiseParam& noise) {
  if (f.n() != g.n()) throw UsageError("correlated_expectation: dimension mismatch");
  const auto fs = wht(f);
  const auto gs = wht(g);
  const auto scale = powers(noise.theta(), f.n());
  double sum = 0.0;
  for (std::size_t s = 0; s < fs.coefficients().size(); ++s) {
    sum += fs[s] * gs[s] * scale[static_cast<std::size_t>(std::popcount(s))];
  }
  return sum;
}

double correlated_expectation_direct(const TruthTable& f, const TruthTable& g,
                                     const NoiseParam& noise) {
  if (f.n() != g.n()) throw UsageError("correlated_expectation_direct: dimension mismatch");
  require_dimension(f.n(), 12, "correlated_expectation_direct");
  const std::size_t n = f.n();
  const double eps = noise.epsilon();
  // weight[d] = 2^{-n} eps^d (1-eps)^{n-d}
  std::vector<double> weight(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    weight[d] = std::ldexp(std::pow(eps, static_cast<double>(d)) *
                               std::pow(1.0 - eps, static_cast<double>(n - d)),
                           -static_cast<int>(n));
  }
  const std::size_t size = std::size_t{1} << n;
  double sum = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < size; ++y) {
      row += weight[static_cast<std::size_t>(std::popcount(x ^ y))] * g[y];
    }
    sum += f[x] * row;
  }
  return sum;
}

InequalitySides check_geometric(const TruthTable& f, const TruthTable& g, const NoiseParam& noise) {
  const double fg = correlated_expectation(f, g, noise);
  const double ff = correlated_expectation(f, f, noise);
  const double gg = correlated_expectation(g, g, noise);
  // ff, gg are sums of squares times theta^{|S|} >= 0; clamp rounding.
  return {fg, std::sqrt(std::max(0.0, ff) * std::max(0.0, gg))};
}

InequalitySides check_boundary(const TruthTable& h, const NoiseParam& noise) {
  for (double v : h.values()) {
    if (v != 0.0 && v != 1.0) throw UsageError("check_boundary: table must be 0/1-valued");
  }
  const double lhs = correlated_expectation(h, h, noise);
  const double rhs = std::pow(h.mean(), 1.0 / (1.0 - noise.epsilon()));
  return {lhs, rhs};
}

InequalitySides check_hypercontractive(const TruthTable& f, double rho) {
  if (!(std::abs(rho) <= 1.0)) throw UsageError("check_hypercontractive: |rho| must be at most 1");
  for (double v : f.values()) {
    if (v < 0.0) throw UsageError("check_hypercontractive: table must be nonnegative");
  }
  const auto smoothed = noise_operator(f, rho);
  double second_moment = 0.0;
  for (double v : smoothed.values()) second_moment += v * v;
  second_moment /= static_cast<double>(smoothed.values().size());

  const double p = 1.0 + rho * rho;
  double p_moment = 0.0;
  for (double v : f.values()) p_moment += std::pow(v, p);
  p_moment /= static_cast<double>(f.values().size());
  return {std::sqrt(second_moment), std::pow(p_moment, 1.0 / p)};
}

std::vector<double> agreement_by_class(std::span<const std::uint32_t> f_map,
                                       std::span<const std::uint32_t> g_map, std::size_t k,
                                       const NoiseParam& noise) {
  if (f_map.size() != g_map.size()) throw UsageError("agreement_by_class: table size mismatch");
  const std::size_t n = map_dimension(f_map.size(), "agreement_by_class");
  require_dimension(n, 12, "exact_agreement_probability");
  if (k > 24) throw ResourceError("agreement_by_class: k exceeds 24");
  const std::size_t classes = std::size_t{1} << k;
  for (std::size_t x = 0; x < f_map.size(); ++x) {
    if (f_map[x] >= classes || g_map[x] >= classes) {
      throw UsageError("agreement_by_class: output outside {0,1}^k");
    }
  }

  const auto scale = powers(noise.theta(), n);
  std::vector<double> result(classes, 0.0);
  std::vector<double> fz(f_map.size());
  std::vector<double> gz(g_map.size());
  const double norm = std::ldexp(1.0, -2 * static_cast<int>(n));
  std::vector<bool> present(classes, false);
  for (auto z : f_map) present[z] = true;
  for (std::size_t z = 0; z < classes; ++z) {
    if (!present[z]) continue;
    for (std::size_t x = 0; x < f_map.size(); ++x) {
      fz[x] = f_map[x] == z ? 1.0 : 0.0;
      gz[x] = g_map[x] == z ? 1.0 : 0.0;
    }
    butterfly(fz);
    butterfly(gz);
    double sum = 0.0;
    for (std::size_t s = 0; s < fz.size(); ++s) {
      sum += fz[s] * gz[s] * scale[static_cast<std::size_t>(std::popcount(s))];
    }
    result[z] = sum * norm;
  }
  return result;
}

double exact_agreement_probability(std::span<const std::uint32_t> f_map,
                                   std::span<const std::uint32_t> g_map, std::size_t k,
                                   const NoiseParam& noise) {
  double total = 0.0;
  for (double p : agreement_by_class(f_map, g_map, k, noise)) total += p;
  return total;
}

double exact_agreement_probability_direct(std::span<const std::uint32_t> f_map,
                                          std::span<const std::uint32_t> g_map,
                                          const NoiseParam& noise) {
  if (f_map.size() != g_map.size()) throw UsageError("agreement: table size mismatch");
  const std::size_t n = map_dimension(f_map.size(), "exact_agreement_probability_direct");
  require_dimension(n, 8, "exact_agreement_probability_direct");
  const double eps = noise.epsilon();
  std::vector<double> weight(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    weight[d] = std::ldexp(std::pow(eps, static_cast<double>(d)) *
                               std::pow(1.0 - eps, static_cast<double>(n - d)),
                           -static_cast<int>(n));
  }
  double total = 0.0;
  for (std::size_t x = 0; x < f_map.size(); ++x) {
    for (std::size_t y = 0; y < g_map.size(); ++y) {
      if (f_map[x] == g_map[y]) total += weight[static_cast<std::size_t>(std::popcount(x ^ y))];
    }
  }
  return total;
}

}  // namespace agree
