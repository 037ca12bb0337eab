#pragma once

#include <cstddef>
#include <utility>

#include "agree/bitstring.hpp"
#include "agree/rng.hpp"

namespace agree {

// Crossover probability eps of the binary symmetric source, with the derived
// correlation rho = sqrt(1 - 2 eps) and theta = rho^2 = 1 - 2 eps.
class NoiseParam {
 public:
  // Throws UsageError unless 0 <= eps <= 1/2.
  explicit NoiseParam(double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  double rho() const noexcept { return rho_; }
  double theta() const noexcept { return theta_; }

 private:
  double epsilon_;
  double rho_;
  double theta_;
};

BitString uniform_bits(std::size_t n, Stream& rng);

// Each bit flipped independently with probability eps.
BitString flip_channel(const BitString& x, const NoiseParam& noise, Stream& rng);

// (x, y) with x uniform and y = x through the eps-channel: every pair x_i y_i
// is 00/11 with probability (1-eps)/2 and 01/10 with probability eps/2.
std::pair<BitString, BitString> sample_pair(std::size_t n, const NoiseParam& noise, Stream& rng);

}  // namespace agree
