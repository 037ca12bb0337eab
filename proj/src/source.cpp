#include "agree/source.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "agree/errors.hpp"

namespace agree {

NoiseParam::NoiseParam(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
    throw UsageError("noise epsilon must lie in [0, 1/2], got " + std::to_string(epsilon));
  }
  theta_ = 1.0 - 2.0 * epsilon;
  rho_ = std::sqrt(theta_);
}

BitString uniform_bits(std::size_t n, Stream& rng) {
  std::vector<std::uint64_t> words(words_for_bits(n));
  for (auto& w : words) w = rng.next();
  if (!words.empty()) words.back() &= tail_mask(n);
  return BitString::from_words(n, words);
}

BitString flip_channel(const BitString& x, const NoiseParam& noise, Stream& rng) {
  const std::size_t n = x.size();
  std::vector<std::uint64_t> words(x.words().begin(), x.words().end());
  for (auto& w : words) w ^= rng.bernoulli_word(noise.epsilon());
  if (!words.empty()) words.back() &= tail_mask(n);
  return BitString::from_words(n, words);
}

std::pair<BitString, BitString> sample_pair(std::size_t n, const NoiseParam& noise, Stream& rng) {
  if (n == 0) throw UsageError("sample_pair: n must be at least 1");
  BitString x = uniform_bits(n, rng);
  BitString y = flip_channel(x, noise, rng);
  return {std::move(x), std::move(y)};
}

}  // namespace agree
