#include "agree/rng.hpp"

#include <cmath>

namespace agree {

std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  // Rejection on the top of the range keeps the result unbiased.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t Stream::bernoulli_word(double p) noexcept {
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return ~std::uint64_t{0};

  // Compare 64 uniform reals U against p one binary digit at a time. A lane
  // is decided at the first digit where U and p differ.
  int exponent = 0;
  const double mantissa = std::frexp(p, &exponent);  // p = mantissa * 2^exponent
  auto digits = static_cast<std::uint64_t>(std::ldexp(mantissa, 53));

  std::uint64_t result = 0;
  std::uint64_t undecided = ~std::uint64_t{0};
  for (int i = 0; i < -exponent && undecided != 0; ++i) undecided &= ~next();
  for (int bit = 52; bit >= 0 && undecided != 0; --bit) {
    const std::uint64_t u = next();
    if ((digits >> bit) & 1u) {
      result |= undecided & ~u;
      undecided &= u;
    } else {
      undecided &= ~u;
    }
  }
  return result;
}

}  // namespace agree
