#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "agree/bitstring.hpp"
#include "agree/gf2matrix.hpp"
#include "agree/rng.hpp"

namespace agree {

// Largest code dimension the enumeration decoder accepts (2^24 codewords).
inline constexpr std::size_t kMaxCodeDimension = 24;

// Ambient length used when none is given: 64 bits per output bit.
inline constexpr std::size_t default_ambient_length(std::size_t k) { return 64 * k; }

// Affine codebook C = a + L over {0,1}^n, where L is spanned by k independent
// basis rows. Codeword z (a k-bit vector) is a + sum_j z_j * basis_j; the
// decoder output identifies codewords by these coordinates.
class AffineCode {
 public:
  // Validates 1 <= k <= n, k <= kMaxCodeDimension and full rank.
  AffineCode(BitString offset, Gf2Matrix basis);

  // Uniform offset; basis rows uniform conditioned on full rank (a dependent
  // row is redrawn).
  static AffineCode sample(std::size_t n, std::size_t k, Stream& rng);

  std::size_t n() const noexcept { return offset_.size(); }
  std::size_t k() const noexcept { return basis_.row_count(); }
  const BitString& offset() const noexcept { return offset_; }
  const Gf2Matrix& basis() const noexcept { return basis_; }

  BitString encode(const BitString& z) const;
  BitString encode_index(std::uint32_t index) const;

  // Coordinates of the codeword c minimizing x + c under order_less.
  BitString decode(const BitString& x) const;
  // Same result packed as an integer (bit j = z_j).
  std::uint32_t decode_index(const BitString& x) const;
  // Decodes two inputs in one pass over the codebook.
  std::array<std::uint32_t, 2> decode_pair_index(const BitString& x, const BitString& y) const;

  // Coordinates of v in L, or nullopt if v is not in L.
  std::optional<BitString> coordinates(const BitString& v) const { return solver_.solve(v); }

  friend bool operator==(const AffineCode& a, const AffineCode& b) {
    return a.offset_ == b.offset_ && a.basis_ == b.basis_;
  }

  // Rows of the basis packed back to back, word_count() words each.
  std::span<const std::uint64_t> packed_basis() const noexcept { return packed_basis_; }

 private:
  BitString offset_;
  Gf2Matrix basis_;
  CoordinateSolver solver_;
  std::vector<std::uint64_t> packed_basis_;
};

// Output of the first-k-bits strategy.
BitString trivial_extract(const BitString& x, std::size_t k);

// Output of `code` on every point of {0,1}^n, indexed by the integer encoding
// of the point (bit i of the index is x_i). Requires n <= 20.
std::vector<std::uint32_t> decode_table(const AffineCode& code);
std::vector<std::uint32_t> trivial_table(std::size_t n, std::size_t k);

}  // namespace agree
