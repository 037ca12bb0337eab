#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agree {

// Fixed-length bit vector over {0,1}^n.
//
// Bit i lives at bit (i % 64) of word (i / 64); serialized bytes follow the
// same little-endian rule, so bit i is bit (i % 8) of byte (i / 8). Bits past
// n-1 in the last word are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n);

  // Character i of `bits` becomes bit i. Accepts only '0' and '1'.
  static BitString from_string(std::string_view bits);
  // Bit i of `value` becomes bit i; requires n <= 64.
  static BitString from_uint(std::uint64_t value, std::size_t n);
  static BitString from_words(std::size_t n, std::span<const std::uint64_t> words);
  static BitString from_bytes(std::size_t n, std::span<const std::uint8_t> bytes);

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  std::size_t weight() const noexcept;
  std::uint64_t to_uint() const;
  std::string to_string() const;
  std::vector<std::uint8_t> to_bytes() const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t words_for_bits(std::size_t n) { return (n + 63) / 64; }
inline constexpr std::size_t bytes_for_bits(std::size_t n) { return (n + 7) / 8; }

// Mask of the valid bits in the last word of an n-bit string.
inline constexpr std::uint64_t tail_mask(std::size_t n) {
  return n % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n % 64)) - 1;
}

std::size_t hamming_weight(const BitString& a);
std::size_t hamming_distance(const BitString& a, const BitString& b);

// Strict total order used by the decoder: lower Hamming weight first, and at
// equal weight the numeric value with bit 0 as the most significant digit.
bool order_less(const BitString& a, const BitString& b);

// Same order on raw equal-length word arrays whose weights are known equal.
inline bool tie_break_less(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    const std::uint64_t diff = a[w] ^ b[w];
    if (diff != 0) return (b[w] & diff & (~diff + 1)) != 0;
  }
  return false;
}

}  // namespace agree
