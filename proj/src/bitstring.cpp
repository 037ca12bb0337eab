#include "agree/bitstring.hpp"

#include <bit>

#include "agree/errors.hpp"

namespace agree {

namespace {

void require_same_length(const BitString& a, const BitString& b, const char* op) {
  if (a.size() != b.size()) {
    throw UsageError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

BitString::BitString(std::size_t n) : size_(n), words_(words_for_bits(n), 0) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw UsageError("bit string may contain only '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t n) {
  if (n > 64) throw UsageError("from_uint: length exceeds 64 bits");
  BitString out(n);
  if (n > 0) out.words_[0] = value & tail_mask(n);
  if (n < 64 && (value >> n) != 0) throw UsageError("from_uint: value wider than length");
  return out;
}

BitString BitString::from_words(std::size_t n, std::span<const std::uint64_t> words) {
  if (words.size() != words_for_bits(n)) throw UsageError("from_words: wrong word count");
  BitString out(n);
  std::copy(words.begin(), words.end(), out.words_.begin());
  if (n > 0 && (out.words_.back() & ~tail_mask(n)) != 0) {
    throw UsageError("from_words: nonzero padding bits");
  }
  return out;
}

BitString BitString::from_bytes(std::size_t n, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != bytes_for_bits(n)) throw UsageError("from_bytes: wrong byte count");
  BitString out(n);
  for (std::size_t b = 0; b < bytes.size(); ++b) {
    out.words_[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
  }
  if (n > 0 && (out.words_.back() & ~tail_mask(n)) != 0) {
    throw UsageError("from_bytes: nonzero padding bits");
  }
  return out;
}

bool BitString::test(std::size_t i) const {
  if (i >= size_) throw UsageError("bit index out of range");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= size_) throw UsageError("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void BitString::flip(std::size_t i) {
  if (i >= size_) throw UsageError("bit index out of range");
  words_[i / 64] ^= std::uint64_t{1} << (i % 64);
}

std::size_t BitString::weight() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::uint64_t BitString::to_uint() const {
  if (size_ > 64) throw UsageError("to_uint: length exceeds 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((words_[i / 64] >> (i % 64)) & 1u) out[i] = '1';
  }
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out(bytes_for_bits(size_));
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8)));
  }
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  require_same_length(*this, other, "xor");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::size_t hamming_weight(const BitString& a) { return a.weight(); }

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  require_same_length(a, b, "hamming_distance");
  std::size_t total = 0;
  auto aw = a.words();
  auto bw = b.words();
  for (std::size_t w = 0; w < aw.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(aw[w] ^ bw[w]));
  }
  return total;
}

bool order_less(const BitString& a, const BitString& b) {
  require_same_length(a, b, "order_less");
  const auto wa = a.weight();
  const auto wb = b.weight();
  if (wa != wb) return wa < wb;
  return tie_break_less(a.words(), b.words());
}

}  // namespace agree
