#include "agree/affine_code.hpp"

#include <bit>
#include <string>
#include <utility>

#include "agree/errors.hpp"
#include "agree/source.hpp"

namespace agree {

namespace {

// Gray-code walk over all 2^k codewords, keeping the order_less-minimal
// translate x + c for each input. Step i toggles basis row ctz(i).
template <std::size_t M>
std::array<std::uint32_t, M> minimize_translates(const AffineCode& code,
                                                 const std::array<const BitString*, M>& inputs) {
  const std::size_t words = words_for_bits(code.n());
  const auto basis = code.packed_basis();
  const auto offset = code.offset().words();

  std::array<std::vector<std::uint64_t>, M> current;
  std::array<std::vector<std::uint64_t>, M> best;
  std::array<std::size_t, M> best_weight{};
  std::array<std::uint32_t, M> best_index{};

  for (std::size_t m = 0; m < M; ++m) {
    if (inputs[m]->size() != code.n()) throw UsageError("decode: input length != code length");
    current[m].resize(words);
    auto in = inputs[m]->words();
    std::size_t weight = 0;
    for (std::size_t w = 0; w < words; ++w) {
      current[m][w] = in[w] ^ offset[w];
      weight += static_cast<std::size_t>(std::popcount(current[m][w]));
    }
    best[m] = current[m];
    best_weight[m] = weight;
  }

  const std::uint32_t count = std::uint32_t{1} << code.k();
  std::uint32_t gray = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    gray ^= std::uint32_t{1} << j;
    const std::uint64_t* row = basis.data() + j * words;
    for (std::size_t m = 0; m < M; ++m) {
      std::uint64_t* cur = current[m].data();
      std::size_t weight = 0;
      for (std::size_t w = 0; w < words; ++w) {
        cur[w] ^= row[w];
        weight += static_cast<std::size_t>(std::popcount(cur[w]));
      }
      if (weight < best_weight[m] ||
          (weight == best_weight[m] && tie_break_less(current[m], best[m]))) {
        best_weight[m] = weight;
        best_index[m] = gray;
        std::copy(cur, cur + words, best[m].begin());
      }
    }
  }
  return best_index;
}

}  // namespace

AffineCode::AffineCode(BitString offset, Gf2Matrix basis)
    : offset_(std::move(offset)), basis_(std::move(basis)) {
  const std::size_t k = basis_.row_count();
  if (k == 0) throw UsageError("affine code needs dimension k >= 1");
  if (basis_.cols() != offset_.size()) throw UsageError("offset length != basis width");
  if (k > offset_.size()) throw UsageError("code dimension k exceeds length n");
  if (k > kMaxCodeDimension) {
    throw ResourceError("code dimension " + std::to_string(k) + " exceeds the enumeration cap " +
                        std::to_string(kMaxCodeDimension));
  }
  if (rank(basis_) != k) throw UsageError("affine code basis is rank deficient");
  solver_ = CoordinateSolver(basis_);
  packed_basis_.reserve(k * offset_.word_count());
  for (const auto& row : basis_.rows()) {
    packed_basis_.insert(packed_basis_.end(), row.words().begin(), row.words().end());
  }
}

AffineCode AffineCode::sample(std::size_t n, std::size_t k, Stream& rng) {
  if (k < 1 || k > n) throw UsageError("sample_affine_code requires 1 <= k <= n");
  if (k > kMaxCodeDimension) {
    throw ResourceError("code dimension " + std::to_string(k) + " exceeds the enumeration cap " +
                        std::to_string(kMaxCodeDimension));
  }
  BitString offset = uniform_bits(n, rng);
  std::vector<BitString> rows;
  rows.reserve(k);
  while (rows.size() < k) {
    rows.push_back(uniform_bits(n, rng));
    if (rank(Gf2Matrix(n, rows)) != rows.size()) rows.pop_back();
  }
  return AffineCode(std::move(offset), Gf2Matrix(n, std::move(rows)));
}

BitString AffineCode::encode(const BitString& z) const {
  if (z.size() != k()) throw UsageError("encode: coordinate vector must have length k");
  return offset_ ^ basis_.combine(z);
}

BitString AffineCode::encode_index(std::uint32_t index) const {
  return encode(BitString::from_uint(index, k()));
}

BitString AffineCode::decode(const BitString& x) const {
  return BitString::from_uint(decode_index(x), k());
}

std::uint32_t AffineCode::decode_index(const BitString& x) const {
  return minimize_translates<1>(*this, {&x})[0];
}

std::array<std::uint32_t, 2> AffineCode::decode_pair_index(const BitString& x,
                                                           const BitString& y) const {
  return minimize_translates<2>(*this, {&x, &y});
}

BitString trivial_extract(const BitString& x, std::size_t k) {
  if (k > x.size()) throw UsageError("trivial_extract: k exceeds input length");
  BitString out(k);
  for (std::size_t i = 0; i < k; ++i) out.set(i, x.test(i));
  return out;
}

std::vector<std::uint32_t> decode_table(const AffineCode& code) {
  if (code.n() > 20) throw ResourceError("decode_table: n must be at most 20");
  std::vector<std::uint32_t> table(std::size_t{1} << code.n());
  for (std::size_t x = 0; x < table.size(); ++x) {
    table[x] = code.decode_index(BitString::from_uint(x, code.n()));
  }
  return table;
}

std::vector<std::uint32_t> trivial_table(std::size_t n, std::size_t k) {
  if (n > 20) throw ResourceError("trivial_table: n must be at most 20");
  if (k > n) throw UsageError("trivial_table: k exceeds n");
  std::vector<std::uint32_t> table(std::size_t{1} << n);
  const std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = static_cast<std::uint32_t>(x) & mask;
  return table;
}

}  // namespace agree
