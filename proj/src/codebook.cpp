#include "agree/codebook.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>

#include "agree/errors.hpp"

namespace agree {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'A', 'F', 'C', '1'};
constexpr std::size_t kHeaderBytes = 12;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{in[i]} << (8 * i);
  return v;
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> serialize_code(const AffineCode& code) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  put_u32(out, static_cast<std::uint32_t>(code.n()));
  put_u32(out, static_cast<std::uint32_t>(code.k()));
  auto append = [&out](const BitString& row) {
    auto bytes = row.to_bytes();
    out.insert(out.end(), bytes.begin(), bytes.end());
  };
  append(code.offset());
  for (const auto& row : code.basis().rows()) append(row);
  put_u32(out, crc32_of(out));
  return out;
}

AffineCode parse_code(std::span<const std::uint8_t> bytes) {
  using Kind = CodebookError::Kind;
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw CodebookError(Kind::kBadMagic, "codebook: missing AFC1 magic");
  }
  if (bytes.size() < kHeaderBytes) throw CodebookError(Kind::kTruncated, "codebook: truncated header");

  const std::uint32_t n = get_u32(bytes.subspan(4));
  const std::uint32_t k = get_u32(bytes.subspan(8));
  if (n == 0 || k == 0 || k > n || k > kMaxCodeDimension) {
    throw CodebookError(Kind::kBadHeader, "codebook: header declares n = " + std::to_string(n) +
                                              ", k = " + std::to_string(k));
  }

  const std::size_t row_bytes = bytes_for_bits(n);
  const std::size_t body = kHeaderBytes + (std::size_t{k} + 1) * row_bytes;
  if (bytes.size() < body + 4) {
    throw CodebookError(Kind::kTruncated, "codebook: expected " + std::to_string(body + 4) +
                                              " bytes, got " + std::to_string(bytes.size()));
  }
  if (bytes.size() > body + 4) {
    throw CodebookError(Kind::kTrailingBytes, "codebook: " + std::to_string(bytes.size() - body - 4) +
                                                  " unexpected trailing bytes");
  }
  if (crc32_of(bytes.first(body)) != get_u32(bytes.subspan(body))) {
    throw CodebookError(Kind::kChecksum, "codebook: CRC-32 mismatch");
  }

  auto read_row = [&](std::size_t index) {
    try {
      return BitString::from_bytes(n, bytes.subspan(kHeaderBytes + index * row_bytes, row_bytes));
    } catch (const UsageError&) {
      throw CodebookError(Kind::kBadPadding, "codebook: nonzero padding bits in row " +
                                                 std::to_string(index));
    }
  };
  BitString offset = read_row(0);
  std::vector<BitString> rows;
  rows.reserve(k);
  for (std::size_t i = 0; i < k; ++i) rows.push_back(read_row(i + 1));
  Gf2Matrix basis(n, std::move(rows));
  if (rank(basis) != k) throw CodebookError(Kind::kRankDeficient, "codebook: basis is rank deficient");
  return AffineCode(std::move(offset), std::move(basis));
}

void save_code(const AffineCode& code, const std::filesystem::path& destination) {
  const auto bytes = serialize_code(code);
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw CodebookError(CodebookError::Kind::kIo, "cannot open " + destination.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CodebookError(CodebookError::Kind::kIo, "write failed: " + destination.string());
}

AffineCode load_code(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw CodebookError(CodebookError::Kind::kIo, "cannot open " + source.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_code(bytes);
}

}  // namespace agree
