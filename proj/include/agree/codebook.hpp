#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agree/affine_code.hpp"

namespace agree {

// Binary codebook layout (all integers little-endian):
//
//   "AFC1" | n : u32 | k : u32 | offset : ceil(n/8) bytes
//          | k basis rows, ceil(n/8) bytes each | crc32 of all prior bytes : u32
//
// Bit i of a row is bit (i % 8) of byte (i / 8).
class CodebookError : public std::runtime_error {
 public:
  enum class Kind {
    kBadMagic,
    kBadHeader,      // n or k out of range
    kTruncated,      // fewer bytes than the header implies
    kTrailingBytes,  // more bytes than the header implies
    kChecksum,
    kBadPadding,     // nonzero bits past n in a row
    kRankDeficient,
    kIo,
  };

  CodebookError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::vector<std::uint8_t> serialize_code(const AffineCode& code);
AffineCode parse_code(std::span<const std::uint8_t> bytes);

void save_code(const AffineCode& code, const std::filesystem::path& destination);
AffineCode load_code(const std::filesystem::path& source);

}  // namespace agree
