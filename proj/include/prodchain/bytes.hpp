#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prodchain {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
/// Lowercase or uppercase hex, even length, no prefix. Throws DecodeError.
Bytes from_hex(std::string_view hex);

Bytes to_bytes(std::string_view s);

void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
void put_u16_le(Bytes& out, std::uint16_t v);
void put_u64_le(Bytes& out, std::uint64_t v);
void append(Bytes& out, ByteView more);

Bytes read_file(const std::string& path);
void write_file(const std::string& path, ByteView bytes);

/// Strict cursor over a byte buffer; every read past the end throws DecodeError.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16_be();
  std::uint32_t u32_be();
  std::uint64_t u64_be();
  std::uint16_t u16_le();
  std::uint64_t u64_le();
  ByteView take(std::size_t n);

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  std::size_t position() const noexcept { return pos_; }
  /// Throws DecodeError unless the whole buffer was consumed.
  void expect_end() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace prodchain
