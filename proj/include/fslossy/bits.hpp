/* Copyright 2026 The fslossy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fslossy/error.hpp"

namespace fslossy {

/// Smallest b with 2^b >= x; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

/// Bit-addressed buffer. Bit i lives in byte i/8 at position 7 - i%8, so the
/// first bit written is the most significant bit of the first byte.
class Bitstring {
 public:
  Bitstring() = default;

  /// Parses a string of '0'/'1' characters.
  static Bitstring from_string(std::string_view s);
  static Bitstring from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_count);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool operator[](std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }

  void push_back(bool bit) {
    if ((size_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ & 7));
    ++size_;
  }
  /// Appends the low `width` bits of `value`, most significant first.
  void append(std::uint64_t value, unsigned width) {
    for (unsigned b = width; b-- > 0;) push_back((value >> b) & 1u);
  }
  void append(const Bitstring& other) {
    for (std::size_t i = 0; i < other.size(); ++i) push_back(other[i]);
  }

  /// Backing bytes; the final byte is zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::string to_string() const;

  friend bool operator==(const Bitstring& a, const Bitstring& b) {
    return a.size_ == b.size_ && a.bytes_ == b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const Bitstring& bits) : BitReader(bits.bytes(), bits.size()) {}
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
      : bytes_(bytes), size_(bit_count) {}

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

  bool read_bit() {
    if (pos_ >= size_) throw FormatError("bitstream truncated");
    bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return b;
  }
  std::uint64_t read(unsigned width) {
    if (width > 64) throw FormatError("field wider than 64 bits");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
    return v;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace fslossy
