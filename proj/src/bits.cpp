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

#include "fslossy/bits.hpp"

namespace fslossy {

Bitstring Bitstring::from_string(std::string_view s) {
  Bitstring b;
  for (char c : s) {
    if (c != '0' && c != '1') throw FormatError("bit string may only contain 0 and 1");
    b.push_back(c == '1');
  }
  return b;
}

Bitstring Bitstring::from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) throw FormatError("bit count exceeds buffer");
  Bitstring b;
  bytes.resize((bit_count + 7) / 8);
  if (bit_count % 8 != 0) bytes.back() &= static_cast<std::uint8_t>(0xFF00u >> (bit_count % 8));
  b.bytes_ = std::move(bytes);
  b.size_ = bit_count;
  return b;
}

std::string Bitstring::to_string() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) s.push_back((*this)[i] ? '1' : '0');
  return s;
}

}  // namespace fslossy
