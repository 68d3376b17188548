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

#include <array>
#include <cstdint>

namespace fslossy {

/// Philox4x32-10 (Salmon et al., SC'11), the keyed bijection used for all
/// shared randomness. Contract "philox4x32-10/v1":
///   key     = (seed low 32, seed high 32)
///   counter = (counter low 32, counter high 32, stream_id, word_block)
/// The mapping is frozen; codebooks derived from a seed must never change.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr const char* kContract = "philox4x32-10/v1";

  explicit constexpr Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}
  constexpr Philox4x32(Key key) : key_(key) {}

  static constexpr Block apply(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  constexpr Block operator()(std::uint64_t stream_id, std::uint64_t counter,
                             std::uint32_t word_block = 0) const {
    return apply({static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
                  static_cast<std::uint32_t>(stream_id), word_block},
                 key_);
  }

  /// 128 bits as an unsigned integer, first word most significant.
  constexpr unsigned __int128 word128(std::uint64_t stream_id, std::uint64_t counter,
                                      std::uint32_t word_block = 0) const {
    Block b = (*this)(stream_id, counter, word_block);
    unsigned __int128 v = 0;
    for (auto w : b) v = (v << 32) | w;
    return v;
  }

  constexpr std::uint64_t word64(std::uint64_t stream_id, std::uint64_t counter) const {
    Block b = (*this)(stream_id, counter);
    return (std::uint64_t{b[0]} << 32) | b[1];
  }

  /// Uniform double in [0, 1) from 53 bits.
  double uniform(std::uint64_t stream_id, std::uint64_t counter) const {
    return static_cast<double>(word64(stream_id, counter) >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57;
  static constexpr std::uint32_t kW0 = 0x9E3779B9;
  static constexpr std::uint32_t kW1 = 0xBB67AE85;

  Key key_;
};

}  // namespace fslossy
