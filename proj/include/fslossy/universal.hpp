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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fslossy/core.hpp"
#include "fslossy/dyadic.hpp"
#include "fslossy/kernels.hpp"
#include "fslossy/prf.hpp"

namespace fslossy {

/// U(y) = 2^-LZ(y) / Z_U over all y in beta^k, kept as exact integer weights
/// 2^(max_len - LZ(y)). The cumulative table is stored every kChunk entries;
/// sampling scans at most one chunk.
class UniversalModel {
 public:
  using Weight = unsigned __int128;
  static constexpr std::uint64_t kChunk = 64;
  /// Weights must stay below 2^127 after summation.
  static constexpr unsigned kMaxLength = 120;

  UniversalModel(std::size_t k, std::size_t beta, std::vector<std::uint8_t> lz_lengths);

  std::size_t k() const { return k_; }
  std::size_t beta() const { return beta_; }
  std::uint64_t size() const { return lengths_.size(); }
  unsigned max_length() const { return max_len_; }
  std::span<const std::uint8_t> lz_lengths() const { return lengths_; }
  std::uint8_t lz_length(std::uint64_t index) const { return lengths_[index]; }

  Weight weight(std::uint64_t index) const { return Weight{1} << (max_len_ - lengths_[index]); }
  /// Z_U * 2^max_length.
  Weight total_weight() const { return total_; }
  /// Z_U = sum 2^-LZ, exact.
  Dyadic partition() const;
  /// U(y) as an exact ratio of the weight over the total.
  double probability(std::uint64_t index) const;

  /// Inverse CDF: the unique index with cum(index) <= r < cum(index + 1).
  std::uint64_t index_for(Weight r) const;

 private:
  std::size_t k_;
  std::size_t beta_;
  std::vector<std::uint8_t> lengths_;
  unsigned max_len_ = 0;
  std::vector<Weight> chunk_start_;  // cumulative weight before each chunk
  Weight total_ = 0;
};

UniversalModel build_universal(std::size_t k, std::size_t beta,
                               kernels::Exec exec = kernels::Exec::parallel,
                               std::uint64_t limit = kDefaultEnumerationLimit);

/// Loads the LZ-length table for (k, beta) from `path` if present and valid,
/// else builds it and writes the cache. Format: "FSUL", version byte, k and
/// beta as big-endian u32, then beta^k length bytes. On load 64 entries picked
/// by the PRF are recomputed; a mismatch rebuilds the cache.
UniversalModel load_or_build_universal(const std::filesystem::path& path, std::size_t k,
                                       std::size_t beta,
                                       kernels::Exec exec = kernels::Exec::parallel,
                                       std::uint64_t limit = kDefaultEnumerationLimit);

/// U[B(x, D)] as the exact ratio ball_weight / total_weight.
struct BallMass {
  Dyadic ball;       // sum over the ball of 2^-LZ
  Dyadic partition;  // Z_U
  /// -log2 U[B]; the ball always has positive mass since U has full support.
  double neg_log2() const { return partition.log2() - ball.log2(); }
  double value() const { return std::exp2(-neg_log2()); }
};

BallMass u_ball_mass(const UniversalModel& model, std::span<const Symbol> x,
                     const DistortionModel& dist, const Budget& budget,
                     std::uint64_t limit = kDefaultEnumerationLimit);
double neg_log_u_ball(const UniversalModel& model, std::span<const Symbol> x,
                      const DistortionModel& dist, const Budget& budget,
                      std::uint64_t limit = kDefaultEnumerationLimit);

/// Draw number `counter` of stream `stream_id`: uniform weight below the total by
/// rejection on 128-bit PRF words (word_block = attempt), then inverse CDF.
std::uint64_t u_sample_index(const UniversalModel& model, const Philox4x32& prf,
                             std::uint64_t stream_id, std::uint64_t counter);
Sequence u_sample(const UniversalModel& model, const Philox4x32& prf, std::uint64_t stream_id,
                  std::uint64_t counter);

}  // namespace fslossy
