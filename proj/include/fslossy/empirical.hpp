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
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fslossy/bits.hpp"
#include "fslossy/core.hpp"

namespace fslossy {

using BigInt = boost::multiprecision::cpp_int;

/// Bit length of an index field able to hold any value below `size` (0 for size <= 1).
unsigned index_width(const BigInt& size);

/// Counts of non-overlapping ell-blocks along one k-block. The ell-block
/// x_1..x_ell maps to super-symbol sum x_i beta^(ell-i), so super-symbol order
/// is lexicographic.
class BlockEmpiricalDist {
 public:
  BlockEmpiricalDist(std::size_t ell, std::size_t beta, std::vector<std::uint32_t> counts);

  std::size_t ell() const { return ell_; }
  std::size_t beta() const { return beta_; }
  /// k / ell, the number of ell-blocks.
  std::size_t total() const { return total_; }
  std::size_t super_alphabet() const { return counts_.size(); }
  const std::vector<std::uint32_t>& counts() const { return counts_; }
  Rational probability(std::uint64_t super_symbol) const {
    return Rational(counts_[super_symbol], static_cast<std::int64_t>(total_));
  }

  friend bool operator==(const BlockEmpiricalDist&, const BlockEmpiricalDist&) = default;

 private:
  std::size_t ell_;
  std::size_t beta_;
  std::size_t total_;
  std::vector<std::uint32_t> counts_;
};

inline constexpr std::uint64_t kMaxSuperAlphabet = std::uint64_t{1} << 20;

BlockEmpiricalDist empirical_block_dist(std::span<const Symbol> block, std::size_t beta,
                                        std::size_t ell);

/// -sum P log2 P with 0 log 0 = 0. Summed over sorted counts so equal
/// multisets of counts give bit-identical results.
double empirical_entropy(const BlockEmpiricalDist& p);
/// Same value computed from a bare count vector.
double entropy_of_counts(std::span<const std::uint32_t> counts);

/// Multinomial (k/ell)! / prod counts!.
BigInt type_class_size(const BlockEmpiricalDist& p);
BigInt multinomial(std::span<const std::uint32_t> counts);

struct TypeCode {
  BlockEmpiricalDist type;
  BigInt index;  // lexicographic rank of the super-symbol string within the type class
};

TypeCode type_index_encode(std::span<const Symbol> block, std::size_t beta, std::size_t ell);
std::vector<Symbol> type_index_decode(const BlockEmpiricalDist& type, const BigInt& index);

/// Header: super_alphabet fixed-width counts of ceil(log2(k/ell + 1)) bits.
unsigned type_count_width(std::size_t total);
void write_type_descriptor(Bitstring& out, const BlockEmpiricalDist& type);
BlockEmpiricalDist read_type_descriptor(BitReader& in, std::size_t k, std::size_t ell,
                                        std::size_t beta);

void write_big(Bitstring& out, const BigInt& value, unsigned width);
BigInt read_big(BitReader& in, unsigned width);

}  // namespace fslossy
