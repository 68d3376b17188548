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

#include "fslossy/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace fslossy {

unsigned index_width(const BigInt& size) {
  if (size <= 1) return 0;
  BigInt top = size - 1;
  return static_cast<unsigned>(boost::multiprecision::msb(top)) + 1;
}

BlockEmpiricalDist::BlockEmpiricalDist(std::size_t ell, std::size_t beta,
                                       std::vector<std::uint32_t> counts)
    : ell_(ell), beta_(beta), total_(0), counts_(std::move(counts)) {
  require(ell_ >= 1, "ell must be positive");
  auto expect = checked_pow(beta_, ell_, kMaxSuperAlphabet);
  require(expect.has_value(), "beta^ell exceeds the super-alphabet limit");
  require(counts_.size() == *expect, "count vector must have beta^ell entries");
  for (auto c : counts_) total_ += c;
}

BlockEmpiricalDist empirical_block_dist(std::span<const Symbol> block, std::size_t beta,
                                        std::size_t ell) {
  require(ell >= 1 && block.size() % ell == 0, "ell must divide the block length");
  auto size = checked_pow(beta, ell, kMaxSuperAlphabet);
  require(size.has_value(), "beta^ell exceeds the super-alphabet limit");
  std::vector<std::uint32_t> counts(*size, 0);
  for (std::size_t j = 0; j < block.size(); j += ell) {
    ++counts[block_index(block.subspan(j, ell), beta)];
  }
  return BlockEmpiricalDist(ell, beta, std::move(counts));
}

double entropy_of_counts(std::span<const std::uint32_t> counts) {
  std::vector<std::uint32_t> sorted;
  std::uint64_t total = 0;
  for (auto c : counts) {
    if (c) sorted.push_back(c);
    total += c;
  }
  if (total == 0) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  // H = log2 n - (1/n) sum c log2 c
  double acc = 0;
  for (auto c : sorted) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  const double n = static_cast<double>(total);
  double h = std::log2(n) - acc / n;
  return h < 0 ? 0.0 : h;
}

double empirical_entropy(const BlockEmpiricalDist& p) { return entropy_of_counts(p.counts()); }

BigInt multinomial(std::span<const std::uint32_t> counts) {
  // Product of binomials C(prefix_total, c).
  BigInt result = 1;
  std::uint64_t running = 0;
  for (auto c : counts) {
    for (std::uint32_t i = 1; i <= c; ++i) {
      ++running;
      result *= running;
      result /= i;
    }
  }
  return result;
}

BigInt type_class_size(const BlockEmpiricalDist& p) { return multinomial(p.counts()); }

TypeCode type_index_encode(std::span<const Symbol> block, std::size_t beta, std::size_t ell) {
  BlockEmpiricalDist type = empirical_block_dist(block, beta, ell);
  std::vector<std::uint32_t> remaining = type.counts();
  BigInt count = multinomial(remaining);  // arrangements of what is left
  BigInt index = 0;
  std::uint64_t left = type.total();
  for (std::size_t j = 0; j < block.size(); j += ell) {
    const std::uint64_t sym = block_index(block.subspan(j, ell), beta);
    // Strings starting with a smaller super-symbol s number count * remaining[s] / left.
    for (std::uint64_t s = 0; s < sym; ++s) {
      if (remaining[s]) index += count * remaining[s] / left;
    }
    count = count * remaining[sym] / left;
    --remaining[sym];
    --left;
  }
  return {std::move(type), std::move(index)};
}

std::vector<Symbol> type_index_decode(const BlockEmpiricalDist& type, const BigInt& index) {
  BigInt count = type_class_size(type);
  if (index < 0 || index >= count) throw FormatError("type-class index out of range");
  std::vector<std::uint32_t> remaining = type.counts();
  std::vector<Symbol> out;
  out.reserve(type.total() * type.ell());
  std::vector<Symbol> scratch(type.ell());
  BigInt rest = index;
  std::uint64_t left = type.total();
  while (left > 0) {
    for (std::uint64_t s = 0; s < remaining.size(); ++s) {
      if (!remaining[s]) continue;
      BigInt span = count * remaining[s] / left;
      if (rest < span) {
        block_from_index(s, type.beta(), scratch);
        out.insert(out.end(), scratch.begin(), scratch.end());
        count = span;
        --remaining[s];
        break;
      }
      rest -= span;
    }
    --left;
  }
  return out;
}

unsigned type_count_width(std::size_t total) { return ceil_log2(total + 1); }

void write_type_descriptor(Bitstring& out, const BlockEmpiricalDist& type) {
  const unsigned w = type_count_width(type.total());
  for (auto c : type.counts()) out.append(c, w);
}

BlockEmpiricalDist read_type_descriptor(BitReader& in, std::size_t k, std::size_t ell,
                                        std::size_t beta) {
  require(ell >= 1 && k % ell == 0, "ell must divide k");
  const std::size_t total = k / ell;
  auto size = checked_pow(beta, ell, kMaxSuperAlphabet);
  require(size.has_value(), "beta^ell exceeds the super-alphabet limit");
  const unsigned w = type_count_width(total);
  std::vector<std::uint32_t> counts(*size);
  std::uint64_t sum = 0;
  for (auto& c : counts) {
    c = static_cast<std::uint32_t>(in.read(w));
    sum += c;
  }
  if (sum != total) throw FormatError("type descriptor counts do not sum to k/ell");
  return BlockEmpiricalDist(ell, beta, std::move(counts));
}

void write_big(Bitstring& out, const BigInt& value, unsigned width) {
  for (unsigned b = width; b-- > 0;) out.push_back(boost::multiprecision::bit_test(value, b));
}

BigInt read_big(BitReader& in, unsigned width) {
  BigInt v = 0;
  for (unsigned i = 0; i < width; ++i) {
    v <<= 1;
    if (in.read_bit()) v |= 1;
  }
  return v;
}

}  // namespace fslossy
