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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "fslossy/dyadic.hpp"
#include "fslossy/empirical.hpp"
#include "support.hpp"

using namespace fslossy;
using fslossy::testing::Rng;

TEST(Empirical, BlockDistribution) {
  auto x = Sequence::from_digits(2, "01011100");
  auto p = empirical_block_dist(x.symbols(), 2, 2);
  // pairs: 01 01 11 00
  EXPECT_EQ(p.counts(), (std::vector<std::uint32_t>{1, 2, 0, 1}));
  EXPECT_EQ(p.total(), 4u);
  EXPECT_EQ(p.probability(1), Rational(1, 2));
  EXPECT_NEAR(empirical_entropy(p), 1.5, 1e-12);
  EXPECT_THROW(empirical_block_dist(x.symbols(), 2, 3), UsageError);
}

TEST(Empirical, EntropyEdgeCases) {
  std::vector<std::uint32_t> one = {0, 5, 0};
  EXPECT_EQ(entropy_of_counts(one), 0.0);
  std::vector<std::uint32_t> uniform = {3, 3, 3, 3};
  EXPECT_NEAR(entropy_of_counts(uniform), 2.0, 1e-12);
}

TEST(Empirical, TypeClassSizeMatchesCount) {
  for (std::size_t ell : {1u, 2u}) {
    const std::size_t k = 8;
    std::map<std::vector<std::uint32_t>, std::uint64_t> classes;
    for (std::uint64_t i = 0; i < 256; ++i) {
      auto y = fslossy::testing::from_index(i, 2, k);
      ++classes[empirical_block_dist(y, 2, ell).counts()];
    }
    for (const auto& [counts, size] : classes) {
      BlockEmpiricalDist p(ell, 2, counts);
      EXPECT_EQ(type_class_size(p), BigInt(size));
    }
  }
  std::vector<std::uint32_t> c = {2, 3, 1};
  EXPECT_EQ(multinomial(c), BigInt(60));
}

TEST(Empirical, TypeIndexIsLexicographicRank) {
  const std::size_t k = 8, ell = 2;
  std::map<std::vector<std::uint32_t>, std::uint64_t> next_rank;
  for (std::uint64_t i = 0; i < 256; ++i) {
    auto y = fslossy::testing::from_index(i, 2, k);
    auto code = type_index_encode(y, 2, ell);
    auto& r = next_rank[code.type.counts()];
    EXPECT_EQ(code.index, BigInt(r));  // enumeration order is lexicographic
    ++r;
    EXPECT_EQ(type_index_decode(code.type, code.index), y);
  }
}

TEST(Empirical, TypeIndexRandomRoundTrip) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t beta = 2 + rng.below(3);
    const std::size_t ell = 1 + rng.below(3);
    const std::size_t k = ell * (1 + rng.below(20));
    auto y = rng.symbols(k, beta);
    auto code = type_index_encode(y, beta, ell);
    EXPECT_LT(code.index, type_class_size(code.type));
    EXPECT_EQ(type_index_decode(code.type, code.index), y);
  }
}

TEST(Empirical, DescriptorRoundTrip) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 12, ell = 3, beta = 2;
    auto y = rng.symbols(k, beta);
    auto type = empirical_block_dist(y, beta, ell);
    Bitstring b;
    write_type_descriptor(b, type);
    EXPECT_EQ(b.size(), (std::size_t{1} << ell) * type_count_width(k / ell));
    BitReader r(b);
    EXPECT_EQ(read_type_descriptor(r, k, ell, beta), type);
  }
}

TEST(Empirical, DescriptorRejectsBadTotals) {
  Bitstring b;
  for (int i = 0; i < 4; ++i) b.append(3, type_count_width(4));  // sums to 12, expected 4
  BitReader r(b);
  EXPECT_THROW(read_type_descriptor(r, 8, 2, 2), FormatError);
}

TEST(Empirical, BigIntFields) {
  BigInt v = BigInt(1) << 100;
  v += 12345;
  Bitstring b;
  write_big(b, v, 101);
  BitReader r(b);
  EXPECT_EQ(read_big(r, 101), v);
  EXPECT_EQ(index_width(BigInt(1)), 0u);
  EXPECT_EQ(index_width(BigInt(2)), 1u);
  EXPECT_EQ(index_width(BigInt(5)), 3u);
}

TEST(Dyadic, ArithmeticAndOrder) {
  auto half = Dyadic::pow2_neg(1);
  auto quarter = Dyadic::pow2_neg(2);
  auto sum = half + quarter;
  EXPECT_EQ(sum, (Dyadic{BigInt(3), 2}));
  EXPECT_LT(sum, (Dyadic{BigInt(1), 0}));
  EXPECT_EQ(half + half, (Dyadic{BigInt(1), 0}));
  EXPECT_NEAR(sum.log2(), std::log2(0.75), 1e-12);
  EXPECT_NEAR(sum.to_double(), 0.75, 1e-15);
  std::map<std::uint64_t, std::uint64_t> h = {{1, 1}, {2, 2}};
  EXPECT_EQ(Dyadic::from_histogram(h), (Dyadic{BigInt(1), 0}));
}

TEST(Dyadic, DeepScalesStayExact) {
  auto tiny = Dyadic::pow2_neg(5000);
  EXPECT_GT(tiny, (Dyadic{BigInt(0), 0}));
  EXPECT_NEAR(tiny.log2(), -5000.0, 1e-9);
  EXPECT_LT(Dyadic::pow2_neg(5001), tiny);
}
