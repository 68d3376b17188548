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
#include <filesystem>
#include <fstream>

#include "fslossy/lz78.hpp"
#include "fslossy/prf.hpp"
#include "fslossy/universal.hpp"
#include "support.hpp"

using namespace fslossy;
using fslossy::testing::Rng;

TEST(Philox, KnownAnswerVectors) {
  using B = Philox4x32::Block;
  EXPECT_EQ(Philox4x32::apply(B{0, 0, 0, 0}, {0, 0}), (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::apply(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::apply(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreDistinct) {
  Philox4x32 prf(42);
  EXPECT_NE(prf(0, 1), prf(1, 1));
  EXPECT_NE(prf(0, 1), prf(0, 2));
  EXPECT_NE(prf(0, 1, 0), prf(0, 1, 1));
  EXPECT_EQ(prf(3, 9), Philox4x32(42)(3, 9));
}

TEST(Universal, PartitionAtMostOneAndExactTotals) {
  for (auto [k, beta] : {std::pair<std::size_t, std::size_t>{12, 2}, {14, 2}, {8, 3}, {5, 4}}) {
    auto u = build_universal(k, beta);
    EXPECT_LE(u.partition(), (Dyadic{BigInt(1), 0}));
    UniversalModel::Weight total = 0;
    for (std::uint64_t i = 0; i < u.size(); ++i) total += u.weight(i);
    EXPECT_TRUE(total == u.total_weight());
    double psum = 0;
    for (std::uint64_t i = 0; i < u.size(); ++i) psum += u.probability(i);
    EXPECT_NEAR(psum, 1.0, 1e-9);
  }
}

TEST(Universal, IndexForIsInverseCdf) {
  auto u = build_universal(9, 2);
  UniversalModel::Weight cum = 0;
  for (std::uint64_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(u.index_for(cum), i);
    EXPECT_EQ(u.index_for(cum + u.weight(i) - 1), i);
    cum += u.weight(i);
  }
}

TEST(Universal, RejectsNonKraftTables) {
  std::vector<std::uint8_t> lengths(4, 1);  // four words of length 1
  EXPECT_THROW(UniversalModel(2, 2, lengths), VerificationError);
}

TEST(Universal, BallMassMatchesBruteForce) {
  Rng rng(8);
  auto u = build_universal(10, 2);
  auto model = DistortionModel::hamming(2);
  for (int i = 0; i < 20; ++i) {
    auto x = rng.symbols(10, 2);
    const Budget budget(Rational(1, 5), 10);
    Dyadic ball;
    for (const auto& y : fslossy::testing::brute_force_ball(x, model, budget.threshold(model))) {
      ball = ball + Dyadic::pow2_neg(static_cast<unsigned>(lz78::lz_code_length(y, 2)));
    }
    auto mass = u_ball_mass(u, x, model, budget);
    EXPECT_EQ(mass.ball, ball);
    EXPECT_EQ(mass.partition, u.partition());
    EXPECT_NEAR(mass.neg_log2(), u.partition().log2() - ball.log2(), 1e-12);
    EXPECT_NEAR(neg_log_u_ball(u, x, model, budget), mass.neg_log2(), 1e-12);
  }
}

TEST(Universal, SamplerFrequenciesWithinFourSigma) {
  auto u = build_universal(6, 2);
  Philox4x32 prf(2024);
  const std::uint64_t draws = 200000;
  std::vector<std::uint64_t> hits(u.size(), 0);
  for (std::uint64_t c = 1; c <= draws; ++c) ++hits[u_sample_index(u, prf, 0, c)];
  for (std::uint64_t i = 0; i < u.size(); ++i) {
    const double p = u.probability(i);
    const double sigma = std::sqrt(draws * p * (1 - p));
    EXPECT_LE(std::abs(static_cast<double>(hits[i]) - draws * p), 4 * sigma + 1) << "index " << i;
  }
}

TEST(Universal, SamplingIsDeterministic) {
  auto u = build_universal(10, 3 - 1);
  Philox4x32 a(7), b(7);
  for (std::uint64_t c = 1; c < 100; ++c) {
    EXPECT_EQ(u_sample_index(u, a, 5, c), u_sample_index(u, b, 5, c));
  }
  EXPECT_EQ(u_sample(u, a, 1, 1).size(), 10u);
}

TEST(Universal, CacheRoundTripAndRepair) {
  const auto path = std::filesystem::temp_directory_path() / "fslossy_test_cache.fsul";
  std::filesystem::remove(path);
  auto built = load_or_build_universal(path, 10, 2);
  ASSERT_TRUE(std::filesystem::exists(path));
  auto loaded = load_or_build_universal(path, 10, 2);
  EXPECT_TRUE(std::equal(built.lz_lengths().begin(), built.lz_lengths().end(), loaded.lz_lengths().begin(),
                         loaded.lz_lengths().end()));
  {
    // Corrupt every length byte; verification on load must catch it and rebuild.
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(13);
    std::vector<char> junk(1024, 1);
    f.write(junk.data(), static_cast<std::streamsize>(junk.size()));
  }
  auto repaired = load_or_build_universal(path, 10, 2);
  EXPECT_TRUE(std::equal(built.lz_lengths().begin(), built.lz_lengths().end(), repaired.lz_lengths().begin(),
                         repaired.lz_lengths().end()));
  std::filesystem::remove(path);
}
