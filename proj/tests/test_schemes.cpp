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
#include <fstream>

#include "fslossy/empirical.hpp"
#include "fslossy/io.hpp"
#include "fslossy/lz78.hpp"
#include "fslossy/schemes.hpp"
#include "support.hpp"

using namespace fslossy;
using fslossy::testing::Rng;

namespace {

std::string golden(const std::string& name) { return std::string(FSLOSSY_SOURCE_DIR) + "/tests/golden/" + name; }

Sequence random_source(Rng& rng, std::size_t n, std::size_t alpha) {
  return Sequence(Alphabet(alpha), rng.symbols(n, alpha));
}

void expect_semifaithful(const Sequence& x, const Sequence& y, const DistortionModel& model, std::size_t k,
                         Rational D) {
  const Budget budget(D, k);
  for (std::size_t i = 0; i < x.size() / k; ++i) {
    EXPECT_LE(distortion_units(x.block(i, k), y.block(i, k), model), budget.threshold(model)) << "block " << i;
  }
}

}  // namespace

TEST(EliasDelta, KnownCodes) {
  EXPECT_EQ(elias_delta_encode(1).to_string(), "1");
  EXPECT_EQ(elias_delta_encode(2).to_string(), "0100");
  EXPECT_EQ(elias_delta_encode(3).to_string(), "0101");
  EXPECT_EQ(elias_delta_encode(4).to_string(), "01100");
  EXPECT_EQ(elias_delta_encode(17).to_string(), "001010001");
  EXPECT_THROW(elias_delta_encode(0), UsageError);
}

TEST(EliasDelta, ExhaustiveRoundTripToOneMillion) {
  Bitstring all;
  for (std::uint64_t i = 1; i <= 1000000; ++i) {
    const auto before = all.size();
    elias_delta_encode(all, i);
    const auto n = static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(i))));
    const auto expected = n + 2 * static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(n + 1)))) + 1;
    ASSERT_EQ(all.size() - before, expected) << i;
    ASSERT_EQ(elias_delta_length(i), expected);
  }
  BitReader in(all);
  for (std::uint64_t i = 1; i <= 1000000; ++i) ASSERT_EQ(elias_delta_decode(in), i);
  EXPECT_EQ(in.remaining(), 0u);
}

TEST(EliasDelta, LargeValues) {
  for (std::uint64_t v : {std::uint64_t{1} << 40, ~std::uint64_t{0}, (std::uint64_t{1} << 63) + 5}) {
    auto b = elias_delta_encode(v);
    BitReader in(b);
    EXPECT_EQ(elias_delta_decode(in), v);
  }
}

TEST(Header, RoundTripAllModelKinds) {
  std::vector<ContainerHeader> headers(3);
  headers[0].alpha = headers[0].beta = 3;
  headers[0].model = DistortionModel::hamming(3);
  headers[0].k = 6;
  headers[0].n = 60;
  headers[0].D = Rational(1, 6);
  headers[0].labels = {"a", "b", "c"};
  headers[1].alpha = headers[1].beta = 4;
  headers[1].model = DistortionModel::absolute(4);
  headers[1].k = 8;
  headers[1].ell = 2;
  headers[1].n = 64;
  headers[1].scheme = SchemeId::b;
  headers[2].alpha = 2;
  headers[2].beta = 3;
  headers[2].model = DistortionModel(2, 3, {0, 1, 5, 5, 1, 0}, 7);
  headers[2].k = 4;
  headers[2].n = 4;
  headers[2].scheme = SchemeId::c;
  headers[2].seed = 0xDEADBEEFCAFEULL;
  headers[2].D = Rational(3, 4);
  for (const auto& h : headers) {
    Bitstring b;
    h.write(b);
    BitReader in(b);
    auto back = ContainerHeader::read(in);
    EXPECT_EQ(in.remaining(), 0u);
    EXPECT_EQ(back.alpha, h.alpha);
    EXPECT_EQ(back.beta, h.beta);
    EXPECT_EQ(back.k, h.k);
    EXPECT_EQ(back.ell, h.ell);
    EXPECT_EQ(back.n, h.n);
    EXPECT_EQ(back.scheme, h.scheme);
    EXPECT_EQ(back.D, h.D);
    EXPECT_EQ(back.seed, h.seed);
    EXPECT_EQ(back.labels, h.labels);
    EXPECT_EQ(back.model.kind(), h.model.kind());
    EXPECT_EQ(back.model.numerators(), h.model.numerators());
    EXPECT_EQ(back.model.denominator(), h.model.denominator());
  }
}

TEST(Header, RejectsBadInput) {
  ContainerHeader h;
  h.alpha = h.beta = 2;
  h.model = DistortionModel::hamming(2);
  h.k = 4;
  h.n = 6;  // not divisible by k
  Bitstring b;
  EXPECT_THROW(h.write(b), UsageError);
  std::vector<std::uint8_t> junk = {'N', 'O', 'P', 'E', 1, 0, 0};
  BitReader in(junk, junk.size() * 8);
  EXPECT_THROW(ContainerHeader::read(in), FormatError);
}

TEST(SchemeA, LosslessAtZeroDistortion) {
  Rng rng(1);
  for (std::size_t alpha : {2u, 3u}) {
    auto x = random_source(rng, 12 * 20, alpha);
    auto enc = scheme_a_encode(x, 12, DistortionModel::hamming(alpha), Rational(0));
    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < 20; ++i) expected += lz78::lz_code_length(x.block(i, 12), alpha);
    EXPECT_EQ(enc.payload_bits(), expected);
    auto dec = decode(enc.stream);
    EXPECT_EQ(dec.reproduction.symbols().size(), x.size());
    EXPECT_TRUE(std::equal(x.symbols().begin(), x.symbols().end(), dec.reproduction.symbols().begin()));
    auto rate = measure_rho(enc.bytes(), &x);
    EXPECT_DOUBLE_EQ(rate.rho, static_cast<double>(expected) / static_cast<double>(x.size()));
    auto with_header = measure_rho(enc.bytes(), &x, true);
    EXPECT_EQ(with_header.total_bits, expected + enc.header_bits);
  }
}

TEST(SchemeA, ExactLzObjectiveNeverLonger) {
  Rng rng(2);
  auto model = DistortionModel::hamming(2);
  auto x = random_source(rng, 10 * 30, 2);
  auto exact = scheme_a_encode(x, 10, model, Rational(1, 5), Objective::exact_lz);
  auto clogc = scheme_a_encode(x, 10, model, Rational(1, 5), Objective::clogc);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_LE(exact.block_bits[i], clogc.block_bits[i]);
  for (const auto* e : {&exact, &clogc}) {
    auto dec = decode(e->stream);
    EXPECT_TRUE(std::equal(e->reproduction.begin(), e->reproduction.end(), dec.reproduction.symbols().begin()));
    expect_semifaithful(x, dec.reproduction, model, 10, Rational(1, 5));
  }
}

TEST(SchemeA, EnvelopeHolds) {
  Rng rng(3);
  for (std::size_t alpha : {2u, 3u}) {
    auto model = DistortionModel::hamming(alpha);
    const std::size_t k = alpha == 2 ? 12 : 8;
    auto x = random_source(rng, k * 20, alpha);
    for (Rational D : {Rational(0), Rational(1, 8), Rational(1, 4)}) {
      auto enc = scheme_a_encode(x, k, model, D, Objective::clogc);
      auto analysis = kernels::analyze_blocks(x.symbols(), k, 0, model, Budget(D, k), kernels::Exec::parallel);
      for (std::size_t i = 0; i < analysis.size(); ++i) {
        EXPECT_LE(static_cast<double>(enc.block_bits[i]),
                  lz78::clogc(analysis[i].min_c) + lz78::k_eps(k, alpha) + 1e-9);
      }
    }
  }
}

TEST(SchemeB, ConstantCompatibleBlockCostsOnlyTheHeader) {
  auto x = Sequence::from_digits(2, "00010000");
  auto enc = scheme_b_encode(x, 8, 2, DistortionModel::hamming(2), Rational(1, 8));
  // The all-zero block is within distance 1: one type, index width 0.
  EXPECT_EQ(enc.block_bits[0], 4 * type_count_width(4));
  auto dec = decode(enc.stream);
  EXPECT_EQ(dec.reproduction.to_string(), "00000000");
}

TEST(SchemeB, ExhaustiveRoundTripAndEnvelope) {
  auto model = DistortionModel::hamming(2);
  const std::size_t k = 8, ell = 2;
  for (std::uint64_t i = 0; i < 256; ++i) {
    auto xb = fslossy::testing::from_index(i, 2, k);
    Sequence x(Alphabet(2), xb);
    auto enc = scheme_b_encode(x, k, ell, model, Rational(1, 4));
    auto dec = decode(enc.stream);
    ASSERT_TRUE(std::equal(enc.reproduction.begin(), enc.reproduction.end(), dec.reproduction.symbols().begin()));
    expect_semifaithful(x, dec.reproduction, model, k, Rational(1, 4));
    auto a = kernels::analyze_block(xb, model, Budget(Rational(1, 4), k).threshold(model), ell);
    const double envelope = (static_cast<double>(k) / ell) * a.min_entropy + 4.0 * std::ceil(std::log2(k / ell + 1.0));
    EXPECT_LE(static_cast<double>(enc.block_bits[0]), envelope + 1e-9);
  }
}

TEST(SchemeC, FullBallHitsOnFirstDraw) {
  Rng rng(4);
  auto x = random_source(rng, 10 * 5, 2);
  auto enc = scheme_c_encode(x, 10, DistortionModel::hamming(2), Rational(1), 99);
  for (auto bits : enc.block_bits) EXPECT_EQ(bits, 2u);  // flag + delta(1)
  for (auto hit : enc.hit_index) EXPECT_EQ(hit, 1u);
}

TEST(SchemeC, RoundTripAndEscapes) {
  Rng rng(5);
  auto model = DistortionModel::hamming(2);
  auto u = build_universal(10, 2);
  auto x = random_source(rng, 10 * 200, 2);
  auto enc = scheme_c_encode(x, 10, model, Rational(1, 4), 7, std::uint64_t{1} << 20, &u);
  auto dec = decode(enc.stream, &u);
  EXPECT_TRUE(std::equal(enc.reproduction.begin(), enc.reproduction.end(), dec.reproduction.symbols().begin()));
  expect_semifaithful(x, dec.reproduction, model, 10, Rational(1, 4));
  EXPECT_EQ(enc.escapes, 0u);

  // A one-draw budget at D = 0 forces escapes; the fallback still decodes exactly.
  auto tight = scheme_c_encode(x.slice(0, 100), 10, model, Rational(0), 7, 1, &u);
  EXPECT_GT(tight.escapes, 0u);
  auto tight_dec = decode(tight.stream, &u);
  EXPECT_EQ(tight_dec.escapes, tight.escapes);
  EXPECT_TRUE(std::equal(tight.reproduction.begin(), tight.reproduction.end(),
                         tight_dec.reproduction.symbols().begin()));
  expect_semifaithful(x.slice(0, 100), tight_dec.reproduction, model, 10, Rational(0));
}

TEST(AllSchemes, SerialAndParallelStreamsIdentical) {
  Rng rng(6);
  auto x = random_source(rng, 12 * 40, 3);
  auto model = DistortionModel::absolute(3);
  for (auto scheme : {SchemeId::a, SchemeId::b, SchemeId::c}) {
    EncodeOptions o;
    o.scheme = scheme;
    o.k = 6;
    o.ell = 2;
    o.D = Rational(1, 4);
    o.seed = 11;
    o.exec = kernels::Exec::serial;
    auto s = encode(x, model, o);
    o.exec = kernels::Exec::parallel;
    auto p = encode(x, model, o);
    EXPECT_EQ(s.stream, p.stream);
    auto dec = decode(p.stream);
    expect_semifaithful(x, dec.reproduction, model, 6, Rational(1, 4));
  }
}

TEST(Container, RejectsCorruption) {
  Rng rng(7);
  auto x = random_source(rng, 8 * 4, 2);
  auto bytes = scheme_a_encode(x, 8, DistortionModel::hamming(2), Rational(1, 8)).bytes();
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(decode(extra), FormatError);
  auto cut = bytes;
  cut.resize(cut.size() - 2);
  EXPECT_THROW(decode(cut), FormatError);
  auto bad_scheme = bytes;
  bad_scheme[4 + 1 + 2 + 2 + 4 + 4 + 8] = 9;  // scheme byte
  EXPECT_THROW(decode(bad_scheme), FormatError);
}

TEST(Container, PaddingMustBeZero) {
  auto x = Sequence::from_digits(2, "0110");
  auto enc = scheme_a_encode(x, 4, DistortionModel::hamming(2), Rational(0));
  ASSERT_NE(enc.stream.size() % 8, 0u);
  auto bytes = enc.bytes();
  bytes.back() |= 1;
  EXPECT_THROW(decode(bytes), FormatError);
}

TEST(Golden, ContainersAreByteIdentical) {
  auto x = io::read_sequence(golden("source.txt"));
  auto model = DistortionModel::hamming(x.alphabet().size());
  struct Case {
    const char* file;
    SchemeId scheme;
  } cases[] = {{"scheme_a.fsl", SchemeId::a}, {"scheme_b.fsl", SchemeId::b}, {"scheme_c.fsl", SchemeId::c}};
  for (const auto& c : cases) {
    EncodeOptions o;
    o.scheme = c.scheme;
    o.k = 8;
    o.ell = c.scheme == SchemeId::b ? 2 : 0;
    o.D = Rational(1, 8);
    o.seed = c.scheme == SchemeId::c ? 20260101 : 0;
    auto enc = encode(x, model, o);
    EXPECT_EQ(enc.bytes(), io::read_file(golden(c.file))) << c.file;
    auto dec = decode(io::read_file(golden(c.file)));
    EXPECT_TRUE(std::equal(enc.reproduction.begin(), enc.reproduction.end(), dec.reproduction.symbols().begin()));
  }
}

TEST(Golden, HeaderBytesMatchDocumentedLayout) {
  auto bytes = io::read_file(golden("scheme_a.fsl"));
  ASSERT_GE(bytes.size(), 40u);
  // magic, version, alpha = 3, beta = 3, k = 8, ell = 0
  const std::vector<std::uint8_t> prefix = {'F', 'S', 'L', 'C', 1, 0, 3, 0, 3, 0, 0, 0, 8, 0, 0, 0, 0};
  EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), bytes.begin()));
}
