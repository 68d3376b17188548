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

#include "fslossy/universal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>

#include "fslossy/lz78.hpp"

namespace fslossy {

namespace {

constexpr char kCacheMagic[4] = {'F', 'S', 'U', 'L'};
constexpr std::uint8_t kCacheVersion = 1;
constexpr int kCacheChecks = 64;

BigInt to_big(UniversalModel::Weight w) {
  BigInt v = static_cast<std::uint64_t>(w >> 64);
  v <<= 64;
  v += static_cast<std::uint64_t>(w);
  return v;
}

unsigned bit_width128(UniversalModel::Weight w) {
  const auto hi = static_cast<std::uint64_t>(w >> 64);
  return hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<std::uint64_t>(w));
}

}  // namespace

UniversalModel::UniversalModel(std::size_t k, std::size_t beta, std::vector<std::uint8_t> lengths)
    : k_(k), beta_(beta), lengths_(std::move(lengths)) {
  auto expect = checked_pow(beta_, k_);
  require(expect && *expect == lengths_.size(), "LZ table must have beta^k entries");
  for (auto l : lengths_) max_len_ = std::max<unsigned>(max_len_, l);
  if (max_len_ > kMaxLength) throw LimitError("LZ lengths too large for exact U weights");
  chunk_start_.reserve(lengths_.size() / kChunk + 1);
  for (std::uint64_t i = 0; i < lengths_.size(); ++i) {
    if (i % kChunk == 0) chunk_start_.push_back(total_);
    total_ += weight(i);
  }
  // Kraft for the LZ code length function
  if (total_ > (Weight{1} << max_len_)) {
    throw VerificationError("LZ code lengths violate Kraft's inequality");
  }
}

Dyadic UniversalModel::partition() const { return {to_big(total_), max_len_}; }

double UniversalModel::probability(std::uint64_t index) const {
  return std::exp2(-static_cast<double>(lengths_[index]) - partition().log2());
}

std::uint64_t UniversalModel::index_for(Weight r) const {
  require(r < total_, "sample weight out of range");
  auto it = std::upper_bound(chunk_start_.begin(), chunk_start_.end(), r);
  std::uint64_t chunk = static_cast<std::uint64_t>(it - chunk_start_.begin()) - 1;
  Weight acc = chunk_start_[chunk];
  for (std::uint64_t i = chunk * kChunk;; ++i) {
    acc += weight(i);
    if (r < acc) return i;
  }
}

UniversalModel build_universal(std::size_t k, std::size_t beta, kernels::Exec exec,
                               std::uint64_t limit) {
  return UniversalModel(k, beta, kernels::lz_length_table(k, beta, exec, limit));
}

UniversalModel load_or_build_universal(const std::filesystem::path& path, std::size_t k,
                                       std::size_t beta, kernels::Exec exec,
                                       std::uint64_t limit) {
  auto size = checked_pow(beta, k, limit);
  if (!size) throw LimitError("beta^k exceeds the enumeration limit");
  if (std::ifstream in{path, std::ios::binary}) {
    char magic[4];
    std::uint8_t header[9];
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(header), 9);
    auto be32 = [&](int off) {
      return (std::uint32_t{header[off]} << 24) | (std::uint32_t{header[off + 1]} << 16) |
             (std::uint32_t{header[off + 2]} << 8) | header[off + 3];
    };
    std::vector<std::uint8_t> lengths(*size);
    in.read(reinterpret_cast<char*>(lengths.data()), static_cast<std::streamsize>(*size));
    bool ok = in.gcount() == static_cast<std::streamsize>(*size) &&
              std::equal(magic, magic + 4, kCacheMagic) && header[0] == kCacheVersion &&
              be32(1) == k && be32(5) == beta && in.peek() == std::char_traits<char>::eof();
    if (ok) {
      Philox4x32 prf(0x46535546u);
      lz78::Parser parser(beta);
      std::vector<Symbol> y(k);
      for (int i = 0; i < kCacheChecks && ok; ++i) {
        const std::uint64_t idx = prf.word64(0, static_cast<std::uint64_t>(i)) % *size;
        block_from_index(idx, beta, y);
        ok = parser.code_length(y) == lengths[idx];
      }
    }
    if (ok) return UniversalModel(k, beta, std::move(lengths));
  }
  UniversalModel model = build_universal(k, beta, exec, limit);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) {
    out.write(kCacheMagic, 4);
    const std::uint8_t header[9] = {kCacheVersion,
                                    static_cast<std::uint8_t>(k >> 24), static_cast<std::uint8_t>(k >> 16),
                                    static_cast<std::uint8_t>(k >> 8), static_cast<std::uint8_t>(k),
                                    static_cast<std::uint8_t>(beta >> 24), static_cast<std::uint8_t>(beta >> 16),
                                    static_cast<std::uint8_t>(beta >> 8), static_cast<std::uint8_t>(beta)};
    out.write(reinterpret_cast<const char*>(header), 9);
    out.write(reinterpret_cast<const char*>(model.lz_lengths().data()),
              static_cast<std::streamsize>(model.size()));
  }
  return model;
}

BallMass u_ball_mass(const UniversalModel& model, std::span<const Symbol> x,
                     const DistortionModel& dist, const Budget& budget, std::uint64_t limit) {
  require(x.size() == model.k() && budget.block_len == model.k(), "block length mismatch");
  require(dist.beta() == model.beta(), "reproduction alphabet does not match U");
  std::map<std::uint64_t, std::uint64_t> histogram;
  for_each_ball_member(
      x, dist, budget.threshold(dist),
      [&](std::span<const Symbol> y) { ++histogram[model.lz_length(block_index(y, model.beta()))]; },
      limit);
  if (histogram.empty()) throw UsageError("distortion ball is empty");
  return {Dyadic::from_histogram(histogram), model.partition()};
}

double neg_log_u_ball(const UniversalModel& model, std::span<const Symbol> x,
                      const DistortionModel& dist, const Budget& budget, std::uint64_t limit) {
  return u_ball_mass(model, x, dist, budget, limit).neg_log2();
}

std::uint64_t u_sample_index(const UniversalModel& model, const Philox4x32& prf,
                             std::uint64_t stream_id, std::uint64_t counter) {
  const UniversalModel::Weight total = model.total_weight();
  const unsigned width = bit_width128(total - 1);
  const UniversalModel::Weight mask =
      width >= 128 ? ~UniversalModel::Weight{0} : (UniversalModel::Weight{1} << width) - 1;
  for (std::uint32_t attempt = 0;; ++attempt) {
    const UniversalModel::Weight r = prf.word128(stream_id, counter, attempt) & mask;
    if (r < total) return model.index_for(r);
  }
}

Sequence u_sample(const UniversalModel& model, const Philox4x32& prf, std::uint64_t stream_id,
                  std::uint64_t counter) {
  std::vector<Symbol> y(model.k());
  block_from_index(u_sample_index(model, prf, stream_id, counter), model.beta(), y);
  return Sequence(Alphabet(model.beta()), std::move(y));
}

}  // namespace fslossy
