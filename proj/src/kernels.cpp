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

#include "fslossy/kernels.hpp"

#include <omp.h>

#include <limits>
#include <map>

#include "fslossy/empirical.hpp"
#include "fslossy/lz78.hpp"

namespace fslossy::kernels {

namespace {

constexpr std::uint64_t kTableChunk = 4096;

bool increment(std::span<Symbol> y, std::size_t beta) {
  for (std::size_t i = y.size(); i-- > 0;) {
    if (++y[i] < beta) return true;
    y[i] = 0;
  }
  return false;
}

void fill_table_range(std::vector<std::uint8_t>& table, std::size_t k, std::size_t beta,
                      std::uint64_t begin, std::uint64_t end) {
  lz78::Parser parser(beta);
  std::vector<Symbol> y(k);
  block_from_index(begin, beta, y);
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t len = parser.code_length(y);
    if (len > std::numeric_limits<std::uint8_t>::max()) {
      throw LimitError("LZ length exceeds the 8-bit table format");
    }
    table[i] = static_cast<std::uint8_t>(len);
    increment(y, beta);
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

std::vector<std::uint8_t> lz_length_table(std::size_t k, std::size_t beta, Exec exec,
                                          std::uint64_t limit) {
  auto size = checked_pow(beta, k, limit);
  if (!size) {
    throw LimitError("beta^k exceeds the enumeration limit of " + std::to_string(limit));
  }
  std::vector<std::uint8_t> table(*size);
  const std::uint64_t chunks = (*size + kTableChunk - 1) / kTableChunk;
  for_each_index(chunks, exec, [&](std::size_t c) {
    const std::uint64_t begin = c * kTableChunk;
    fill_table_range(table, k, beta, begin, std::min<std::uint64_t>(*size, begin + kTableChunk));
  });
  return table;
}

BlockAnalysis analyze_block(std::span<const Symbol> x, const DistortionModel& model,
                            std::int64_t threshold, std::size_t ell, std::uint64_t limit) {
  const std::size_t beta = model.beta();
  BlockAnalysis out;
  out.min_c = std::numeric_limits<std::uint64_t>::max();
  out.min_lz = std::numeric_limits<std::uint64_t>::max();
  out.min_entropy = std::numeric_limits<double>::infinity();
  BigInt best_type_size;
  std::map<std::uint64_t, std::uint64_t> lz_histogram;
  lz78::Parser parser(beta);

  std::vector<std::uint32_t> counts;
  if (ell > 0) {
    require(x.size() % ell == 0, "ell must divide the block length");
    auto sz = checked_pow(beta, ell, kMaxSuperAlphabet);
    require(sz.has_value(), "beta^ell exceeds the super-alphabet limit");
    counts.resize(*sz);
  }

  out.ball_size = for_each_ball_member(
      x, model, threshold,
      [&](std::span<const Symbol> y) {
        const auto pc = parser.count(y);
        const std::uint64_t len = lz78::code_length_from_counts(pc.c, pc.complete, beta);
        ++lz_histogram[len];
        if (pc.c < out.min_c) {
          out.min_c = pc.c;
          out.argmin_c.assign(y.begin(), y.end());
        }
        if (len < out.min_lz) {
          out.min_lz = len;
          out.argmin_lz.assign(y.begin(), y.end());
        }
        if (ell == 0) return;
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::size_t j = 0; j < y.size(); j += ell) ++counts[block_index(y.subspan(j, ell), beta)];
        const double h = entropy_of_counts(counts);
        if (h > out.min_entropy) return;
        if (h == out.min_entropy) {
          BigInt size = multinomial(counts);
          if (size >= best_type_size) return;
          best_type_size = std::move(size);
        } else {
          best_type_size = multinomial(counts);
        }
        out.min_entropy = h;
        out.argmin_entropy.assign(y.begin(), y.end());
      },
      limit);

  if (out.ball_size == 0) throw UsageError("distortion ball is empty");
  out.ball_lz_sum = Dyadic::from_histogram(lz_histogram);
  if (ell == 0) out.min_entropy = 0;
  return out;
}

std::vector<BlockAnalysis> analyze_blocks(std::span<const Symbol> x, std::size_t k,
                                          std::size_t ell, const DistortionModel& model,
                                          const Budget& budget, Exec exec, std::uint64_t limit) {
  require(k >= 1 && x.size() % k == 0, "block length k must divide n");
  require(budget.block_len == k, "budget block length does not match k");
  const std::int64_t threshold = budget.threshold(model);
  std::vector<BlockAnalysis> out(x.size() / k);
  for_each_index(out.size(), exec, [&](std::size_t i) {
    out[i] = analyze_block(x.subspan(i * k, k), model, threshold, ell, limit);
  });
  return out;
}

}  // namespace fslossy::kernels
