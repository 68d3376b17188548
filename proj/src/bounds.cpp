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

#include "fslossy/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fslossy/lz78.hpp"

namespace fslossy::bounds {

namespace {

BoundReport finish(std::vector<double> main, double correction, const BoundParams& params) {
  BoundReport r;
  r.params = params;
  r.correction = correction;
  const double mean =
      main.empty() ? 0.0 : std::accumulate(main.begin(), main.end(), 0.0) / static_cast<double>(main.size());
  r.per_block_main = std::move(main);
  r.raw = mean - correction;
  r.value = std::max(0.0, r.raw);
  return r;
}

double q2(std::uint64_t q) { return static_cast<double>(q) * static_cast<double>(q); }

}  // namespace

double correction_1(std::size_t k, std::size_t beta, std::uint64_t q) {
  require(q >= 1 && k >= 1, "q and k must be positive");
  const double log4q2 = std::log2(4.0 * q2(q));
  return static_cast<double>(lz78::c_max(k, beta)) / static_cast<double>(k) * log4q2 +
         q2(q) * log4q2 / static_cast<double>(k);
}

double kraft_rhs(std::size_t ell, std::size_t beta, std::uint64_t q) {
  const double super = std::pow(static_cast<double>(beta), static_cast<double>(ell));
  return q2(q) * (1.0 + std::log2(1.0 + super / q2(q)));
}

double correction_2(std::size_t ell, std::size_t beta, std::uint64_t q) {
  require(q >= 1 && ell >= 1, "q and ell must be positive");
  return std::log2(kraft_rhs(ell, beta, q)) / static_cast<double>(ell);
}

BoundReport lower_bound_1(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                          const BoundParams& params) {
  std::vector<double> main;
  main.reserve(blocks.size());
  for (const auto& b : blocks) main.push_back(lz78::clogc(b.min_c) / static_cast<double>(params.k));
  return finish(std::move(main), correction_1(params.k, beta, params.q), params);
}

BoundReport lower_bound_2(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                          const BoundParams& params) {
  require(params.ell >= 1 && params.k % params.ell == 0, "ell must divide k");
  std::vector<double> main;
  main.reserve(blocks.size());
  for (const auto& b : blocks) main.push_back(b.min_entropy / static_cast<double>(params.ell));
  return finish(std::move(main), correction_2(params.ell, beta, params.q), params);
}

BoundReport lower_bound_1(const Sequence& x, std::size_t k, std::uint64_t q,
                          const DistortionModel& model, Rational D, kernels::Exec exec) {
  auto blocks = kernels::analyze_blocks(x.symbols(), k, 0, model, Budget(D, k), exec);
  return lower_bound_1(blocks, model.beta(), {k, 0, q, D});
}

BoundReport lower_bound_2(const Sequence& x, std::size_t k, std::size_t ell, std::uint64_t q,
                          const DistortionModel& model, Rational D, kernels::Exec exec) {
  require(ell >= 1 && k % ell == 0, "ell must divide k");
  auto blocks = kernels::analyze_blocks(x.symbols(), k, ell, model, Budget(D, k), exec);
  return lower_bound_2(blocks, model.beta(), {k, ell, q, D});
}

BestBound best_bound(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                     const BoundParams& params) {
  BestBound b;
  b.bound1 = lower_bound_1(blocks, beta, params);
  b.bound2 = lower_bound_2(blocks, beta, params);
  b.value = std::max(b.bound1.value, b.bound2.value);
  return b;
}

BestBound best_bound(const Sequence& x, const BoundParams& params, const DistortionModel& model,
                     kernels::Exec exec) {
  auto blocks = kernels::analyze_blocks(x.symbols(), params.k, params.ell, model,
                                        Budget(params.D, params.k), exec);
  return best_bound(blocks, model.beta(), params);
}

bool ChainReport::clogc_dominates_lz() const {
  return min_clogc + k_eps >= static_cast<double>(min_lz);
}

bool ChainReport::lz_dominates_sum() const { return Dyadic::pow2_neg(static_cast<unsigned>(min_lz)) <= ball_sum; }

bool ChainReport::sum_dominates_u() const {
  return !partition || *partition <= Dyadic{BigInt(1), 0};
}

ChainReport chain_from(const kernels::BlockAnalysis& block, std::size_t k, std::size_t beta,
                       const UniversalModel* universal) {
  ChainReport r;
  r.min_clogc = lz78::clogc(block.min_c);
  r.k_eps = lz78::k_eps(k, beta);
  r.min_lz = block.min_lz;
  r.ball_sum = block.ball_lz_sum;
  r.neg_log_sum = -block.ball_lz_sum.log2();
  if (universal) {
    require(universal->k() == k && universal->beta() == beta, "universal model does not match (k, beta)");
    r.partition = universal->partition();
    r.neg_log_u = r.partition->log2() - block.ball_lz_sum.log2();
  }
  return r;
}

ChainReport chain_report(std::span<const Symbol> x_block, const DistortionModel& model,
                         const Budget& budget, const UniversalModel* universal,
                         std::uint64_t limit) {
  require(x_block.size() == budget.block_len, "block length mismatch");
  auto block = kernels::analyze_block(x_block, model, budget.threshold(model), 0, limit);
  return chain_from(block, x_block.size(), model.beta(), universal);
}

KraftCheck generalized_kraft_check(const fsm::FsleSpec& m, std::size_t ell,
                                   std::optional<std::size_t> il_max_len,
                                   std::uint64_t il_node_budget) {
  m.validate();
  require(ell >= 1, "ell must be positive");
  KraftCheck check;
  const std::size_t max_len = il_max_len.value_or(static_cast<std::size_t>(2 * m.q * m.q + ell));
  check.il = fsm::check_information_lossless(m, max_len, il_node_budget);
  if (check.il.kind == fsm::IlVerdict::Kind::undecided) {
    throw IlUndecidedError("information losslessness undecided within the search budget");
  }
  if (check.il.kind == fsm::IlVerdict::Kind::violation) {
    throw VerificationError("machine is not information lossless");
  }
  auto words = checked_pow(m.beta, ell, kDefaultEnumerationLimit);
  if (!words) throw LimitError("beta^ell exceeds the enumeration limit");
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<Symbol> y(ell);
  for (std::uint64_t w = 0; w < *words; ++w) {
    block_from_index(w, m.beta, y);
    std::uint64_t best = ~std::uint64_t{0};
    for (fsm::State z = 0; z < m.q; ++z) {
      std::uint64_t len = 0;
      fsm::State s = z;
      for (Symbol c : y) {
        len += m.f(c, s).size();
        s = m.g(c, s);
      }
      best = std::min(best, len);
    }
    ++histogram[best];
  }
  check.lhs = Dyadic::from_histogram(histogram);
  check.rhs = kraft_rhs(ell, m.beta, m.q);
  check.pass = check.lhs.to_double() <= check.rhs;
  return check;
}

}  // namespace fslossy::bounds
