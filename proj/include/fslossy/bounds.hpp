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

#include <optional>
#include <span>
#include <vector>

#include "fslossy/core.hpp"
#include "fslossy/dyadic.hpp"
#include "fslossy/fsm.hpp"
#include "fslossy/kernels.hpp"
#include "fslossy/universal.hpp"

namespace fslossy::bounds {

struct BoundParams {
  std::size_t k = 1;
  std::size_t ell = 0;  // 0 for the phrase-count bound
  std::uint64_t q = 1;
  Rational D = 0;
};

/// A lower bound on the compression ratio, in bits per source symbol.
struct BoundReport {
  std::vector<double> per_block_main;  // per block, bits per symbol
  double correction = 0;
  double raw = 0;                      // mean(main) - correction, unclamped
  double value = 0;                    // max(raw, 0)
  BoundParams params;
};

/// (c_max(k,beta)/k) log2(4q^2) + q^2 log2(4q^2) / k
double correction_1(std::size_t k, std::size_t beta, std::uint64_t q);
/// (1/ell) log2{q^2 (1 + log2[1 + beta^ell / q^2])}
double correction_2(std::size_t ell, std::size_t beta, std::uint64_t q);
/// q^2 (1 + log2[1 + beta^ell / q^2]), the generalized Kraft right-hand side.
double kraft_rhs(std::size_t ell, std::size_t beta, std::uint64_t q);

/// Bound from per-block minima of c log2 c over the distortion balls.
BoundReport lower_bound_1(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                          const BoundParams& params);
/// Bound from per-block minima of the ell-block empirical entropy.
BoundReport lower_bound_2(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                          const BoundParams& params);

BoundReport lower_bound_1(const Sequence& x, std::size_t k, std::uint64_t q,
                          const DistortionModel& model, Rational D,
                          kernels::Exec exec = kernels::Exec::parallel);
BoundReport lower_bound_2(const Sequence& x, std::size_t k, std::size_t ell, std::uint64_t q,
                          const DistortionModel& model, Rational D,
                          kernels::Exec exec = kernels::Exec::parallel);

struct BestBound {
  BoundReport bound1;
  BoundReport bound2;
  double value = 0;  // max of the two
};
BestBound best_bound(std::span<const kernels::BlockAnalysis> blocks, std::size_t beta,
                     const BoundParams& params);
BestBound best_bound(const Sequence& x, const BoundParams& params, const DistortionModel& model,
                     kernels::Exec exec = kernels::Exec::parallel);

/// The four quantities of the chain for one block, plus exact ordering checks.
struct ChainReport {
  double min_clogc = 0;
  double k_eps = 0;
  std::uint64_t min_lz = 0;
  Dyadic ball_sum;                  // sum over the ball of 2^-LZ
  double neg_log_sum = 0;
  std::optional<Dyadic> partition;  // Z_U, when U is available
  std::optional<double> neg_log_u;

  bool clogc_dominates_lz() const;  // min_clogc + k_eps >= min_lz
  bool lz_dominates_sum() const;    // exact: 2^-min_lz <= ball_sum
  bool sum_dominates_u() const;     // exact: Z_U <= 1
  bool ordered() const { return clogc_dominates_lz() && lz_dominates_sum() && sum_dominates_u(); }
};

ChainReport chain_from(const kernels::BlockAnalysis& block, std::size_t k, std::size_t beta,
                       const UniversalModel* universal);
ChainReport chain_report(std::span<const Symbol> x_block, const DistortionModel& model,
                         const Budget& budget, const UniversalModel* universal,
                         std::uint64_t limit = kDefaultEnumerationLimit);

/// Raised when the information-lossless check cannot decide at its bound.
class IlUndecidedError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

struct KraftCheck {
  Dyadic lhs;   // sum over y^ell of 2^-min_z L[f(z, y^ell)]
  double rhs = 0;
  bool pass = false;
  fsm::IlVerdict il;
};

/// Requires the machine to pass the bounded IL check first (max_len defaults
/// to 2q^2 + ell). Undecided machines raise IlUndecidedError; machines with a
/// violation raise VerificationError.
KraftCheck generalized_kraft_check(const fsm::FsleSpec& m, std::size_t ell,
                                   std::optional<std::size_t> il_max_len = {},
                                   std::uint64_t il_node_budget = std::uint64_t{1} << 22);

}  // namespace fslossy::bounds
