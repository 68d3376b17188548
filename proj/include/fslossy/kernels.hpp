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

#include "fslossy/core.hpp"
#include "fslossy/dyadic.hpp"

// Data-parallel kernels. Each has a serial reference and an OpenMP version;
// both produce bit-identical results and the tests hold them to that.
namespace fslossy::kernels {

enum class Exec { serial, parallel };

/// LZ(y) for every y in beta^k, indexed lexicographically.
std::vector<std::uint8_t> lz_length_table(std::size_t k, std::size_t beta, Exec exec,
                                          std::uint64_t limit = kDefaultEnumerationLimit);

/// Everything the bounds, the chain report and schemes A/B need from one ball.
/// Argmins break ties toward the lexicographically smallest member.
struct BlockAnalysis {
  std::uint64_t ball_size = 0;
  std::uint64_t min_c = 0;                 // minimises c, hence c log c
  std::vector<Symbol> argmin_c;
  std::uint64_t min_lz = 0;
  std::vector<Symbol> argmin_lz;
  double min_entropy = 0;                  // min H(ell-blocks), bits per ell-block; ell > 0 only
  std::vector<Symbol> argmin_entropy;      // ties: smaller type class, then lexicographic
  Dyadic ball_lz_sum;                      // sum over the ball of 2^-LZ

  friend bool operator==(const BlockAnalysis&, const BlockAnalysis&) = default;
};

/// `ell` = 0 skips the entropy search.
BlockAnalysis analyze_block(std::span<const Symbol> x, const DistortionModel& model,
                            std::int64_t threshold, std::size_t ell,
                            std::uint64_t limit = kDefaultEnumerationLimit);

/// analyze_block over every k-block of x, results in block order.
std::vector<BlockAnalysis> analyze_blocks(std::span<const Symbol> x, std::size_t k,
                                          std::size_t ell, const DistortionModel& model,
                                          const Budget& budget, Exec exec,
                                          std::uint64_t limit = kDefaultEnumerationLimit);

/// Runs body(i) for i in [0, count), serially or with an OpenMP dynamic schedule.
/// The first exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body);

int max_threads();

}  // namespace fslossy::kernels

#include "fslossy/kernels_impl.hpp"
