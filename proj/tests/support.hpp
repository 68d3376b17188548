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
#include "fslossy/prf.hpp"

namespace fslossy::testing {

/// Deterministic test randomness on top of the library PRF.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : prf_(seed), stream_(stream) {}
  std::uint64_t next() { return prf_.word64(stream_, counter_++); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double uniform() { return prf_.uniform(stream_, counter_++); }

  std::vector<Symbol> symbols(std::size_t n, std::size_t alphabet) {
    std::vector<Symbol> v(n);
    for (auto& s : v) s = static_cast<Symbol>(below(alphabet));
    return v;
  }

 private:
  Philox4x32 prf_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Every y in beta^k, filtered by distortion. No pruning.
inline std::vector<std::vector<Symbol>> brute_force_ball(std::span<const Symbol> x,
                                                         const DistortionModel& model,
                                                         std::int64_t threshold) {
  std::vector<std::vector<Symbol>> out;
  const auto total = *checked_pow(model.beta(), x.size());
  std::vector<Symbol> y(x.size());
  for (std::uint64_t i = 0; i < total; ++i) {
    block_from_index(i, model.beta(), y);
    if (distortion_units(x, y, model) <= threshold) out.push_back(y);
  }
  return out;
}

inline std::vector<Symbol> from_index(std::uint64_t index, std::size_t base, std::size_t k) {
  std::vector<Symbol> y(k);
  block_from_index(index, base, y);
  return y;
}

}  // namespace fslossy::testing
