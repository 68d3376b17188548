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
#include <string>
#include <vector>

#include "fslossy/core.hpp"

namespace fslossy::gen {

/// Every generator draws from the Philox stream 0 of `seed`, one draw per
/// symbol at counter = position.
Sequence iid(const std::vector<double>& p, std::uint64_t seed, std::size_t n,
             const std::string& labels = {});

/// Rows of `matrix` are transition distributions. The chain starts in state 0
/// and the first symbol is drawn from row 0.
Sequence markov(const std::vector<std::vector<double>>& matrix, std::uint64_t seed, std::size_t n,
                const std::string& labels = {});

/// Repeats `pattern` to length n. The alphabet is `labels`, or the sorted
/// characters of the pattern.
Sequence periodic(const std::string& pattern, std::size_t n, const std::string& labels = {});

/// "0.5,0.5" or "1/3,2/3".
std::vector<double> parse_vector(const std::string& text);
/// Rows separated by ';'.
std::vector<std::vector<double>> parse_matrix(const std::string& text);

}  // namespace fslossy::gen
