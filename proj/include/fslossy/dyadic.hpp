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

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "fslossy/empirical.hpp"

namespace fslossy {

/// Exact nonnegative dyadic rational num / 2^scale.
struct Dyadic {
  BigInt num = 0;
  unsigned scale = 0;

  static Dyadic pow2_neg(unsigned e) { return {BigInt(1), e}; }
  /// sum over lengths L of count_L * 2^-L
  static Dyadic from_histogram(const std::map<std::uint64_t, std::uint64_t>& count_by_length);

  bool is_zero() const { return num == 0; }
  /// log2 of the value; -inf for zero.
  double log2() const;
  double to_double() const;
  std::string to_string() const;  // "num/2^scale"

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }
};

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& v);

}  // namespace fslossy
