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

#include "fslossy/dyadic.hpp"

#include <cmath>
#include <limits>

namespace fslossy {

double log2_big(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const unsigned top = static_cast<unsigned>(boost::multiprecision::msb(v));
  if (top < 62) return std::log2(static_cast<double>(static_cast<std::uint64_t>(v)));
  const unsigned shift = top - 61;
  auto head = static_cast<std::uint64_t>(BigInt(v >> shift));
  return std::log2(static_cast<double>(head)) + shift;
}

Dyadic Dyadic::from_histogram(const std::map<std::uint64_t, std::uint64_t>& count_by_length) {
  if (count_by_length.empty()) return {};
  const auto scale = static_cast<unsigned>(count_by_length.rbegin()->first);
  Dyadic d{0, scale};
  for (auto [len, count] : count_by_length) d.num += BigInt(count) << (scale - len);
  return d;
}

double Dyadic::log2() const { return log2_big(num) - scale; }

double Dyadic::to_double() const { return std::exp2(log2()); }

std::string Dyadic::to_string() const { return num.str() + "/2^" + std::to_string(scale); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.scale >= b.scale) return {a.num + (b.num << (a.scale - b.scale)), a.scale};
  return {(a.num << (b.scale - a.scale)) + b.num, b.scale};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  BigInt lhs = a.num;
  BigInt rhs = b.num;
  if (a.scale > b.scale) rhs <<= (a.scale - b.scale);
  if (b.scale > a.scale) lhs <<= (b.scale - a.scale);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace fslossy
