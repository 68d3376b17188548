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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "fslossy/error.hpp"

namespace fslossy {

using Symbol = std::uint16_t;
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "1/4" or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

class Alphabet {
 public:
  Alphabet() : size_(1) {}
  explicit Alphabet(std::size_t size, std::vector<std::string> labels = {});

  std::size_t size() const { return size_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Display label for a symbol; falls back to the decimal index.
  std::string label(Symbol s) const;
  std::optional<Symbol> index_of(std::string_view label) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.size_ == b.size_; }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

/// Finite-alphabet string; every symbol is checked against the alphabet on construction.
class Sequence {
 public:
  Sequence() = default;
  Sequence(Alphabet alphabet, std::vector<Symbol> symbols);

  /// Builds a sequence from single-character labels, e.g. ("abc", "aabcc").
  static Sequence from_labels(std::string_view labels, std::string_view text);
  /// Digits '0'..'9' then 'a'..'z'; alphabet size is given explicitly.
  static Sequence from_digits(std::size_t alphabet_size, std::string_view digits);

  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const Symbol> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }

  Sequence slice(std::size_t pos, std::size_t len) const;
  std::span<const Symbol> block(std::size_t index, std::size_t k) const {
    return std::span<const Symbol>(symbols_).subspan(index * k, k);
  }
  std::string to_string() const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Symbol> symbols_;
};

/// Single-letter distortion d(x, y) as integer numerators over one shared denominator.
class DistortionModel {
 public:
  enum class Kind : std::uint8_t { hamming = 0, absolute = 1, matrix = 2 };

  DistortionModel(std::size_t alpha, std::size_t beta, std::vector<std::int64_t> numerators,
                  std::int64_t denominator, Kind kind = Kind::matrix);

  static DistortionModel hamming(std::size_t size);
  /// |i - j| on integer-indexed alphabets.
  static DistortionModel absolute(std::size_t size);

  std::size_t alpha() const { return alpha_; }
  std::size_t beta() const { return beta_; }
  Kind kind() const { return kind_; }
  std::int64_t denominator() const { return den_; }
  std::int64_t numerator(Symbol x, Symbol y) const { return num_[x * beta_ + y]; }
  Rational at(Symbol x, Symbol y) const { return Rational(numerator(x, y), den_); }
  /// min_y d(x, y), in numerator units.
  std::int64_t row_min(Symbol x) const { return row_min_[x]; }
  const std::vector<std::int64_t>& numerators() const { return num_; }

  /// Same model with every entry and the denominator multiplied by `factor`.
  DistortionModel scaled(std::int64_t factor) const;

 private:
  std::size_t alpha_;
  std::size_t beta_;
  std::vector<std::int64_t> num_;
  std::int64_t den_;
  Kind kind_;
  std::vector<std::int64_t> row_min_;
};

/// Per-letter budget D and block budget k*D, both exact.
struct Budget {
  Budget(Rational per_letter, std::size_t block_len);

  Rational per_letter;
  std::size_t block_len;
  Rational block_budget;

  /// Largest total numerator (over model.denominator()) that still lies in the ball.
  std::int64_t threshold(const DistortionModel& model) const;
};

/// Sum of d(x_i, y_i) in numerator units of the model denominator.
std::int64_t distortion_units(std::span<const Symbol> x, std::span<const Symbol> y,
                              const DistortionModel& model);
Rational distortion(const Sequence& x, const Sequence& y, const DistortionModel& model);
bool ball_contains(const Sequence& x, const Sequence& y, const DistortionModel& model,
                   const Budget& budget);

inline constexpr std::uint64_t kDefaultEnumerationLimit = std::uint64_t{1} << 26;

/// Depth-first walk over B(x, D) in lexicographic order of reproduction indices.
/// A prefix is dropped as soon as its distortion plus the cheapest possible
/// completion of the suffix exceeds the threshold. Every visited prefix counts
/// against `limit`; exceeding it throws LimitError.
///
/// The visitor receives each ball member as a span that is only valid during the call.
template <class Visitor>
std::uint64_t for_each_ball_member(std::span<const Symbol> x, const DistortionModel& model,
                                   std::int64_t threshold, Visitor&& visit,
                                   std::uint64_t limit = kDefaultEnumerationLimit) {
  const std::size_t k = x.size();
  const auto beta = static_cast<Symbol>(model.beta());
  std::vector<std::int64_t> suffix_min(k + 1, 0);
  for (std::size_t i = k; i-- > 0;) suffix_min[i] = suffix_min[i + 1] + model.row_min(x[i]);
  std::uint64_t visited = 1;
  if (suffix_min[0] > threshold) return 0;
  if (k == 0) {
    visit(std::span<const Symbol>());
    return 1;
  }

  std::vector<Symbol> y(k, 0);
  std::vector<std::int64_t> acc(k + 1, 0);
  std::vector<std::uint32_t> next(k, 0);  // next candidate symbol per depth
  std::uint64_t members = 0;
  std::size_t depth = 0;
  while (true) {
    if (next[depth] >= beta) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    const auto s = static_cast<Symbol>(next[depth]++);
    const std::int64_t d = acc[depth] + model.numerator(x[depth], s);
    if (d + suffix_min[depth + 1] > threshold) continue;
    if (++visited > limit) {
      throw LimitError("ball enumeration exceeded " + std::to_string(limit) + " prefixes");
    }
    y[depth] = s;
    acc[depth + 1] = d;
    if (depth + 1 == k) {
      visit(std::span<const Symbol>(y));
      ++members;
    } else {
      ++depth;
      next[depth] = 0;
    }
  }
  return members;
}

std::vector<Sequence> enumerate_ball(const Sequence& x, const DistortionModel& model,
                                     const Budget& budget,
                                     std::uint64_t limit = kDefaultEnumerationLimit);
std::uint64_t ball_size(std::span<const Symbol> x, const DistortionModel& model,
                        const Budget& budget, std::uint64_t limit = kDefaultEnumerationLimit);

/// Lexicographic index of a block, first symbol most significant.
std::uint64_t block_index(std::span<const Symbol> block, std::size_t base);
void block_from_index(std::uint64_t index, std::size_t base, std::span<Symbol> out);

/// base^exp, or nullopt if it exceeds `cap`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp,
                                         std::uint64_t cap = ~std::uint64_t{0});

}  // namespace fslossy
