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

#include "fslossy/core.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

namespace fslossy {

Rational parse_rational(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw UsageError("not a rational number: '" + text + "'");
    }
    return v;
  };
  std::string_view s(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t den = to_int(s.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + text + "'");
    return Rational(to_int(s.substr(0, slash)), den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 17) throw UsageError("too many decimals in '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t whole = dot == 0 ? 0 : to_int(s.substr(0, dot));
    std::int64_t part = frac.empty() ? 0 : to_int(frac);
    bool negative = !s.empty() && s.front() == '-';
    return Rational(whole * den + (negative ? -part : part), den);
  }
  return Rational(to_int(s));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Alphabet::Alphabet(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  require(size_ >= 1, "alphabet size must be at least 1");
  require(size_ <= std::numeric_limits<Symbol>::max() + std::size_t{1}, "alphabet too large");
  if (!labels_.empty()) {
    require(labels_.size() == size_, "label count does not match alphabet size");
    std::set<std::string> unique(labels_.begin(), labels_.end());
    require(unique.size() == labels_.size(), "alphabet labels must be distinct");
  }
}

std::string Alphabet::label(Symbol s) const {
  return has_labels() ? labels_[s] : std::to_string(s);
}

std::optional<Symbol> Alphabet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

Sequence::Sequence(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
  for (Symbol s : symbols_) {
    if (s >= alphabet_.size()) {
      throw UsageError("symbol " + std::to_string(s) + " outside alphabet of size " +
                       std::to_string(alphabet_.size()));
    }
  }
}

Sequence Sequence::from_labels(std::string_view labels, std::string_view text) {
  std::vector<std::string> names;
  for (char c : labels) names.emplace_back(1, c);
  Alphabet a(labels.size(), names);
  std::vector<Symbol> s;
  s.reserve(text.size());
  for (char c : text) {
    auto i = labels.find(c);
    if (i == std::string_view::npos) throw UsageError(std::string("unknown symbol '") + c + "'");
    s.push_back(static_cast<Symbol>(i));
  }
  return Sequence(std::move(a), std::move(s));
}

Sequence Sequence::from_digits(std::size_t alphabet_size, std::string_view digits) {
  std::vector<Symbol> s;
  s.reserve(digits.size());
  for (char c : digits) {
    if (c >= '0' && c <= '9') {
      s.push_back(static_cast<Symbol>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      s.push_back(static_cast<Symbol>(c - 'a' + 10));
    } else {
      throw UsageError(std::string("bad digit '") + c + "'");
    }
  }
  return Sequence(Alphabet(alphabet_size), std::move(s));
}

Sequence Sequence::slice(std::size_t pos, std::size_t len) const {
  require(pos + len <= symbols_.size(), "slice out of range");
  return Sequence(alphabet_, std::vector<Symbol>(symbols_.begin() + pos,
                                                 symbols_.begin() + pos + len));
}

std::string Sequence::to_string() const {
  std::string out;
  bool single = alphabet_.has_labels() || alphabet_.size() <= 36;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    Symbol s = symbols_[i];
    if (alphabet_.has_labels()) {
      out += alphabet_.label(s);
    } else if (single) {
      out += static_cast<char>(s < 10 ? '0' + s : 'a' + (s - 10));
    } else {
      if (i) out += ' ';
      out += std::to_string(s);
    }
  }
  return out;
}

DistortionModel::DistortionModel(std::size_t alpha, std::size_t beta,
                                 std::vector<std::int64_t> numerators, std::int64_t denominator,
                                 Kind kind)
    : alpha_(alpha), beta_(beta), num_(std::move(numerators)), den_(denominator), kind_(kind) {
  require(alpha_ >= 1 && beta_ >= 1, "distortion alphabets must be nonempty");
  require(num_.size() == alpha_ * beta_, "distortion matrix must be alpha x beta");
  require(den_ > 0, "distortion denominator must be positive");
  row_min_.resize(alpha_);
  for (std::size_t x = 0; x < alpha_; ++x) {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (std::size_t y = 0; y < beta_; ++y) {
      std::int64_t v = num_[x * beta_ + y];
      require(v >= 0, "distortion entries must be nonnegative");
      m = std::min(m, v);
    }
    row_min_[x] = m;
  }
}

DistortionModel DistortionModel::hamming(std::size_t size) {
  std::vector<std::int64_t> m(size * size, 1);
  for (std::size_t i = 0; i < size; ++i) m[i * size + i] = 0;
  return DistortionModel(size, size, std::move(m), 1, Kind::hamming);
}

DistortionModel DistortionModel::absolute(std::size_t size) {
  std::vector<std::int64_t> m(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      m[i * size + j] = i > j ? static_cast<std::int64_t>(i - j) : static_cast<std::int64_t>(j - i);
    }
  }
  return DistortionModel(size, size, std::move(m), 1, Kind::absolute);
}

DistortionModel DistortionModel::scaled(std::int64_t factor) const {
  require(factor > 0, "scale factor must be positive");
  std::vector<std::int64_t> m(num_);
  for (auto& v : m) v *= factor;
  return DistortionModel(alpha_, beta_, std::move(m), den_ * factor, Kind::matrix);
}

Budget::Budget(Rational d, std::size_t k)
    : per_letter(d), block_len(k), block_budget(d * static_cast<std::int64_t>(k)) {
  require(d >= 0, "distortion level D must be nonnegative");
  require(k >= 1, "block length must be positive");
}

std::int64_t Budget::threshold(const DistortionModel& model) const {
  // floor(kD * den): d_num / den <= kD  <=>  d_num <= floor(kD * den) for integer d_num
  __int128 num = static_cast<__int128>(block_budget.numerator()) * model.denominator();
  __int128 t = num / block_budget.denominator();
  constexpr auto cap = std::numeric_limits<std::int64_t>::max() / 2;
  return t > cap ? cap : static_cast<std::int64_t>(t);
}

std::int64_t distortion_units(std::span<const Symbol> x, std::span<const Symbol> y,
                              const DistortionModel& model) {
  require(x.size() == y.size(), "distortion: length mismatch");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] < model.alpha() && y[i] < model.beta(), "distortion: symbol outside model");
    total += model.numerator(x[i], y[i]);
  }
  return total;
}

Rational distortion(const Sequence& x, const Sequence& y, const DistortionModel& model) {
  require(x.alphabet().size() == model.alpha() && y.alphabet().size() == model.beta(),
          "distortion: alphabet sizes do not match the model");
  return Rational(distortion_units(x.symbols(), y.symbols(), model), model.denominator());
}

bool ball_contains(const Sequence& x, const Sequence& y, const DistortionModel& model,
                   const Budget& budget) {
  require(x.size() == budget.block_len && y.size() == budget.block_len,
          "ball_contains: block length mismatch");
  return distortion(x, y, model) <= budget.block_budget;
}

std::vector<Sequence> enumerate_ball(const Sequence& x, const DistortionModel& model,
                                     const Budget& budget, std::uint64_t limit) {
  require(x.size() == budget.block_len, "enumerate_ball: block length mismatch");
  require(x.alphabet().size() == model.alpha(), "enumerate_ball: alphabet does not match model");
  std::vector<Sequence> out;
  Alphabet repro(model.beta());
  for_each_ball_member(
      x.symbols(), model, budget.threshold(model),
      [&](std::span<const Symbol> y) {
        out.emplace_back(repro, std::vector<Symbol>(y.begin(), y.end()));
      },
      limit);
  return out;
}

std::uint64_t ball_size(std::span<const Symbol> x, const DistortionModel& model,
                        const Budget& budget, std::uint64_t limit) {
  return for_each_ball_member(x, model, budget.threshold(model), [](auto) {}, limit);
}

std::uint64_t block_index(std::span<const Symbol> block, std::size_t base) {
  std::uint64_t v = 0;
  for (Symbol s : block) v = v * base + s;
  return v;
}

void block_from_index(std::uint64_t index, std::size_t base, std::span<Symbol> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(index % base);
    index /= base;
  }
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return std::nullopt;
    v *= base;
  }
  return v;
}

}  // namespace fslossy
