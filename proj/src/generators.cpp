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

#include "fslossy/generators.hpp"

#include <boost/algorithm/string.hpp>
#include <cmath>
#include <numeric>
#include <set>

#include "fslossy/io.hpp"
#include "fslossy/prf.hpp"

namespace fslossy::gen {

namespace {

std::vector<double> cumulative(const std::vector<double>& p) {
  require(!p.empty(), "probability vector is empty");
  double total = 0;
  for (double v : p) {
    require(v >= 0 && std::isfinite(v), "probabilities must be finite and nonnegative");
    total += v;
  }
  require(std::abs(total - 1.0) < 1e-9, "probabilities must sum to 1");
  std::vector<double> cum(p.size());
  std::partial_sum(p.begin(), p.end(), cum.begin());
  for (auto& c : cum) c /= total;
  // The last symbol with positive mass absorbs rounding.
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0) {
      for (std::size_t j = i; j < p.size(); ++j) cum[j] = 1.0;
      break;
    }
  }
  return cum;
}

Symbol draw(const std::vector<double>& cum, double u) {
  std::size_t s = 0;
  while (s + 1 < cum.size() && !(u < cum[s])) ++s;
  return static_cast<Symbol>(s);
}

Alphabet alphabet_for(std::size_t alpha, const std::string& labels) {
  std::string l = labels.empty() ? io::default_labels(alpha) : labels;
  require(l.size() == alpha, "label count must equal the alphabet size");
  std::vector<std::string> v;
  for (char c : l) v.emplace_back(1, c);
  return Alphabet(alpha, std::move(v));
}

}  // namespace

Sequence iid(const std::vector<double>& p, std::uint64_t seed, std::size_t n, const std::string& labels) {
  const auto cum = cumulative(p);
  const Philox4x32 prf(seed);
  std::vector<Symbol> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = draw(cum, prf.uniform(0, i));
  return Sequence(alphabet_for(p.size(), labels), std::move(x));
}

Sequence markov(const std::vector<std::vector<double>>& matrix, std::uint64_t seed, std::size_t n,
                const std::string& labels) {
  const std::size_t alpha = matrix.size();
  require(alpha >= 1, "transition matrix is empty");
  std::vector<std::vector<double>> cum;
  for (const auto& row : matrix) {
    require(row.size() == alpha, "transition matrix must be square");
    cum.push_back(cumulative(row));
  }
  const Philox4x32 prf(seed);
  std::vector<Symbol> x(n);
  Symbol state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    state = draw(cum[state], prf.uniform(0, i));
    x[i] = state;
  }
  return Sequence(alphabet_for(alpha, labels), std::move(x));
}

Sequence periodic(const std::string& pattern, std::size_t n, const std::string& labels) {
  require(!pattern.empty(), "pattern is empty");
  std::string alphabet = labels;
  if (alphabet.empty()) {
    std::set<char> seen(pattern.begin(), pattern.end());
    alphabet.assign(seen.begin(), seen.end());
  }
  std::string text(n, ' ');
  for (std::size_t i = 0; i < n; ++i) text[i] = pattern[i % pattern.size()];
  return Sequence::from_labels(alphabet, text);
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(", "), boost::token_compress_on);
  std::vector<double> out;
  for (auto& part : parts) {
    boost::trim(part);
    if (part.empty()) continue;
    Rational r = parse_rational(part);
    out.push_back(boost::rational_cast<double>(r));
  }
  require(!out.empty(), "empty probability vector");
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::string> rows;
  boost::split(rows, text, boost::is_any_of(";"));
  std::vector<std::vector<double>> out;
  for (auto& row : rows) {
    boost::trim(row);
    if (!row.empty()) out.push_back(parse_vector(row));
  }
  return out;
}

}  // namespace fslossy::gen
