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

#include "fslossy/lz78.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fslossy::lz78 {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kDenseBetaMax = 32;

}  // namespace

Parse incremental_parse(std::span<const Symbol> x, std::size_t beta) {
  require(beta >= 1, "alphabet size must be at least 1");
  Parse parse;
  std::unordered_map<std::uint64_t, std::uint32_t> trie;  // (node, symbol) -> phrase id
  auto key = [](std::uint32_t node, Symbol s) { return (std::uint64_t{node} << 16) | s; };
  std::uint32_t node = 0;
  for (Symbol s : x) {
    require(s < beta, "symbol outside alphabet");
    auto it = trie.find(key(node, s));
    if (it != trie.end()) {
      node = it->second;
      continue;
    }
    auto id = static_cast<std::uint32_t>(parse.phrases.size() + 1);
    trie.emplace(key(node, s), id);
    parse.phrases.push_back({node, s});
    node = 0;
  }
  if (node != 0) {
    parse.phrases.push_back({node, std::nullopt});
    parse.incomplete_last = true;
  }
  parse.c = parse.phrases.size();
  return parse;
}

std::vector<Symbol> expand(const Parse& parse) {
  std::vector<std::vector<Symbol>> dict(1);
  std::vector<Symbol> out;
  for (const auto& p : parse.phrases) {
    std::vector<Symbol> phrase = dict.at(p.pointer);
    if (p.innovation) phrase.push_back(*p.innovation);
    out.insert(out.end(), phrase.begin(), phrase.end());
    dict.push_back(std::move(phrase));
  }
  return out;
}

Parser::Parser(std::size_t beta) : beta_(beta), dense_(beta <= kDenseBetaMax) {
  require(beta >= 1, "alphabet size must be at least 1");
}

std::uint32_t Parser::child(std::uint32_t node, Symbol s) const {
  if (dense_) return table_[node * beta_ + s];
  auto it = map_.find((std::uint64_t{node} << 16) | s);
  return it == map_.end() ? kNone : it->second;
}

void Parser::add_child(std::uint32_t node, Symbol s, std::uint32_t id) {
  if (dense_) {
    table_[node * beta_ + s] = id;
  } else {
    map_.emplace((std::uint64_t{node} << 16) | s, id);
  }
}

Parser::Counts Parser::count(std::span<const Symbol> x) {
  // Node ids are phrase ids; node 0 is the root.
  if (dense_) {
    const std::size_t need = (x.size() + 1) * beta_;
    if (table_.size() < need) table_.resize(need);
    std::fill_n(table_.begin(), beta_, kNone);  // rows of later nodes are reset on creation
  } else {
    map_.clear();
  }
  Counts counts;
  std::uint32_t node = 0;
  std::uint32_t next_id = 1;
  for (Symbol s : x) {
    std::uint32_t c = child(node, s);
    if (c != kNone) {
      node = c;
      continue;
    }
    if (dense_) std::fill_n(table_.begin() + next_id * beta_, beta_, kNone);
    add_child(node, s, next_id++);
    ++counts.complete;
    node = 0;
  }
  counts.c = counts.complete + (node != 0 ? 1 : 0);
  return counts;
}

std::uint64_t Parser::code_length(std::span<const Symbol> x) {
  Counts counts = count(x);
  return code_length_from_counts(counts.c, counts.complete, beta_);
}

std::uint64_t code_length_from_counts(std::size_t c, std::size_t complete, std::size_t beta) {
  std::uint64_t bits = static_cast<std::uint64_t>(complete) * ceil_log2(beta);
  // sum_{j=1}^{c} ceil(log2 j), grouped by runs of equal ceil(log2 j)
  std::uint64_t lo = 1;
  for (unsigned w = 0; lo <= c; ++w) {
    std::uint64_t hi = std::min<std::uint64_t>(c, std::uint64_t{1} << w);
    bits += (hi - lo + 1) * w;
    lo = hi + 1;
  }
  return bits;
}

void lz_encode_into(Bitstring& out, std::span<const Symbol> x, std::size_t beta) {
  const unsigned sym_bits = ceil_log2(beta);
  Parse parse = incremental_parse(x, beta);
  for (std::size_t j = 1; j <= parse.phrases.size(); ++j) {
    const Phrase& p = parse.phrases[j - 1];
    out.append(p.pointer, ceil_log2(j));
    if (p.innovation) out.append(*p.innovation, sym_bits);
  }
}

Bitstring lz_encode(std::span<const Symbol> x, std::size_t beta) {
  Bitstring out;
  lz_encode_into(out, x, beta);
  return out;
}

std::vector<Symbol> lz_decode(BitReader& in, std::size_t length, std::size_t beta) {
  require(beta >= 1, "alphabet size must be at least 1");
  const unsigned sym_bits = ceil_log2(beta);
  // Phrases are stored as (parent, last symbol) so each phrase costs O(1).
  std::vector<std::uint32_t> parent{0};
  std::vector<Symbol> last{0};
  std::vector<std::size_t> len{0};
  std::vector<Symbol> out;
  out.reserve(length);
  std::vector<Symbol> scratch;
  auto emit = [&](std::uint32_t id) {
    scratch.clear();
    for (std::uint32_t n = id; n != 0; n = parent[n]) scratch.push_back(last[n]);
    out.insert(out.end(), scratch.rbegin(), scratch.rend());
  };
  for (std::size_t j = 1; out.size() < length; ++j) {
    const std::uint64_t ptr = in.read(ceil_log2(j));
    if (ptr >= j) throw FormatError("LZ78 pointer out of range");
    const std::size_t missing = length - out.size();
    if (len[ptr] == missing && ptr != 0) {
      emit(static_cast<std::uint32_t>(ptr));
      break;
    }
    if (len[ptr] + 1 > missing) throw FormatError("LZ78 phrase overruns block");
    const std::uint64_t s = in.read(sym_bits);
    if (s >= beta) throw FormatError("LZ78 innovation symbol out of range");
    parent.push_back(static_cast<std::uint32_t>(ptr));
    last.push_back(static_cast<Symbol>(s));
    len.push_back(len[ptr] + 1);
    emit(static_cast<std::uint32_t>(parent.size() - 1));
  }
  return out;
}

std::vector<Symbol> lz_decode(const Bitstring& bits, std::size_t length, std::size_t beta) {
  BitReader in(bits);
  return lz_decode(in, length, beta);
}

std::uint64_t lz_code_length(std::span<const Symbol> x, std::size_t beta) {
  Parser parser(beta);
  return parser.code_length(x);
}

std::uint64_t c_max(std::uint64_t k, std::uint64_t beta) {
  require(beta >= 1, "alphabet size must be at least 1");
  std::uint64_t c = 0;
  std::uint64_t remaining = k;
  for (std::uint64_t len = 1; remaining > 0; ++len) {
    // beta^len distinct phrases of length len, saturating
    auto level = checked_pow(beta, len, remaining);
    if (level && *level <= remaining / len) {
      c += *level;
      remaining -= *level * len;
      continue;
    }
    c += remaining / len;
    if (remaining % len != 0) ++c;  // shorter strings are all phrases already
    break;
  }
  return c;
}

double clogc(std::uint64_t c) {
  return c == 0 ? 0.0 : static_cast<double>(c) * std::log2(static_cast<double>(c));
}

double k_eps(std::uint64_t k, std::uint64_t beta) {
  const double b = static_cast<double>(beta);
  return std::log2(std::numbers::e) + static_cast<double>(c_max(k, beta)) * std::log2(2 * b) +
         std::log2(2 * b * static_cast<double>(k + 1));
}

LengthBound length_bound(std::uint64_t c, std::uint64_t k, std::uint64_t beta) {
  require(c <= c_max(k, beta), "phrase count exceeds c_max(k, beta)");
  LengthBound b;
  const double c1 = static_cast<double>(c + 1);
  b.raw = c1 * std::log2(2.0 * static_cast<double>(beta) * c1);
  b.clogc = clogc(c);
  b.k_eps = k_eps(k, beta);
  b.decomposed = b.clogc + b.k_eps;
  return b;
}

}  // namespace fslossy::lz78
