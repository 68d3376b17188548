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
#include <unordered_map>
#include <vector>

#include "fslossy/bits.hpp"
#include "fslossy/core.hpp"

namespace fslossy::lz78 {

struct Phrase {
  std::uint32_t pointer = 0;           // 0 = empty phrase, otherwise a 1-based phrase index
  std::optional<Symbol> innovation;    // absent only for an incomplete final phrase
};

struct Parse {
  std::vector<Phrase> phrases;
  std::size_t c = 0;                   // includes an incomplete last phrase
  bool incomplete_last = false;
};

/// Incremental parse: each phrase is the shortest string not yet seen as a phrase.
Parse incremental_parse(std::span<const Symbol> x, std::size_t beta);
inline Parse incremental_parse(const Sequence& x) {
  return incremental_parse(x.symbols(), x.alphabet().size());
}

/// Expands a parse back into the symbol string.
std::vector<Symbol> expand(const Parse& parse);

/// Reusable dictionary trie for hot loops (exhaustive tables, ball searches).
/// Not thread-safe; give each thread its own.
class Parser {
 public:
  explicit Parser(std::size_t beta);

  /// Phrase count c and the number of complete phrases.
  struct Counts {
    std::size_t c = 0;
    std::size_t complete = 0;
  };
  Counts count(std::span<const Symbol> x);
  /// Exact bit length of lz_encode(x).
  std::uint64_t code_length(std::span<const Symbol> x);
  std::size_t beta() const { return beta_; }

 private:
  std::uint32_t child(std::uint32_t node, Symbol s) const;
  void add_child(std::uint32_t node, Symbol s, std::uint32_t id);

  std::size_t beta_;
  bool dense_;
  std::vector<std::uint32_t> table_;                       // dense: node * beta + s
  std::unordered_map<std::uint64_t, std::uint32_t> map_;   // sparse fallback for large beta
};

/// Codec. Phrase j (1-based) is a pointer in ceil(log2 j) bits followed by the
/// innovation in ceil(log2 beta) bits. An incomplete final phrase carries the
/// pointer only; the decoder recognises it because the pointed-to phrase length
/// equals the number of symbols still missing from the known block length.
void lz_encode_into(Bitstring& out, std::span<const Symbol> x, std::size_t beta);
Bitstring lz_encode(std::span<const Symbol> x, std::size_t beta);
inline Bitstring lz_encode(const Sequence& x) { return lz_encode(x.symbols(), x.alphabet().size()); }

std::vector<Symbol> lz_decode(BitReader& in, std::size_t length, std::size_t beta);
std::vector<Symbol> lz_decode(const Bitstring& bits, std::size_t length, std::size_t beta);

/// Equals lz_encode(x).size() without building the bitstring.
std::uint64_t lz_code_length(std::span<const Symbol> x, std::size_t beta);
inline std::uint64_t lz_code_length(const Sequence& x) {
  return lz_code_length(x.symbols(), x.alphabet().size());
}
/// Code length from phrase counts alone.
std::uint64_t code_length_from_counts(std::size_t c, std::size_t complete, std::size_t beta);

/// Largest phrase count over all length-k strings on a beta-ary alphabet.
std::uint64_t c_max(std::uint64_t k, std::uint64_t beta);

/// Finite-k forms of the LZ78 length envelope.
struct LengthBound {
  double raw = 0;         // (c+1) log2(2 beta (c+1))
  double clogc = 0;       // c log2 c
  double k_eps = 0;       // log2 e + c_max(k,beta) log2(2 beta) + log2(2 beta (k+1))
  double decomposed = 0;  // clogc + k_eps
};
LengthBound length_bound(std::uint64_t c, std::uint64_t k, std::uint64_t beta);
double k_eps(std::uint64_t k, std::uint64_t beta);
double clogc(std::uint64_t c);

}  // namespace fslossy::lz78
