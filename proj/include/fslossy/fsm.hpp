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
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fslossy/bits.hpp"
#include "fslossy/core.hpp"
#include "fslossy/dyadic.hpp"

namespace fslossy::fsm {

using State = std::uint32_t;
using ReproString = std::vector<Symbol>;

inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 22;

/// Finite-state reproduction encoder: y_t = u(x_t, s_t), s_{t+1} = v(x_t, s_t).
/// Tables are dense and indexed by state * alpha + symbol.
struct FsreSpec {
  std::size_t k = 1;
  std::size_t alpha = 1;
  std::size_t beta = 1;
  std::size_t state_count = 1;
  State initial = 0;
  std::vector<ReproString> output;
  std::vector<State> next;

  const ReproString& u(Symbol x, State s) const { return output[s * alpha + x]; }
  State v(Symbol x, State s) const { return next[s * alpha + x]; }
  /// Rejects partial tables and out-of-range entries.
  void validate() const;
};

/// Finite-state lossless encoder: b_t = f(xhat_t, z_t), z_{t+1} = g(xhat_t, z_t).
struct FsleSpec {
  std::size_t beta = 1;
  std::size_t q = 1;
  State initial = 0;
  std::vector<Bitstring> output;
  std::vector<State> next;

  const Bitstring& f(Symbol y, State z) const { return output[z * beta + y]; }
  State g(Symbol y, State z) const { return next[z * beta + y]; }
  void validate() const;
};

/// Finite-state vector quantizer of dimension `dim`:
/// channel symbol u = a(x, s), reproduction b(u, s), next state phi(u, s).
struct FsvqSpec {
  std::size_t dim = 1;
  std::size_t alpha = 1;
  std::size_t beta = 1;
  std::size_t state_count = 1;
  std::size_t channel_size = 1;
  State initial = 0;
  std::vector<std::uint32_t> encode;   // [s * alpha^dim + block_index(x)]
  std::vector<ReproString> decode;     // [s * channel_size + u], each of length dim
  std::vector<State> next;             // [s * channel_size + u]

  std::uint32_t a(std::span<const Symbol> x, State s) const;
  const ReproString& b(std::uint32_t u, State s) const { return decode[s * channel_size + u]; }
  State phi(std::uint32_t u, State s) const { return next[s * channel_size + u]; }
  void validate() const;
};

struct FsreTrace {
  std::vector<ReproString> y;  // one (possibly empty) string per input symbol
  Sequence xhat;
  std::vector<State> states;   // s_1 .. s_{n+1}
};

/// Runs the machine from its initial state. Throws VerificationError when the
/// outputs inside some k-block do not total exactly k symbols.
FsreTrace fsre_run(const FsreSpec& m, const Sequence& x);

struct FsleTrace {
  Bitstring bits;
  State final_state = 0;
  std::size_t length() const { return bits.size(); }
};
FsleTrace fsle_run(const FsleSpec& m, std::span<const Symbol> xhat, std::optional<State> start = {});

/// Direct simulation of the FSVQ encoder followed by its decoder.
std::vector<Symbol> fsvq_simulate(const FsvqSpec& v, std::span<const Symbol> x);

/// FSRE with u(x, s) = b(a(x, s), s) and v(x, s) = phi(a(x, s), s) at vector
/// granularity. The scalar machine buffers dim - 1 symbols, so its states are
/// (FSVQ state, partial vector) pairs; k = dim.
FsreSpec fsvq_to_fsre(const FsvqSpec& v, std::uint64_t state_budget = kDefaultStateBudget);
/// State of fsvq_to_fsre's machine that sits at FSVQ state s with an empty buffer.
State fsvq_block_start_state(const FsvqSpec& v, State s);

using BlockMapper = std::function<void(std::span<const Symbol> x, std::span<Symbol> y)>;

/// Block-code FSRE: the state is the partial input block, the machine emits the
/// empty string for k - 1 steps and then the whole mapped block.
FsreSpec block_mapper_to_fsre(std::size_t k, std::size_t alpha, std::size_t beta,
                              const BlockMapper& map,
                              std::uint64_t state_budget = kDefaultStateBudget);

/// Symbol-by-symbol FSRE whose state is (position in block, remaining budget).
/// It emits `preferred` whenever that still leaves enough budget to finish the
/// block at worst-case minimum cost, otherwise the cheapest symbol.
FsreSpec budget_fsre(std::size_t k, const DistortionModel& model, const Budget& budget,
                     Symbol preferred, std::uint64_t state_budget = kDefaultStateBudget);

FsreSpec identity_fsre(std::size_t k, std::size_t alpha);
FsreSpec constant_fsre(std::size_t k, std::size_t alpha, std::size_t beta, Symbol value);

/// One state; each symbol is its ceil(log2 beta)-bit index.
FsleSpec raw_fsle(std::size_t beta);
/// One state; every output empty. Not information lossless for beta >= 2.
FsleSpec all_lambda_fsle(std::size_t beta);
/// Two states alternating; state 0 writes the raw index, state 1 writes it
/// preceded by a '1' marker bit.
FsleSpec alternating_fsle(std::size_t beta);
/// Block LZ78 coder: states are the partial block, the LZ78 code of the block
/// is emitted on its last symbol. q = 1 + beta + ... + beta^(k-1).
FsleSpec block_lz_fsle(std::size_t k, std::size_t beta,
                       std::uint64_t state_budget = kDefaultStateBudget);
/// State count of the prefix-tree machines above: 1 + base + ... + base^(k-1).
std::uint64_t prefix_tree_states(std::size_t k, std::size_t base);

struct IlVerdict {
  enum class Kind { violation, no_violation, undecided };
  Kind kind = Kind::undecided;
  std::size_t max_len = 0;
  /// true when the pair search closed before max_len, which rules out
  /// violations of every length
  bool exhausted = false;
  std::uint64_t explored = 0;
  std::optional<std::pair<std::vector<Symbol>, std::vector<Symbol>>> witness;
  State start = 0;  // start state of the witness pair
};

/// Looks for two distinct equal-length inputs with the same output and final
/// state from z_1, by breadth-first search over pairs of runs in lockstep.
IlVerdict check_information_lossless(const FsleSpec& m, std::size_t max_len,
                                     std::uint64_t node_budget = std::uint64_t{1} << 22);

struct ComplianceVerdict {
  bool compliant = true;
  std::optional<std::vector<Symbol>> witness;  // a violating source block
  State block_start_state = 0;
  Rational worst = 0;                          // largest block distortion seen
};

/// Exhaustive over every block-start state reachable from s_1 and every x^k.
ComplianceVerdict check_distortion_compliance(const FsreSpec& m, const DistortionModel& model,
                                              const Budget& budget,
                                              std::uint64_t limit = kDefaultEnumerationLimit);

struct ConservationVerdict {
  bool ok = true;
  std::optional<std::vector<Symbol>> witness;
  State block_start_state = 0;
  std::uint64_t reachable_block_states = 0;
};
ConservationVerdict check_length_conservation(const FsreSpec& m,
                                              std::uint64_t limit = kDefaultEnumerationLimit);

struct CascadeResult {
  Sequence xhat;
  Bitstring bits;
  double rho = 0;  // L(b^n) / n
};
CascadeResult run_cascade(const FsreSpec& fsre, const FsleSpec& fsle, const Sequence& x);

// Text format. Header "FSRE k S alpha [beta]" or "FSLE q beta", then one line
// per (symbol, state): "symbol state output next". FSRE outputs are base-36
// digit strings, FSLE outputs are bit strings, '-' is the empty string.
// Lines starting with '#' are comments. The initial state is 0.
using Machine = std::variant<FsreSpec, FsleSpec>;
void write_machine(std::ostream& out, const FsreSpec& m);
void write_machine(std::ostream& out, const FsleSpec& m);
Machine read_machine(std::istream& in);

}  // namespace fslossy::fsm
