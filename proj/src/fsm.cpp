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

#include "fslossy/fsm.hpp"

#include <deque>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fslossy/lz78.hpp"

namespace fslossy::fsm {

namespace {

std::uint64_t pow_or_throw(std::size_t base, std::size_t exp, std::uint64_t cap, const char* what) {
  auto v = checked_pow(base, exp, cap);
  if (!v) throw LimitError(std::string(what) + " exceeds the budget of " + std::to_string(cap));
  return *v;
}

// Prefix-tree state layout shared by the block machines: a prefix of length L
// with lexicographic index i is state offset(L) + i.
struct PrefixTree {
  PrefixTree(std::size_t k, std::size_t base, std::uint64_t budget) : k(k), base(base) {
    std::uint64_t level = 1;
    for (std::size_t len = 0; len < k; ++len) {
      offset.push_back(total);
      total += level;
      if (total > budget) throw LimitError("state budget exceeded by a block machine");
      if (len + 1 < k) level = pow_or_throw(base, len + 1, budget, "prefix tree");
    }
  }
  std::uint64_t state(std::size_t len, std::uint64_t index) const { return offset[len] + index; }

  std::size_t k;
  std::size_t base;
  std::vector<std::uint64_t> offset;
  std::uint64_t total = 0;
};

template <class Fn>
void for_each_block(std::size_t k, std::size_t alpha, Fn&& fn) {
  std::vector<Symbol> x(k, 0);
  while (true) {
    fn(std::span<const Symbol>(x));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++x[i] < alpha) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<State> reachable_block_states(const FsreSpec& m, std::uint64_t limit) {
  const std::uint64_t per_state = pow_or_throw(m.alpha, m.k, limit, "alpha^k");
  std::vector<State> order{m.initial};
  std::unordered_set<State> seen{m.initial};
  for (std::size_t i = 0; i < order.size(); ++i) {
    if ((i + 1) * per_state > limit) throw LimitError("block-start state exploration exceeds limit");
    const State start = order[i];
    for_each_block(m.k, m.alpha, [&](std::span<const Symbol> x) {
      State s = start;
      for (Symbol c : x) s = m.v(c, s);
      if (seen.insert(s).second) order.push_back(s);
    });
  }
  return order;
}

std::string digits_of(const ReproString& s) {
  if (s.empty()) return "-";
  std::string out;
  for (Symbol c : s) out += static_cast<char>(c < 10 ? '0' + c : 'a' + (c - 10));
  return out;
}

ReproString parse_digits(const std::string& text) {
  ReproString out;
  if (text == "-") return out;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      out.push_back(static_cast<Symbol>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<Symbol>(c - 'a' + 10));
    } else {
      throw FormatError("bad output symbol in machine file: '" + text + "'");
    }
  }
  return out;
}

}  // namespace

void FsreSpec::validate() const {
  require(k >= 1 && alpha >= 1 && beta >= 1 && state_count >= 1, "FSRE sizes must be positive");
  require(initial < state_count, "FSRE initial state out of range");
  require(output.size() == state_count * alpha && next.size() == state_count * alpha,
          "FSRE tables must be total over symbols x states");
  for (std::size_t i = 0; i < next.size(); ++i) {
    require(next[i] < state_count, "FSRE next state out of range");
    for (Symbol y : output[i]) require(y < beta, "FSRE output symbol out of range");
  }
}

void FsleSpec::validate() const {
  require(beta >= 1 && q >= 1, "FSLE sizes must be positive");
  require(initial < q, "FSLE initial state out of range");
  require(output.size() == q * beta && next.size() == q * beta,
          "FSLE tables must be total over symbols x states");
  for (State s : next) require(s < q, "FSLE next state out of range");
}

std::uint32_t FsvqSpec::a(std::span<const Symbol> x, State s) const {
  const std::uint64_t per_state = encode.size() / state_count;
  return encode[s * per_state + block_index(x, alpha)];
}

void FsvqSpec::validate() const {
  require(dim >= 1 && alpha >= 1 && beta >= 1 && state_count >= 1 && channel_size >= 1,
          "FSVQ sizes must be positive");
  require(initial < state_count, "FSVQ initial state out of range");
  auto vectors = checked_pow(alpha, dim, kDefaultStateBudget);
  require(vectors.has_value(), "FSVQ input space too large");
  require(encode.size() == state_count * *vectors, "FSVQ encode table must be total");
  require(decode.size() == state_count * channel_size && next.size() == decode.size(),
          "FSVQ decode/next tables must be total");
  for (auto u : encode) require(u < channel_size, "FSVQ channel symbol out of range");
  for (std::size_t i = 0; i < decode.size(); ++i) {
    require(decode[i].size() == dim, "FSVQ reproduction blocks must have length dim");
    for (Symbol y : decode[i]) require(y < beta, "FSVQ reproduction symbol out of range");
    require(next[i] < state_count, "FSVQ next state out of range");
  }
}

FsreTrace fsre_run(const FsreSpec& m, const Sequence& x) {
  require(x.alphabet().size() == m.alpha, "FSRE input alphabet mismatch");
  require(x.size() % m.k == 0, "input length must be divisible by k");
  FsreTrace t;
  t.y.reserve(x.size());
  t.states.reserve(x.size() + 1);
  std::vector<Symbol> xhat;
  xhat.reserve(x.size());
  State s = m.initial;
  t.states.push_back(s);
  std::size_t block_out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const ReproString& y = m.u(x[i], s);
    t.y.push_back(y);
    xhat.insert(xhat.end(), y.begin(), y.end());
    block_out += y.size();
    s = m.v(x[i], s);
    t.states.push_back(s);
    if ((i + 1) % m.k == 0) {
      if (block_out != m.k) {
        throw VerificationError("FSRE violates length conservation in block " +
                                std::to_string(i / m.k) + ": emitted " +
                                std::to_string(block_out) + " symbols, expected " +
                                std::to_string(m.k));
      }
      block_out = 0;
    }
  }
  t.xhat = Sequence(Alphabet(m.beta), std::move(xhat));
  return t;
}

FsleTrace fsle_run(const FsleSpec& m, std::span<const Symbol> xhat, std::optional<State> start) {
  FsleTrace t;
  State z = start.value_or(m.initial);
  for (Symbol y : xhat) {
    require(y < m.beta, "FSLE input symbol out of range");
    t.bits.append(m.f(y, z));
    z = m.g(y, z);
  }
  t.final_state = z;
  return t;
}

std::vector<Symbol> fsvq_simulate(const FsvqSpec& v, std::span<const Symbol> x) {
  require(x.size() % v.dim == 0, "input length must be divisible by the FSVQ dimension");
  std::vector<Symbol> out;
  out.reserve(x.size());
  State s = v.initial;
  for (std::size_t i = 0; i < x.size(); i += v.dim) {
    const std::uint32_t u = v.a(x.subspan(i, v.dim), s);
    const ReproString& b = v.b(u, s);
    out.insert(out.end(), b.begin(), b.end());
    s = v.phi(u, s);
  }
  return out;
}

State fsvq_block_start_state(const FsvqSpec& v, State s) {
  PrefixTree tree(v.dim, v.alpha, kDefaultStateBudget);
  return static_cast<State>(s * tree.total);
}

FsreSpec fsvq_to_fsre(const FsvqSpec& v, std::uint64_t state_budget) {
  v.validate();
  PrefixTree tree(v.dim, v.alpha, state_budget);
  if (tree.total * v.state_count > state_budget) throw LimitError("FSVQ reduction exceeds state budget");
  FsreSpec m;
  m.k = v.dim;
  m.alpha = v.alpha;
  m.beta = v.beta;
  m.state_count = tree.total * v.state_count;
  m.initial = static_cast<State>(v.initial * tree.total);
  m.output.resize(m.state_count * m.alpha);
  m.next.resize(m.state_count * m.alpha);
  std::vector<Symbol> full(v.dim);
  for (State sv = 0; sv < v.state_count; ++sv) {
    const std::uint64_t base = sv * tree.total;
    std::uint64_t level = 1;
    for (std::size_t len = 0; len < v.dim; ++len) {
      for (std::uint64_t idx = 0; idx < level; ++idx) {
        const std::uint64_t s = base + tree.state(len, idx);
        for (Symbol x = 0; x < v.alpha; ++x) {
          const std::uint64_t cell = s * m.alpha + x;
          const std::uint64_t extended = idx * v.alpha + x;
          if (len + 1 < v.dim) {
            m.next[cell] = static_cast<State>(base + tree.state(len + 1, extended));
            continue;
          }
          block_from_index(extended, v.alpha, full);
          const std::uint32_t u = v.a(full, sv);
          m.output[cell] = v.b(u, sv);
          m.next[cell] = static_cast<State>(v.phi(u, sv) * tree.total);
        }
      }
      level *= v.alpha;
    }
  }
  m.validate();
  return m;
}

FsreSpec block_mapper_to_fsre(std::size_t k, std::size_t alpha, std::size_t beta,
                              const BlockMapper& map, std::uint64_t state_budget) {
  // A one-state FSVQ whose channel symbol is the block index itself.
  FsvqSpec v;
  v.dim = k;
  v.alpha = alpha;
  v.beta = beta;
  v.state_count = 1;
  const std::uint64_t blocks = pow_or_throw(alpha, k, state_budget, "alpha^k");
  v.channel_size = blocks;
  v.encode.resize(blocks);
  v.decode.resize(blocks);
  v.next.assign(blocks, 0);
  std::vector<Symbol> x(k);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    v.encode[i] = static_cast<std::uint32_t>(i);
    block_from_index(i, alpha, x);
    v.decode[i].assign(k, 0);
    map(x, v.decode[i]);
  }
  return fsvq_to_fsre(v, state_budget);
}

FsreSpec budget_fsre(std::size_t k, const DistortionModel& model, const Budget& budget,
                     Symbol preferred, std::uint64_t state_budget) {
  require(budget.block_len == k, "budget block length does not match k");
  require(preferred < model.beta(), "preferred symbol outside the reproduction alphabet");
  const std::int64_t T = budget.threshold(model);
  std::int64_t worst_min = 0;
  for (Symbol x = 0; x < model.alpha(); ++x) worst_min = std::max(worst_min, model.row_min(x));
  require(static_cast<std::int64_t>(k) * worst_min <= T,
          "budget too small to guarantee any block within distortion kD");
  const auto levels = static_cast<std::uint64_t>(T) + 1;
  if (levels > state_budget / k) throw LimitError("budget FSRE exceeds state budget");
  FsreSpec m;
  m.k = k;
  m.alpha = model.alpha();
  m.beta = model.beta();
  m.state_count = k * levels;
  m.initial = static_cast<State>(T);  // position 0, full budget
  m.output.resize(m.state_count * m.alpha);
  m.next.resize(m.state_count * m.alpha);
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::int64_t reserve = static_cast<std::int64_t>(k - pos - 1) * worst_min;
    for (std::int64_t left = 0; left <= T; ++left) {
      const std::uint64_t s = pos * levels + static_cast<std::uint64_t>(left);
      for (Symbol x = 0; x < m.alpha; ++x) {
        Symbol y = preferred;
        if (model.numerator(x, y) > left - reserve) {
          y = 0;
          for (Symbol c = 1; c < m.beta; ++c) {
            if (model.numerator(x, c) < model.numerator(x, y)) y = c;
          }
        }
        const std::int64_t after = std::max<std::int64_t>(0, left - model.numerator(x, y));
        const std::uint64_t cell = s * m.alpha + x;
        m.output[cell] = {y};
        m.next[cell] = pos + 1 == k ? static_cast<State>(T)
                                    : static_cast<State>((pos + 1) * levels + after);
      }
    }
  }
  m.validate();
  return m;
}

FsreSpec identity_fsre(std::size_t k, std::size_t alpha) {
  FsreSpec m;
  m.k = k;
  m.alpha = alpha;
  m.beta = alpha;
  m.output.resize(alpha);
  m.next.assign(alpha, 0);
  for (Symbol x = 0; x < alpha; ++x) m.output[x] = {x};
  m.validate();
  return m;
}

FsreSpec constant_fsre(std::size_t k, std::size_t alpha, std::size_t beta, Symbol value) {
  FsreSpec m;
  m.k = k;
  m.alpha = alpha;
  m.beta = beta;
  m.output.assign(alpha, ReproString{value});
  m.next.assign(alpha, 0);
  m.validate();
  return m;
}

FsleSpec raw_fsle(std::size_t beta) {
  FsleSpec m;
  m.beta = beta;
  m.next.assign(beta, 0);
  for (Symbol y = 0; y < beta; ++y) {
    Bitstring b;
    b.append(y, ceil_log2(beta));
    m.output.push_back(b);
  }
  return m;
}

FsleSpec all_lambda_fsle(std::size_t beta) {
  FsleSpec m;
  m.beta = beta;
  m.output.assign(beta, Bitstring{});
  m.next.assign(beta, 0);
  return m;
}

FsleSpec alternating_fsle(std::size_t beta) {
  FsleSpec m;
  m.beta = beta;
  m.q = 2;
  for (State z = 0; z < 2; ++z) {
    for (Symbol y = 0; y < beta; ++y) {
      Bitstring b;
      if (z == 1) b.push_back(true);
      b.append(y, ceil_log2(beta));
      m.output.push_back(b);
      m.next.push_back(1 - z);
    }
  }
  return m;
}

std::uint64_t prefix_tree_states(std::size_t k, std::size_t base) {
  return PrefixTree(k, base, ~std::uint64_t{0} >> 1).total;
}

FsleSpec block_lz_fsle(std::size_t k, std::size_t beta, std::uint64_t state_budget) {
  PrefixTree tree(k, beta, state_budget);
  FsleSpec m;
  m.beta = beta;
  m.q = tree.total;
  m.output.resize(m.q * beta);
  m.next.resize(m.q * beta);
  std::vector<Symbol> full(k);
  std::uint64_t level = 1;
  for (std::size_t len = 0; len < k; ++len) {
    for (std::uint64_t idx = 0; idx < level; ++idx) {
      const std::uint64_t z = tree.state(len, idx);
      for (Symbol y = 0; y < beta; ++y) {
        const std::uint64_t cell = z * beta + y;
        const std::uint64_t extended = idx * beta + y;
        if (len + 1 < k) {
          m.next[cell] = static_cast<State>(tree.state(len + 1, extended));
        } else {
          block_from_index(extended, beta, full);
          m.output[cell] = lz78::lz_encode(full, beta);
          m.next[cell] = 0;
        }
      }
    }
    level *= beta;
  }
  m.validate();
  return m;
}

IlVerdict check_information_lossless(const FsleSpec& m, std::size_t max_len,
                                     std::uint64_t node_budget) {
  m.validate();
  // Two runs advance one symbol each per step. `excess` holds the bits the
  // leading run has produced beyond the other; runs whose outputs disagree are
  // dropped. A diverged pair that meets with equal state and no excess is a
  // violation.
  struct Node {
    State z1, z2;
    bool lead2;      // run 2 is ahead
    bool diverged;
    std::string excess;
    std::uint32_t depth;
    std::int64_t parent;
    Symbol a, b;
  };
  auto key_of = [](const Node& n) {
    std::string key;
    key.reserve(n.excess.size() + 12);
    key.append(reinterpret_cast<const char*>(&n.z1), sizeof n.z1);
    key.append(reinterpret_cast<const char*>(&n.z2), sizeof n.z2);
    key.push_back(static_cast<char>(n.lead2 | (n.diverged << 1)));
    key += n.excess;
    return key;
  };

  IlVerdict verdict;
  verdict.max_len = max_len;
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  // Every state is a possible start: the Kraft sum minimises over all of them.
  for (State z = 0; z < m.q; ++z) {
    const State start = z == 0 ? m.initial : (z == m.initial ? 0 : z);
    nodes.push_back({start, start, false, false, "", 0, -1, 0, 0});
    seen.insert(key_of(nodes.back()));
  }
  auto trace = [&](std::int64_t at) {
    std::vector<Symbol> x1, x2;
    for (; nodes[at].parent >= 0; at = nodes[at].parent) {
      x1.push_back(nodes[at].a);
      x2.push_back(nodes[at].b);
    }
    verdict.start = nodes[at].z1;
    return std::make_pair(std::vector<Symbol>(x1.rbegin(), x1.rend()),
                          std::vector<Symbol>(x2.rbegin(), x2.rend()));
  };

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= max_len) continue;
    for (Symbol a = 0; a < m.beta; ++a) {
      for (Symbol b = 0; b < m.beta; ++b) {
        const Node& cur = nodes[head];
        if (!cur.diverged && b < a) continue;  // mirror image of (b, a)
        std::string o1 = m.f(a, cur.z1).to_string();
        std::string o2 = m.f(b, cur.z2).to_string();
        (cur.lead2 ? o2 : o1).insert(0, cur.excess);
        const bool lead2 = o2.size() > o1.size();
        const std::string& longer = lead2 ? o2 : o1;
        const std::string& shorter = lead2 ? o1 : o2;
        if (longer.compare(0, shorter.size(), shorter) != 0) continue;
        Node n{m.g(a, cur.z1), m.g(b, cur.z2), lead2, cur.diverged || a != b,
               longer.substr(shorter.size()), cur.depth + 1, static_cast<std::int64_t>(head), a, b};
        if (n.diverged && n.z1 == n.z2 && n.excess.empty()) {
          nodes.push_back(std::move(n));
          verdict.kind = IlVerdict::Kind::violation;
          verdict.explored = nodes.size();
          verdict.witness = trace(static_cast<std::int64_t>(nodes.size() - 1));
          return verdict;
        }
        if (!seen.insert(key_of(n)).second) continue;
        if (nodes.size() >= node_budget) {
          verdict.kind = IlVerdict::Kind::undecided;
          verdict.explored = nodes.size();
          return verdict;
        }
        nodes.push_back(std::move(n));
      }
    }
  }
  verdict.kind = IlVerdict::Kind::no_violation;
  verdict.explored = nodes.size();
  verdict.exhausted = true;
  for (const auto& n : nodes) {
    if (n.depth >= max_len) {
      verdict.exhausted = false;
      break;
    }
  }
  return verdict;
}

ComplianceVerdict check_distortion_compliance(const FsreSpec& m, const DistortionModel& model,
                                              const Budget& budget, std::uint64_t limit) {
  m.validate();
  require(model.alpha() == m.alpha && model.beta() == m.beta, "model does not match FSRE alphabets");
  require(budget.block_len == m.k, "budget block length does not match FSRE k");
  const std::int64_t T = budget.threshold(model);
  ComplianceVerdict verdict;
  std::int64_t worst = 0;
  std::vector<Symbol> xhat;
  for (State start : reachable_block_states(m, limit)) {
    for_each_block(m.k, m.alpha, [&](std::span<const Symbol> x) {
      if (!verdict.compliant) return;
      xhat.clear();
      State s = start;
      for (Symbol c : x) {
        const ReproString& y = m.u(c, s);
        xhat.insert(xhat.end(), y.begin(), y.end());
        s = m.v(c, s);
      }
      if (xhat.size() != m.k) {
        throw VerificationError("FSRE violates length conservation; distortion undefined");
      }
      const std::int64_t d = distortion_units(x, xhat, model);
      worst = std::max(worst, d);
      if (d > T) {
        verdict.compliant = false;
        verdict.witness.emplace(x.begin(), x.end());
        verdict.block_start_state = start;
      }
    });
    if (!verdict.compliant) break;
  }
  verdict.worst = Rational(worst, model.denominator());
  return verdict;
}

ConservationVerdict check_length_conservation(const FsreSpec& m, std::uint64_t limit) {
  m.validate();
  ConservationVerdict verdict;
  auto starts = reachable_block_states(m, limit);
  verdict.reachable_block_states = starts.size();
  for (State start : starts) {
    for_each_block(m.k, m.alpha, [&](std::span<const Symbol> x) {
      if (!verdict.ok) return;
      std::size_t total = 0;
      State s = start;
      for (Symbol c : x) {
        total += m.u(c, s).size();
        s = m.v(c, s);
      }
      if (total != m.k) {
        verdict.ok = false;
        verdict.witness.emplace(x.begin(), x.end());
        verdict.block_start_state = start;
      }
    });
    if (!verdict.ok) break;
  }
  return verdict;
}

CascadeResult run_cascade(const FsreSpec& fsre, const FsleSpec& fsle, const Sequence& x) {
  require(fsre.beta == fsle.beta, "FSRE output alphabet must match FSLE input alphabet");
  FsreTrace t = fsre_run(fsre, x);
  FsleTrace b = fsle_run(fsle, t.xhat.symbols());
  CascadeResult r{std::move(t.xhat), std::move(b.bits), 0.0};
  r.rho = x.empty() ? 0.0 : static_cast<double>(r.bits.size()) / static_cast<double>(x.size());
  return r;
}

void write_machine(std::ostream& out, const FsreSpec& m) {
  m.validate();
  out << "FSRE " << m.k << ' ' << m.state_count << ' ' << m.alpha << ' ' << m.beta << ' ' << m.initial
      << '\n';
  out << "# symbol state output next\n";
  for (State s = 0; s < m.state_count; ++s) {
    for (Symbol x = 0; x < m.alpha; ++x) {
      out << x << ' ' << s << ' ' << digits_of(m.u(x, s)) << ' ' << m.v(x, s) << '\n';
    }
  }
}

void write_machine(std::ostream& out, const FsleSpec& m) {
  m.validate();
  out << "FSLE " << m.q << ' ' << m.beta << ' ' << m.initial << '\n';
  out << "# symbol state output next\n";
  for (State z = 0; z < m.q; ++z) {
    for (Symbol y = 0; y < m.beta; ++y) {
      const Bitstring& b = m.f(y, z);
      out << y << ' ' << z << ' ' << (b.empty() ? "-" : b.to_string()) << ' ' << m.g(y, z) << '\n';
    }
  }
}

Machine read_machine(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto p = line.find_first_not_of(" \t\r");
      if (p == std::string::npos || line[p] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw FormatError("empty machine file");
  std::istringstream header(line);
  std::string kind;
  header >> kind;
  auto read_rows = [&](std::size_t symbols, std::size_t states, auto&& store) {
    std::vector<bool> filled(symbols * states, false);
    std::size_t rows = 0;
    while (next_line()) {
      std::istringstream row(line);
      std::uint64_t x = 0, s = 0, nx = 0;
      std::string out;
      if (!(row >> x >> s >> out >> nx)) throw FormatError("malformed machine row: '" + line + "'");
      if (x >= symbols || s >= states || nx >= states) {
        throw FormatError("machine row out of range: '" + line + "'");
      }
      const std::size_t cell = s * symbols + x;
      if (filled[cell]) throw FormatError("duplicate machine row: '" + line + "'");
      filled[cell] = true;
      store(cell, out, static_cast<State>(nx));
      ++rows;
    }
    if (rows != symbols * states) throw FormatError("machine table is not total");
  };
  if (kind == "FSRE") {
    FsreSpec m;
    if (!(header >> m.k >> m.state_count >> m.alpha)) throw FormatError("bad FSRE header");
    if (!(header >> m.beta)) m.beta = m.alpha;
    if (!(header >> m.initial)) m.initial = 0;
    if (m.k == 0 || m.state_count == 0 || m.alpha == 0 || m.beta == 0) {
      throw FormatError("FSRE header sizes must be positive");
    }
    m.output.resize(m.state_count * m.alpha);
    m.next.resize(m.state_count * m.alpha);
    read_rows(m.alpha, m.state_count, [&](std::size_t cell, const std::string& out, State nx) {
      m.output[cell] = parse_digits(out);
      m.next[cell] = nx;
    });
    try {
      m.validate();
    } catch (const UsageError& e) {
      throw FormatError(e.what());
    }
    return m;
  }
  if (kind == "FSLE") {
    FsleSpec m;
    if (!(header >> m.q >> m.beta) || m.q == 0 || m.beta == 0) throw FormatError("bad FSLE header");
    if (!(header >> m.initial)) m.initial = 0;
    if (m.initial >= m.q) throw FormatError("FSLE initial state out of range");
    m.output.resize(m.q * m.beta);
    m.next.resize(m.q * m.beta);
    read_rows(m.beta, m.q, [&](std::size_t cell, const std::string& out, State nx) {
      if (out != "-") {
        for (char c : out) {
          if (c != '0' && c != '1') throw FormatError("FSLE output must be a bit string");
        }
        m.output[cell] = Bitstring::from_string(out);
      }
      m.next[cell] = nx;
    });
    return m;
  }
  throw FormatError("unknown machine kind '" + kind + "'");
}

}  // namespace fslossy::fsm
