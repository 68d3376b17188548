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

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fslossy/bounds.hpp"
#include "fslossy/experiment.hpp"
#include "fslossy/fsm.hpp"
#include "fslossy/generators.hpp"
#include "fslossy/io.hpp"
#include "fslossy/lz78.hpp"
#include "fslossy/schemes.hpp"
#include "fslossy/universal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fslossy;

namespace {

enum Exit : int { ok = 0, other = 1, usage = 2, format = 3, limit = 4, verification = 5 };

struct Common {
  std::string dist = "hamming";
  std::string labels;
  std::string in_format = "auto";
  int jobs = 0;
  bool json_out = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--dist", c.dist, "hamming, absolute or file=PATH");
  cmd->add_option("--labels", c.labels, "characters of a text source alphabet, in symbol order");
  cmd->add_option("--format", c.in_format, "input format: auto, text, fseq or raw");
  cmd->add_option("--jobs", c.jobs, "worker threads (0 = OpenMP default)");
}

void apply_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

Sequence load(const std::string& path, const Common& c) {
  return io::read_sequence(path, io::parse_sequence_format(c.in_format), c.labels);
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

json rate_json(const RateReport& r) {
  json j;
  j["total_bits"] = r.total_bits;
  j["header_bits"] = r.header_bits;
  j["header_included"] = r.header_included;
  j["rho"] = r.rho;
  j["block_bits"] = r.block_bits;
  json d = json::array();
  for (const auto& v : r.block_distortion) d.push_back(to_string(v));
  j["block_distortion"] = d;
  j["semifaithful"] = r.semifaithful;
  j["escapes"] = r.escapes;
  return j;
}

void print_rate(const RateReport& r, std::size_t n, bool as_json) {
  if (as_json) {
    json j = rate_json(r);
    j["n"] = n;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "n             " << n << '\n'
            << "payload bits  " << (r.total_bits - (r.header_included ? r.header_bits : 0)) << '\n'
            << "header bits   " << r.header_bits << (r.header_included ? " (included)" : " (excluded)") << '\n'
            << "rho           " << r.rho << " bits/symbol\n"
            << "blocks        " << r.block_bits.size() << '\n';
  if (!r.block_distortion.empty()) {
    std::cout << "semifaithful  " << (r.semifaithful ? "yes" : "NO") << '\n';
  }
  std::cout << "escapes       " << r.escapes << '\n';
}

std::optional<UniversalModel> universal_for(std::size_t k, std::size_t beta, const std::string& cache) {
  if (cache.empty()) return build_universal(k, beta);
  return load_or_build_universal(cache, k, beta);
}

// ---- compress / decompress ----

struct CompressArgs {
  Common c;
  std::string input, output, scheme = "a", D = "0", objective = "exact_lz", cache;
  std::size_t k = 8, ell = 0;
  std::uint64_t seed = 0, max_draws = std::uint64_t{1} << 20;
  bool include_header = false;
};

int cmd_compress(const CompressArgs& a) {
  apply_jobs(a.c.jobs);
  Sequence x = load(a.input, a.c);
  DistortionModel model = io::distortion_from_spec(a.c.dist, x.alphabet().size());
  EncodeOptions o;
  o.scheme = parse_scheme(a.scheme);
  o.k = a.k;
  o.ell = a.ell;
  o.D = parse_rational(a.D);
  require(a.objective == "exact_lz" || a.objective == "clogc", "--objective must be exact_lz or clogc");
  o.objective = a.objective == "clogc" ? Objective::clogc : Objective::exact_lz;
  o.seed = a.seed;
  o.max_draws = a.max_draws;
  std::optional<UniversalModel> u;
  if (o.scheme == SchemeId::c) {
    u = universal_for(a.k, model.beta(), a.cache);
    o.universal = &*u;
  }
  Encoded enc = encode(x, model, o);
  const auto bytes = enc.bytes();
  io::write_file(a.output.empty() ? a.input + ".fsl" : a.output, bytes);
  print_rate(measure_rho(bytes, &x, a.include_header, u ? &*u : nullptr), x.size(), a.c.json_out);
  return ok;
}

struct DecompressArgs {
  Common c;
  std::string input, output, out_format = "auto", source, cache;
  bool include_header = false;
};

int cmd_decompress(const DecompressArgs& a) {
  apply_jobs(a.c.jobs);
  const auto bytes = io::read_file(a.input);
  std::optional<UniversalModel> u;
  {
    BitReader in(bytes, bytes.size() * 8);
    auto h = ContainerHeader::read(in);
    if (h.scheme == SchemeId::c) u = universal_for(h.k, h.beta, a.cache);
  }
  Decoded dec = decode(bytes, u ? &*u : nullptr);
  io::write_sequence(a.output.empty() ? a.input + ".out" : a.output, dec.reproduction,
                     io::parse_sequence_format(a.out_format));
  std::optional<Sequence> src;
  if (!a.source.empty()) src = load(a.source, a.c);
  auto report = measure_rho(bytes, src ? &*src : nullptr, a.include_header, u ? &*u : nullptr);
  print_rate(report, dec.header.n, a.c.json_out);
  if (src && !report.semifaithful) throw VerificationError("a decoded block exceeds the distortion budget");
  return ok;
}

// ---- bounds / chain ----

struct BoundsArgs {
  Common c;
  std::string input, output, D = "0", cache;
  std::size_t k = 8, ell = 1;
  std::uint64_t q = 1;
  bool verify = false;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(9);
  s << v;
  return s.str();
}

int cmd_bounds(const BoundsArgs& a) {
  apply_jobs(a.c.jobs);
  Sequence x = load(a.input, a.c);
  DistortionModel model = io::distortion_from_spec(a.c.dist, x.alphabet().size());
  require(x.size() % a.k == 0, "n must be divisible by k");
  const Rational D = parse_rational(a.D);
  auto blocks = kernels::analyze_blocks(x.symbols(), a.k, a.ell, model, Budget(D, a.k), kernels::Exec::parallel);
  auto best = bounds::best_bound(blocks, model.beta(), {a.k, a.ell, a.q, D});
  auto u = universal_for(a.k, model.beta(), a.cache);

  std::ofstream file;
  std::ostream& out = open_out(a.output, file);
  if (a.c.json_out) {
    json j;
    j["bound1"] = best.bound1.value;
    j["bound2"] = best.bound2.value;
    j["best"] = best.value;
    j["correction1"] = best.bound1.correction;
    j["correction2"] = best.bound2.correction;
    j["raw1"] = best.bound1.raw;
    j["raw2"] = best.bound2.raw;
    json rows = json::array();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      auto ch = bounds::chain_from(blocks[i], a.k, model.beta(), &*u);
      rows.push_back({{"block_index", i},
                      {"min_clogc", ch.min_clogc},
                      {"min_entropy_per_ell", blocks[i].min_entropy / static_cast<double>(a.ell)},
                      {"min_lz", ch.min_lz},
                      {"neg_log_sum", ch.neg_log_sum},
                      {"neg_log_u", *ch.neg_log_u}});
    }
    j["blocks"] = rows;
    out << j.dump(2) << '\n';
    return ok;
  }
  out << "block_index,min_clogc,min_entropy_per_ell,min_lz,neg_log_sum,neg_log_u,bound1,bound2,best\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto ch = bounds::chain_from(blocks[i], a.k, model.beta(), &*u);
    out << i << ',' << num(ch.min_clogc) << ',' << num(blocks[i].min_entropy / static_cast<double>(a.ell))
        << ',' << ch.min_lz << ',' << num(ch.neg_log_sum) << ',' << num(*ch.neg_log_u) << ",,,\n";
  }
  out << "summary,,,,,," << num(best.bound1.value) << ',' << num(best.bound2.value) << ','
      << num(best.value) << '\n';
  return ok;
}

int cmd_chain(const BoundsArgs& a) {
  apply_jobs(a.c.jobs);
  Sequence x = load(a.input, a.c);
  DistortionModel model = io::distortion_from_spec(a.c.dist, x.alphabet().size());
  require(x.size() % a.k == 0, "n must be divisible by k");
  const Rational D = parse_rational(a.D);
  auto blocks = kernels::analyze_blocks(x.symbols(), a.k, 0, model, Budget(D, a.k), kernels::Exec::parallel);
  auto u = universal_for(a.k, model.beta(), a.cache);
  std::ofstream file;
  std::ostream& out = open_out(a.output, file);
  std::size_t violations = 0;
  json rows = json::array();
  if (!a.c.json_out) out << "block_index,min_clogc,k_eps,min_lz,neg_log_sum,neg_log_u,ok\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto ch = bounds::chain_from(blocks[i], a.k, model.beta(), &*u);
    const bool good = ch.ordered();
    if (!good) ++violations;
    if (a.c.json_out) {
      rows.push_back({{"block_index", i},
                      {"min_clogc", ch.min_clogc},
                      {"k_eps", ch.k_eps},
                      {"min_lz", ch.min_lz},
                      {"neg_log_sum", ch.neg_log_sum},
                      {"neg_log_u", *ch.neg_log_u},
                      {"ok", good}});
    } else {
      out << i << ',' << num(ch.min_clogc) << ',' << num(ch.k_eps) << ',' << ch.min_lz << ','
          << num(ch.neg_log_sum) << ',' << num(*ch.neg_log_u) << ',' << (good ? 1 : 0) << '\n';
    }
  }
  if (a.c.json_out) out << json{{"blocks", rows}, {"violations", violations}}.dump(2) << '\n';
  if (a.verify && violations > 0) {
    throw VerificationError(std::to_string(violations) + " block(s) violate the chain ordering");
  }
  return ok;
}

// ---- gen ----

struct GenArgs {
  std::string generator, p, matrix, pattern, labels, output, out_format = "auto";
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

int cmd_gen(const GenArgs& a) {
  Sequence x;
  if (a.generator == "iid") {
    require(!a.p.empty(), "iid needs --p");
    x = gen::iid(gen::parse_vector(a.p), a.seed, a.n, a.labels);
  } else if (a.generator == "markov") {
    require(!a.matrix.empty(), "markov needs --matrix");
    x = gen::markov(gen::parse_matrix(a.matrix), a.seed, a.n, a.labels);
  } else if (a.generator == "periodic") {
    require(!a.pattern.empty(), "periodic needs --pattern");
    x = gen::periodic(a.pattern, a.n, a.labels);
  } else {
    throw UsageError("unknown generator '" + a.generator + "'");
  }
  if (a.output.empty() || a.output == "-") {
    std::cout << x.to_string() << '\n';
  } else {
    io::write_sequence(a.output, x, io::parse_sequence_format(a.out_format));
  }
  return ok;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string spec, output, gnuplot;
  unsigned jobs = 1;
};

int cmd_experiment(const ExperimentArgs& a) {
  auto bytes = io::read_file(a.spec);
  auto spec = experiment::parse_spec(std::string(bytes.begin(), bytes.end()));
  auto rows = experiment::run(spec, a.jobs);
  const std::string path = !a.output.empty() ? a.output : spec.output;
  std::ofstream file;
  std::ostream& out = open_out(path, file);
  experiment::write_csv(out, rows);
  if (!a.gnuplot.empty()) {
    std::ofstream g(a.gnuplot);
    if (!g) throw UsageError("cannot write " + a.gnuplot);
    g << experiment::gnuplot_script(path.empty() ? "experiment.csv" : path);
  }
  return ok;
}

// ---- fsm-check / fsm-make ----

struct FsmCheckArgs {
  Common c;
  std::string machine, D, trace;
  std::size_t max_len = 0, ell = 2;
  std::uint64_t node_budget = std::uint64_t{1} << 22;
};

std::string symbols_text(std::span<const Symbol> s, const std::string& labels) {
  std::string out;
  for (Symbol v : s) out.push_back(labels[v]);
  return out;
}

int check_fsle(const fsm::FsleSpec& m, const FsmCheckArgs& a) {
  const std::size_t max_len = a.max_len ? a.max_len : 2 * m.q * m.q + a.ell;
  auto il = fsm::check_information_lossless(m, max_len, a.node_budget);
  const char* kind = il.kind == fsm::IlVerdict::Kind::violation      ? "violation"
                     : il.kind == fsm::IlVerdict::Kind::no_violation ? "no_violation"
                                                                     : "undecided";
  json j;
  j["type"] = "FSLE";
  j["q"] = m.q;
  j["beta"] = m.beta;
  j["il"] = {{"verdict", kind}, {"max_len", il.max_len}, {"exhausted", il.exhausted}, {"explored", il.explored}};
  if (il.witness) {
    j["il"]["witness"] = {il.witness->first, il.witness->second};
    j["il"]["witness_start_state"] = il.start;
  }
  std::optional<bounds::KraftCheck> kraft;
  if (il.kind == fsm::IlVerdict::Kind::no_violation) {
    kraft = bounds::generalized_kraft_check(m, a.ell, max_len, a.node_budget);
    j["kraft"] = {{"ell", a.ell}, {"lhs", kraft->lhs.to_string()}, {"lhs_value", kraft->lhs.to_double()},
                  {"rhs", kraft->rhs}, {"pass", kraft->pass}};
  }
  if (a.c.json_out) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "FSLE q=" << m.q << " beta=" << m.beta << '\n'
              << "information lossless: " << kind << " (max_len " << il.max_len
              << (il.exhausted ? ", search closed" : "") << ", " << il.explored << " nodes)\n";
    if (il.witness) {
      auto digits = [](const std::vector<Symbol>& v) {
        std::string s;
        for (Symbol x : v) s += std::to_string(x) + ' ';
        return s.empty() ? s : s.substr(0, s.size() - 1);
      };
      std::cout << "  witness inputs: [" << digits(il.witness->first) << "] and [" << digits(il.witness->second)
                << "] from state " << il.start << '\n';
    }
    if (kraft) {
      std::cout << "generalized Kraft (ell=" << a.ell << "): lhs=" << kraft->lhs.to_string() << " ("
                << kraft->lhs.to_double() << ") rhs=" << kraft->rhs << (kraft->pass ? " pass" : " FAIL") << '\n';
    }
  }
  if (il.kind == fsm::IlVerdict::Kind::violation) throw VerificationError("machine is not information lossless");
  if (il.kind == fsm::IlVerdict::Kind::undecided) {
    throw bounds::IlUndecidedError("information losslessness undecided within the search budget");
  }
  if (kraft && !kraft->pass) throw VerificationError("generalized Kraft inequality fails");
  return ok;
}

int check_fsre(const fsm::FsreSpec& m, const FsmCheckArgs& a) {
  json j;
  j["type"] = "FSRE";
  j["k"] = m.k;
  j["states"] = m.state_count;
  j["alpha"] = m.alpha;
  j["beta"] = m.beta;
  auto cons = fsm::check_length_conservation(m);
  j["length_conservation"] = {{"ok", cons.ok}, {"reachable_block_states", cons.reachable_block_states}};
  if (cons.witness) j["length_conservation"]["witness"] = *cons.witness;
  std::optional<fsm::ComplianceVerdict> comp;
  if (!a.D.empty() && cons.ok) {
    DistortionModel model = io::distortion_from_spec(a.c.dist, m.alpha);
    require(model.beta() == m.beta, "distortion model beta does not match the machine");
    comp = fsm::check_distortion_compliance(m, model, Budget(parse_rational(a.D), m.k));
    j["distortion"] = {{"D", a.D}, {"compliant", comp->compliant}, {"worst", to_string(comp->worst)}};
    if (comp->witness) j["distortion"]["witness"] = *comp->witness;
  }
  std::optional<fsm::FsreTrace> trace;
  std::string in_labels = a.c.labels.empty() ? io::default_labels(m.alpha) : a.c.labels;
  std::string out_labels = m.beta == m.alpha ? in_labels : io::default_labels(m.beta);
  if (!a.trace.empty()) {
    trace = fsm::fsre_run(m, Sequence::from_labels(in_labels, a.trace));
    json steps = json::array();
    for (const auto& y : trace->y) steps.push_back(symbols_text(y, out_labels));
    j["trace"] = {{"input", a.trace}, {"outputs", steps}, {"xhat", symbols_text(trace->xhat.symbols(), out_labels)}};
  }
  if (a.c.json_out) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "FSRE k=" << m.k << " states=" << m.state_count << " alpha=" << m.alpha << " beta=" << m.beta
              << '\n'
              << "length conservation: " << (cons.ok ? "pass" : "FAIL") << " (" << cons.reachable_block_states
              << " reachable block-start states)\n";
    if (comp) {
      std::cout << "distortion compliance at D=" << a.D << ": " << (comp->compliant ? "pass" : "FAIL")
                << " (worst block distortion " << to_string(comp->worst) << ")\n";
    }
    if (trace) {
      std::cout << "trace " << a.trace << ":";
      for (const auto& y : trace->y) std::cout << ' ' << (y.empty() ? std::string("-") : symbols_text(y, out_labels));
      std::cout << "\n  xhat = " << symbols_text(trace->xhat.symbols(), out_labels) << '\n';
    }
  }
  if (!cons.ok) throw VerificationError("length conservation fails");
  if (comp && !comp->compliant) throw VerificationError("distortion budget exceeded");
  return ok;
}

int cmd_fsm_check(const FsmCheckArgs& a) {
  std::ifstream in(a.machine);
  if (!in) throw UsageError("cannot open " + a.machine);
  auto machine = fsm::read_machine(in);
  if (auto* m = std::get_if<fsm::FsleSpec>(&machine)) return check_fsle(*m, a);
  return check_fsre(std::get<fsm::FsreSpec>(machine), a);
}

struct FsmMakeArgs {
  std::string kind, output, D = "0", dist = "hamming";
  std::size_t k = 1, alpha = 2, beta = 0;
  unsigned preferred = 0;
};

void example1_map(std::span<const Symbol> x, std::span<Symbol> y) {
  std::copy(x.begin(), x.end(), y.begin());
  y[3] = x[2];
}

int cmd_fsm_make(const FsmMakeArgs& a) {
  const std::size_t beta = a.beta ? a.beta : a.alpha;
  std::ofstream file;
  std::ostream& out = open_out(a.output, file);
  if (a.kind == "raw") {
    fsm::write_machine(out, fsm::raw_fsle(beta));
  } else if (a.kind == "all-lambda") {
    fsm::write_machine(out, fsm::all_lambda_fsle(beta));
  } else if (a.kind == "alternating") {
    fsm::write_machine(out, fsm::alternating_fsle(beta));
  } else if (a.kind == "block-lz") {
    fsm::write_machine(out, fsm::block_lz_fsle(a.k, beta));
  } else if (a.kind == "identity") {
    fsm::write_machine(out, fsm::identity_fsre(a.k, a.alpha));
  } else if (a.kind == "constant") {
    fsm::write_machine(out, fsm::constant_fsre(a.k, a.alpha, beta, static_cast<Symbol>(a.preferred)));
  } else if (a.kind == "budget") {
    DistortionModel model = io::distortion_from_spec(a.dist, a.alpha);
    fsm::write_machine(out, fsm::budget_fsre(a.k, model, Budget(parse_rational(a.D), a.k),
                                             static_cast<Symbol>(a.preferred)));
  } else if (a.kind == "example1") {
    fsm::write_machine(out, fsm::block_mapper_to_fsre(5, 3, 3, example1_map));
  } else {
    throw UsageError("unknown machine kind '" + a.kind + "'");
  }
  return ok;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return format;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return limit;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return verification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return other;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fslossy: finite-state lossy compression of individual sequences"};
  app.require_subcommand(1);
  std::function<int()> action;

  CompressArgs ca;
  auto* compress = app.add_subcommand("compress", "encode a sequence into a container");
  compress->add_option("input", ca.input, "source sequence file")->required();
  compress->add_option("-o,--output", ca.output, "container path (default INPUT.fsl)");
  compress->add_option("--scheme", ca.scheme, "a, b or c")->check(CLI::IsMember({"a", "b", "c", "A", "B", "C"}));
  compress->add_option("--k", ca.k, "block length");
  compress->add_option("--ell", ca.ell, "super-symbol length (scheme B)");
  compress->add_option("--D", ca.D, "per-letter distortion level, e.g. 1/4");
  compress->add_option("--seed", ca.seed, "codebook seed (scheme C)");
  compress->add_option("--max-draws", ca.max_draws, "codebook draws before escaping (scheme C)");
  compress->add_option("--objective", ca.objective, "scheme A objective: exact_lz or clogc");
  compress->add_option("--universal-cache", ca.cache, "cache file for the LZ-length table");
  compress->add_flag("--include-header", ca.include_header, "count header bits in rho");
  compress->add_flag("--json", ca.c.json_out, "JSON report");
  add_common(compress, ca.c);
  compress->callback([&] { action = [&] { return cmd_compress(ca); }; });

  DecompressArgs da;
  auto* decompress = app.add_subcommand("decompress", "decode a container into its reproduction");
  decompress->add_option("input", da.input, "container file")->required();
  decompress->add_option("-o,--output", da.output, "reproduction path (default INPUT.out)");
  decompress->add_option("--out-format", da.out_format, "auto, text, fseq or raw");
  decompress->add_option("--source", da.source, "original source; enables the distortion check");
  decompress->add_option("--universal-cache", da.cache, "cache file for the LZ-length table");
  decompress->add_flag("--include-header", da.include_header, "count header bits in rho");
  decompress->add_flag("--json", da.c.json_out, "JSON report");
  add_common(decompress, da.c);
  decompress->callback([&] { action = [&] { return cmd_decompress(da); }; });

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "per-block statistics and both lower bounds as CSV");
  bounds_cmd->add_option("input", ba.input)->required();
  bounds_cmd->add_option("-o,--output", ba.output, "CSV path (default stdout)");
  bounds_cmd->add_option("--k", ba.k);
  bounds_cmd->add_option("--ell", ba.ell);
  bounds_cmd->add_option("--q", ba.q, "number of lossless-encoder states");
  bounds_cmd->add_option("--D", ba.D);
  bounds_cmd->add_option("--universal-cache", ba.cache);
  bounds_cmd->add_flag("--json", ba.c.json_out);
  add_common(bounds_cmd, ba.c);
  bounds_cmd->callback([&] { action = [&] { return cmd_bounds(ba); }; });

  BoundsArgs cha;
  auto* chain = app.add_subcommand("chain", "per-block chain of code-length quantities as CSV");
  chain->add_option("input", cha.input)->required();
  chain->add_option("-o,--output", cha.output, "CSV path (default stdout)");
  chain->add_option("--k", cha.k);
  chain->add_option("--D", cha.D);
  chain->add_option("--universal-cache", cha.cache);
  chain->add_flag("--verify", cha.verify, "exit nonzero if any block breaks the ordering");
  chain->add_flag("--json", cha.c.json_out);
  add_common(chain, cha.c);
  chain->callback([&] { action = [&] { return cmd_chain(cha); }; });

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic source");
  gen_cmd->add_option("generator", ga.generator, "iid, markov or periodic")
      ->required()
      ->check(CLI::IsMember({"iid", "markov", "periodic"}));
  gen_cmd->add_option("--p", ga.p, "iid probabilities, e.g. 0.7,0.3");
  gen_cmd->add_option("--matrix", ga.matrix, "markov rows separated by ';'");
  gen_cmd->add_option("--pattern", ga.pattern, "periodic pattern");
  gen_cmd->add_option("--labels", ga.labels, "output alphabet characters");
  gen_cmd->add_option("--seed", ga.seed);
  gen_cmd->add_option("--n", ga.n)->required();
  gen_cmd->add_option("-o,--output", ga.output, "output path (default stdout)");
  gen_cmd->add_option("--out-format", ga.out_format, "auto, text, fseq or raw");
  gen_cmd->callback([&] { action = [&] { return cmd_gen(ga); }; });

  ExperimentArgs ea;
  auto* exp = app.add_subcommand("experiment", "run a parameter sweep from a JSON spec");
  exp->add_option("spec", ea.spec)->required();
  exp->add_option("-o,--output", ea.output, "CSV path (overrides the spec)");
  exp->add_option("--jobs", ea.jobs, "grid cells run concurrently");
  exp->add_option("--gnuplot", ea.gnuplot, "also write a gnuplot script here");
  exp->callback([&] { action = [&] { return cmd_experiment(ea); }; });

  FsmCheckArgs fa;
  auto* check = app.add_subcommand("fsm-check", "check a machine file");
  check->add_option("machine", fa.machine)->required();
  check->add_option("--max-len", fa.max_len, "input length bound for the lossless check");
  check->add_option("--node-budget", fa.node_budget, "search node budget for the lossless check");
  check->add_option("--ell", fa.ell, "block length for the generalized Kraft sum");
  check->add_option("--D", fa.D, "check distortion compliance at this level (FSRE)");
  check->add_option("--trace", fa.trace, "run the FSRE on this text input");
  check->add_flag("--json", fa.c.json_out);
  add_common(check, fa.c);
  check->callback([&] { action = [&] { return cmd_fsm_check(fa); }; });

  FsmMakeArgs ma;
  auto* make = app.add_subcommand("fsm-make", "write a built-in machine");
  make->add_option("kind", ma.kind,
                   "raw, all-lambda, alternating, block-lz, identity, constant, budget or example1")
      ->required();
  make->add_option("-o,--output", ma.output, "machine path (default stdout)");
  make->add_option("--k", ma.k);
  make->add_option("--alpha", ma.alpha);
  make->add_option("--beta", ma.beta, "defaults to alpha");
  make->add_option("--D", ma.D);
  make->add_option("--dist", ma.dist);
  make->add_option("--symbol", ma.preferred, "constant value or preferred budget symbol");
  make->callback([&] { action = [&] { return cmd_fsm_make(ma); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }
  return run_guarded(action);
}
