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

#include "fslossy/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <map>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "fslossy/bounds.hpp"
#include "fslossy/fsm.hpp"
#include "fslossy/generators.hpp"
#include "fslossy/io.hpp"
#include "fslossy/kernels.hpp"
#include "fslossy/universal.hpp"

namespace fslossy::experiment {

using nlohmann::json;

void Spec::validate() const {
  require(!k.empty() && !ell.empty() && !q.empty() && !D.empty() && !schemes.empty(),
          "experiment needs nonempty k, ell, q, D and schemes lists");
  for (auto kk : k) {
    require(kk >= 1, "k must be positive");
    for (auto l : ell) require(l >= 1 && kk % l == 0, "every ell must divide every k");
  }
  for (const auto& d : D) require(d >= 0, "D must be nonnegative");
  for (const auto& qq : q) require(!qq || *qq >= 1, "q must be positive");
  for (const auto& s : schemes) {
    require(s == "a" || s == "b" || s == "c" || s == "raw", "unknown scheme '" + s + "'");
  }
  require(!source.file.empty() || !source.generator.empty(), "source needs a file or a generator");
  require(!source.seeds.empty(), "source needs at least one seed");
}

namespace {

template <class T>
std::vector<T> as_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Rational rational_of(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw UsageError("D values must be strings like \"1/4\" or integers");
}

}  // namespace

Spec parse_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("experiment spec is not valid JSON: ") + e.what());
  }
  Spec s;
  try {
    const json& src = j.at("source");
    s.source.file = src.value("file", "");
    s.source.labels = src.value("labels", "");
    s.source.generator = src.value("generator", "");
    if (src.contains("p")) s.source.params = src["p"].get<std::string>();
    if (src.contains("matrix")) s.source.params = src["matrix"].get<std::string>();
    if (src.contains("pattern")) s.source.params = src["pattern"].get<std::string>();
    if (src.contains("seeds")) s.source.seeds = as_list<std::uint64_t>(src["seeds"]);
    if (src.contains("seed")) s.source.seeds = {src["seed"].get<std::uint64_t>()};
    s.source.n = src.value("n", std::size_t{0});
    s.k = as_list<std::size_t>(j.at("k"));
    s.ell = as_list<std::size_t>(j.at("ell"));
    const json qs = j.at("q").is_array() ? j.at("q") : json::array({j.at("q")});
    for (const auto& q : qs) {
      if (q.is_string() && q.get<std::string>() == "auto") {
        s.q.emplace_back();
      } else {
        s.q.emplace_back(q.get<std::uint64_t>());
      }
    }
    const json ds = j.at("D").is_array() ? j.at("D") : json::array({j.at("D")});
    for (const auto& d : ds) s.D.push_back(rational_of(d));
    s.schemes = as_list<std::string>(j.at("schemes"));
    s.dist = j.value("dist", "hamming");
    const std::string objective = j.value("objective", "exact_lz");
    require(objective == "exact_lz" || objective == "clogc", "objective must be exact_lz or clogc");
    s.objective = objective == "clogc" ? Objective::clogc : Objective::exact_lz;
    s.codebook_seed = j.value("codebook_seed", std::uint64_t{0});
    s.max_draws = j.value("max_draws", std::uint64_t{1} << 20);
    s.output = j.value("output", "");
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

std::optional<std::uint64_t> scheme_state_count(const std::string& scheme, std::size_t k,
                                                std::size_t beta) {
  if (scheme == "raw") return 1;
  // Scheme C's bits depend on the source block, not only on the reproduction.
  if (scheme == "c") return std::nullopt;
  return fsm::prefix_tree_states(k, beta);
}

namespace {

Sequence load_source(const SourceSpec& src, std::uint64_t seed) {
  if (!src.file.empty()) {
    auto x = io::read_sequence(src.file, io::SequenceFormat::automatic, src.labels);
    if (src.n > 0) {
      require(src.n <= x.size(), "source file shorter than n");
      x = x.slice(0, src.n);
    }
    return x;
  }
  require(src.n > 0, "generated sources need n > 0");
  if (src.generator == "iid") return gen::iid(gen::parse_vector(src.params), seed, src.n, src.labels);
  if (src.generator == "markov") return gen::markov(gen::parse_matrix(src.params), seed, src.n, src.labels);
  if (src.generator == "periodic") return gen::periodic(src.params, src.n, src.labels);
  throw UsageError("unknown generator '" + src.generator + "'");
}

// Enough for U tables up to 2^24 entries; larger (k, beta) leave the column blank.
constexpr std::uint64_t kUniversalCap = std::uint64_t{1} << 24;

struct Task {
  std::size_t seed_i, k_i, ell_i, d_i;
};

struct TaskResult {
  // [q index][scheme index]
  std::vector<std::vector<Row>> rows;
};

}  // namespace

std::vector<Row> run(const Spec& spec, unsigned jobs) {
  spec.validate();
  jobs = std::max(1u, jobs);
  const auto exec = jobs > 1 ? kernels::Exec::serial : kernels::Exec::parallel;

  std::vector<Sequence> sources;
  for (auto seed : spec.source.seeds) sources.push_back(load_source(spec.source, seed));
  const std::size_t alpha = sources.front().alphabet().size();
  const DistortionModel model = io::distortion_from_spec(spec.dist, alpha);
  const std::size_t beta = model.beta();
  for (const auto& x : sources) {
    require(x.alphabet().size() == alpha, "all sources must share one alphabet");
    for (auto k : spec.k) require(x.size() % k == 0, "n must be divisible by every k");
  }

  std::map<std::size_t, UniversalModel> universal;
  for (auto k : spec.k) {
    auto size = checked_pow(beta, k, kUniversalCap);
    if (size && *size <= kUniversalCap) universal.emplace(k, build_universal(k, beta));
  }

  std::vector<Task> tasks;
  for (std::size_t s = 0; s < sources.size(); ++s)
    for (std::size_t ki = 0; ki < spec.k.size(); ++ki)
      for (std::size_t li = 0; li < spec.ell.size(); ++li)
        for (std::size_t di = 0; di < spec.D.size(); ++di) tasks.push_back({s, ki, li, di});

  std::vector<TaskResult> results(tasks.size());
  auto work = [&](const Task& t, TaskResult& out) {
    const Sequence& x = sources[t.seed_i];
    const std::size_t k = spec.k[t.k_i];
    const std::size_t ell = spec.ell[t.ell_i];
    const Rational D = spec.D[t.d_i];
    const auto analysis = kernels::analyze_blocks(x.symbols(), k, ell, model, Budget(D, k), exec);
    const auto uit = universal.find(k);
    const UniversalModel* u = uit == universal.end() ? nullptr : &uit->second;

    std::optional<double> neg_log_u;
    if (u) {
      const Dyadic z = u->partition();
      double total = 0;
      for (const auto& b : analysis) total += z.log2() - b.ball_lz_sum.log2();
      neg_log_u = total / static_cast<double>(x.size());
    }

    struct SchemeRun {
      double rho = 0;
      std::optional<double> escape_rate;
      bool semifaithful = true;
    };
    std::vector<SchemeRun> runs;
    for (const auto& name : spec.schemes) {
      SchemeRun r;
      if (name == "raw") {
        r.rho = ceil_log2(beta);
      } else {
        EncodeOptions o;
        o.scheme = parse_scheme(name);
        o.k = k;
        o.ell = ell;
        o.D = D;
        o.objective = spec.objective;
        o.seed = spec.codebook_seed;
        o.max_draws = spec.max_draws;
        o.exec = exec;
        o.universal = u;
        auto enc = encode(x, model, o);
        auto report = measure_rho(enc.bytes(), &x, false, u);
        r.rho = report.rho;
        r.semifaithful = report.semifaithful;
        if (o.scheme == SchemeId::c) {
          r.escape_rate = static_cast<double>(report.escapes) / static_cast<double>(analysis.size());
        }
      }
      runs.push_back(r);
    }

    out.rows.resize(spec.q.size());
    for (std::size_t qi = 0; qi < spec.q.size(); ++qi) {
      for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
        const auto& name = spec.schemes[si];
        const auto own_q = scheme_state_count(name, k, beta);
        const std::uint64_t q = spec.q[qi] ? *spec.q[qi] : own_q.value_or(fsm::prefix_tree_states(k, beta));
        const auto b = bounds::best_bound(analysis, beta, {k, ell, q, D});
        Row row;
        row.generator = spec.source.file.empty() ? spec.source.generator : "file";
        row.seed = spec.source.seeds[t.seed_i];
        row.n = x.size();
        row.k = k;
        row.ell = ell;
        row.q = q;
        row.D = D;
        row.scheme = name;
        row.rho = runs[si].rho;
        row.bound1 = b.bound1.value;
        row.bound2 = b.bound2.value;
        row.best = b.value;
        row.neg_log_u_per_symbol = neg_log_u;
        row.escape_rate = runs[si].escape_rate;
        row.scheme_q = own_q;
        row.q_match = own_q && *own_q == q;
        row.semifaithful = runs[si].semifaithful;
        out.rows[qi].push_back(std::move(row));
      }
    }
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        work(tasks[i], results[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Tasks iterate seed, k, ell, D; rows are emitted seed, k, ell, q, D, scheme.
  std::vector<Row> rows;
  const std::size_t nd = spec.D.size();
  for (std::size_t base = 0; base < tasks.size(); base += nd) {
    for (std::size_t qi = 0; qi < spec.q.size(); ++qi)
      for (std::size_t di = 0; di < nd; ++di)
        for (auto& row : results[base + di].rows[qi]) rows.push_back(row);
  }
  return rows;
}

std::string csv_header() {
  return "generator,seed,n,k,ell,q,D,scheme,rho,bound1,bound2,best,neg_log_u_per_symbol,escape_rate,"
         "scheme_q,q_match";
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.generator << ',' << r.seed << ',' << r.n << ',' << r.k << ',' << r.ell << ',' << r.q << ','
        << to_string(r.D) << ',' << r.scheme << ',' << fmt(r.rho) << ',' << fmt(r.bound1) << ','
        << fmt(r.bound2) << ',' << fmt(r.best) << ','
        << (r.neg_log_u_per_symbol ? fmt(*r.neg_log_u_per_symbol) : "") << ','
        << (r.escape_rate ? fmt(*r.escape_rate) : "") << ','
        << (r.scheme_q ? std::to_string(*r.scheme_q) : "") << ',' << (r.q_match ? 1 : 0) << '\n';
  }
}

std::string gnuplot_script(const std::string& csv_path) {
  return "# rho and best bound against D, one curve per scheme\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'row'\n"
         "set ylabel 'bits per symbol'\n"
         "plot '" + csv_path + "' using 0:9 with linespoints title 'rho', \\\n"
         "     '' using 0:12 with lines title 'best bound', \\\n"
         "     '' using 0:13 with lines title '-log2 U[B] per symbol'\n";
}

}  // namespace fslossy::experiment
