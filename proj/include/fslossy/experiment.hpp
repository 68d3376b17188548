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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fslossy/core.hpp"
#include "fslossy/schemes.hpp"

namespace fslossy::experiment {

struct SourceSpec {
  std::string file;                    // set for file sources
  std::string labels;                  // optional text labels
  std::string generator;               // iid | markov | periodic
  std::string params;                  // p vector, transition matrix or pattern
  std::vector<std::uint64_t> seeds{0};
  std::size_t n = 0;
};

/// A q entry of nullopt means "the scheme's own state count".
struct Spec {
  SourceSpec source;
  std::vector<std::size_t> k;
  std::vector<std::size_t> ell;
  std::vector<std::optional<std::uint64_t>> q;
  std::vector<Rational> D;
  std::vector<std::string> schemes;    // a | b | c | raw
  std::string dist = "hamming";
  Objective objective = Objective::exact_lz;
  std::uint64_t codebook_seed = 0;
  std::uint64_t max_draws = std::uint64_t{1} << 20;
  std::string output;

  void validate() const;
};

Spec parse_spec(const std::string& json_text);

struct Row {
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t ell = 0;
  std::uint64_t q = 0;
  Rational D = 0;
  std::string scheme;
  double rho = 0;
  double bound1 = 0;
  double bound2 = 0;
  double best = 0;
  std::optional<double> neg_log_u_per_symbol;
  std::optional<double> escape_rate;   // scheme C only
  std::optional<std::uint64_t> scheme_q;  // FSLE state count when the scheme is one
  bool q_match = false;
  bool semifaithful = true;
};

/// State count of the finite-state lossless encoder realising `scheme`, if any.
std::optional<std::uint64_t> scheme_state_count(const std::string& scheme, std::size_t k,
                                                std::size_t beta);

/// Rows come back in grid order: seed, k, ell, q, D, scheme.
std::vector<Row> run(const Spec& spec, unsigned jobs = 1);

void write_csv(std::ostream& out, const std::vector<Row>& rows);
std::string csv_header();
std::string gnuplot_script(const std::string& csv_path);

}  // namespace fslossy::experiment
