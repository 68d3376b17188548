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

// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "fslossy/kernels.hpp"
#include "fslossy/universal.hpp"
#include "../tests/support.hpp"

using namespace fslossy;

namespace {

kernels::Exec exec_of(const benchmark::State& state) {
  return state.range(0) ? kernels::Exec::parallel : kernels::Exec::serial;
}

void BM_LzLengthTable(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::lz_length_table(k, 2, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << k));
}

void BM_AnalyzeBlocks(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(1));
  fslossy::testing::Rng rng(7);
  const auto x = rng.symbols(k * 64, 2);
  const auto model = DistortionModel::hamming(2);
  const Budget budget(Rational(1, 4), k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::analyze_blocks(x, k, 2, model, budget, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_BuildUniversal(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_universal(k, 2, exec_of(state)));
  }
}

}  // namespace

// First argument: 0 serial, 1 parallel.
BENCHMARK(BM_LzLengthTable)->ArgsProduct({{0, 1}, {16, 20}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeBlocks)->ArgsProduct({{0, 1}, {12, 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildUniversal)->ArgsProduct({{0, 1}, {18}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
