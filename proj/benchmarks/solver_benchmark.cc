// Copyright 2026 The VISER Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "viser/bench.h"
#include "viser/bimatrix.h"
#include "viser/markov.h"

namespace {

using viser::bench::GenRandomBimatrix;
using viser::bench::GenRandomMarkov;

void BM_SolveVictim(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = GenRandomBimatrix(n, n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(viser::bimatrix::SolveVictim(game.a()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolveVictim)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_SolveExploiter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto game = GenRandomBimatrix(n, n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(viser::bimatrix::SolveExploiter(game.a(), game.b()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolveExploiter)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_BlockExploiter(benchmark::State& state) {
  const auto game = viser::bench::GenBlockBimatrix(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(viser::bimatrix::SolveExploiter(game.a(), game.b()));
  }
}
BENCHMARK(BM_BlockExploiter)->DenseRange(5, 20, 5);

// Single-threaded.
void BM_MarkovVictim(benchmark::State& state) {
  const auto game = GenRandomMarkov(static_cast<int>(state.range(0)), 10, 10, 1);
  viser::markov::SolveOptions options;
  options.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(viser::markov::SolveVictimMarkov(game, options));
  }
}
BENCHMARK(BM_MarkovVictim)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MarkovExploiter(benchmark::State& state) {
  const auto game = GenRandomMarkov(static_cast<int>(state.range(0)), 10, 10, 1);
  viser::markov::SolveOptions options;
  options.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(viser::markov::SolveExploiterMarkov(game, options));
  }
}
BENCHMARK(BM_MarkovExploiter)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
