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

#ifndef VISER_BENCH_H_
#define VISER_BENCH_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "viser/game.h"
#include "viser/markov.h"

namespace viser::bench {

// Deterministic generator behind every random instance.
//
// Raw 64-bit words come from std::mt19937_64 seeded with the given seed; the
// standard fixes that engine's output sequence. A word w becomes the double
// (w >> 11) * 2^-53 in [0, 1). Nothing else (in particular no
// std::uniform_real_distribution, whose algorithm is implementation-defined)
// touches the stream, so a seed names the same game on every platform.
class GameRng {
 public:
  explicit GameRng(std::uint64_t seed);
  double Unit();                               // [0, 1)
  double Uniform(double lo, double hi);        // [lo, hi)

 private:
  std::mt19937_64 engine_;
};

// r copies of the 3x2 exploiter example on the block diagonal; zero
// elsewhere. Victim block [[10,10],[10,10],[-1,-1]], exploiter block
// [[20,-1],[10,-1],[-1,0]].
BimatrixGame GenBlockBimatrix(int r);

// Block bimatrix rewards at every (h, s), uniform transitions, all initial
// mass on state 0.
MarkovGame GenBlockMarkov(int r, int num_states = 10, int horizon = 10);

// n x m rewards i.i.d. uniform on [-1, 1] for both players; B drawn after A.
BimatrixGame GenRandomBimatrix(int n, int m, std::uint64_t seed);

// n x n rewards i.i.d. uniform on [-1, 1]; transitions are i.i.d. uniforms
// normalized per (h, s, a, b); all initial mass on state 0. Draw order: for
// each h, for each s: R_v row-major, R_e row-major, then P over
// (a, b, s') in that nesting.
MarkovGame GenRandomMarkov(int n, int num_states, int horizon,
                           std::uint64_t seed);

// Victim payoff 10 H / r of the block Markov game (10 / r per step).
double BlockAnalyticValue(int r, int horizon);

struct ExperimentRow {
  std::string kind;  // "block" or "random"
  long size_param = 0;
  long total_entries = 0;  // H * S * n * m
  double p_v = 0.0;
  double p_e = 0.0;
  double payoff_v = 0.0;
  double payoff_e = 0.0;
  std::optional<double> analytic_v;
  std::optional<double> analytic_e;
  double time_victim_s = 0.0;
  double time_exploiter_s = 0.0;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentOptions {
  int num_states = 10;
  int horizon = 10;
  markov::SolveOptions solve;
};

// Solves both players on `game`, evaluates the realized payoffs of
// (pi*, nu*), and times each player's solve on a monotonic clock.
ExperimentRow RunInstance(const MarkovGame& game, std::string kind,
                          long size_param,
                          const markov::SolveOptions& options = {});

std::vector<ExperimentRow> RunBlockExperiment(
    const std::vector<int>& r_values, const ExperimentOptions& options = {});

// One row per (n, seed), sizes outermost.
std::vector<ExperimentRow> RunRandomExperiment(
    const std::vector<int>& n_values, const std::vector<std::uint64_t>& seeds,
    const ExperimentOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "kind,size_param,total_entries,p_v,p_e,payoff_v,payoff_e,analytic_v,"
    "analytic_e,time_victim_s,time_exploiter_s";

// Header line plus one line per row; doubles printed with 17 significant
// digits and absent analytic fields left empty.
std::string ToCsv(const std::vector<ExperimentRow>& rows);
// Inverse of ToCsv. Throws ValidationError on a header or field mismatch.
std::vector<ExperimentRow> ParseCsv(std::string_view text);

}  // namespace viser::bench

#endif  // VISER_BENCH_H_
