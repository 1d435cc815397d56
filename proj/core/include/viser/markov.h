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

#ifndef VISER_MARKOV_H_
#define VISER_MARKOV_H_

#include <optional>
#include <vector>

#include "viser/game.h"
#include "viser/matrix.h"

namespace viser::markov {

struct SolveOptions {
  // Worker threads for the per-state loop; 0 defers to ResolveThreads.
  int threads = 0;
  // Steps with fewer than this many S*n*m entries run on the calling thread.
  long min_parallel_entries = 4096;
};

// Dual certificate of one exploiter stage LP.
struct StageDual {
  std::vector<double> w;
  double alpha = 0.0;
};

struct MpviserResult {
  MarkovPolicy policy;
  // Stage values of the policy's owner.
  ValueTable values;
  // sum_s mu(s) V_0(s).
  double guaranteed_payoff = 0.0;
  // Exploiter runs only: the victim's stage values computed on the way, and
  // one dual certificate per (h, s) at index h * S + s.
  std::optional<ValueTable> victim_values;
  std::optional<std::vector<StageDual>> duals;
  long total_pivots = 0;
};

// Stage game Q_h(s)[a][b] = R_h(s)[a][b] + sum_s' P_h(s' | s, a, b) V_{h+1}(s')
// for `player`, with `values` supplying step h + 1. At the last step this is
// the reward matrix itself.
Matrix StageMatrix(const MarkovGame& game, int h, int s, Player player,
                   const ValueTable& values);

// Backward induction with the victim LP at every stage. Reads only the
// victim's rewards.
MpviserResult SolveVictimMarkov(const MarkovGame& game,
                                const SolveOptions& options = {});

// Single backward pass computing the victim's stage values and, from them,
// the exploiter LP at every stage. Needs both reward tensors.
MpviserResult SolveExploiterMarkov(const MarkovGame& game,
                                   const SolveOptions& options = {});

// Certificate tolerance at step h: LP error accumulates through the stage
// recursion, so the slack grows with the remaining horizon.
double StageTolerance(int horizon, int h);

// Whether `strategy` lies in the victim's maximin polytope of stage (h, s),
// rebuilt from the victim's values in `victim_result`.
bool VictimStageMembership(const MarkovGame& game,
                           const MpviserResult& victim_result, int h, int s,
                           const MixedStrategy& strategy, double tol);

// Whether `strategy` is a worst-case best response in stage (h, s), using the
// victim and exploiter values carried by `exploiter_result`.
bool ExploiterStageMembership(const MarkovGame& game,
                              const MpviserResult& exploiter_result, int h,
                              int s, const MixedStrategy& strategy,
                              double tol);

}  // namespace viser::markov

#endif  // VISER_MARKOV_H_
