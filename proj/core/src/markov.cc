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

#include "viser/markov.h"

#include <atomic>
#include <string>
#include <utility>

#include "viser/bimatrix.h"
#include "viser/error.h"
#include "viser/parallel.h"

namespace viser::markov {
namespace {

std::string StageLabel(int h, int s) {
  return "stage (h=" + std::to_string(h) + ", s=" + std::to_string(s) + "): ";
}

template <typename Fn>
auto WithStageContext(int h, int s, Fn&& fn) {
  try {
    return fn();
  } catch (const SolverStallError& e) {
    throw SolverStallError(StageLabel(h, s) + e.what());
  } catch (const NumericEmptySetError& e) {
    throw NumericEmptySetError(StageLabel(h, s) + e.what());
  } catch (const InformationError&) {
    throw;
  } catch (const Error& e) {
    throw Error(StageLabel(h, s) + e.what());
  }
}

int ThreadsFor(const MarkovGame& game, const SolveOptions& options) {
  const long entries =
      static_cast<long>(game.num_states()) * game.n() * game.m();
  return entries < options.min_parallel_entries ? 1 : options.threads;
}

std::vector<MixedStrategy> Placeholders(int count, int size) {
  return std::vector<MixedStrategy>(count, MixedStrategy::Pure(size, 0));
}

}  // namespace

Matrix StageMatrix(const MarkovGame& game, int h, int s, Player player,
                   const ValueTable& values) {
  if (h < 0 || h >= game.horizon() || s < 0 || s >= game.num_states()) {
    throw ShapeError("stage index out of range");
  }
  Matrix q = game.Rewards(player, h, s);
  if (h + 1 == game.horizon()) return q;
  if (values.horizon() != game.horizon() ||
      values.num_states() != game.num_states()) {
    throw ShapeError("value table does not match the game");
  }
  const auto future = values.step(h + 1);
  for (int a = 0; a < game.n(); ++a) {
    for (int b = 0; b < game.m(); ++b) {
      const auto next = game.Transition(h, s, a, b);
      double expected = 0.0;
      for (int t = 0; t < game.num_states(); ++t) {
        expected += next[t] * future[t];
      }
      q(a, b) += expected;
    }
  }
  return q;
}

MpviserResult SolveVictimMarkov(const MarkovGame& game,
                                const SolveOptions& options) {
  const int horizon = game.horizon();
  const int s_count = game.num_states();
  MarkovPolicy policy(Player::kVictim, horizon, s_count,
                      Placeholders(horizon * s_count, game.n()));
  ValueTable values(Player::kVictim, horizon, s_count);
  std::atomic<long> pivots{0};
  const int threads = ThreadsFor(game, options);

  for (int h = horizon - 1; h >= 0; --h) {
    ParallelFor(s_count, threads, [&](int s) {
      WithStageContext(h, s, [&] {
        const Matrix q = StageMatrix(game, h, s, Player::kVictim, values);
        bimatrix::VictimSolution stage = bimatrix::SolveVictim(q);
        values.at(h, s) = stage.p_v;
        policy.Set(h, s, std::move(stage.x_star));
        pivots += stage.iterations;
        return 0;
      });
    });
  }
  const double payoff = InitialValue(game, values);
  return {std::move(policy), std::move(values), payoff, std::nullopt,
          std::nullopt, pivots.load()};
}

MpviserResult SolveExploiterMarkov(const MarkovGame& game,
                                   const SolveOptions& options) {
  if (!game.has_exploiter_rewards()) {
    throw InformationError("exploiter solve needs the exploiter rewards R_e");
  }
  const int horizon = game.horizon();
  const int s_count = game.num_states();
  MarkovPolicy policy(Player::kExploiter, horizon, s_count,
                      Placeholders(horizon * s_count, game.m()));
  ValueTable victim_values(Player::kVictim, horizon, s_count);
  ValueTable values(Player::kExploiter, horizon, s_count);
  std::vector<StageDual> duals(static_cast<std::size_t>(horizon) * s_count);
  std::atomic<long> pivots{0};
  const int threads = ThreadsFor(game, options);

  for (int h = horizon - 1; h >= 0; --h) {
    ParallelFor(s_count, threads, [&](int s) {
      WithStageContext(h, s, [&] {
        const Matrix q_v =
            StageMatrix(game, h, s, Player::kVictim, victim_values);
        const bimatrix::VictimSolution victim = bimatrix::SolveVictim(q_v);
        victim_values.at(h, s) = victim.p_v;

        const Matrix q_e = StageMatrix(game, h, s, Player::kExploiter, values);
        bimatrix::ExploiterSolution stage =
            bimatrix::SolveExploiterWithValue(q_v, q_e, victim.p_v);
        values.at(h, s) = stage.p_e;
        duals[static_cast<std::size_t>(h) * s_count + s] = {
            std::move(stage.w_star), stage.alpha_star};
        policy.Set(h, s, std::move(stage.y_star));
        pivots += victim.iterations + stage.iterations;
        return 0;
      });
    });
  }
  const double payoff = InitialValue(game, values);
  return {std::move(policy), std::move(values), payoff,
          std::move(victim_values), std::move(duals), pivots.load()};
}

double StageTolerance(int horizon, int h) {
  return 1e-6 * static_cast<double>(horizon - h);
}

bool VictimStageMembership(const MarkovGame& game,
                           const MpviserResult& victim_result, int h, int s,
                           const MixedStrategy& strategy, double tol) {
  const ValueTable& victim_values = victim_result.victim_values
                                        ? *victim_result.victim_values
                                        : victim_result.values;
  const Matrix q = StageMatrix(game, h, s, Player::kVictim, victim_values);
  return bimatrix::InVictimSet(q, victim_values.at(h, s), strategy, tol);
}

bool ExploiterStageMembership(const MarkovGame& game,
                              const MpviserResult& exploiter_result, int h,
                              int s, const MixedStrategy& strategy,
                              double tol) {
  if (!exploiter_result.victim_values) {
    throw InformationError(
        "exploiter membership needs a result from SolveExploiterMarkov");
  }
  const ValueTable& victim_values = *exploiter_result.victim_values;
  const Matrix q_v = StageMatrix(game, h, s, Player::kVictim, victim_values);
  const Matrix q_e =
      StageMatrix(game, h, s, Player::kExploiter, exploiter_result.values);
  return bimatrix::InExploiterSet(q_v, q_e, victim_values.at(h, s),
                                  exploiter_result.values.at(h, s), strategy,
                                  tol);
}

}  // namespace viser::markov
