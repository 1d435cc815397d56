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

#include "viser/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "viser/error.h"
#include "viser/tolerances.h"

namespace viser {
namespace {

void ValidateDistribution(std::span<const double> probs,
                          const std::string& what) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -kSimplexTol) {
      throw ValidationError(what + ": entry outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw ValidationError(what + ": sums to " + std::to_string(sum));
  }
}

void ValidateRewards(const std::vector<Matrix>& rewards, const std::string& name,
                     int count, int n, int m) {
  if (static_cast<int>(rewards.size()) != count) {
    throw ValidationError(name + ": expected " + std::to_string(count) +
                          " stage matrices, got " +
                          std::to_string(rewards.size()));
  }
  for (const Matrix& r : rewards) {
    if (r.rows() != n || r.cols() != m) {
      throw ValidationError(name + ": stage matrix is not " +
                            std::to_string(n) + "x" + std::to_string(m));
    }
    if (!r.AllFinite()) throw ValidationError(name + ": non-finite entry");
  }
}

}  // namespace

std::string_view PlayerName(Player player) {
  return player == Player::kVictim ? "victim" : "exploiter";
}

Player ParsePlayer(std::string_view name) {
  if (name == "victim") return Player::kVictim;
  if (name == "exploiter") return Player::kExploiter;
  throw ValidationError("unknown player '" + std::string(name) + "'");
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw ValidationError("empty mixed strategy");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kSimplexTol || p > 1.0 + kSimplexTol) {
      throw ValidationError("mixed strategy entry " + std::to_string(p) +
                            " outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTol) {
    throw ValidationError("mixed strategy sums to " + std::to_string(sum));
  }
  for (double& p : probs_) p /= sum;
}

MixedStrategy MixedStrategy::Pure(int size, int action) {
  if (action < 0 || action >= size) throw ShapeError("pure action out of range");
  std::vector<double> probs(size, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(int size) {
  if (size < 1) throw ShapeError("uniform strategy over no actions");
  return MixedStrategy(std::vector<double>(size, 1.0 / size));
}

BimatrixGame::BimatrixGame(Matrix a, std::optional<Matrix> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() < 1 || a_.cols() < 1) {
    throw ValidationError("payoff matrix must be at least 1x1");
  }
  if (!a_.AllFinite()) throw ValidationError("A has a non-finite entry");
  if (b_) {
    if (b_->rows() != a_.rows() || b_->cols() != a_.cols()) {
      throw ValidationError("A and B shapes differ");
    }
    if (!b_->AllFinite()) throw ValidationError("B has a non-finite entry");
  }
}

const Matrix& BimatrixGame::b() const {
  if (!b_) throw InformationError("exploiter payoffs (B) are not available");
  return *b_;
}

double BimatrixPayoff(const MixedStrategy& x, const Matrix& m,
                      const MixedStrategy& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) {
    throw ShapeError("payoff: strategy sizes " + std::to_string(x.size()) +
                     "," + std::to_string(y.size()) + " vs matrix " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  double total = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    if (x[i] == 0.0) continue;
    const auto row = m.row(i);
    double inner = 0.0;
    for (int j = 0; j < m.cols(); ++j) inner += row[j] * y[j];
    total += x[i] * inner;
  }
  return total;
}

MarkovGame::MarkovGame(Spec spec) : spec_(std::move(spec)) {
  const int s_count = spec_.num_states;
  if (s_count < 1 || spec_.n < 1 || spec_.m < 1 || spec_.horizon < 1) {
    throw ValidationError("Markov game needs S, n, m, H >= 1");
  }
  if (static_cast<int>(spec_.initial.size()) != s_count) {
    throw ValidationError("initial distribution has wrong length");
  }
  ValidateDistribution(spec_.initial, "initial distribution");
  const int stages = spec_.horizon * s_count;
  ValidateRewards(spec_.victim_rewards, "R_v", stages, spec_.n, spec_.m);
  if (spec_.exploiter_rewards) {
    ValidateRewards(*spec_.exploiter_rewards, "R_e", stages, spec_.n, spec_.m);
  }
  const std::size_t expected = static_cast<std::size_t>(stages) * spec_.n *
                               spec_.m * s_count;
  if (spec_.transitions.size() != expected) {
    throw ValidationError("transition tensor has " +
                          std::to_string(spec_.transitions.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  for (int h = 0; h < spec_.horizon; ++h) {
    for (int s = 0; s < s_count; ++s) {
      for (int a = 0; a < spec_.n; ++a) {
        for (int b = 0; b < spec_.m; ++b) {
          ValidateDistribution(Transition(h, s, a, b), "P");
        }
      }
    }
  }
}

const Matrix& MarkovGame::Rewards(Player player, int h, int s) const {
  const std::size_t idx = static_cast<std::size_t>(h) * spec_.num_states + s;
  if (player == Player::kVictim) return spec_.victim_rewards[idx];
  if (!spec_.exploiter_rewards) {
    throw InformationError("exploiter rewards (R_e) are not available");
  }
  return (*spec_.exploiter_rewards)[idx];
}

std::span<const double> MarkovGame::Transition(int h, int s, int a,
                                               int b) const {
  const std::size_t s_count = spec_.num_states;
  const std::size_t offset =
      (((static_cast<std::size_t>(h) * s_count + s) * spec_.n + a) * spec_.m +
       b) *
      s_count;
  return {spec_.transitions.data() + offset, s_count};
}

MarkovGame MarkovGame::VictimView() const {
  Spec copy = spec_;
  copy.exploiter_rewards.reset();
  return MarkovGame(std::move(copy));
}

MarkovPolicy::MarkovPolicy(Player owner, int horizon, int num_states,
                           std::vector<MixedStrategy> decisions)
    : owner_(owner),
      horizon_(horizon),
      num_states_(num_states),
      decisions_(std::move(decisions)) {
  if (static_cast<long>(decisions_.size()) !=
      static_cast<long>(horizon) * num_states) {
    throw ShapeError("policy must define a strategy for every (h, s)");
  }
}

void MarkovPolicy::Set(int h, int s, MixedStrategy strategy) {
  if (strategy.size() != at(h, s).size()) {
    throw ShapeError("policy entry changes action count");
  }
  decisions_[static_cast<std::size_t>(h) * num_states_ + s] =
      std::move(strategy);
}

ValueTable::ValueTable(Player owner, int horizon, int num_states)
    : owner_(owner),
      horizon_(horizon),
      num_states_(num_states),
      values_(static_cast<std::size_t>(horizon) * num_states, 0.0) {}

ValueTable EvaluatePolicies(const MarkovGame& game, const MarkovPolicy& pi,
                            const MarkovPolicy& nu, Player player) {
  const int horizon = game.horizon();
  const int s_count = game.num_states();
  for (const MarkovPolicy* p : {&pi, &nu}) {
    if (p->horizon() != horizon || p->num_states() != s_count) {
      throw ShapeError("policy shape does not match the game");
    }
  }
  if (pi.at(0, 0).size() != game.n() || nu.at(0, 0).size() != game.m()) {
    throw ShapeError("policy action counts do not match the game");
  }
  // Fail before the recursion if the reward tensor is missing.
  game.Rewards(player, 0, 0);

  ValueTable values(player, horizon, s_count);
  for (int h = horizon - 1; h >= 0; --h) {
    for (int s = 0; s < s_count; ++s) {
      const Matrix& reward = game.Rewards(player, h, s);
      const MixedStrategy& x = pi.at(h, s);
      const MixedStrategy& y = nu.at(h, s);
      double total = 0.0;
      for (int a = 0; a < game.n(); ++a) {
        if (x[a] == 0.0) continue;
        double row_total = 0.0;
        for (int b = 0; b < game.m(); ++b) {
          if (y[b] == 0.0) continue;
          double q = reward(a, b);
          if (h + 1 < horizon) {
            const auto next = game.Transition(h, s, a, b);
            const auto future = values.step(h + 1);
            q += std::inner_product(next.begin(), next.end(), future.begin(),
                                    0.0);
          }
          row_total += y[b] * q;
        }
        total += x[a] * row_total;
      }
      values.at(h, s) = total;
    }
  }
  return values;
}

double InitialValue(const MarkovGame& game, const ValueTable& values) {
  const auto mu = game.initial();
  const auto first = values.step(0);
  return std::inner_product(mu.begin(), mu.end(), first.begin(), 0.0);
}

}  // namespace viser
