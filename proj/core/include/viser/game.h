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

#ifndef VISER_GAME_H_
#define VISER_GAME_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "viser/matrix.h"

namespace viser {

enum class Player { kVictim, kExploiter };

std::string_view PlayerName(Player player);
// Accepts "victim" or "exploiter"; throws ValidationError otherwise.
Player ParsePlayer(std::string_view name);

// A probability vector over one player's pure actions.
//
// Entries in [-kSimplexTol, 0) are clamped to zero and a sum within
// kSimplexTol of one is renormalized. Anything further from the simplex is
// rejected with ValidationError.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(int size, int action);
  static MixedStrategy Uniform(int size);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&,
                         const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// Two-player normal-form game. A holds the victim's payoffs and B the
// exploiter's; B is absent when only the victim's information is loaded.
class BimatrixGame {
 public:
  explicit BimatrixGame(Matrix a, std::optional<Matrix> b = std::nullopt);

  int n() const { return a_.rows(); }
  int m() const { return a_.cols(); }
  const Matrix& a() const { return a_; }
  bool has_b() const { return b_.has_value(); }
  // Throws InformationError if B is absent.
  const Matrix& b() const;

  BimatrixGame VictimView() const { return BimatrixGame(a_); }

 private:
  Matrix a_;
  std::optional<Matrix> b_;
};

// x^T M y.
double BimatrixPayoff(const MixedStrategy& x, const Matrix& m,
                      const MixedStrategy& y);

// Finite-horizon Markov game with per-step bimatrix rewards.
//
// Steps are 0-based here: h = 0 is the first decision step and h = H - 1 the
// last. All tensors are validated on construction.
class MarkovGame {
 public:
  struct Spec {
    int num_states = 0;
    int n = 0;
    int m = 0;
    int horizon = 0;
    std::vector<double> initial;             // mu, size S
    std::vector<Matrix> victim_rewards;      // index h * S + s, each n x m
    std::optional<std::vector<Matrix>> exploiter_rewards;
    std::vector<double> transitions;         // [h][s][a][b][s'] flattened
  };

  explicit MarkovGame(Spec spec);

  int num_states() const { return spec_.num_states; }
  int n() const { return spec_.n; }
  int m() const { return spec_.m; }
  int horizon() const { return spec_.horizon; }
  std::span<const double> initial() const { return spec_.initial; }
  bool has_exploiter_rewards() const {
    return spec_.exploiter_rewards.has_value();
  }

  // Throws InformationError when asking for the exploiter's rewards and they
  // are not attached.
  const Matrix& Rewards(Player player, int h, int s) const;
  // Distribution over next states after (a, b) at (h, s).
  std::span<const double> Transition(int h, int s, int a, int b) const;

  const Spec& spec() const { return spec_; }
  // Copy without the exploiter's reward tensor.
  MarkovGame VictimView() const;

 private:
  Spec spec_;
};

// Per-(step, state) mixed strategies of one player.
class MarkovPolicy {
 public:
  MarkovPolicy(Player owner, int horizon, int num_states,
               std::vector<MixedStrategy> decisions);

  Player owner() const { return owner_; }
  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  const MixedStrategy& at(int h, int s) const {
    return decisions_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  void Set(int h, int s, MixedStrategy strategy);

  friend bool operator==(const MarkovPolicy&, const MarkovPolicy&) = default;

 private:
  Player owner_;
  int horizon_;
  int num_states_;
  std::vector<MixedStrategy> decisions_;
};

// Stage values V_h(s) of one player for h in [0, H).
class ValueTable {
 public:
  ValueTable(Player owner, int horizon, int num_states);

  Player owner() const { return owner_; }
  int horizon() const { return horizon_; }
  int num_states() const { return num_states_; }
  double at(int h, int s) const {
    return values_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  double& at(int h, int s) {
    return values_[static_cast<std::size_t>(h) * num_states_ + s];
  }
  std::span<const double> step(int h) const {
    return {values_.data() + static_cast<std::size_t>(h) * num_states_,
            static_cast<std::size_t>(num_states_)};
  }

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

 private:
  Player owner_;
  int horizon_;
  int num_states_;
  std::vector<double> values_;
};

// Backward Bellman recursion for the values of (pi, nu) from `player`'s
// point of view.
ValueTable EvaluatePolicies(const MarkovGame& game, const MarkovPolicy& pi,
                            const MarkovPolicy& nu, Player player);

// sum_s mu(s) V_0(s).
double InitialValue(const MarkovGame& game, const ValueTable& values);

}  // namespace viser

#endif  // VISER_GAME_H_
