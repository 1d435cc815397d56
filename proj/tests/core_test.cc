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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "test_support.h"
#include "viser/error.h"
#include "viser/game.h"
#include "viser/oracle.h"

namespace viser {
namespace {

using testing::TrapVictim;

TEST(BimatrixPayoffTest, TrapPureUpLeft) {
  EXPECT_DOUBLE_EQ(BimatrixPayoff(MixedStrategy::Pure(3, 0), TrapVictim(),
                                  MixedStrategy::Pure(2, 0)),
                   10.0);
}

TEST(BimatrixPayoffTest, ZeroMatrix) {
  EXPECT_EQ(BimatrixPayoff(MixedStrategy::Uniform(2), Matrix(2, 2),
                           MixedStrategy::Uniform(2)),
            0.0);
}

TEST(BimatrixPayoffTest, MatchingPenniesUniform) {
  EXPECT_EQ(BimatrixPayoff(MixedStrategy::Uniform(2), testing::MatchingPennies(),
                           MixedStrategy::Uniform(2)),
            0.0);
}

TEST(BimatrixPayoffTest, DimensionMismatchThrows) {
  EXPECT_THROW(BimatrixPayoff(MixedStrategy::Uniform(2), TrapVictim(),
                              MixedStrategy::Uniform(2)),
               ShapeError);
}

TEST(BimatrixPayoffTest, Bilinear) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const int m = 1 + (trial / 6) % 6;
    const Matrix a = testing::RandomMatrix(rng, n, m);
    const Matrix b = testing::RandomMatrix(rng, n, m);
    const MixedStrategy x = testing::RandomStrategy(rng, n);
    const MixedStrategy y = testing::RandomStrategy(rng, m);
    const double alpha = coef(rng);
    const double beta = coef(rng);
    const double lhs = BimatrixPayoff(x, Combine(alpha, a, beta, b), y);
    const double rhs =
        alpha * BimatrixPayoff(x, a, y) + beta * BimatrixPayoff(x, b, y);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(MixedStrategyTest, RenormalizesSmallDrift) {
  const MixedStrategy x({0.5 + 4e-7, 0.5});
  EXPECT_DOUBLE_EQ(x[0] + x[1], 1.0);
}

TEST(MixedStrategyTest, ClampsTinyNegatives) {
  const MixedStrategy x({-5e-7, 1.0});
  EXPECT_EQ(x[0], 0.0);
}

TEST(MixedStrategyTest, RejectsLargeViolations) {
  EXPECT_THROW(MixedStrategy({0.6, 0.6}), ValidationError);
  EXPECT_THROW(MixedStrategy({-0.1, 1.1}), ValidationError);
  EXPECT_THROW(MixedStrategy({}), ValidationError);
  EXPECT_THROW(MixedStrategy({NAN, 1.0}), ValidationError);
}

TEST(BimatrixGameTest, ValidatesShapes) {
  EXPECT_THROW(BimatrixGame(Matrix(2, 2), Matrix(2, 3)), ValidationError);
  EXPECT_THROW(BimatrixGame(Matrix(0, 0)), ValidationError);
  EXPECT_THROW(BimatrixGame(Matrix{{1.0, INFINITY}}), ValidationError);
  const BimatrixGame victim_only(Matrix(2, 2));
  EXPECT_FALSE(victim_only.has_b());
  EXPECT_THROW(victim_only.b(), InformationError);
}

MarkovGame::Spec SingleStage(const Matrix& reward) {
  MarkovGame::Spec spec;
  spec.num_states = 1;
  spec.n = reward.rows();
  spec.m = reward.cols();
  spec.horizon = 1;
  spec.initial = {1.0};
  spec.victim_rewards = {reward};
  spec.transitions.assign(static_cast<std::size_t>(spec.n) * spec.m, 1.0);
  return spec;
}

TEST(MarkovGameTest, RejectsBadTransitions) {
  MarkovGame::Spec spec = SingleStage(TrapVictim());
  spec.transitions[0] = 0.5;
  EXPECT_THROW(MarkovGame{spec}, ValidationError);
}

TEST(MarkovGameTest, RejectsBadInitialDistribution) {
  MarkovGame::Spec spec = SingleStage(TrapVictim());
  spec.initial = {0.9};
  EXPECT_THROW(MarkovGame{spec}, ValidationError);
}

TEST(MarkovGameTest, RejectsWrongRewardCount) {
  MarkovGame::Spec spec = SingleStage(TrapVictim());
  spec.victim_rewards.push_back(TrapVictim());
  EXPECT_THROW(MarkovGame{spec}, ValidationError);
}

TEST(EvaluatePoliciesTest, SingleStageTrap) {
  const MarkovGame game(SingleStage(TrapVictim()));
  const auto pi = testing::ConstantPolicy(Player::kVictim, 1, 1,
                                          MixedStrategy::Pure(3, 0));
  const auto nu = testing::ConstantPolicy(Player::kExploiter, 1, 1,
                                          MixedStrategy::Pure(2, 0));
  const ValueTable values = EvaluatePolicies(game, pi, nu, Player::kVictim);
  EXPECT_DOUBLE_EQ(values.at(0, 0), 10.0);
}

TEST(EvaluatePoliciesTest, MissingExploiterRewardsIsInformationError) {
  const MarkovGame game(SingleStage(TrapVictim()));
  const auto pi = testing::ConstantPolicy(Player::kVictim, 1, 1,
                                          MixedStrategy::Uniform(3));
  const auto nu = testing::ConstantPolicy(Player::kExploiter, 1, 1,
                                          MixedStrategy::Uniform(2));
  EXPECT_THROW(EvaluatePolicies(game, pi, nu, Player::kExploiter),
               InformationError);
}

TEST(EvaluatePoliciesTest, ZeroRewardsGiveZeroValues) {
  std::mt19937_64 rng(3);
  MarkovGame::Spec spec = testing::RandomMarkovGame(rng, 3, 2, 2, 4).spec();
  for (Matrix& r : spec.victim_rewards) r = Matrix(2, 2);
  const MarkovGame game(spec);
  const auto pi = testing::RandomPolicy(rng, Player::kVictim, 4, 3, 2);
  const auto nu = testing::RandomPolicy(rng, Player::kExploiter, 4, 3, 2);
  const ValueTable values = EvaluatePolicies(game, pi, nu, Player::kVictim);
  for (int h = 0; h < 4; ++h) {
    for (int s = 0; s < 3; ++s) EXPECT_EQ(values.at(h, s), 0.0);
  }
}

TEST(EvaluatePoliciesTest, MatchesTrajectoryEnumeration) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const MarkovGame game = testing::RandomMarkovGame(rng, 2, 2, 2, 2);
    const auto pi = testing::RandomPolicy(rng, Player::kVictim, 2, 2, 2);
    const auto nu = testing::RandomPolicy(rng, Player::kExploiter, 2, 2, 2);
    for (Player player : {Player::kVictim, Player::kExploiter}) {
      const double recursive =
          InitialValue(game, EvaluatePolicies(game, pi, nu, player));
      EXPECT_NEAR(recursive,
                  oracle::ExhaustivePolicyEval(game, pi, nu, player), 1e-9);
    }
  }
}

TEST(EvaluatePoliciesTest, HorizonOneIsWeightedStagePayoff) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const MarkovGame game = testing::RandomMarkovGame(rng, 3, 3, 2, 1);
    const auto pi = testing::RandomPolicy(rng, Player::kVictim, 1, 3, 3);
    const auto nu = testing::RandomPolicy(rng, Player::kExploiter, 1, 3, 2);
    double expected = 0.0;
    for (int s = 0; s < 3; ++s) {
      expected += game.initial()[s] *
                  BimatrixPayoff(pi.at(0, s),
                                 game.Rewards(Player::kVictim, 0, s),
                                 nu.at(0, s));
    }
    EXPECT_NEAR(InitialValue(game, EvaluatePolicies(game, pi, nu,
                                                    Player::kVictim)),
                expected, 1e-12);
  }
}

TEST(EvaluatePoliciesTest, UnreachableStatesDoNotMatter) {
  // State 2 is never entered: mu puts no mass there and no transition leads
  // into it.
  std::mt19937_64 rng(17);
  MarkovGame::Spec spec = testing::RandomMarkovGame(rng, 3, 2, 2, 3).spec();
  spec.initial = {0.4, 0.6, 0.0};
  for (std::size_t k = 0; k < spec.transitions.size(); k += 3) {
    const double moved = spec.transitions[k + 2];
    spec.transitions[k] += moved;
    spec.transitions[k + 2] = 0.0;
  }
  const MarkovGame game(spec);
  auto pi = testing::RandomPolicy(rng, Player::kVictim, 3, 3, 2);
  const auto nu = testing::RandomPolicy(rng, Player::kExploiter, 3, 3, 2);
  const double before =
      InitialValue(game, EvaluatePolicies(game, pi, nu, Player::kVictim));
  for (int h = 0; h < 3; ++h) pi.Set(h, 2, MixedStrategy::Pure(2, h % 2));
  const double after =
      InitialValue(game, EvaluatePolicies(game, pi, nu, Player::kVictim));
  EXPECT_NEAR(before, after, 1e-9);
}

TEST(EvaluatePoliciesTest, DeterministicChainFollowsRewardPath) {
  // Two states, H = 3, action (a, b) moves to state a deterministically.
  MarkovGame::Spec spec;
  spec.num_states = 2;
  spec.n = 2;
  spec.m = 1;
  spec.horizon = 3;
  spec.initial = {1.0, 0.0};
  for (int h = 0; h < 3; ++h) {
    for (int s = 0; s < 2; ++s) {
      spec.victim_rewards.push_back(Matrix{{1.0 + h + 10.0 * s}, {-2.0}});
      spec.transitions.insert(spec.transitions.end(), {1.0, 0.0, 0.0, 1.0});
    }
  }
  const MarkovGame game(spec);
  // Play a = 1 at h = 0 (reward -2, go to state 1), then a = 0 twice
  // (rewards 1 + 1 + 10 = 12, then 1 + 2 + 0 = 3 after returning to state 0).
  MarkovPolicy pi = testing::ConstantPolicy(Player::kVictim, 3, 2,
                                            MixedStrategy::Pure(2, 0));
  pi.Set(0, 0, MixedStrategy::Pure(2, 1));
  const auto nu = testing::ConstantPolicy(Player::kExploiter, 3, 2,
                                          MixedStrategy::Pure(1, 0));
  const double expected = -2.0 + 12.0 + 3.0;
  EXPECT_DOUBLE_EQ(
      InitialValue(game, EvaluatePolicies(game, pi, nu, Player::kVictim)),
      expected);
  EXPECT_DOUBLE_EQ(oracle::ExhaustivePolicyEval(game, pi, nu, Player::kVictim),
                   expected);
}

}  // namespace
}  // namespace viser
