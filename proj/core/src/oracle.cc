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

#include "viser/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "viser/error.h"
#include "viser/lp.h"

namespace viser::oracle {
namespace {

// Integer compositions of `total` into `parts` nonnegative pieces.
void Compositions(int parts, int total, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == parts - 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    prefix.push_back(k);
    Compositions(parts, total - k, prefix, out);
    prefix.pop_back();
  }
}

int GridSteps(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw ValidationError("grid resolution must be in (0, 1]");
  }
  return std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
}

struct GridSearch {
  const Matrix& a;
  int steps;
  std::vector<int> counts;
  std::vector<double> best_counts;
  double best = -std::numeric_limits<double>::infinity();

  // `sums[j]` holds sum_{i < depth} counts_i * A_ij.
  void Run(int depth, int remaining, const std::vector<double>& sums) {
    const int n = a.rows();
    const int m = a.cols();
    if (depth == n - 1) {
      counts[depth] = remaining;
      Score(sums, n - 1, remaining);
      return;
    }
    if (depth == n - 2) {
      // Innermost pair: the last two coordinates share `remaining`.
      for (int k = 0; k <= remaining; ++k) {
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) {
          const double total =
              sums[j] + k * a(depth, j) + (remaining - k) * a(depth + 1, j);
          worst = std::min(worst, total);
        }
        if (worst > best) {
          counts[depth] = k;
          counts[depth + 1] = remaining - k;
          Record(worst);
        }
      }
      return;
    }
    std::vector<double> next(m);
    for (int k = 0; k <= remaining; ++k) {
      for (int j = 0; j < m; ++j) next[j] = sums[j] + k * a(depth, j);
      counts[depth] = k;
      Run(depth + 1, remaining - k, next);
    }
  }

  void Score(const std::vector<double>& sums, int row, int weight) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < a.cols(); ++j) {
      worst = std::min(worst, sums[j] + weight * a(row, j));
    }
    if (worst > best) Record(worst);
  }

  void Record(double worst) {
    best = worst;
    best_counts.assign(counts.begin(), counts.end());
  }
};

// Exploiter's exact best-response value against a fixed victim policy:
// min over pure exploiter actions, stage by stage from the end.
double BestResponseValue(const MarkovGame& game,
                         const std::vector<const std::vector<double>*>& policy) {
  const int horizon = game.horizon();
  const int s_count = game.num_states();
  std::vector<double> next(s_count, 0.0);
  std::vector<double> current(s_count, 0.0);
  for (int h = horizon - 1; h >= 0; --h) {
    for (int s = 0; s < s_count; ++s) {
      const Matrix& r = game.Rewards(Player::kVictim, h, s);
      const std::vector<double>& x =
          *policy[static_cast<std::size_t>(h) * s_count + s];
      double worst = std::numeric_limits<double>::infinity();
      for (int b = 0; b < game.m(); ++b) {
        double value = 0.0;
        for (int a = 0; a < game.n(); ++a) {
          if (x[a] == 0.0) continue;
          double q = r(a, b);
          if (h + 1 < horizon) {
            const auto p = game.Transition(h, s, a, b);
            for (int t = 0; t < s_count; ++t) q += p[t] * next[t];
          }
          value += x[a] * q;
        }
        worst = std::min(worst, value);
      }
      current[s] = worst;
    }
    std::swap(current, next);
  }
  double total = 0.0;
  for (int s = 0; s < s_count; ++s) total += game.initial()[s] * next[s];
  return total;
}

}  // namespace

GridResult GridMaximin(const Matrix& a, double resolution) {
  if (a.rows() > kGridMaxActions) {
    throw SizeCapError("grid maximin supports at most " +
                       std::to_string(kGridMaxActions) + " rows, got " +
                       std::to_string(a.rows()));
  }
  if (a.rows() < 1 || a.cols() < 1) throw ShapeError("empty payoff matrix");
  const int steps = GridSteps(resolution);
  GridSearch search{a, steps, std::vector<int>(a.rows(), 0), {}};
  search.Run(0, steps, std::vector<double>(a.cols(), 0.0));
  GridResult result;
  result.value = search.best / steps;
  for (double c : search.best_counts) result.argmax.push_back(c / steps);
  return result;
}

std::vector<std::vector<double>> EnumerateVertices(const Polytope& polytope) {
  const int n = polytope.dimension;
  const int rows = static_cast<int>(polytope.rows.size());
  if (n < 1) throw ShapeError("polytope dimension must be positive");
  if (n + rows > kVertexMaxConstraints) {
    throw SizeCapError("vertex enumeration supports at most " +
                       std::to_string(kVertexMaxConstraints) +
                       " inequalities, got " + std::to_string(n + rows));
  }
  for (const auto& row : polytope.rows) {
    if (static_cast<int>(row.coeffs.size()) != n) {
      throw ShapeError("polytope row has the wrong length");
    }
  }

  // Inequality k: k < n is x_k >= 0, otherwise rows[k - n].
  const int total = n + rows;
  auto coeff = [&](int k, int i) {
    return k < n ? (k == i ? 1.0 : 0.0) : polytope.rows[k - n].coeffs[i];
  };
  auto rhs = [&](int k) { return k < n ? 0.0 : polytope.rows[k - n].rhs; };

  std::vector<std::vector<double>> vertices;
  std::vector<bool> active(total, false);
  std::fill(active.begin(), active.begin() + (n - 1), true);
  std::sort(active.begin(), active.end());  // first permutation
  do {
    Eigen::MatrixXd system(n, n);
    Eigen::VectorXd target(n);
    system.row(0).setOnes();
    target(0) = 1.0;
    int r = 1;
    for (int k = 0; k < total; ++k) {
      if (!active[k]) continue;
      for (int i = 0; i < n; ++i) system(r, i) = coeff(k, i);
      target(r) = rhs(k);
      ++r;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd x = lu.solve(target);

    bool feasible = true;
    for (int k = 0; k < total && feasible; ++k) {
      double lhs = 0.0;
      double scale = std::max(1.0, std::abs(rhs(k)));
      for (int i = 0; i < n; ++i) {
        lhs += coeff(k, i) * x(i);
        scale = std::max(scale, std::abs(coeff(k, i)));
      }
      feasible = lhs >= rhs(k) - kVertexTol * scale;
    }
    if (!feasible) continue;

    std::vector<double> vertex(x.data(), x.data() + n);
    for (double& v : vertex) v = std::max(0.0, v);
    const bool duplicate = std::any_of(
        vertices.begin(), vertices.end(), [&](const std::vector<double>& v) {
          for (int i = 0; i < n; ++i) {
            if (std::abs(v[i] - vertex[i]) > kVertexTol) return false;
          }
          return true;
        });
    if (!duplicate) vertices.push_back(std::move(vertex));
  } while (std::next_permutation(active.begin(), active.end()));
  return vertices;
}

std::vector<std::vector<double>> EnumerateXStarVertices(const Matrix& a,
                                                        double z_star) {
  Polytope polytope;
  polytope.dimension = a.rows();
  for (int j = 0; j < a.cols(); ++j) {
    Polytope::Row row;
    row.coeffs.resize(a.rows());
    for (int i = 0; i < a.rows(); ++i) row.coeffs[i] = a(i, j);
    row.rhs = z_star;
    polytope.rows.push_back(std::move(row));
  }
  return EnumerateVertices(polytope);
}

ExploiterOracleResult OracleExploiterValue(
    const Matrix& b, const std::vector<std::vector<double>>& vertices) {
  if (vertices.empty()) throw ValidationError("empty vertex list");
  const int m = b.cols();
  // Variables: y[0..m), t at m.  max t  s.t.  t <= v^T B y for every vertex.
  lp::LpProblem problem(m + 1);
  problem.SetFree(m);
  problem.SetObjectiveCoefficient(m, 1.0);
  for (const auto& v : vertices) {
    if (static_cast<int>(v.size()) != b.rows()) {
      throw ShapeError("vertex length does not match B");
    }
    std::vector<double> row(m + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      double vb = 0.0;
      for (int i = 0; i < b.rows(); ++i) vb += v[i] * b(i, j);
      row[j] = -vb;
    }
    row[m] = 1.0;
    problem.AddLessEqual(std::move(row), 0.0);
  }
  std::vector<double> simplex_row(m + 1, 1.0);
  simplex_row[m] = 0.0;
  problem.AddEqual(std::move(simplex_row), 1.0);
  const lp::LpSolution solution = lp::SolveLp(problem);
  if (solution.status != lp::LpStatus::kOptimal) {
    throw Error("oracle exploiter LP returned status " +
                std::string(lp::StatusName(solution.status)));
  }
  std::vector<double> y(solution.primal.begin(), solution.primal.begin() + m);
  for (double& p : y) p = std::max(0.0, p);
  return {solution.primal[m], MixedStrategy(std::move(y))};
}

double ExhaustivePolicyEval(const MarkovGame& game, const MarkovPolicy& pi,
                            const MarkovPolicy& nu, Player player) {
  const int horizon = game.horizon();
  const int s_count = game.num_states();
  const double paths =
      std::pow(static_cast<double>(s_count) * game.n() * game.m(), horizon);
  if (paths > kTrajectoryCap) {
    throw SizeCapError("trajectory enumeration over " + std::to_string(paths) +
                       " paths exceeds the cap");
  }
  if (pi.horizon() != horizon || nu.horizon() != horizon ||
      pi.num_states() != s_count || nu.num_states() != s_count) {
    throw ShapeError("policy shape does not match the game");
  }
  game.Rewards(player, 0, 0);

  double total = 0.0;
  // Depth-first walk; each call adds the reward of one (h, s, a, b) step
  // weighted by the probability of the path that reaches it.
  auto walk = [&](auto&& self, int h, int s, double reach) -> void {
    const Matrix& r = game.Rewards(player, h, s);
    for (int a = 0; a < game.n(); ++a) {
      for (int b = 0; b < game.m(); ++b) {
        const double p = reach * pi.at(h, s)[a] * nu.at(h, s)[b];
        if (p == 0.0) continue;
        total += p * r(a, b);
        if (h + 1 == horizon) continue;
        const auto next = game.Transition(h, s, a, b);
        for (int t = 0; t < s_count; ++t) {
          if (next[t] > 0.0) self(self, h + 1, t, p * next[t]);
        }
      }
    }
  };
  for (int s = 0; s < s_count; ++s) {
    if (game.initial()[s] > 0.0) walk(walk, 0, s, game.initial()[s]);
  }
  return total;
}

double GridMarkovVictimValue(const MarkovGame& game, double resolution) {
  const int steps = GridSteps(resolution);
  std::vector<std::vector<int>> compositions;
  std::vector<int> prefix;
  Compositions(game.n(), steps, prefix, compositions);
  std::vector<std::vector<double>> grid;
  for (const auto& c : compositions) {
    std::vector<double> x(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      x[i] = static_cast<double>(c[i]) / steps;
    }
    grid.push_back(std::move(x));
  }
  const int stages = game.horizon() * game.num_states();
  if (std::pow(static_cast<double>(grid.size()), stages) > kTrajectoryCap) {
    throw SizeCapError("Markov policy grid too large");
  }

  // Odometer over one grid index per stage.
  std::vector<std::size_t> digits(stages, 0);
  std::vector<const std::vector<double>*> policy(stages, &grid[0]);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    best = std::max(best, BestResponseValue(game, policy));
    int d = 0;
    while (d < stages && ++digits[d] == grid.size()) {
      digits[d] = 0;
      policy[d] = &grid[0];
      ++d;
    }
    if (d == stages) break;
    policy[d] = &grid[digits[d]];
  }
  return best;
}

}  // namespace viser::oracle
