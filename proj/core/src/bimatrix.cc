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

#include "viser/bimatrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "viser/error.h"
#include "viser/lp.h"

namespace viser::bimatrix {
namespace {

std::vector<double> Head(const std::vector<double>& v, int begin, int count) {
  return {v.begin() + begin, v.begin() + begin + count};
}

MixedStrategy ToStrategy(const std::vector<double>& primal, int begin,
                         int count) {
  std::vector<double> probs = Head(primal, begin, count);
  for (double& p : probs) p = std::max(0.0, p);
  return MixedStrategy(std::move(probs));
}

lp::LpProblem ExploiterProblem(const Matrix& a, const Matrix& b,
                               double value) {
  const int n = a.rows();
  const int m = a.cols();
  // Variables: y[0..m), w[m..2m), alpha at 2m.
  const int alpha = 2 * m;
  lp::LpProblem problem(2 * m + 1);
  problem.SetFree(alpha);
  for (int j = 0; j < m; ++j) problem.SetObjectiveCoefficient(m + j, value);
  problem.SetObjectiveCoefficient(alpha, -1.0);
  for (int i = 0; i < n; ++i) {
    // -alpha - e_i^T B y + e_i^T A w <= 0
    std::vector<double> row(2 * m + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      row[j] = -b(i, j);
      row[m + j] = a(i, j);
    }
    row[alpha] = -1.0;
    problem.AddLessEqual(std::move(row), 0.0);
  }
  std::vector<double> simplex_row(2 * m + 1, 0.0);
  std::fill(simplex_row.begin(), simplex_row.begin() + m, 1.0);
  problem.AddEqual(std::move(simplex_row), 1.0);
  return problem;
}

}  // namespace

VictimSolution SolveVictim(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw ShapeError("empty payoff matrix");
  if (!a.AllFinite()) throw ValidationError("payoff matrix not finite");
  const int n = a.rows();
  const int m = a.cols();
  // Variables: x[0..n), z at n.
  lp::LpProblem problem(n + 1);
  problem.SetFree(n);
  problem.SetObjectiveCoefficient(n, 1.0);
  for (int j = 0; j < m; ++j) {
    std::vector<double> row(n + 1, 0.0);
    for (int i = 0; i < n; ++i) row[i] = -a(i, j);
    row[n] = 1.0;
    problem.AddLessEqual(std::move(row), 0.0);
  }
  std::vector<double> simplex_row(n + 1, 1.0);
  simplex_row[n] = 0.0;
  problem.AddEqual(std::move(simplex_row), 1.0);

  const lp::LpSolution solution = lp::SolveLp(problem);
  if (solution.status != lp::LpStatus::kOptimal) {
    // Always feasible and bounded for finite A.
    throw Error("victim LP returned status " +
                std::string(lp::StatusName(solution.status)));
  }
  return {ToStrategy(solution.primal, 0, n), solution.primal[n],
          solution.iterations};
}

ExploiterSolution SolveExploiterWithValue(const Matrix& a, const Matrix& b,
                                          double z_star, double epsilon) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("A and B shapes differ");
  }
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be >= 0");
  if (!b.AllFinite()) throw ValidationError("payoff matrix not finite");
  const int m = a.cols();
  const double target = z_star - epsilon;
  double slack = 1e-9 * std::max(1.0, std::abs(z_star));
  for (int attempt = 0; attempt < 2; ++attempt, slack *= 100.0) {
    const lp::LpSolution solution =
        lp::SolveLp(ExploiterProblem(a, b, target - slack));
    if (solution.status == lp::LpStatus::kUnbounded) continue;
    if (solution.status != lp::LpStatus::kOptimal) {
      throw Error("exploiter LP returned status " +
                  std::string(lp::StatusName(solution.status)));
    }
    ExploiterSolution out{ToStrategy(solution.primal, 0, m),
                          Head(solution.primal, m, m),
                          solution.primal[2 * m],
                          solution.objective_value,
                          z_star,
                          epsilon,
                          slack,
                          solution.iterations};
    for (double& w : out.w_star) w = std::max(0.0, w);
    return out;
  }
  throw NumericEmptySetError(
      "exploiter LP unbounded: the victim maximin set is numerically empty "
      "at z* = " +
      std::to_string(z_star));
}

ExploiterSolution SolveExploiter(const Matrix& a, const Matrix& b,
                                 double epsilon) {
  return SolveExploiterWithValue(a, b, SolveVictim(a).p_v, epsilon);
}

ViserSolution SolveViser(const BimatrixGame& game) {
  return {SolveVictim(game.a()), SolveExploiter(game.a(), game.b())};
}

bool InVictimSet(const Matrix& a, double z_star, const MixedStrategy& x,
                 double tol) {
  if (x.size() != a.rows()) return false;
  for (int j = 0; j < a.cols(); ++j) {
    double payoff = 0.0;
    for (int i = 0; i < a.rows(); ++i) payoff += x[i] * a(i, j);
    if (payoff < z_star - tol) return false;
  }
  return true;
}

bool InExploiterSet(const Matrix& a, const Matrix& b, double z_star,
                    double p_e, const MixedStrategy& y, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("A and B shapes differ");
  }
  if (y.size() != a.cols()) return false;
  const int n = a.rows();
  const int m = a.cols();
  // sum_j (A_ij - z*) w_j <= e_i^T B y - p_e + tol, w >= 0.
  lp::LpProblem problem(m);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(m);
    double by = 0.0;
    for (int j = 0; j < m; ++j) {
      row[j] = a(i, j) - z_star;
      by += b(i, j) * y[j];
    }
    problem.AddLessEqual(std::move(row), by - p_e + tol);
  }
  return lp::SolveLp(problem).status == lp::LpStatus::kOptimal;
}

VictimSolution ExploiterSecurity(const Matrix& b) {
  return SolveVictim(b.Transposed());
}

}  // namespace viser::bimatrix
