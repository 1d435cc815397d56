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

#ifndef VISER_LP_H_
#define VISER_LP_H_

#include <span>
#include <string_view>
#include <vector>

namespace viser::lp {

// Linear program in the form
//
//   maximize    c^T v
//   subject to  a_k^T v <= b_k   (inequalities)
//               a_k^T v  = b_k   (equalities)
//               v_j >= 0, unless variable j is marked free.
class LpProblem {
 public:
  struct Row {
    std::vector<double> coeffs;
    double rhs = 0.0;
  };

  explicit LpProblem(int num_vars);

  int num_vars() const { return num_vars_; }

  void SetObjective(std::vector<double> objective);
  void SetObjectiveCoefficient(int var, double value);
  void AddLessEqual(std::vector<double> coeffs, double rhs);
  void AddGreaterEqual(std::vector<double> coeffs, double rhs);
  void AddEqual(std::vector<double> coeffs, double rhs);
  // Removes the lower bound of `var`.
  void SetFree(int var, bool free = true);

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Row>& inequalities() const { return inequalities_; }
  const std::vector<Row>& equalities() const { return equalities_; }
  bool is_free(int var) const { return free_[var]; }

  // Largest bound or constraint violation of `v` (0 when feasible).
  double MaxViolation(std::span<const double> v) const;

 private:
  void CheckRow(const std::vector<double>& coeffs, double rhs) const;

  int num_vars_;
  std::vector<double> objective_;
  std::vector<Row> inequalities_;
  std::vector<Row> equalities_;
  std::vector<bool> free_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view StatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective_value = 0.0;
  int iterations = 0;
  // Max constraint violation of `primal`; meaningful when optimal.
  double max_violation = 0.0;
};

struct SimplexOptions {
  double tol_feas = 1e-9;
  double tol_opt = 1e-9;
};

// Two-phase dense tableau simplex. Pivots by largest reduced cost and
// switches to Bland's rule once 2 * (columns + rows) degenerate pivots have
// been made. Infeasible and unbounded problems are reported via `status`;
// exceeding 50 * (columns + rows) pivots throws SolverStallError.
LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options = {});

}  // namespace viser::lp

#endif  // VISER_LP_H_
