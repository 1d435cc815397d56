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

#include "viser/lp.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "viser/error.h"

namespace viser::lp {
namespace {

double RowScale(const LpProblem::Row& row) {
  double scale = std::abs(row.rhs);
  for (double a : row.coeffs) scale = std::max(scale, std::abs(a));
  return std::max(1.0, scale);
}

double Dot(const std::vector<double>& a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

// Smallest |pivot| accepted by the ratio test.
constexpr double kPivotTol = 1e-9;

// Dense simplex tableau. Columns are laid out as
//   [structural (free vars split in two) | slack/surplus | artificial | rhs]
// and `reduced_` holds c_j - c_B^T B^{-1} a_j for the current phase's costs.
class Tableau {
 public:
  explicit Tableau(const LpProblem& problem) : problem_(problem) {
    const int n = problem.num_vars();
    pos_col_.resize(n);
    neg_col_.assign(n, -1);
    for (int j = 0; j < n; ++j) {
      pos_col_[j] = structural_++;
      if (problem.is_free(j)) neg_col_[j] = structural_++;
    }

    const auto& ineq = problem.inequalities();
    const auto& eq = problem.equalities();
    rows_ = static_cast<int>(ineq.size() + eq.size());
    int slack_count = static_cast<int>(ineq.size());
    int art_count = static_cast<int>(eq.size());
    for (const auto& row : ineq) {
      if (row.rhs < 0.0) ++art_count;
    }
    first_slack_ = structural_;
    first_art_ = structural_ + slack_count;
    cols_ = first_art_ + art_count;
    width_ = cols_ + 1;
    data_.assign(static_cast<std::size_t>(rows_) * width_, 0.0);
    basis_.assign(rows_, -1);

    int r = 0;
    int art = first_art_;
    for (std::size_t k = 0; k < ineq.size(); ++k, ++r) {
      const double sign = ineq[k].rhs < 0.0 ? -1.0 : 1.0;
      FillStructural(r, ineq[k], sign);
      const int slack = first_slack_ + static_cast<int>(k);
      at(r, slack) = sign;
      if (sign > 0.0) {
        basis_[r] = slack;
      } else {
        at(r, art) = 1.0;
        basis_[r] = art++;
      }
    }
    for (const auto& row : eq) {
      const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
      FillStructural(r, row, sign);
      at(r, art) = 1.0;
      basis_[r] = art++;
      ++r;
    }
    scale_ = 1.0;
    for (const auto& row : ineq) scale_ = std::max(scale_, RowScale(row));
    for (const auto& row : eq) scale_ = std::max(scale_, RowScale(row));
  }

  int iterations() const { return iterations_; }

  // Returns false when the problem is infeasible.
  bool RunPhaseOne(const SimplexOptions& options) {
    if (first_art_ == cols_) return true;
    std::vector<double> costs(cols_, 0.0);
    for (int c = first_art_; c < cols_; ++c) costs[c] = -1.0;
    allow_artificial_ = true;
    PriceOut(costs);
    if (!Iterate(options)) {
      // Phase one is bounded by construction.
      throw Error("simplex phase one reported unbounded");
    }
    // reduced_[cols_] holds -(objective); objective = -sum(artificials).
    if (-reduced_[cols_] < -options.tol_feas * scale_) return false;
    DriveOutArtificials();
    allow_artificial_ = false;
    return true;
  }

  // Returns false when the objective is unbounded.
  bool RunPhaseTwo(const SimplexOptions& options) {
    std::vector<double> costs(cols_, 0.0);
    for (int j = 0; j < problem_.num_vars(); ++j) {
      costs[pos_col_[j]] = problem_.objective()[j];
      if (neg_col_[j] >= 0) costs[neg_col_[j]] = -problem_.objective()[j];
    }
    PriceOut(costs);
    return Iterate(options);
  }

  std::vector<double> Primal() const {
    std::vector<double> column_values(cols_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      column_values[basis_[r]] = std::max(0.0, at(r, cols_));
    }
    std::vector<double> primal(problem_.num_vars());
    for (int j = 0; j < problem_.num_vars(); ++j) {
      primal[j] = column_values[pos_col_[j]];
      if (neg_col_[j] >= 0) primal[j] -= column_values[neg_col_[j]];
    }
    return primal;
  }

 private:
  double& at(int r, int c) {
    return data_[static_cast<std::size_t>(r) * width_ + c];
  }
  double at(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * width_ + c];
  }
  double* row_ptr(int r) { return data_.data() + static_cast<std::size_t>(r) * width_; }

  void FillStructural(int r, const LpProblem::Row& row, double sign) {
    for (int j = 0; j < problem_.num_vars(); ++j) {
      const double a = sign * row.coeffs[j];
      at(r, pos_col_[j]) = a;
      if (neg_col_[j] >= 0) at(r, neg_col_[j]) = -a;
    }
    at(r, cols_) = sign * row.rhs;
  }

  bool Enterable(int c) const { return allow_artificial_ || c < first_art_; }

  // reduced_[c] = costs[c] - sum_r costs[basis_r] * T[r][c]; the rhs slot
  // accumulates -(current objective).
  void PriceOut(const std::vector<double>& costs) {
    reduced_.assign(width_, 0.0);
    for (int c = 0; c < cols_; ++c) reduced_[c] = costs[c];
    for (int r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = row_ptr(r);
      for (int c = 0; c < width_; ++c) reduced_[c] -= cb * row[c];
    }
  }

  int ChooseEntering(const SimplexOptions& options) const {
    int best = -1;
    double best_value = options.tol_opt;
    for (int c = 0; c < cols_; ++c) {
      if (!Enterable(c)) continue;
      const double d = reduced_[c];
      if (d <= options.tol_opt) continue;
      if (bland_) return c;
      if (d > best_value) {
        best_value = d;
        best = c;
      }
    }
    return best;
  }

  // Minimum-ratio row for column `entering`, or -1 if the column is
  // unbounded. Ties go to the smallest basic index under Bland's rule and to
  // the largest pivot otherwise.
  int ChooseLeaving(int entering, double* step) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_pivot = 0.0;
    const double tie = 1e-12 * scale_;
    for (int r = 0; r < rows_; ++r) {
      const double a = at(r, entering);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, at(r, cols_)) / a;
      if (best < 0 || ratio < best_ratio - tie) {
        best = r;
        best_ratio = ratio;
        best_pivot = a;
      } else if (ratio <= best_ratio + tie) {
        const bool better = bland_ ? basis_[r] < basis_[best] : a > best_pivot;
        if (better) {
          best = r;
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = a;
        }
      }
    }
    *step = best_ratio;
    return best;
  }

  void Pivot(int p, int e) {
    double* prow = row_ptr(p);
    const double inv = 1.0 / prow[e];
    for (int c = 0; c < width_; ++c) prow[c] *= inv;
    prow[e] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == p) continue;
      double* row = row_ptr(r);
      const double f = row[e];
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) row[c] -= f * prow[c];
      row[e] = 0.0;
      if (row[cols_] < 0.0 && row[cols_] > -1e-11 * scale_) row[cols_] = 0.0;
    }
    const double f = reduced_[e];
    if (f != 0.0) {
      for (int c = 0; c < width_; ++c) reduced_[c] -= f * prow[c];
      reduced_[e] = 0.0;
    }
    basis_[p] = e;
  }

  // Returns false on an unbounded ray.
  bool Iterate(const SimplexOptions& options) {
    const int budget = 50 * (cols_ + rows_);
    const int bland_after = 2 * (cols_ + rows_);
    while (true) {
      const int entering = ChooseEntering(options);
      if (entering < 0) return true;
      double step = 0.0;
      const int leaving = ChooseLeaving(entering, &step);
      if (leaving < 0) return false;
      if (step <= options.tol_feas) {
        if (++degenerate_ >= bland_after) bland_ = true;
      }
      Pivot(leaving, entering);
      if (++iterations_ > budget) {
        throw SolverStallError("simplex exceeded " + std::to_string(budget) +
                               " pivots");
      }
    }
  }

  void DriveOutArtificials() {
    for (int r = 0; r < rows_;) {
      if (basis_[r] < first_art_) {
        ++r;
        continue;
      }
      int best = -1;
      double best_abs = kPivotTol;
      for (int c = 0; c < first_art_; ++c) {
        if (std::abs(at(r, c)) > best_abs) {
          best_abs = std::abs(at(r, c));
          best = c;
        }
      }
      if (best >= 0) {
        Pivot(r, best);
        ++r;
      } else {
        RemoveRow(r);  // redundant equality
      }
    }
  }

  void RemoveRow(int r) {
    const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(r) * width_;
    data_.erase(begin, begin + width_);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

  const LpProblem& problem_;
  std::vector<int> pos_col_;
  std::vector<int> neg_col_;
  int structural_ = 0;
  int first_slack_ = 0;
  int first_art_ = 0;
  int cols_ = 0;
  int rows_ = 0;
  int width_ = 0;
  double scale_ = 1.0;
  std::vector<double> data_;
  std::vector<double> reduced_;
  std::vector<int> basis_;
  bool allow_artificial_ = false;
  bool bland_ = false;
  int degenerate_ = 0;
  int iterations_ = 0;
};

}  // namespace

LpProblem::LpProblem(int num_vars)
    : num_vars_(num_vars),
      objective_(num_vars, 0.0),
      free_(num_vars, false) {
  if (num_vars < 1) throw ShapeError("LP needs at least one variable");
}

void LpProblem::CheckRow(const std::vector<double>& coeffs, double rhs) const {
  if (static_cast<int>(coeffs.size()) != num_vars_) {
    throw ShapeError("LP row has " + std::to_string(coeffs.size()) +
                     " coefficients, expected " + std::to_string(num_vars_));
  }
  if (!std::isfinite(rhs)) throw ValidationError("LP rhs is not finite");
  for (double a : coeffs) {
    if (!std::isfinite(a)) throw ValidationError("LP coefficient not finite");
  }
}

void LpProblem::SetObjective(std::vector<double> objective) {
  CheckRow(objective, 0.0);
  objective_ = std::move(objective);
}

void LpProblem::SetObjectiveCoefficient(int var, double value) {
  if (!std::isfinite(value)) throw ValidationError("objective not finite");
  objective_.at(var) = value;
}

void LpProblem::AddLessEqual(std::vector<double> coeffs, double rhs) {
  CheckRow(coeffs, rhs);
  inequalities_.push_back({std::move(coeffs), rhs});
}

void LpProblem::AddGreaterEqual(std::vector<double> coeffs, double rhs) {
  for (double& a : coeffs) a = -a;
  AddLessEqual(std::move(coeffs), -rhs);
}

void LpProblem::AddEqual(std::vector<double> coeffs, double rhs) {
  CheckRow(coeffs, rhs);
  equalities_.push_back({std::move(coeffs), rhs});
}

void LpProblem::SetFree(int var, bool free) { free_.at(var) = free; }

// Violations are measured relative to max(1, row scale) so a single
// threshold applies to rows of any magnitude.
double LpProblem::MaxViolation(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != num_vars_) {
    throw ShapeError("MaxViolation: wrong vector length");
  }
  double worst = 0.0;
  for (int j = 0; j < num_vars_; ++j) {
    if (!free_[j]) worst = std::max(worst, -v[j]);
  }
  for (const Row& row : inequalities_) {
    worst = std::max(worst, (Dot(row.coeffs, v) - row.rhs) / RowScale(row));
  }
  for (const Row& row : equalities_) {
    worst = std::max(worst, std::abs(Dot(row.coeffs, v) - row.rhs) /
                                RowScale(row));
  }
  return worst;
}

std::string_view StatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options) {
  Tableau tableau(problem);
  LpSolution solution;
  if (!tableau.RunPhaseOne(options)) {
    solution.status = LpStatus::kInfeasible;
    solution.iterations = tableau.iterations();
    return solution;
  }
  const bool bounded = tableau.RunPhaseTwo(options);
  solution.iterations = tableau.iterations();
  if (!bounded) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }
  solution.status = LpStatus::kOptimal;
  solution.primal = tableau.Primal();
  solution.objective_value = Dot(problem.objective(), solution.primal);
  solution.max_violation = problem.MaxViolation(solution.primal);
  assert(solution.max_violation <= options.tol_feas &&
         "simplex returned an infeasible optimum");
  return solution;
}

}  // namespace viser::lp
