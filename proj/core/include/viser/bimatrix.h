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

#ifndef VISER_BIMATRIX_H_
#define VISER_BIMATRIX_H_

#include <vector>

#include "viser/game.h"
#include "viser/matrix.h"
#include "viser/tolerances.h"

namespace viser::bimatrix {

// A maximin (security) strategy of the row player and its value.
struct VictimSolution {
  MixedStrategy x_star;
  double p_v = 0.0;
  int iterations = 0;
};

// Worst-case best response of the column player against the victim's whole
// maximin set, together with the dual certificate (w*, alpha*).
struct ExploiterSolution {
  MixedStrategy y_star;
  std::vector<double> w_star;
  double alpha_star = 0.0;
  double p_e = 0.0;
  // Victim maximin value the LP was built on, before epsilon and slack.
  double z_star = 0.0;
  double epsilon = 0.0;
  // Amount subtracted from z_star - epsilon to keep the victim set non-empty
  // under rounding.
  double slack = 0.0;
  int iterations = 0;
};

struct ViserSolution {
  VictimSolution victim;
  ExploiterSolution exploiter;
};

// Maximin strategy for the row player of A:
//   max z  s.t.  z <= x^T A e_j for all j,  1^T x = 1,  x >= 0.
VictimSolution SolveVictim(const Matrix& a);

// Exploiter LP over (y, w, alpha):
//   max (z* - eps) 1^T w - alpha
//   s.t. alpha + e_i^T B y - e_i^T A w >= 0 for all i,
//        1^T y = 1,  y >= 0,  w >= 0,
// where z* is the maximin value of A, recomputed here. With eps > 0 the
// exploiter guards against every eps-maximin victim strategy.
ExploiterSolution SolveExploiter(const Matrix& a, const Matrix& b,
                                 double epsilon = 0.0);

// Same LP with the victim value supplied by the caller. Used by the Markov
// solver, which already holds each stage's value.
ExploiterSolution SolveExploiterWithValue(const Matrix& a, const Matrix& b,
                                          double z_star, double epsilon = 0.0);

// Both players' solves. Throws InformationError if B is absent.
ViserSolution SolveViser(const BimatrixGame& game);

// x is in {x in simplex : x^T A e_j >= z* - tol for all j}.
bool InVictimSet(const Matrix& a, double z_star, const MixedStrategy& x,
                 double tol = kTolVerify);

// y is in the projection of
//   {(y, w) : w >= 0, e_i^T B y + (z* 1^T - e_i^T A) w >= p_e for all i},
// decided by a feasibility LP in w with every row relaxed by tol.
bool InExploiterSet(const Matrix& a, const Matrix& b, double z_star,
                    double p_e, const MixedStrategy& y,
                    double tol = kTolVerify);

// The exploiter's own security strategy, ignoring what it knows about A:
// the maximin of B^T, i.e. a strategy over B's columns.
VictimSolution ExploiterSecurity(const Matrix& b);

}  // namespace viser::bimatrix

#endif  // VISER_BIMATRIX_H_
