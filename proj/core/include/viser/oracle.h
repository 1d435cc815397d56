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

#ifndef VISER_ORACLE_H_
#define VISER_ORACLE_H_

#include <vector>

#include "viser/game.h"
#include "viser/matrix.h"

// Brute-force reference computations for small instances. None of these go
// through the maximin or dual LPs used by the solvers, so the solvers can be
// tested against them.
namespace viser::oracle {

inline constexpr int kGridMaxActions = 4;
inline constexpr int kVertexMaxConstraints = 16;
inline constexpr double kTrajectoryCap = 1e7;
inline constexpr double kVertexTol = 1e-8;

struct GridResult {
  double value = 0.0;
  std::vector<double> argmax;
};

// max over the simplex grid {k / K : sum k = K}, K = round(1 / resolution),
// of min_j x^T A e_j. Requires A.rows() <= kGridMaxActions.
GridResult GridMaximin(const Matrix& a, double resolution);

// {x in simplex(dimension) : row.coeffs^T x >= row.rhs for every row}.
struct Polytope {
  struct Row {
    std::vector<double> coeffs;
    double rhs = 0.0;
  };
  int dimension = 0;
  std::vector<Row> rows;
};

// All vertices, by trying every choice of dimension - 1 active inequalities
// among the x >= 0 bounds and the rows. Requires
// dimension + rows <= kVertexMaxConstraints.
std::vector<std::vector<double>> EnumerateVertices(const Polytope& polytope);

// Vertices of the victim maximin set {x in simplex : x^T A e_j >= z* for all j}.
std::vector<std::vector<double>> EnumerateXStarVertices(const Matrix& a,
                                                        double z_star);

struct ExploiterOracleResult {
  double value = 0.0;
  MixedStrategy y;
};

// max_y min_k v_k^T B y over the given victim vertices, as a direct LP in
// (y, t). A linear function on a polytope attains its minimum at a vertex.
ExploiterOracleResult OracleExploiterValue(
    const Matrix& b, const std::vector<std::vector<double>>& vertices);

// Expected total reward of `player` summed over every trajectory
// (s_0, a_0, b_0, s_1, ..., a_{H-1}, b_{H-1}). Requires
// S^H * (n m)^H <= kTrajectoryCap.
double ExhaustivePolicyEval(const MarkovGame& game, const MarkovPolicy& pi,
                            const MarkovPolicy& nu, Player player);

// Markov-game victim value by brute force: every Markov victim policy on the
// simplex grid of the given resolution, each scored against the exploiter's
// exact best response (a pure-action backward recursion). The result is a
// lower bound on the true maximin value that converges as resolution -> 0.
double GridMarkovVictimValue(const MarkovGame& game, double resolution);

}  // namespace viser::oracle

#endif  // VISER_ORACLE_H_
