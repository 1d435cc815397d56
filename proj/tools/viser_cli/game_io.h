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

#ifndef VISER_TOOLS_GAME_IO_H_
#define VISER_TOOLS_GAME_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "viser/game.h"
#include "viser/markov.h"

namespace viser::cli {

// {"type":"bimatrix","A":[[..]],"B":[[..]]} with B optional, or
// {"type":"markov","S":..,"n":..,"m":..,"H":..,"mu":[..],
//  "R_v":[h][s][n][m],"R_e":[h][s][n][m] (optional),"P":[h][s][n][m][S]}.
using GameFile = std::variant<BimatrixGame, MarkovGame>;

// Throws ValidationError on malformed JSON or invalid contents.
GameFile ParseGame(std::string_view text);
GameFile LoadGame(const std::string& path);

// Compact, deterministic JSON encoding of a game.
std::string SerializeGame(const BimatrixGame& game);
std::string SerializeGame(const MarkovGame& game);

// One player's solution, as written by `viser solve`.
struct SolutionRecord {
  Player player = Player::kVictim;
  std::string game_type;  // "bimatrix" or "markov"
  double guaranteed_payoff = 0.0;
  double epsilon = 0.0;
  long pivots = 0;

  // bimatrix
  std::optional<std::vector<double>> strategy;
  std::optional<std::vector<double>> w;
  std::optional<double> alpha;

  // markov; nested [h][s][action]
  std::optional<std::vector<std::vector<std::vector<double>>>> policy;
  std::optional<std::vector<std::vector<double>>> values;
  std::optional<std::vector<std::vector<std::vector<double>>>> stage_w;
  std::optional<std::vector<std::vector<double>>> stage_alpha;
};

// A single record serializes as one object; several as {"solutions":[...]}.
std::string SerializeSolutions(const std::vector<SolutionRecord>& records);
// Accepts either shape. Throws ValidationError on malformed input.
std::vector<SolutionRecord> ParseSolutions(std::string_view text);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace viser::cli

#endif  // VISER_TOOLS_GAME_IO_H_
