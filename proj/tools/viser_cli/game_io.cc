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

#include "viser_cli/game_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "viser/error.h"
#include "viser/tolerances.h"

namespace viser::cli {
namespace {

using json = nlohmann::json;

Matrix MatrixFromJson(const json& value, const std::string& what) {
  try {
    return Matrix::FromRows(value.get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw ValidationError(what + ": expected a matrix of numbers (" +
                          e.what() + ")");
  }
}

json MatrixToJson(const Matrix& m) { return m.ToRows(); }

const json& Field(const json& object, const char* key) {
  if (!object.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return object.at(key);
}

int PositiveInt(const json& object, const char* key) {
  const json& v = Field(object, key);
  if (!v.is_number_integer() || v.get<long>() < 1) {
    throw ValidationError(std::string("field '") + key +
                          "' must be a positive integer");
  }
  return v.get<int>();
}

std::vector<Matrix> StageTensor(const json& value, int horizon, int states,
                                const std::string& what) {
  if (!value.is_array() || static_cast<int>(value.size()) != horizon) {
    throw ValidationError(what + ": expected " + std::to_string(horizon) +
                          " steps");
  }
  std::vector<Matrix> out;
  for (const json& step : value) {
    if (!step.is_array() || static_cast<int>(step.size()) != states) {
      throw ValidationError(what + ": expected " + std::to_string(states) +
                            " states per step");
    }
    for (const json& stage : step) out.push_back(MatrixFromJson(stage, what));
  }
  return out;
}

json StageTensorToJson(const MarkovGame& game, Player player) {
  json steps = json::array();
  for (int h = 0; h < game.horizon(); ++h) {
    json states = json::array();
    for (int s = 0; s < game.num_states(); ++s) {
      states.push_back(MatrixToJson(game.Rewards(player, h, s)));
    }
    steps.push_back(std::move(states));
  }
  return steps;
}

BimatrixGame ParseBimatrix(const json& doc) {
  Matrix a = MatrixFromJson(Field(doc, "A"), "A");
  std::optional<Matrix> b;
  if (doc.contains("B") && !doc.at("B").is_null()) {
    b = MatrixFromJson(doc.at("B"), "B");
  }
  return BimatrixGame(std::move(a), std::move(b));
}

MarkovGame ParseMarkov(const json& doc) {
  MarkovGame::Spec spec;
  spec.num_states = PositiveInt(doc, "S");
  spec.n = PositiveInt(doc, "n");
  spec.m = PositiveInt(doc, "m");
  spec.horizon = PositiveInt(doc, "H");
  try {
    spec.initial = Field(doc, "mu").get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ValidationError("mu: expected an array of numbers");
  }
  spec.victim_rewards =
      StageTensor(Field(doc, "R_v"), spec.horizon, spec.num_states, "R_v");
  if (doc.contains("R_e") && !doc.at("R_e").is_null()) {
    spec.exploiter_rewards =
        StageTensor(doc.at("R_e"), spec.horizon, spec.num_states, "R_e");
  }
  // P[h][s][a][b][s'] flattened in the same nesting order.
  const json& p = Field(doc, "P");
  auto expect_array = [](const json& v, int size, const char* level) {
    if (!v.is_array() || static_cast<int>(v.size()) != size) {
      throw ValidationError(std::string("P: wrong length at ") + level);
    }
  };
  expect_array(p, spec.horizon, "h");
  for (const json& step : p) {
    expect_array(step, spec.num_states, "s");
    for (const json& state : step) {
      expect_array(state, spec.n, "a_v");
      for (const json& row : state) {
        expect_array(row, spec.m, "a_e");
        for (const json& dist : row) {
          expect_array(dist, spec.num_states, "s'");
          for (const json& prob : dist) {
            if (!prob.is_number()) throw ValidationError("P: non-numeric entry");
            spec.transitions.push_back(prob.get<double>());
          }
        }
      }
    }
  }
  return MarkovGame(std::move(spec));
}

template <typename T>
std::optional<T> OptionalField(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

json RecordToJson(const SolutionRecord& r) {
  json out;
  out["player"] = std::string(PlayerName(r.player));
  out["game_type"] = r.game_type;
  out["guaranteed_payoff"] = r.guaranteed_payoff;
  if (r.player == Player::kExploiter) out["epsilon"] = r.epsilon;
  if (r.strategy) out["strategy"] = *r.strategy;
  if (r.policy) out["policy"] = *r.policy;
  if (r.values) out["values"] = *r.values;
  if (r.w || r.stage_w) {
    json duals;
    if (r.w) duals["w"] = *r.w;
    if (r.alpha) duals["alpha"] = *r.alpha;
    if (r.stage_w) duals["w"] = *r.stage_w;
    if (r.stage_alpha) duals["alpha"] = *r.stage_alpha;
    out["duals"] = std::move(duals);
  }
  out["solver"] = {{"method", "two-phase dense simplex"},
                   {"tol_feas", kLpTolFeas},
                   {"tol_opt", kLpTolOpt},
                   {"tol_verify", kTolVerify},
                   {"pivots", r.pivots}};
  return out;
}

SolutionRecord RecordFromJson(const json& doc) {
  SolutionRecord r;
  r.player = ParsePlayer(Field(doc, "player").get<std::string>());
  r.game_type = Field(doc, "game_type").get<std::string>();
  if (r.game_type != "bimatrix" && r.game_type != "markov") {
    throw ValidationError("unknown game_type '" + r.game_type + "'");
  }
  r.guaranteed_payoff = Field(doc, "guaranteed_payoff").get<double>();
  r.epsilon = doc.value("epsilon", 0.0);
  if (doc.contains("solver")) r.pivots = doc.at("solver").value("pivots", 0L);
  if (r.game_type == "bimatrix") {
    r.strategy = Field(doc, "strategy").get<std::vector<double>>();
    if (doc.contains("duals")) {
      r.w = OptionalField<std::vector<double>>(doc.at("duals"), "w");
      r.alpha = OptionalField<double>(doc.at("duals"), "alpha");
    }
  } else {
    r.policy = Field(doc, "policy")
                   .get<std::vector<std::vector<std::vector<double>>>>();
    r.values = OptionalField<std::vector<std::vector<double>>>(doc, "values");
    if (doc.contains("duals")) {
      r.stage_w = OptionalField<std::vector<std::vector<std::vector<double>>>>(
          doc.at("duals"), "w");
      r.stage_alpha =
          OptionalField<std::vector<std::vector<double>>>(doc.at("duals"),
                                                          "alpha");
    }
  }
  return r;
}

}  // namespace

GameFile ParseGame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("game file is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object()) throw ValidationError("game file must be an object");
  try {
    const std::string type = Field(doc, "type").get<std::string>();
    if (type == "bimatrix") return ParseBimatrix(doc);
    if (type == "markov") return ParseMarkov(doc);
    throw ValidationError("unknown game type '" + type + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("game file: ") + e.what());
  } catch (const ShapeError& e) {
    throw ValidationError(e.what());
  }
}

GameFile LoadGame(const std::string& path) { return ParseGame(ReadFile(path)); }

std::string SerializeGame(const BimatrixGame& game) {
  json doc;
  doc["type"] = "bimatrix";
  doc["A"] = MatrixToJson(game.a());
  if (game.has_b()) doc["B"] = MatrixToJson(game.b());
  return doc.dump();
}

std::string SerializeGame(const MarkovGame& game) {
  json doc;
  doc["type"] = "markov";
  doc["S"] = game.num_states();
  doc["n"] = game.n();
  doc["m"] = game.m();
  doc["H"] = game.horizon();
  doc["mu"] = std::vector<double>(game.initial().begin(), game.initial().end());
  doc["R_v"] = StageTensorToJson(game, Player::kVictim);
  if (game.has_exploiter_rewards()) {
    doc["R_e"] = StageTensorToJson(game, Player::kExploiter);
  }
  json p = json::array();
  for (int h = 0; h < game.horizon(); ++h) {
    json states = json::array();
    for (int s = 0; s < game.num_states(); ++s) {
      json rows = json::array();
      for (int a = 0; a < game.n(); ++a) {
        json cols = json::array();
        for (int b = 0; b < game.m(); ++b) {
          const auto next = game.Transition(h, s, a, b);
          cols.push_back(std::vector<double>(next.begin(), next.end()));
        }
        rows.push_back(std::move(cols));
      }
      states.push_back(std::move(rows));
    }
    p.push_back(std::move(states));
  }
  doc["P"] = std::move(p);
  return doc.dump();
}

std::string SerializeSolutions(const std::vector<SolutionRecord>& records) {
  if (records.size() == 1) return RecordToJson(records.front()).dump(2) + "\n";
  json list = json::array();
  for (const auto& r : records) list.push_back(RecordToJson(r));
  return json{{"solutions", std::move(list)}}.dump(2) + "\n";
}

std::vector<SolutionRecord> ParseSolutions(std::string_view text) {
  try {
    const json doc = json::parse(text);
    std::vector<SolutionRecord> records;
    if (doc.is_object() && doc.contains("solutions")) {
      for (const json& item : doc.at("solutions")) {
        records.push_back(RecordFromJson(item));
      }
    } else {
      records.push_back(RecordFromJson(doc));
    }
    return records;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("solution file: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

}  // namespace viser::cli
