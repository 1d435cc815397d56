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

#include "viser/bench.h"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <utility>

#include "viser/error.h"

namespace viser::bench {
namespace {

const Matrix& VictimBlock() {
  static const Matrix block{{10, 10}, {10, 10}, {-1, -1}};
  return block;
}

const Matrix& ExploiterBlock() {
  static const Matrix block{{20, -1}, {10, -1}, {-1, 0}};
  return block;
}

Matrix BlockDiagonal(const Matrix& block, int r) {
  Matrix out(block.rows() * r, block.cols() * r);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < block.rows(); ++i) {
      for (int j = 0; j < block.cols(); ++j) {
        out(k * block.rows() + i, k * block.cols() + j) = block(i, j);
      }
    }
  }
  return out;
}

Matrix RandomMatrix(GameRng& rng, int n, int m) {
  Matrix out(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) out(i, j) = rng.Uniform(-1.0, 1.0);
  }
  return out;
}

std::vector<double> PointMass(int size, int at) {
  std::vector<double> mu(size, 0.0);
  mu[at] = 1.0;
  return mu;
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string FormatDouble(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double ParseDouble(std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ValidationError("CSV: bad number '" + std::string(field) + "'");
  }
  return value;
}

long ParseLong(std::string_view field) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ValidationError("CSV: bad integer '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

GameRng::GameRng(std::uint64_t seed) : engine_(seed) {}

double GameRng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GameRng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Unit();
}

BimatrixGame GenBlockBimatrix(int r) {
  if (r < 1) throw ValidationError("block count r must be >= 1");
  return BimatrixGame(BlockDiagonal(VictimBlock(), r),
                      BlockDiagonal(ExploiterBlock(), r));
}

MarkovGame GenBlockMarkov(int r, int num_states, int horizon) {
  if (num_states < 1 || horizon < 1) {
    throw ValidationError("block Markov game needs S, H >= 1");
  }
  const BimatrixGame stage = GenBlockBimatrix(r);
  MarkovGame::Spec spec;
  spec.num_states = num_states;
  spec.n = stage.n();
  spec.m = stage.m();
  spec.horizon = horizon;
  spec.initial = PointMass(num_states, 0);
  const std::size_t stages = static_cast<std::size_t>(horizon) * num_states;
  spec.victim_rewards.assign(stages, stage.a());
  spec.exploiter_rewards.emplace(stages, stage.b());
  spec.transitions.assign(stages * spec.n * spec.m * num_states,
                          1.0 / num_states);
  return MarkovGame(std::move(spec));
}

BimatrixGame GenRandomBimatrix(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ValidationError("random game needs n, m >= 1");
  GameRng rng(seed);
  Matrix a = RandomMatrix(rng, n, m);
  Matrix b = RandomMatrix(rng, n, m);
  return BimatrixGame(std::move(a), std::move(b));
}

MarkovGame GenRandomMarkov(int n, int num_states, int horizon,
                           std::uint64_t seed) {
  if (n < 1 || num_states < 1 || horizon < 1) {
    throw ValidationError("random Markov game needs n, S, H >= 1");
  }
  GameRng rng(seed);
  MarkovGame::Spec spec;
  spec.num_states = num_states;
  spec.n = n;
  spec.m = n;
  spec.horizon = horizon;
  spec.initial = PointMass(num_states, 0);
  spec.exploiter_rewards.emplace();
  spec.transitions.reserve(static_cast<std::size_t>(horizon) * num_states * n *
                           n * num_states);
  std::vector<double> next(num_states);
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < num_states; ++s) {
      spec.victim_rewards.push_back(RandomMatrix(rng, n, n));
      spec.exploiter_rewards->push_back(RandomMatrix(rng, n, n));
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          double sum = 0.0;
          for (double& p : next) sum += (p = rng.Unit());
          for (double p : next) {
            spec.transitions.push_back(sum > 0.0 ? p / sum : 1.0 / num_states);
          }
        }
      }
    }
  }
  return MarkovGame(std::move(spec));
}

double BlockAnalyticValue(int r, int horizon) {
  return 10.0 * horizon / r;
}

ExperimentRow RunInstance(const MarkovGame& game, std::string kind,
                          long size_param,
                          const markov::SolveOptions& options) {
  ExperimentRow row;
  row.kind = std::move(kind);
  row.size_param = size_param;
  row.total_entries = static_cast<long>(game.horizon()) * game.num_states() *
                      game.n() * game.m();

  auto start = std::chrono::steady_clock::now();
  const markov::MpviserResult victim = markov::SolveVictimMarkov(game, options);
  row.time_victim_s = SecondsSince(start);

  start = std::chrono::steady_clock::now();
  const markov::MpviserResult exploiter =
      markov::SolveExploiterMarkov(game, options);
  row.time_exploiter_s = SecondsSince(start);

  row.p_v = victim.guaranteed_payoff;
  row.p_e = exploiter.guaranteed_payoff;
  row.payoff_v = InitialValue(
      game, EvaluatePolicies(game, victim.policy, exploiter.policy,
                             Player::kVictim));
  row.payoff_e = InitialValue(
      game, EvaluatePolicies(game, victim.policy, exploiter.policy,
                             Player::kExploiter));
  return row;
}

std::vector<ExperimentRow> RunBlockExperiment(
    const std::vector<int>& r_values, const ExperimentOptions& options) {
  std::vector<ExperimentRow> rows;
  for (int r : r_values) {
    const MarkovGame game =
        GenBlockMarkov(r, options.num_states, options.horizon);
    ExperimentRow row = RunInstance(game, "block", r, options.solve);
    row.analytic_v = BlockAnalyticValue(r, options.horizon);
    row.analytic_e = BlockAnalyticValue(r, options.horizon);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ExperimentRow> RunRandomExperiment(
    const std::vector<int>& n_values, const std::vector<std::uint64_t>& seeds,
    const ExperimentOptions& options) {
  std::vector<ExperimentRow> rows;
  for (int n : n_values) {
    for (std::uint64_t seed : seeds) {
      const MarkovGame game =
          GenRandomMarkov(n, options.num_states, options.horizon, seed);
      rows.push_back(RunInstance(game, "random", n, options.solve));
    }
  }
  return rows;
}

std::string ToCsv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ExperimentRow& row : rows) {
    out << row.kind << ',' << row.size_param << ',' << row.total_entries << ','
        << FormatDouble(row.p_v) << ',' << FormatDouble(row.p_e) << ','
        << FormatDouble(row.payoff_v) << ',' << FormatDouble(row.payoff_e)
        << ',' << (row.analytic_v ? FormatDouble(*row.analytic_v) : "") << ','
        << (row.analytic_e ? FormatDouble(*row.analytic_e) : "") << ','
        << FormatDouble(row.time_victim_s) << ','
        << FormatDouble(row.time_exploiter_s) << '\n';
  }
  return out.str();
}

std::vector<ExperimentRow> ParseCsv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty() || lines.front() != kCsvHeader) {
    throw ValidationError("CSV header does not match the experiment schema");
  }
  std::vector<ExperimentRow> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = SplitFields(lines[k]);
    if (fields.size() != 11) {
      throw ValidationError("CSV row " + std::to_string(k) + " has " +
                            std::to_string(fields.size()) + " fields");
    }
    ExperimentRow row;
    row.kind = std::string(fields[0]);
    row.size_param = ParseLong(fields[1]);
    row.total_entries = ParseLong(fields[2]);
    row.p_v = ParseDouble(fields[3]);
    row.p_e = ParseDouble(fields[4]);
    row.payoff_v = ParseDouble(fields[5]);
    row.payoff_e = ParseDouble(fields[6]);
    if (!fields[7].empty()) row.analytic_v = ParseDouble(fields[7]);
    if (!fields[8].empty()) row.analytic_e = ParseDouble(fields[8]);
    row.time_victim_s = ParseDouble(fields[9]);
    row.time_exploiter_s = ParseDouble(fields[10]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace viser::bench
