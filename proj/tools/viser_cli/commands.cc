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

#include "viser_cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "viser/bench.h"
#include "viser/bimatrix.h"
#include "viser/error.h"
#include "viser/markov.h"
#include "viser/oracle.h"
#include "viser/tolerances.h"
#include "viser_cli/game_io.h"

namespace viser::cli {
namespace {

// Runs `body`, mapping library exceptions onto exit codes.
int Guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InformationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInformation;
  } catch (const SizeCapError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeCap;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

std::string Fixed(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::vector<double> ToVector(const MixedStrategy& s) {
  return {s.probs().begin(), s.probs().end()};
}

std::vector<std::vector<std::vector<double>>> PolicyToNested(
    const MarkovPolicy& policy) {
  std::vector<std::vector<std::vector<double>>> out(policy.horizon());
  for (int h = 0; h < policy.horizon(); ++h) {
    for (int s = 0; s < policy.num_states(); ++s) {
      out[h].push_back(ToVector(policy.at(h, s)));
    }
  }
  return out;
}

std::vector<std::vector<double>> ValuesToNested(const ValueTable& values) {
  std::vector<std::vector<double>> out(values.horizon());
  for (int h = 0; h < values.horizon(); ++h) {
    out[h].assign(values.step(h).begin(), values.step(h).end());
  }
  return out;
}

std::vector<Player> PlayersFor(const std::string& name) {
  if (name == "both") return {Player::kVictim, Player::kExploiter};
  return {ParsePlayer(name)};
}

SolutionRecord SolveBimatrix(const BimatrixGame& game, Player player,
                             double epsilon) {
  SolutionRecord record;
  record.player = player;
  record.game_type = "bimatrix";
  if (player == Player::kVictim) {
    // The victim never sees B.
    const BimatrixGame view = game.VictimView();
    const bimatrix::VictimSolution solution = bimatrix::SolveVictim(view.a());
    record.strategy = ToVector(solution.x_star);
    record.guaranteed_payoff = solution.p_v;
    record.pivots = solution.iterations;
  } else {
    const bimatrix::ExploiterSolution solution =
        bimatrix::SolveExploiter(game.a(), game.b(), epsilon);
    record.strategy = ToVector(solution.y_star);
    record.w = solution.w_star;
    record.alpha = solution.alpha_star;
    record.guaranteed_payoff = solution.p_e;
    record.epsilon = epsilon;
    record.pivots = solution.iterations;
  }
  return record;
}

SolutionRecord SolveMarkov(const MarkovGame& game, Player player) {
  SolutionRecord record;
  record.player = player;
  record.game_type = "markov";
  if (player == Player::kVictim) {
    const markov::MpviserResult result =
        markov::SolveVictimMarkov(game.VictimView());
    record.policy = PolicyToNested(result.policy);
    record.values = ValuesToNested(result.values);
    record.guaranteed_payoff = result.guaranteed_payoff;
    record.pivots = result.total_pivots;
  } else {
    const markov::MpviserResult result = markov::SolveExploiterMarkov(game);
    record.policy = PolicyToNested(result.policy);
    record.values = ValuesToNested(result.values);
    record.guaranteed_payoff = result.guaranteed_payoff;
    record.pivots = result.total_pivots;
    std::vector<std::vector<std::vector<double>>> w(game.horizon());
    std::vector<std::vector<double>> alpha(game.horizon());
    for (int h = 0; h < game.horizon(); ++h) {
      for (int s = 0; s < game.num_states(); ++s) {
        const auto& dual =
            (*result.duals)[static_cast<std::size_t>(h) * game.num_states() + s];
        w[h].push_back(dual.w);
        alpha[h].push_back(dual.alpha);
      }
    }
    record.stage_w = std::move(w);
    record.stage_alpha = std::move(alpha);
  }
  return record;
}

// Accumulates per-check verdicts and prints one line per check.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  void Check(bool ok, const std::string& what) {
    out_ << (ok ? "PASS " : "FAIL ") << what << '\n';
    all_ok_ = all_ok_ && ok;
  }
  bool ok() const { return all_ok_; }

 private:
  std::ostream& out_;
  bool all_ok_ = true;
};

std::optional<MixedStrategy> TryStrategy(const std::vector<double>& probs) {
  try {
    return MixedStrategy(probs);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

void VerifyBimatrix(const BimatrixGame& game, const SolutionRecord& record,
                    double tol, Report& report) {
  const std::string who(PlayerName(record.player));
  const auto strategy = TryStrategy(record.strategy.value_or(std::vector<double>{}));
  if (!strategy) {
    report.Check(false, who + " strategy is a probability vector");
    return;
  }
  const double z_star = bimatrix::SolveVictim(game.a()).p_v;
  if (record.player == Player::kVictim) {
    report.Check(strategy->size() == game.n(),
                 who + " strategy has " + std::to_string(game.n()) + " entries");
    report.Check(bimatrix::InVictimSet(game.a(), z_star, *strategy, tol),
                 who + " strategy is in the maximin set (z* = " + Fixed(z_star) +
                     ")");
    report.Check(std::abs(record.guaranteed_payoff - z_star) <= tol,
                 who + " guaranteed payoff " + Fixed(record.guaranteed_payoff) +
                     " matches " + Fixed(z_star));
    return;
  }
  const bimatrix::ExploiterSolution fresh =
      bimatrix::SolveExploiterWithValue(game.a(), game.b(), z_star,
                                        record.epsilon);
  report.Check(strategy->size() == game.m(),
               who + " strategy has " + std::to_string(game.m()) + " entries");
  report.Check(bimatrix::InExploiterSet(game.a(), game.b(),
                                        z_star - record.epsilon, fresh.p_e,
                                        *strategy, tol),
               who + " strategy is a worst-case best response (p_e = " +
                   Fixed(fresh.p_e) + ")");
  report.Check(std::abs(record.guaranteed_payoff - fresh.p_e) <= tol,
               who + " guaranteed payoff " + Fixed(record.guaranteed_payoff) +
                   " matches " + Fixed(fresh.p_e));
}

void VerifyMarkov(const MarkovGame& game, const SolutionRecord& record,
                  double tol, Report& report) {
  const std::string who(PlayerName(record.player));
  if (record.epsilon != 0.0) {
    report.Check(false, who + " epsilon is 0 for Markov games");
    return;
  }
  const auto& policy = *record.policy;
  const int horizon = game.horizon();
  const int states = game.num_states();
  const int actions = record.player == Player::kVictim ? game.n() : game.m();
  bool shape_ok = static_cast<int>(policy.size()) == horizon;
  for (const auto& step : policy) {
    shape_ok = shape_ok && static_cast<int>(step.size()) == states;
    for (const auto& probs : step) {
      shape_ok = shape_ok && static_cast<int>(probs.size()) == actions;
    }
  }
  report.Check(shape_ok, who + " policy covers every (h, s) with " +
                             std::to_string(actions) + " actions");
  if (!shape_ok) return;

  const markov::MpviserResult fresh =
      record.player == Player::kVictim
          ? markov::SolveVictimMarkov(game.VictimView())
          : markov::SolveExploiterMarkov(game);
  int failures = 0;
  for (int h = 0; h < horizon; ++h) {
    for (int s = 0; s < states; ++s) {
      const auto strategy = TryStrategy(policy[h][s]);
      const double stage_tol = tol * (horizon - h);
      bool ok = strategy.has_value();
      if (ok) {
        ok = record.player == Player::kVictim
                 ? markov::VictimStageMembership(game, fresh, h, s, *strategy,
                                                 stage_tol)
                 : markov::ExploiterStageMembership(game, fresh, h, s,
                                                    *strategy, stage_tol);
      }
      if (!ok) {
        ++failures;
        report.Check(false, who + " stage (h=" + std::to_string(h) + ", s=" +
                                std::to_string(s) + ") strategy is optimal");
      }
    }
  }
  if (failures == 0) {
    report.Check(true, who + " all " + std::to_string(horizon * states) +
                           " stage strategies are optimal");
  }
  report.Check(std::abs(record.guaranteed_payoff - fresh.guaranteed_payoff) <=
                   tol * horizon,
               who + " guaranteed payoff " + Fixed(record.guaranteed_payoff) +
                   " matches " + Fixed(fresh.guaranteed_payoff));
}

std::vector<long> ParseList(const std::string& text, const char* what) {
  std::vector<long> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw ValidationError(std::string(what) + ": bad entry '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

double ColumnRange(const Matrix& a) {
  double widest = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double lo = a(0, j);
    double hi = a(0, j);
    for (int i = 1; i < a.rows(); ++i) {
      lo = std::min(lo, a(i, j));
      hi = std::max(hi, a(i, j));
    }
    widest = std::max(widest, hi - lo);
  }
  return widest;
}

int OracleBimatrix(const BimatrixGame& game, const OracleArgs& args,
                   std::ostream& out) {
  if (game.n() > oracle::kGridMaxActions) {
    throw SizeCapError("oracle: grid maximin supports n <= " +
                       std::to_string(oracle::kGridMaxActions));
  }
  if (game.has_b() && game.n() + game.m() > oracle::kVertexMaxConstraints) {
    throw SizeCapError("oracle: vertex enumeration supports n + m <= " +
                       std::to_string(oracle::kVertexMaxConstraints));
  }
  Report report(out);
  const bimatrix::VictimSolution victim = bimatrix::SolveVictim(game.a());
  const oracle::GridResult grid =
      oracle::GridMaximin(game.a(), args.resolution);
  const double victim_delta = victim.p_v - grid.value;
  const double victim_bound =
      2.0 * ColumnRange(game.a()) * args.resolution + args.tol;
  out << "victim    LP p_v = " << Fixed(victim.p_v)
      << "  grid maximin = " << Fixed(grid.value)
      << "  delta = " << Fixed(victim_delta) << "  bound = "
      << Fixed(victim_bound) << '\n';
  report.Check(std::abs(victim_delta) <= victim_bound,
               "victim value within grid bound");
  if (game.has_b()) {
    const bimatrix::ExploiterSolution exploiter =
        bimatrix::SolveExploiterWithValue(game.a(), game.b(), victim.p_v);
    const auto vertices = oracle::EnumerateXStarVertices(game.a(), victim.p_v);
    const oracle::ExploiterOracleResult reference =
        oracle::OracleExploiterValue(game.b(), vertices);
    const double delta = exploiter.p_e - reference.value;
    out << "exploiter LP p_e = " << Fixed(exploiter.p_e)
        << "  vertex oracle = " << Fixed(reference.value) << " ("
        << vertices.size() << " vertices)  delta = " << Fixed(delta)
        << "  bound = " << Fixed(args.tol) << '\n';
    report.Check(std::abs(delta) <= args.tol,
                 "exploiter value matches vertex oracle");
  }
  return report.ok() ? kExitOk : kExitCertificate;
}

int OracleMarkov(const MarkovGame& game, const OracleArgs& args,
                 std::ostream& out) {
  const double paths = std::pow(
      static_cast<double>(game.num_states()) * game.n() * game.m(),
      game.horizon());
  if (paths > oracle::kTrajectoryCap) {
    throw SizeCapError("oracle: trajectory enumeration cap exceeded");
  }
  Report report(out);
  const markov::MpviserResult victim =
      markov::SolveVictimMarkov(game.VictimView());
  std::vector<Player> players = {Player::kVictim};
  MarkovPolicy nu(Player::kExploiter, game.horizon(), game.num_states(),
                  std::vector<MixedStrategy>(
                      static_cast<std::size_t>(game.horizon()) *
                          game.num_states(),
                      MixedStrategy::Uniform(game.m())));
  if (game.has_exploiter_rewards()) {
    nu = markov::SolveExploiterMarkov(game).policy;
    players.push_back(Player::kExploiter);
  }
  for (Player player : players) {
    const double recursive =
        InitialValue(game, EvaluatePolicies(game, victim.policy, nu, player));
    const double enumerated =
        oracle::ExhaustivePolicyEval(game, victim.policy, nu, player);
    const double bound = 1e-9 * std::max(1.0, std::abs(enumerated));
    out << PlayerName(player) << " realized value: recursion = "
        << Fixed(recursive) << "  trajectories = " << Fixed(enumerated)
        << "  delta = " << Fixed(recursive - enumerated)
        << "  bound = " << Fixed(bound) << '\n';
    report.Check(std::abs(recursive - enumerated) <= bound,
                 std::string(PlayerName(player)) +
                     " policy evaluation matches trajectory enumeration");
  }
  return report.ok() ? kExitOk : kExitCertificate;
}

}  // namespace

int CmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (args.player != "victim" && args.player != "exploiter" &&
        args.player != "both") {
      throw ValidationError("--player must be victim, exploiter or both");
    }
    if (!(args.epsilon >= 0.0)) throw ValidationError("--epsilon must be >= 0");
    const GameFile game = LoadGame(args.game_path);
    std::vector<SolutionRecord> records;
    for (Player player : PlayersFor(args.player)) {
      if (const auto* bimatrix_game = std::get_if<BimatrixGame>(&game)) {
        if (player == Player::kExploiter && !bimatrix_game->has_b()) {
          throw InformationError("exploiter solve needs B in the game file");
        }
        records.push_back(SolveBimatrix(*bimatrix_game, player, args.epsilon));
      } else {
        const auto& markov_game = std::get<MarkovGame>(game);
        if (args.epsilon != 0.0) {
          throw ValidationError("--epsilon applies to bimatrix games only");
        }
        if (player == Player::kExploiter &&
            !markov_game.has_exploiter_rewards()) {
          throw InformationError("exploiter solve needs R_e in the game file");
        }
        records.push_back(SolveMarkov(markov_game, player));
      }
    }
    const std::string text = SerializeSolutions(records);
    if (args.out_path.empty()) {
      out << text;
    } else {
      WriteFile(args.out_path, text);
    }
    return kExitOk;
  });
}

int CmdVerify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (!(args.tol >= 0.0)) throw ValidationError("--tol must be >= 0");
    const GameFile game = LoadGame(args.game_path);
    const std::vector<SolutionRecord> records =
        ParseSolutions(ReadFile(args.solution_path));
    Report report(out);
    for (const SolutionRecord& record : records) {
      if (const auto* bimatrix_game = std::get_if<BimatrixGame>(&game)) {
        if (record.game_type != "bimatrix") {
          report.Check(false, "solution type matches a bimatrix game");
          continue;
        }
        VerifyBimatrix(*bimatrix_game, record, args.tol, report);
      } else {
        if (record.game_type != "markov") {
          report.Check(false, "solution type matches a Markov game");
          continue;
        }
        VerifyMarkov(std::get<MarkovGame>(game), record, args.tol, report);
      }
    }
    return report.ok() ? kExitOk : kExitCertificate;
  });
}

int CmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (args.horizon < 1 || args.states < 1) {
      throw ValidationError("--horizon and --states must be >= 1");
    }
    bench::ExperimentOptions options;
    options.horizon = args.horizon;
    options.num_states = args.states;
    std::vector<bench::ExperimentRow> rows;
    if (args.kind == "block") {
      if (args.r_max < 0) throw ValidationError("--r-max must be >= 0");
      std::vector<int> r_values;
      for (int r = 1; r <= args.r_max; ++r) r_values.push_back(r);
      rows = bench::RunBlockExperiment(r_values, options);
    } else if (args.kind == "random") {
      std::vector<int> sizes;
      for (long n : ParseList(args.sizes, "--sizes")) {
        if (n < 1) throw ValidationError("--sizes entries must be >= 1");
        sizes.push_back(static_cast<int>(n));
      }
      std::vector<std::uint64_t> seeds;
      if (args.seeds.empty()) {
        for (std::uint64_t k = 0; k < 5; ++k) seeds.push_back(args.seed + k);
      } else {
        for (long s : ParseList(args.seeds, "--seeds")) {
          if (s < 0) throw ValidationError("--seeds entries must be >= 0");
          seeds.push_back(static_cast<std::uint64_t>(s));
        }
      }
      rows = bench::RunRandomExperiment(sizes, seeds, options);
    } else {
      throw ValidationError("--kind must be block or random");
    }
    const std::string csv = bench::ToCsv(rows);
    if (args.out_path.empty()) {
      out << csv;
    } else {
      WriteFile(args.out_path, csv);
    }
    return kExitOk;
  });
}

int CmdOracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (!(args.resolution > 0.0) || args.resolution > 1.0) {
      throw ValidationError("--resolution must be in (0, 1]");
    }
    const GameFile game = LoadGame(args.game_path);
    if (const auto* bimatrix_game = std::get_if<BimatrixGame>(&game)) {
      return OracleBimatrix(*bimatrix_game, args, out);
    }
    return OracleMarkov(std::get<MarkovGame>(game), args, out);
  });
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"VISER solver for games with one-sided information"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a player's strategy");
  solve_cmd->add_option("game", solve.game_path, "Game JSON file")->required();
  solve_cmd->add_option("--player", solve.player, "victim, exploiter or both")
      ->capture_default_str();
  solve_cmd->add_option("--epsilon", solve.epsilon,
                        "Exploiter guards against epsilon-maximin victims")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out_path, "Output path (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a solution file against a game");
  verify_cmd->add_option("game", verify.game_path, "Game JSON file")->required();
  verify_cmd->add_option("solution", verify.solution_path, "Solution JSON file")
      ->required();
  verify_cmd->add_option("--tol", verify.tol, "Certificate tolerance")
      ->capture_default_str();

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run the experiment sweeps");
  bench_cmd->add_option("--kind", bench_args.kind, "block or random")
      ->required();
  bench_cmd->add_option("--r-max", bench_args.r_max, "Block sweep r = 1..r-max")
      ->capture_default_str();
  bench_cmd->add_option("--sizes", bench_args.sizes, "Random sweep sizes n")
      ->capture_default_str();
  bench_cmd->add_option("--seeds", bench_args.seeds, "Comma-separated seeds");
  bench_cmd->add_option("--seed", bench_args.seed,
                        "First of 5 seeds when --seeds is not given")
      ->capture_default_str();
  bench_cmd->add_option("--horizon", bench_args.horizon, "Horizon H")
      ->capture_default_str();
  bench_cmd->add_option("--states", bench_args.states, "State count S")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out_path, "CSV path (default stdout)");

  OracleArgs oracle_args;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Compare solver values with brute force");
  oracle_cmd->add_option("game", oracle_args.game_path, "Game JSON file")
      ->required();
  oracle_cmd->add_option("--tol", oracle_args.tol, "Exploiter value tolerance")
      ->capture_default_str();
  oracle_cmd->add_option("--resolution", oracle_args.resolution,
                         "Simplex grid resolution")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (*solve_cmd) return CmdSolve(solve, out, err);
  if (*verify_cmd) return CmdVerify(verify, out, err);
  if (*bench_cmd) return CmdBench(bench_args, out, err);
  return CmdOracle(oracle_args, out, err);
}

}  // namespace viser::cli
