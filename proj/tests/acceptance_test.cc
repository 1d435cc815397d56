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

// Acceptance report: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.h"
#include "viser/bench.h"
#include "viser/bimatrix.h"
#include "viser/markov.h"
#include "viser/oracle.h"
#include "viser_cli/commands.h"
#include "viser_cli/game_io.h"

namespace viser {
namespace {

namespace fs = std::filesystem;

class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  std::string Failures() const {
    std::string out;
    for (const auto& f : failures_) out += "\n      " + f;
    return out;
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::vector<BimatrixGame>& Corpus() {
  static std::vector<BimatrixGame> corpus;
  return corpus;
}

std::string A1(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  const BimatrixGame game = testing::TrapGame();
  const auto victim = bimatrix::SolveVictim(game.a());
  const auto exploiter = bimatrix::SolveExploiter(game.a(), game.b());
  const double security = bimatrix::ExploiterSecurity(game.b()).p_v;
  const double elapsed = Seconds(start);
  check.Expect(std::abs(victim.p_v - 10.0) <= 1e-6, "p_v");
  check.Expect(victim.x_star[2] <= 1e-6, "D mass");
  check.Expect(std::abs(exploiter.p_e - 10.0) <= 1e-6, "p_e");
  check.Expect(std::abs(exploiter.y_star[0] - 1.0) <= 1e-6, "y* = L");
  check.Expect(security < exploiter.p_e, "security < p_e");
  check.Expect(elapsed < 1.0, "runtime");
  Corpus().push_back(game);
  return Fmt("p_v=%.9f p_e=%.9f security=%.6f", victim.p_v, exploiter.p_e,
             security) +
         Fmt(" y*[L]=%.9f time=%.4fs", exploiter.y_star[0], elapsed);
}

std::string A2(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  double worst_v = 0.0;
  double worst_oracle = 0.0;
  for (int r = 1; r <= 20; ++r) {
    const BimatrixGame game = bench::GenBlockBimatrix(r);
    const auto victim = bimatrix::SolveVictim(game.a());
    const auto exploiter = bimatrix::SolveExploiter(game.a(), game.b());
    const double target = 10.0 / r;
    worst_v = std::max(worst_v, std::abs(victim.p_v - target));
    check.Expect(std::abs(victim.p_v - target) <= 1e-6,
                 "p_v at r=" + std::to_string(r));
    check.Expect(exploiter.p_e >= target - 1e-6,
                 "p_e lower bound at r=" + std::to_string(r));
    if (r <= 3) {
      const double oracle = oracle::OracleExploiterValue(
                                game.b(), oracle::EnumerateXStarVertices(
                                              game.a(), victim.p_v))
                                .value;
      const double gap = std::max(std::abs(oracle - target),
                                  std::abs(exploiter.p_e - oracle));
      worst_oracle = std::max(worst_oracle, gap);
      check.Expect(gap <= 1e-6, "oracle equality at r=" + std::to_string(r));
    }
    if (r <= 5) Corpus().push_back(game);
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 10.0, "runtime");
  return Fmt("max|p_v-10/r|=%.2e  max oracle gap (r<=3)=%.2e  time=%.2fs",
             worst_v, worst_oracle, elapsed);
}

std::string A3(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_baseline = 0.0;
  for (int r : {1, 2, 4, 5, 10}) {
    const auto row = bench::RunInstance(bench::GenBlockMarkov(r), "block", r);
    const double target = 100.0 / r;
    const double gap =
        std::max(std::abs(row.p_v - target), std::abs(row.p_e - target));
    worst = std::max(worst, gap);
    worst_baseline = std::min(worst_baseline,
                              std::min(row.payoff_v - row.p_v,
                                       row.payoff_e - row.p_e));
    check.Expect(gap <= 1e-5, "values at r=" + std::to_string(r));
    check.Expect(row.payoff_v >= row.p_v - 1e-5 &&
                     row.payoff_e >= row.p_e - 1e-5,
                 "realized payoffs at r=" + std::to_string(r));
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 60.0, "runtime");
  return Fmt("max|p-100/r|=%.2e  min(payoff-p)=%.2e  time=%.2fs", worst,
             worst_baseline, elapsed);
}

std::string A4(Check& check) {
  std::mt19937_64 rng(4004);
  std::uniform_int_distribution<int> dim(2, 10);
  double worst_payoff = 0.0;
  double worst_sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = testing::RandomMatrix(rng, dim(rng), dim(rng));
    const BimatrixGame game(a, a.Negated());
    const auto s = bimatrix::SolveViser(game);
    const double payoff =
        BimatrixPayoff(s.victim.x_star, a, s.exploiter.y_star);
    worst_payoff = std::max(worst_payoff, std::abs(payoff - s.victim.p_v));
    worst_sum = std::max(worst_sum, std::abs(s.exploiter.p_e + s.victim.p_v));
    if (trial < 20) Corpus().push_back(game);
  }
  check.Expect(worst_payoff <= 1e-6, "x*Ay* = p_v");
  check.Expect(worst_sum <= 1e-6, "p_e = -p_v");
  return Fmt("max|x*Ay*-p_v|=%.2e  max|p_e+p_v|=%.2e over 100 games",
             worst_payoff, worst_sum);
}

std::string A5(Check& check) {
  std::mt19937_64 rng(5005);
  std::uniform_int_distribution<int> dim(2, 4);
  double worst_grid_ratio = 0.0;
  double worst_exploiter = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = testing::RandomMatrix(rng, dim(rng), dim(rng));
    const Matrix b = testing::RandomMatrix(rng, a.rows(), a.cols());
    const auto victim = bimatrix::SolveVictim(a);
    const auto exploiter = bimatrix::SolveExploiter(a, b);
    const double grid = oracle::GridMaximin(a, 1e-3).value;
    const double bound = testing::GridBound(a, 1e-3);
    worst_grid_ratio =
        std::max(worst_grid_ratio, std::abs(victim.p_v - grid) / bound);
    const double reference =
        oracle::OracleExploiterValue(
            b, oracle::EnumerateXStarVertices(a, victim.p_v))
            .value;
    worst_exploiter =
        std::max(worst_exploiter, std::abs(exploiter.p_e - reference));
    Corpus().emplace_back(a, b);
  }
  check.Expect(worst_grid_ratio <= 1.0, "grid maximin");
  check.Expect(worst_exploiter <= 1e-6, "vertex oracle");

  double worst_markov = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const MarkovGame game = testing::RandomMarkovGame(rng, 2, 2, 2, 2);
    const auto pi = markov::SolveVictimMarkov(game).policy;
    const auto nu = markov::SolveExploiterMarkov(game).policy;
    for (Player p : {Player::kVictim, Player::kExploiter}) {
      const double recursive =
          InitialValue(game, EvaluatePolicies(game, pi, nu, p));
      const double enumerated = oracle::ExhaustivePolicyEval(game, pi, nu, p);
      worst_markov = std::max(worst_markov, std::abs(recursive - enumerated));
    }
  }
  check.Expect(worst_markov <= 1e-9, "exhaustive policy evaluation");
  return Fmt("max|p_v-grid|/bound=%.3f  max|p_e-oracle|=%.2e  "
             "max|eval-exhaustive|=%.2e",
             worst_grid_ratio, worst_exploiter, worst_markov);
}

std::string A6(Check& check) {
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> dim(2, 8);
  double worst = -1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = testing::RandomMatrix(rng, dim(rng), dim(rng));
    const Matrix b = testing::RandomMatrix(rng, a.rows(), a.cols());
    const double e0 = bimatrix::SolveExploiter(a, b, 0.0).p_e;
    const double e1 = bimatrix::SolveExploiter(a, b, 0.1).p_e;
    const double e2 = bimatrix::SolveExploiter(a, b, 1.0).p_e;
    worst = std::max({worst, e1 - e0, e2 - e1});
    Corpus().emplace_back(a, b);
  }
  check.Expect(worst <= 1e-8, "monotone in epsilon");
  return Fmt("max increase in p_e as epsilon grows=%.2e over 20 games", worst);
}

std::string SolveVictimOutput(const fs::path& path, const std::string& text) {
  cli::WriteFile(path.string(), text);
  cli::SolveArgs args;
  args.game_path = path.string();
  std::ostringstream out;
  std::ostringstream err;
  if (cli::CmdSolve(args, out, err) != cli::kExitOk) return "error";
  return out.str();
}

std::string A7(Check& check) {
  int games = 0;
  for (const BimatrixGame& game : Corpus()) {
    const Matrix& a = game.a();
    const Matrix& b = game.b();
    const auto victim = bimatrix::SolveVictim(a);
    const auto exploiter = bimatrix::SolveExploiter(a, b);
    const double z = victim.p_v;
    const double pe = exploiter.p_e;
    const auto& x = victim.x_star;
    const auto& y = exploiter.y_star;
    for (double c : {0.5, 3.0}) {
      for (double d : {-4.0, 0.0, 2.5}) {
        const double tol = 1e-6 * std::max(1.0, c);
        const Matrix a2 = a.Scaled(c).Shifted(d);
        const Matrix b2 = b.Scaled(c).Shifted(d);
        check.Expect(bimatrix::InVictimSet(a2, c * z + d, x, tol),
                     "victim membership under scale/shift");
        check.Expect(
            std::abs(bimatrix::SolveVictim(a2).p_v - (c * z + d)) <= tol,
            "victim value under scale/shift");
        check.Expect(bimatrix::InExploiterSet(a2, b, c * z + d, pe, y, tol),
                     "exploiter membership under victim scale/shift");
        check.Expect(bimatrix::InExploiterSet(a, b2, z, c * pe + d, y, tol),
                     "exploiter membership under exploiter scale/shift");
      }
    }
    ++games;
  }

  const fs::path dir = fs::temp_directory_path() /
                       ("viser_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int firewall = 0;
  for (const BimatrixGame& game : Corpus()) {
    const std::string full =
        SolveVictimOutput(dir / "full.json", cli::SerializeGame(game));
    const std::string stripped = SolveVictimOutput(
        dir / "victim.json", cli::SerializeGame(game.VictimView()));
    check.Expect(full != "error" && full == stripped, "bimatrix firewall");
    ++firewall;
  }
  std::mt19937_64 rng(7007);
  std::vector<MarkovGame> markov_games = {bench::GenBlockMarkov(2, 3, 3)};
  for (int i = 0; i < 10; ++i) {
    markov_games.push_back(testing::RandomMarkovGame(rng, 2 + i % 3, 2 + i % 4,
                                                     2 + i % 3, 1 + i % 4));
  }
  for (const MarkovGame& game : markov_games) {
    const std::string full =
        SolveVictimOutput(dir / "full.json", cli::SerializeGame(game));
    const std::string stripped = SolveVictimOutput(
        dir / "victim.json", cli::SerializeGame(game.VictimView()));
    check.Expect(full != "error" && full == stripped, "Markov firewall");
    ++firewall;
  }
  fs::remove_all(dir);
  return "scale/shift checked on " + std::to_string(games) +
         " games; byte-identical victim output on " +
         std::to_string(firewall) + " games";
}

std::string A8(Check& check) {
  const int n = 110;
  const MarkovGame game = bench::GenRandomMarkov(n, 10, 10, 1);
  const auto row = bench::RunInstance(game, "random", n);
  const double total = row.time_victim_s + row.time_exploiter_s;
  check.Expect(row.total_entries >= 1200000, "instance size");
  check.Expect(total <= 300.0, "runtime");
  check.Expect(row.time_victim_s <= row.time_exploiter_s,
               "victim time <= exploiter time");
  return Fmt("entries=%.0f victim=%.2fs exploiter=%.2fs",
             static_cast<double>(row.total_entries), row.time_victim_s,
             row.time_exploiter_s);
}

}  // namespace
}  // namespace viser

int main() {
  using Criterion = std::function<std::string(viser::Check&)>;
  const std::vector<std::pair<const char*, Criterion>> criteria = {
      {"A1", viser::A1}, {"A2", viser::A2}, {"A3", viser::A3},
      {"A4", viser::A4}, {"A5", viser::A5}, {"A6", viser::A6},
      {"A7", viser::A7}, {"A8", viser::A8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    viser::Check check;
    std::string detail;
    try {
      detail = run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s  %s%s\n", name, check.ok() ? "PASS" : "FAIL",
                detail.c_str(), check.ok() ? "" : check.Failures().c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
