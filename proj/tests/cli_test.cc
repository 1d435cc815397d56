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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_support.h"
#include "viser/bench.h"
#include "viser_cli/commands.h"
#include "viser_cli/game_io.h"

namespace viser::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("viser_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string Write(const std::string& name, const std::string& text) const {
    WriteFile(Path(name), text);
    return Path(name);
  }

  // Runs `viser args...` in process.
  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "viser");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return RunCli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string TrapFile(bool with_b = true) const {
    const BimatrixGame game =
        with_b ? testing::TrapGame() : BimatrixGame(testing::TrapVictim());
    return Write(with_b ? "trap.json" : "trap_victim.json",
                 SerializeGame(game));
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SolveTrap) {
  const std::string game = TrapFile();
  ASSERT_EQ(Run({"solve", game, "--player", "victim"}), kExitOk);
  const auto victim = ParseSolutions(out_.str());
  ASSERT_EQ(victim.size(), 1u);
  EXPECT_NEAR(victim[0].guaranteed_payoff, 10.0, 1e-6);

  ASSERT_EQ(Run({"solve", game, "--player", "exploiter", "--epsilon", "0"}),
            kExitOk);
  const auto exploiter = ParseSolutions(out_.str());
  ASSERT_EQ(exploiter.size(), 1u);
  EXPECT_EQ(exploiter[0].player, Player::kExploiter);
  EXPECT_NEAR(exploiter[0].guaranteed_payoff, 10.0, 1e-6);
  ASSERT_TRUE(exploiter[0].strategy.has_value());
  EXPECT_NEAR((*exploiter[0].strategy)[0], 1.0, 1e-9);
  EXPECT_NEAR((*exploiter[0].strategy)[1], 0.0, 1e-9);
  EXPECT_TRUE(exploiter[0].w.has_value());
  EXPECT_TRUE(exploiter[0].alpha.has_value());
}

TEST_F(CliTest, SolveErrors) {
  EXPECT_EQ(Run({"solve", TrapFile(false), "--player", "exploiter"}),
            kExitInformation);
  EXPECT_EQ(Run({"solve", Write("bad.json", "{\"type\":")}), kExitInvalid);
  EXPECT_EQ(Run({"solve", Write("ragged.json",
                                R"({"type":"bimatrix","A":[[1,2],[3]]})")}),
            kExitInvalid);
  EXPECT_EQ(Run({"solve", TrapFile(), "--player", "nobody"}), kExitInvalid);
  EXPECT_EQ(Run({"solve", TrapFile(), "--epsilon", "-1"}), kExitInvalid);
  EXPECT_EQ(Run({"solve", Path("missing.json")}), kExitInvalid);
  const std::string markov =
      Write("block.json", SerializeGame(bench::GenBlockMarkov(1, 2, 2)));
  EXPECT_EQ(Run({"solve", markov, "--epsilon", "0.1"}), kExitInvalid);
}

TEST_F(CliTest, SolveWritesOutFile) {
  const std::string out = Path("solution.json");
  ASSERT_EQ(Run({"solve", TrapFile(), "--player", "both", "--out", out}),
            kExitOk);
  EXPECT_TRUE(out_.str().empty());
  EXPECT_EQ(ParseSolutions(ReadFile(out)).size(), 2u);
}

TEST_F(CliTest, VerifyTrap) {
  const std::string game = TrapFile();
  ASSERT_EQ(Run({"solve", game, "--player", "both", "--out", Path("s.json")}),
            kExitOk);
  EXPECT_EQ(Run({"verify", game, Path("s.json")}), kExitOk);
  EXPECT_NE(out_.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);

  SolutionRecord bad;
  bad.player = Player::kVictim;
  bad.game_type = "bimatrix";
  bad.guaranteed_payoff = 10.0;
  bad.strategy = std::vector<double>{0.0, 0.0, 1.0};
  const std::string bad_path = Write("bad.json", SerializeSolutions({bad}));
  EXPECT_EQ(Run({"verify", game, bad_path}), kExitCertificate);
  EXPECT_NE(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyRejectsPerturbedMarkovStage) {
  const std::string game =
      Write("block.json", SerializeGame(bench::GenBlockMarkov(1, 3, 4)));
  ASSERT_EQ(Run({"solve", game, "--player", "both", "--out", Path("s.json")}),
            kExitOk);
  ASSERT_EQ(Run({"verify", game, Path("s.json")}), kExitOk);

  for (int index : {0, 1}) {
    auto records = ParseSolutions(ReadFile(Path("s.json")));
    auto& strategy = (*records[index].policy)[2][1];
    // Move 0.1 mass onto the last action: D for the victim, R for the
    // exploiter.
    double moved = 0.0;
    for (std::size_t a = 0; a + 1 < strategy.size(); ++a) {
      const double take = std::min(strategy[a], 0.1 - moved);
      strategy[a] -= take;
      moved += take;
    }
    strategy.back() += moved;
    ASSERT_NEAR(moved, 0.1, 1e-12);
    const std::string path =
        Write("perturbed" + std::to_string(index) + ".json",
              SerializeSolutions({records[index]}));
    EXPECT_EQ(Run({"verify", game, path}), kExitCertificate);
  }
}

TEST_F(CliTest, VerifyRejectsInvalidStrategy) {
  SolutionRecord bad;
  bad.game_type = "bimatrix";
  bad.guaranteed_payoff = 10.0;
  bad.strategy = std::vector<double>{0.5, 0.9, -0.4};
  EXPECT_EQ(Run({"verify", TrapFile(), Write("bad.json",
                                               SerializeSolutions({bad}))}),
            kExitCertificate);
}

TEST_F(CliTest, BenchRows) {
  ASSERT_EQ(Run({"bench", "--kind", "block", "--r-max", "10", "--states", "2",
                 "--horizon", "2"}),
            kExitOk);
  const auto block = bench::ParseCsv(out_.str());
  ASSERT_EQ(block.size(), 10u);
  EXPECT_EQ(block[9].size_param, 10);

  const std::string csv = Path("random.csv");
  ASSERT_EQ(Run({"bench", "--kind", "random", "--sizes", "2,3", "--seeds",
                 "4,5,6", "--states", "2", "--horizon", "2", "--out", csv}),
            kExitOk);
  EXPECT_EQ(bench::ParseCsv(ReadFile(csv)).size(), 6u);

  ASSERT_EQ(Run({"bench", "--kind", "random", "--sizes", "2", "--seed", "7",
                 "--states", "2", "--horizon", "2"}),
            kExitOk);
  EXPECT_EQ(bench::ParseCsv(out_.str()).size(), 5u);
}

TEST_F(CliTest, BenchEmptySweepAndErrors) {
  ASSERT_EQ(Run({"bench", "--kind", "block", "--r-max", "0"}), kExitOk);
  EXPECT_EQ(out_.str(), std::string(bench::kCsvHeader) + "\n");
  ASSERT_EQ(Run({"bench", "--kind", "random", "--sizes", ""}), kExitOk);
  EXPECT_EQ(out_.str(), std::string(bench::kCsvHeader) + "\n");

  EXPECT_EQ(Run({"bench", "--kind", "spiral"}), kExitInvalid);
  EXPECT_EQ(Run({"bench", "--kind", "random", "--sizes", "2,x"}),
            kExitInvalid);
  EXPECT_EQ(Run({"bench", "--kind", "block", "--r-max", "-1"}), kExitInvalid);
  EXPECT_EQ(Run({"bench", "--kind", "block", "--horizon", "0"}), kExitInvalid);
}

TEST_F(CliTest, OracleCases) {
  ASSERT_EQ(Run({"oracle", TrapFile()}), kExitOk);
  EXPECT_NE(out_.str().find("grid maximin"), std::string::npos);
  EXPECT_NE(out_.str().find("vertex oracle"), std::string::npos);

  const std::string zero = Write(
      "zero.json", SerializeGame(BimatrixGame(Matrix(2, 2), Matrix(2, 2))));
  ASSERT_EQ(Run({"oracle", zero}), kExitOk);
  EXPECT_NE(out_.str().find("p_v = 0  grid maximin = 0  delta = 0 "), std::string::npos);
  EXPECT_NE(out_.str().find("p_e = 0  vertex oracle = 0 "), std::string::npos);

  std::mt19937_64 rng(1);
  const std::string big = Write(
      "big.json", SerializeGame(BimatrixGame(testing::RandomMatrix(rng, 100, 100),
                                             testing::RandomMatrix(rng, 100, 100))));
  EXPECT_EQ(Run({"oracle", big}), kExitSizeCap);

  const std::string markov =
      Write("small.json", SerializeGame(testing::RandomMarkovGame(rng, 2, 2, 2, 2)));
  EXPECT_EQ(Run({"oracle", markov}), kExitOk);
  const std::string long_markov = Write(
      "long.json", SerializeGame(testing::RandomMarkovGame(rng, 3, 3, 3, 10)));
  EXPECT_EQ(Run({"oracle", long_markov}), kExitSizeCap);
}

TEST_F(CliTest, InformationFirewall) {
  ASSERT_EQ(Run({"solve", TrapFile(true)}), kExitOk);
  const std::string with_b = out_.str();
  ASSERT_EQ(Run({"solve", TrapFile(false)}), kExitOk);
  EXPECT_EQ(out_.str(), with_b);

  std::mt19937_64 rng(2);
  const MarkovGame game = testing::RandomMarkovGame(rng, 3, 3, 2, 3);
  ASSERT_EQ(Run({"solve", Write("m.json", SerializeGame(game))}), kExitOk);
  const std::string full = out_.str();
  ASSERT_EQ(Run({"solve", Write("mv.json", SerializeGame(game.VictimView()))}),
            kExitOk);
  EXPECT_EQ(out_.str(), full);
}

TEST_F(CliTest, SolveThenVerifyRoundTrip) {
  std::mt19937_64 rng(3);
  std::vector<std::string> games;
  games.push_back(TrapFile());
  games.push_back(Write("pennies.json",
                        SerializeGame(BimatrixGame(
                            testing::MatchingPennies(),
                            testing::MatchingPennies().Negated()))));
  for (int i = 0; i < 6; ++i) {
    games.push_back(Write("b" + std::to_string(i) + ".json",
                          SerializeGame(bench::GenRandomBimatrix(2 + i, 7 - i, i))));
    games.push_back(
        Write("m" + std::to_string(i) + ".json",
              SerializeGame(testing::RandomMarkovGame(rng, 1 + i % 3, 2 + i % 2,
                                                      3 - i % 2, 1 + i))));
  }
  games.push_back(
      Write("block.json", SerializeGame(bench::GenBlockMarkov(3, 3, 3))));
  for (const std::string& game : games) {
    const std::string solution = game + ".sol";
    ASSERT_EQ(Run({"solve", game, "--player", "both", "--out", solution}),
              kExitOk)
        << game << ": " << err_.str();
    EXPECT_EQ(Run({"verify", game, solution}), kExitOk) << game << "\n"
                                                        << out_.str();
  }
  EXPECT_EQ(Run({"solve", games[2], "--player", "exploiter", "--epsilon",
                 "0.2", "--out", Path("eps.json")}),
            kExitOk);
  EXPECT_EQ(Run({"verify", games[2], Path("eps.json")}), kExitOk) << out_.str();
}

TEST_F(CliTest, BinaryExitCodes) {
  const auto status = [](const std::string& command) {
    const int raw = std::system((command + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string cli = VISER_CLI_PATH;
  EXPECT_EQ(status(cli + " solve " + TrapFile()), kExitOk);
  EXPECT_EQ(status(cli + " solve " + TrapFile(false) + " --player exploiter"),
            kExitInformation);
  EXPECT_EQ(status(cli + " frobnicate"), kExitInvalid);
  EXPECT_EQ(status(cli + " bench --kind block --r-max 0"), kExitOk);
}

}  // namespace
}  // namespace viser::cli
