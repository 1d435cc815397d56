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

#ifndef VISER_TOOLS_COMMANDS_H_
#define VISER_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>

namespace viser::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,      // unparsable or invalid input / parameters
  kExitInformation = 3,  // exploiter requested without the exploiter payoffs
  kExitSolver = 4,       // LP stall or numerically empty maximin set
  kExitCertificate = 5,  // a verification or oracle check failed
  kExitSizeCap = 6,      // instance too large for the oracles
};

struct SolveArgs {
  std::string game_path;
  std::string player = "victim";  // victim | exploiter | both
  double epsilon = 0.0;
  std::string out_path;  // stdout when empty
};

struct VerifyArgs {
  std::string game_path;
  std::string solution_path;
  double tol = 1e-6;
};

struct BenchArgs {
  std::string kind;  // block | random
  int r_max = 10;
  std::string sizes = "2,4,8";
  std::string seeds;  // comma list; when empty, 5 seeds from `seed`
  std::uint64_t seed = 1;
  int horizon = 10;
  int states = 10;
  std::string out_path;  // stdout when empty
};

struct OracleArgs {
  std::string game_path;
  double tol = 1e-6;
  double resolution = 1e-3;
};

int CmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int CmdVerify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int CmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int CmdOracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

// Full command line: `viser <solve|verify|bench|oracle> [flags]`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace viser::cli

#endif  // VISER_TOOLS_COMMANDS_H_
