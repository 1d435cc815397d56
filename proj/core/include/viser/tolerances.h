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

#ifndef VISER_TOLERANCES_H_
#define VISER_TOLERANCES_H_

namespace viser {

// Simplex primal feasibility, scaled by max(1, row scale).
inline constexpr double kLpTolFeas = 1e-9;
// Simplex reduced-cost optimality threshold.
inline constexpr double kLpTolOpt = 1e-9;
// Certificate checks on solver outputs (membership, guarantees).
inline constexpr double kTolVerify = 1e-6;
// Largest |sum - 1| a probability vector may have and still be renormalized.
inline constexpr double kSimplexTol = 1e-6;

}  // namespace viser

#endif  // VISER_TOLERANCES_H_
