// Copyright 2026 The sqip Authors
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

#ifndef SQIP_SEESAW_HPP_
#define SQIP_SEESAW_HPP_

#include <cstdint>
#include <vector>

#include "sqip/protocols.hpp"

namespace sqip {

struct SeesawConfig {
  /// Outer sweeps over the rounds.
  int iterations = 50;
  /// Independent random starting provers; the best is kept.
  int restarts = 4;
  /// Memory qubits the prover carries between consecutive rounds.
  int prover_memory = 1;
  /// Ascent steps per single-round update.
  int inner_steps = 400;
  double inner_tolerance = 1e-13;
  int max_live_qubits = kDefaultLiveQubitCap + 4;
};

struct SeesawResult {
  /// Acceptance probability of `prover`, recomputed by direct interaction.
  double value = 0.0;
  ProverSpec prover;
  /// Best value after each sweep; nondecreasing.
  std::vector<double> history;
};

/// Achievable lower bound on the maximum acceptance probability. Each sweep
/// re-optimizes one round's prover channel at a time with the others fixed.
SeesawResult seesaw_lower_bound(const ProtocolSpec& protocol, std::uint64_t seed,
                                const SeesawConfig& config = {});

}  // namespace sqip

#endif  // SQIP_SEESAW_HPP_
