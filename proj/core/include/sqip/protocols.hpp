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

#ifndef SQIP_PROTOCOLS_HPP_
#define SQIP_PROTOCOLS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sqip/channels.hpp"
#include "sqip/circuit.hpp"
#include "sqip/strategies.hpp"

namespace sqip {

/// Live-qubit budget for dense composition.
inline constexpr int kDefaultLiveQubitCap = 8;

/// A compiled t-round verifier V_0..V_t with thresholds.
///
/// Register conventions for verifier channels:
///   V_0           : nothing             -> [memory v_1, question q_1]
///   V_j (0<j<t)   : [memory v_j, resp r_j] -> [memory v_{j+1}, question q_{j+1}]
///   V_t           : [memory v_t, resp r_t] -> [acceptance qubit]
/// Outcome 1 of a standard-basis measurement of the acceptance qubit accepts.
struct ProtocolSpec {
  RoundShape shape;
  std::vector<int> memory;
  std::vector<QuantumChannel> verifier;
  /// Gate-level source of each verifier step when it was given as a circuit.
  std::vector<std::optional<CircuitDesc>> circuits;
  double completeness = 0.0;
  double soundness = 0.0;
  double gap = 0.0;

  int rounds() const { return shape.rounds(); }
  /// Throws InvariantError with a field path for the first violation.
  void validate() const;
};

/// Prover channels P_1..P_t:
///   P_j : [question q_j, memory p_{j-1}] -> [resp r_j, memory p_j]
/// with p_0 = 0. The final memory p_t is discarded.
struct ProverSpec {
  std::vector<QuantumChannel> channels;

  /// Memory widths p_1..p_t implied by the channel widths.
  std::vector<int> memory(const RoundShape& shape) const;
  void validate_against(const RoundShape& shape) const;
};

/// Exact acceptance probability of the composed interaction.
double interact(const ProtocolSpec& verifier, const ProverSpec& prover,
                int max_live_qubits = kDefaultLiveQubitCap + 4);

/// Normalized Choi state of the rewired verifier channel
/// R_1..R_t -> A (x) Q_1..Q_t, registers ordered [A, Q_1..Q_t, R_1..R_t].
ChoiState rewired_choi(const ProtocolSpec& verifier,
                       int max_live_qubits = kDefaultLiveQubitCap + 4);

/// The rewired verifier as a channel (responses in, acceptance and questions
/// out).
QuantumChannel rewire_verifier(const ProtocolSpec& verifier,
                               int max_live_qubits = kDefaultLiveQubitCap + 4);

enum class ValueMethod { kEigenvalue, kSdp };

struct ExactValue {
  double value = 0.0;
  ValueMethod method = ValueMethod::kSdp;
  /// Duality gap of the SDP solve (zero for the eigenvalue path).
  double gap = 0.0;
  int iterations = 0;
};

/// Maximum acceptance probability over all provers: the largest eigenvalue of
/// 2^(sum r) rho_1 when no questions are sent, the strategy SDP otherwise.
/// `force_sdp` skips the eigenvalue shortcut.
ExactValue exact_value(const ProtocolSpec& verifier, bool force_sdp = false,
                       const SdpConfig& config = {});

const char* value_method_name(ValueMethod m);

}  // namespace sqip

#endif  // SQIP_PROTOCOLS_HPP_
