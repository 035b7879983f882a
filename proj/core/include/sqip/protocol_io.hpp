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

#ifndef SQIP_PROTOCOL_IO_HPP_
#define SQIP_PROTOCOL_IO_HPP_

#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "sqip/protocols.hpp"
#include "sqip/reductions.hpp"

namespace sqip {

/// Matrix literal: nested arrays of [re, im] pairs, row-major.
ComplexMatrix parse_matrix(const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

CircuitDesc parse_circuit(const nlohmann::json& j, const std::string& path);
nlohmann::json circuit_to_json(const CircuitDesc& c);

/// One verifier or prover step. Accepted objects:
///   {"type": "circuit", "memory_in", "message_in", "memory_out",
///    "message_out", "gates": [{"op", "wires"}]}
///   {"type": "kraus", "in_qubits", "out_qubits", "kraus": [matrix...]}
///   {"type": "measurement", "accept": matrix}   (P_0 = I - accept)
std::pair<QuantumChannel, std::optional<CircuitDesc>> parse_channel_object(
    const nlohmann::json& j, const std::string& path);
nlohmann::json channel_to_json(const QuantumChannel& c);

/// Protocol document: rounds, q, r, v, verifier (t+1 step objects), a, b, gap.
ProtocolSpec parse_protocol(const std::string& text);
std::string protocol_to_text(const ProtocolSpec& spec);

/// Prover document: {"channels": [step objects]}.
ProverSpec parse_prover(const std::string& text);
std::string prover_to_text(const ProverSpec& prover);

/// {"kind": "qam", "instances": [{"weight", "accept"}], "a", "b", "gap"}.
QamProblem parse_qam(const std::string& text);

/// {"r", "q", "pair_state": matrix, "copies": n} for i.i.d. copies, or
/// {"r", "q", "state": matrix, "pairs": n} for a joint state.
ArthurWitness parse_witness(const std::string& text);

/// {"state": matrix}.
ComplexMatrix parse_state(const std::string& text);

/// Reads a whole file; ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace sqip

#endif  // SQIP_PROTOCOL_IO_HPP_
