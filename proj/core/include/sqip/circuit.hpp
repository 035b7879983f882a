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

#ifndef SQIP_CIRCUIT_HPP_
#define SQIP_CIRCUIT_HPP_

#include <string>
#include <vector>

#include "sqip/channels.hpp"

namespace sqip {

enum class GateOp { kCnot, kH, kT, kAncilla, kErase };

struct Gate {
  GateOp op;
  /// CNOT: {control, target}; every other op: a single wire.
  std::vector<std::string> wires;
};

/// Gate-level description of a verifier circuit over named wires. Inputs are
/// the memory wires followed by the message wires; outputs likewise. The
/// channel built from it uses the same register order.
struct CircuitDesc {
  std::vector<std::string> memory_in;
  std::vector<std::string> message_in;
  std::vector<std::string> memory_out;
  std::vector<std::string> message_out;
  std::vector<Gate> gates;

  std::vector<std::string> inputs() const;
  std::vector<std::string> outputs() const;
};

const char* gate_name(GateOp op);

/// Throws InvariantError naming the first offending gate or wire.
void validate_circuit(const CircuitDesc& circuit);

/// Ancilla gates tensor in |0><0|, erasure gates trace out, unitary gates
/// conjugate. `max_live_qubits` caps the width at any point.
QuantumChannel channel_from_circuit(const CircuitDesc& circuit,
                                    int max_live_qubits = 10);

/// Gate matrices: H, T = diag(1, e^{i pi/4}), CNOT with the control on the
/// leading qubit.
ComplexMatrix hadamard_matrix();
ComplexMatrix t_gate_matrix();
ComplexMatrix cnot_matrix();

/// Embeds an operator on the listed qubits (in listed order) into an
/// `n`-qubit space, identity elsewhere. Qubit 0 is the most significant.
ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& qubits, int n);

}  // namespace sqip

#endif  // SQIP_CIRCUIT_HPP_
