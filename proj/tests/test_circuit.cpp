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

#include <gtest/gtest.h>

#include <cmath>

#include "sqip/circuit.hpp"
#include "sqip/random.hpp"
#include "support.hpp"

namespace sqip {
namespace {

using testing::max_abs_diff;

Gate g(GateOp op, std::vector<std::string> wires) { return Gate{op, std::move(wires)}; }

TEST(Circuit, GateMatrices) {
  const ComplexMatrix h = hadamard_matrix();
  EXPECT_LT(max_abs_diff(h * h, identity(2)), 1e-15);
  ComplexMatrix t4 = identity(2);
  for (int i = 0; i < 4; ++i) t4 = t_gate_matrix() * t4;
  ComplexMatrix z = identity(2);
  z(1, 1) = -1.0;
  EXPECT_LT(max_abs_diff(t4, z), 1e-15);
  const ComplexMatrix cx = cnot_matrix();
  EXPECT_EQ(cx(3, 2), Complex(1.0));
  EXPECT_EQ(cx(0, 0), Complex(1.0));
}

TEST(Circuit, UnitaryCircuitMatchesMatrixProduct) {
  CircuitDesc c;
  c.message_in = {"a", "b"};
  c.message_out = {"a", "b"};
  c.gates = {g(GateOp::kH, {"a"}), g(GateOp::kCnot, {"a", "b"}), g(GateOp::kT, {"b"})};
  const QuantumChannel ch = channel_from_circuit(c);
  const ComplexMatrix u = testing::oracle_kron(identity(2), t_gate_matrix()) * cnot_matrix() *
                          testing::oracle_kron(hadamard_matrix(), identity(2));
  CounterRng rng(51);
  const ComplexMatrix rho = random_density(4, rng);
  EXPECT_LT(max_abs_diff(ch.apply(rho), u * rho * u.adjoint()), 1e-13);
}

TEST(Circuit, AncillaAndEraseMatchPreparationAndPartialTrace) {
  CircuitDesc c;
  c.message_in = {"x"};
  c.message_out = {"y", "x"};
  c.gates = {g(GateOp::kAncilla, {"y"}), g(GateOp::kH, {"y"}), g(GateOp::kCnot, {"y", "x"})};
  const QuantumChannel ch = channel_from_circuit(c);
  EXPECT_EQ(ch.in_qubits(), 1);
  EXPECT_EQ(ch.out_qubits(), 2);
  CounterRng rng(52);
  const ComplexMatrix rho = random_density(2, rng);
  const ComplexMatrix plus = hadamard_matrix() * basis_projector(2, 0) * hadamard_matrix();
  const ComplexMatrix expect = cnot_matrix() * testing::oracle_kron(plus, rho) * cnot_matrix();
  EXPECT_LT(max_abs_diff(ch.apply(rho), expect), 1e-13);

  CircuitDesc e;
  e.message_in = {"a", "b"};
  e.message_out = {"b"};
  e.gates = {g(GateOp::kErase, {"a"})};
  const ComplexMatrix sigma = random_density(4, rng);
  const std::vector<std::size_t> keep{1};
  EXPECT_LT(max_abs_diff(channel_from_circuit(e).apply(sigma),
                         testing::oracle_partial_trace(sigma, {2, 2}, keep)),
            1e-13);
}

TEST(Circuit, OutputOrderFollowsDeclaration) {
  CircuitDesc c;
  c.message_in = {"a", "b"};
  c.message_out = {"b", "a"};
  const QuantumChannel swap = channel_from_circuit(c);
  CounterRng rng(53);
  const ComplexMatrix a = random_density(2, rng), b = random_density(2, rng);
  EXPECT_LT(max_abs_diff(swap.apply(tensor(a, b)), tensor(b, a)), 1e-13);
}

TEST(Circuit, ValidationNamesOffendingGate) {
  CircuitDesc c;
  c.message_in = {"a"};
  c.message_out = {"a"};
  c.gates = {g(GateOp::kH, {"zz"})};
  try {
    validate_circuit(c);
    FAIL() << "expected InvariantError";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
  CircuitDesc d;
  d.message_in = {"a"};
  d.message_out = {};
  EXPECT_THROW(validate_circuit(d), InvariantError);
  CircuitDesc e;
  e.message_in = {"a"};
  e.message_out = {"a"};
  e.gates = {g(GateOp::kCnot, {"a", "a"})};
  EXPECT_THROW(validate_circuit(e), InvariantError);
  CircuitDesc f;
  f.message_in = {"a"};
  f.message_out = {"a"};
  f.gates = {g(GateOp::kAncilla, {"a"})};
  EXPECT_THROW(validate_circuit(f), InvariantError);
}

TEST(Circuit, WidthCapIsEnforced) {
  CircuitDesc c;
  for (int i = 0; i < 5; ++i) {
    c.message_out.push_back("w" + std::to_string(i));
    c.gates.push_back(g(GateOp::kAncilla, {"w" + std::to_string(i)}));
  }
  EXPECT_THROW(channel_from_circuit(c, 4), CapExceededError);
  EXPECT_NO_THROW(channel_from_circuit(c, 5));
}

TEST(Circuit, EmbedOperatorPlacesFactors) {
  const ComplexMatrix h = hadamard_matrix();
  const std::vector<std::size_t> on1{1};
  EXPECT_LT(max_abs_diff(embed_operator(h, on1, 2), testing::oracle_kron(identity(2), h)), 1e-15);
  const std::vector<std::size_t> rev{1, 0};
  const ComplexMatrix rcx = embed_operator(cnot_matrix(), rev, 2);
  // Control on qubit 1: |01> -> |11>.
  EXPECT_EQ(rcx(3, 1), Complex(1.0));
}

}  // namespace
}  // namespace sqip
