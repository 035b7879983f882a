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

#include "sqip/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace sqip {
namespace {

std::size_t position_of(const std::vector<std::string>& live,
                        const std::string& wire, std::size_t gate_index) {
  auto it = std::find(live.begin(), live.end(), wire);
  if (it == live.end()) {
    throw InvariantError("circuit gate " + std::to_string(gate_index) +
                         " references wire '" + wire + "' which is not live");
  }
  return static_cast<std::size_t>(it - live.begin());
}

std::size_t expected_arity(GateOp op) { return op == GateOp::kCnot ? 2 : 1; }

}  // namespace

std::vector<std::string> CircuitDesc::inputs() const {
  auto v = memory_in;
  v.insert(v.end(), message_in.begin(), message_in.end());
  return v;
}

std::vector<std::string> CircuitDesc::outputs() const {
  auto v = memory_out;
  v.insert(v.end(), message_out.begin(), message_out.end());
  return v;
}

const char* gate_name(GateOp op) {
  switch (op) {
    case GateOp::kCnot: return "CNOT";
    case GateOp::kH: return "H";
    case GateOp::kT: return "T";
    case GateOp::kAncilla: return "ANCILLA";
    case GateOp::kErase: return "ERASE";
  }
  return "?";
}

ComplexMatrix hadamard_matrix() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

ComplexMatrix t_gate_matrix() {
  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  return t;
}

ComplexMatrix cnot_matrix() {
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

ComplexMatrix embed_operator(const ComplexMatrix& op,
                             const std::vector<std::size_t>& qubits, int n) {
  const std::size_t k = qubits.size();
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw ArgumentError("embed_operator: operator size does not match qubit list");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::size_t mask = 0;
  for (auto q : qubits) mask |= std::size_t{1} << (n - 1 - q);
  auto sub_index = [&](std::size_t full) {
    std::size_t s = 0;
    for (auto q : qubits) s = (s << 1) | ((full >> (n - 1 - q)) & 1U);
    return s;
  };
  auto with_sub = [&](std::size_t full, std::size_t s) {
    std::size_t out = full & ~mask;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t bit = (s >> (k - 1 - i)) & 1U;
      out |= bit << (n - 1 - qubits[i]);
    }
    return out;
  };
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t sc = sub_index(col);
    for (std::size_t sr = 0; sr < (std::size_t{1} << k); ++sr) {
      const Complex v = op(sr, sc);
      if (v != Complex(0.0)) out(with_sub(col, sr), col) = v;
    }
  }
  return out;
}

void validate_circuit(const CircuitDesc& circuit) {
  std::vector<std::string> live = circuit.inputs();
  std::set<std::string> seen(live.begin(), live.end());
  if (seen.size() != live.size()) {
    throw InvariantError("circuit input wires are not distinct");
  }
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    if (gate.wires.size() != expected_arity(gate.op)) {
      throw InvariantError("circuit gate " + std::to_string(g) + " (" +
                           gate_name(gate.op) + ") has " +
                           std::to_string(gate.wires.size()) + " wires");
    }
    switch (gate.op) {
      case GateOp::kAncilla:
        if (std::find(live.begin(), live.end(), gate.wires[0]) != live.end()) {
          throw InvariantError("circuit gate " + std::to_string(g) +
                               " allocates live wire '" + gate.wires[0] + "'");
        }
        live.push_back(gate.wires[0]);
        break;
      case GateOp::kErase:
        live.erase(live.begin() + position_of(live, gate.wires[0], g));
        break;
      case GateOp::kCnot:
        if (gate.wires[0] == gate.wires[1]) {
          throw InvariantError("circuit gate " + std::to_string(g) +
                               " uses the same wire as control and target");
        }
        position_of(live, gate.wires[0], g);
        position_of(live, gate.wires[1], g);
        break;
      default:
        position_of(live, gate.wires[0], g);
    }
  }
  auto outs = circuit.outputs();
  auto sorted_live = live;
  std::sort(sorted_live.begin(), sorted_live.end());
  std::sort(outs.begin(), outs.end());
  if (sorted_live != outs) {
    throw InvariantError(
        "circuit output wires do not match the wires live after the last gate");
  }
}

QuantumChannel channel_from_circuit(const CircuitDesc& circuit,
                                    int max_live_qubits) {
  validate_circuit(circuit);
  std::vector<std::string> live = circuit.inputs();
  const int n_in = static_cast<int>(live.size());
  const std::size_t din = std::size_t{1} << n_in;
  if (n_in > max_live_qubits) {
    throw CapExceededError("circuit has more input wires than the live-qubit cap");
  }
  // Each Kraus operator maps the input space to the current live space.
  std::vector<ComplexMatrix> kraus{identity(din)};
  const ComplexMatrix h = hadamard_matrix();
  const ComplexMatrix t = t_gate_matrix();
  const ComplexMatrix cx = cnot_matrix();

  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    const int n = static_cast<int>(live.size());
    switch (gate.op) {
      case GateOp::kH:
      case GateOp::kT: {
        const auto u = embed_operator(gate.op == GateOp::kH ? h : t,
                                      {position_of(live, gate.wires[0], g)}, n);
        for (auto& k : kraus) k = u * k;
        break;
      }
      case GateOp::kCnot: {
        const auto u = embed_operator(
            cx,
            {position_of(live, gate.wires[0], g),
             position_of(live, gate.wires[1], g)},
            n);
        for (auto& k : kraus) k = u * k;
        break;
      }
      case GateOp::kAncilla: {
        if (n + 1 > max_live_qubits) {
          throw CapExceededError("circuit exceeds the live-qubit cap of " +
                                 std::to_string(max_live_qubits));
        }
        ComplexMatrix zero = ComplexMatrix::Zero(2, 1);
        zero(0, 0) = 1.0;
        for (auto& k : kraus) k = tensor(k, zero);
        live.push_back(gate.wires[0]);
        break;
      }
      case GateOp::kErase: {
        const std::size_t pos = position_of(live, gate.wires[0], g);
        const std::size_t high = std::size_t{1} << (n - 1 - pos);
        const std::size_t rows_out = std::size_t{1} << (n - 1);
        std::vector<ComplexMatrix> next;
        next.reserve(kraus.size() * 2);
        for (const auto& k : kraus) {
          for (std::size_t b = 0; b < 2; ++b) {
            ComplexMatrix kb(rows_out, k.cols());
            for (std::size_t r = 0; r < rows_out; ++r) {
              // Insert bit b at position `pos` of the row index.
              const std::size_t lo = r % high;
              const std::size_t hi = r / high;
              kb.row(r) = k.row((hi * 2 + b) * high + lo);
            }
            if (kb.cwiseAbs().maxCoeff() > 0.0) next.push_back(std::move(kb));
          }
        }
        kraus = std::move(next);
        live.erase(live.begin() + pos);
        const std::size_t dout = std::size_t{1} << live.size();
        if (kraus.size() > din * dout) {
          ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
          for (const auto& k : kraus) {
            ComplexVector v(din * dout);
            for (std::size_t o = 0; o < dout; ++o) {
              for (std::size_t y = 0; y < din; ++y) v(o * din + y) = k(o, y);
            }
            j.noalias() += v * v.adjoint();
          }
          kraus = kraus_from_choi(j, din, dout);
        }
        break;
      }
    }
  }
  // Reorder live wires into the declared output order.
  const auto outs = circuit.outputs();
  std::vector<std::size_t> order;
  for (const auto& w : outs) order.push_back(position_of(live, w, circuit.gates.size()));
  const auto shape = SubsystemShape::Qubits(static_cast<int>(live.size()));
  for (auto& k : kraus) {
    ComplexMatrix permuted(k.rows(), k.cols());
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      permuted.col(c) = permute_subsystems(ComplexVector(k.col(c)), shape, order);
    }
    k = std::move(permuted);
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(std::size_t{1} << live.size(), din));
  return QuantumChannel(n_in, static_cast<int>(live.size()), std::move(kraus), 1e-9);
}

}  // namespace sqip
