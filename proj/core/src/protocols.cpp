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

#include "sqip/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqip/workspace.hpp"

namespace sqip {
namespace {

std::string reg(const char* name, int j) { return std::string(name) + std::to_string(j); }

void expect_width(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw InvariantError(path + ": " + what);
}

}  // namespace

void ProtocolSpec::validate() const {
  try {
    shape.validate(kDefaultLiveQubitCap);
  } catch (const ArgumentError& e) {
    throw InvariantError(std::string("q/r: ") + e.what());
  }
  const int t = rounds();
  if (static_cast<int>(memory.size()) != t) {
    throw InvariantError("v: expected " + std::to_string(t) + " memory widths, got " +
                         std::to_string(memory.size()));
  }
  for (int j = 0; j < t; ++j) {
    if (memory[j] < 0) throw InvariantError("v[" + std::to_string(j) + "]: negative width");
  }
  if (static_cast<int>(verifier.size()) != t + 1) {
    throw InvariantError("verifier: expected t+1 = " + std::to_string(t + 1) +
                         " circuits, got " + std::to_string(verifier.size()));
  }
  for (int j = 0; j <= t; ++j) {
    const std::string path = "verifier[" + std::to_string(j) + "]";
    const auto& v = verifier[j];
    const int expect_in = j == 0 ? 0 : memory[j - 1] + shape.r[j - 1];
    expect_width(v.in_qubits() == expect_in, path,
                 j == 0 ? "V_0 must take no input qubits, got " + std::to_string(v.in_qubits())
                        : "takes " + std::to_string(v.in_qubits()) +
                              " input qubits, expected v_j + r_j = " +
                              std::to_string(expect_in));
    if (j == t) {
      expect_width(v.out_qubits() == 1, path,
                   "V_t must output a single acceptance qubit, got " +
                       std::to_string(v.out_qubits()) + " qubits");
    } else {
      const int expect_out = memory[j] + shape.q[j];
      expect_width(v.out_qubits() == expect_out, path,
                   "outputs " + std::to_string(v.out_qubits()) +
                       " qubits, expected v_{j+1} + q_{j+1} = " + std::to_string(expect_out));
    }
  }
  auto in_open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_open_unit(completeness)) throw InvariantError("a: must lie in (0, 1)");
  if (!in_open_unit(soundness)) throw InvariantError("b: must lie in (0, 1)");
  if (!(gap > 0.0)) throw InvariantError("gap: must be positive");
  if (completeness - soundness < gap - 1e-12) {
    std::ostringstream os;
    os << "a/b: threshold gap a - b = " << completeness - soundness
       << " is smaller than the required gap " << gap;
    throw InvariantError(os.str());
  }
}

std::vector<int> ProverSpec::memory(const RoundShape& shape) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < channels.size(); ++j) {
    out.push_back(channels[j].out_qubits() - (j < shape.r.size() ? shape.r[j] : 0));
  }
  return out;
}

void ProverSpec::validate_against(const RoundShape& shape) const {
  const int t = shape.rounds();
  if (static_cast<int>(channels.size()) != t) {
    throw InvariantError("prover: expected " + std::to_string(t) + " channels, got " +
                         std::to_string(channels.size()));
  }
  int prev_mem = 0;
  for (int j = 0; j < t; ++j) {
    const std::string path = "prover.channels[" + std::to_string(j) + "]";
    const auto& c = channels[j];
    expect_width(c.in_qubits() == shape.q[j] + prev_mem, path,
                 "takes " + std::to_string(c.in_qubits()) + " qubits, expected q_j + p_{j-1} = " +
                     std::to_string(shape.q[j] + prev_mem));
    expect_width(c.out_qubits() >= shape.r[j], path,
                 "outputs fewer qubits than the response width r_j = " +
                     std::to_string(shape.r[j]));
    prev_mem = c.out_qubits() - shape.r[j];
  }
}

double interact(const ProtocolSpec& v, const ProverSpec& p, int max_live_qubits) {
  p.validate_against(v.shape);
  const int t = v.rounds();
  RegisterWorkspace ws;
  ws.set_cap(max_live_qubits);
  ws.apply(v.verifier[0].kraus(), {},
           {{"vm", v.memory[0]}, {reg("Q", 1), v.shape.q[0]}});
  ws.append(ComplexMatrix::Ones(1, 1), {"pm", 0});
  for (int j = 1; j <= t; ++j) {
    const auto& pc = p.channels[j - 1];
    ws.apply(pc.kraus(), {reg("Q", j), "pm"},
             {{reg("R", j), v.shape.r[j - 1]}, {"pm", pc.out_qubits() - v.shape.r[j - 1]}});
    if (j < t) {
      ws.apply(v.verifier[j].kraus(), {"vm", reg("R", j)},
               {{"vm", v.memory[j]}, {reg("Q", j + 1), v.shape.q[j]}});
    } else {
      ws.apply(v.verifier[j].kraus(), {"vm", reg("R", j)}, {{"A", 1}});
    }
  }
  ws.trace_out({"pm"});
  const ComplexMatrix& a = ws.matrix();
  return std::clamp(a(1, 1).real(), 0.0, 1.0);
}

ChoiState rewired_choi(const ProtocolSpec& v, int max_live_qubits) {
  const int t = v.rounds();
  RegisterWorkspace ws;
  ws.set_cap(max_live_qubits);
  // Each response register starts maximally entangled with a reference copy.
  for (int j = 1; j <= t; ++j) {
    const int r = v.shape.r[j - 1];
    ws.append(max_entangled_projector(r), {reg("Rin", j) + "+" + reg("Ref", j), 2 * r});
  }
  // Split the paired registers: max_entangled_projector orders (A_1..A_k, B_1..B_k).
  {
    std::vector<Register> regs;
    for (int j = 1; j <= t; ++j) {
      const int r = v.shape.r[j - 1];
      regs.push_back({reg("Rin", j), r});
      regs.push_back({reg("Ref", j), r});
    }
    ws = RegisterWorkspace(ws.matrix(), std::move(regs));
    ws.set_cap(max_live_qubits);
  }
  ws.apply(v.verifier[0].kraus(), {}, {{"vm", v.memory[0]}, {reg("Q", 1), v.shape.q[0]}});
  for (int j = 1; j <= t; ++j) {
    if (j < t) {
      ws.apply(v.verifier[j].kraus(), {"vm", reg("Rin", j)},
               {{"vm", v.memory[j]}, {reg("Q", j + 1), v.shape.q[j]}});
    } else {
      ws.apply(v.verifier[j].kraus(), {"vm", reg("Rin", j)}, {{"A", 1}});
    }
  }
  std::vector<std::string> order{"A"};
  for (int j = 1; j <= t; ++j) order.push_back(reg("Q", j));
  for (int j = 1; j <= t; ++j) order.push_back(reg("Ref", j));
  const ComplexMatrix rho = hermitian_part(ws.matrix_in_order(order));
  std::vector<int> qubits{1};
  for (int j = 0; j < t; ++j) qubits.push_back(v.shape.q[j]);
  for (int j = 0; j < t; ++j) qubits.push_back(v.shape.r[j]);
  return ChoiState(DensityOperator(rho, SubsystemShape::FromQubits(qubits), 1e-8),
                   v.shape.total_r(), 1 + v.shape.total_q(), 1e-8);
}

QuantumChannel rewire_verifier(const ProtocolSpec& v, int max_live_qubits) {
  const ChoiState choi = rewired_choi(v, max_live_qubits);
  const double din = std::ldexp(1.0, choi.in_qubits());
  return QuantumChannel::FromChoiMatrix(choi.matrix() * din, choi.in_qubits(),
                                        choi.out_qubits(), 1e-8);
}

ExactValue exact_value(const ProtocolSpec& v, bool force_sdp, const SdpConfig& config) {
  const ChoiState choi = rewired_choi(v);
  const CoStrategyView view = accept_projection(choi, v.shape);
  ExactValue out;
  if (v.shape.total_q() == 0 && !force_sdp) {
    out.method = ValueMethod::kEigenvalue;
    out.value = max_eigenvalue(view.normalization() * view.rho1, 1e-8);
    return out;
  }
  const SdpResult res = max_acceptance_sdp(view, config);
  out.method = ValueMethod::kSdp;
  out.value = res.value;
  out.gap = res.gap;
  out.iterations = res.iterations;
  return out;
}

const char* value_method_name(ValueMethod m) {
  return m == ValueMethod::kEigenvalue ? "eigenvalue" : "sdp";
}

}  // namespace sqip
