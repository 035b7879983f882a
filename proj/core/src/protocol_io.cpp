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

#include "sqip/protocol_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sqip {
namespace {

using nlohmann::json;

[[noreturn]] void rethrow_at(const std::string& path, const Error& e) {
  const std::string msg = path + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::kParse:
      throw ParseError(msg);
    case ErrorKind::kCapExceeded:
      throw CapExceededError(msg);
    case ErrorKind::kSolver:
      throw SolverError(msg);
    default:
      throw InvariantError(msg);
  }
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
}

const json& field(const json& j, const char* name, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(path + ": missing field '" + name + "'");
  return *it;
}

std::string join(const std::string& path, const std::string& name) {
  return path.empty() ? name : path + "." + name;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(path + ": expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

std::vector<int> as_int_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::string> as_wires(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of wire names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw ParseError(path + "[" + std::to_string(i) + "]: expected a wire name");
    }
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

GateOp parse_op(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a gate name");
  const std::string s = j.get<std::string>();
  if (s == "CNOT") return GateOp::kCnot;
  if (s == "H") return GateOp::kH;
  if (s == "T") return GateOp::kT;
  if (s == "ANCILLA") return GateOp::kAncilla;
  if (s == "ERASE") return GateOp::kErase;
  throw ParseError(path + ": unknown gate '" + s + "'");
}

}  // namespace

ComplexMatrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  ComplexMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string rp = element(path, r);
    if (!row.is_array()) throw ParseError(rp + ": expected a row array");
    if (r == 0) {
      cols = row.size();
      if (cols == 0) throw ParseError(rp + ": empty row");
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw ParseError(rp + ": ragged matrix, expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = row[c];
      const std::string ep = element(rp, c);
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError(ep + ": expected a [re, im] pair");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CircuitDesc parse_circuit(const json& j, const std::string& path) {
  CircuitDesc c;
  auto wires_or_empty = [&](const char* name) {
    auto it = j.find(name);
    return it == j.end() ? std::vector<std::string>{} : as_wires(*it, join(path, name));
  };
  c.memory_in = wires_or_empty("memory_in");
  c.message_in = wires_or_empty("message_in");
  c.memory_out = wires_or_empty("memory_out");
  c.message_out = wires_or_empty("message_out");
  const json& gates = field(j, "gates", path);
  const std::string gp = join(path, "gates");
  if (!gates.is_array()) throw ParseError(gp + ": expected an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string ep = element(gp, i);
    Gate g;
    g.op = parse_op(field(gates[i], "op", ep), join(ep, "op"));
    g.wires = as_wires(field(gates[i], "wires", ep), join(ep, "wires"));
    c.gates.push_back(std::move(g));
  }
  try {
    validate_circuit(c);
  } catch (const Error& e) {
    rethrow_at(path, e);
  }
  return c;
}

json circuit_to_json(const CircuitDesc& c) {
  json gates = json::array();
  for (const auto& g : c.gates) gates.push_back({{"op", gate_name(g.op)}, {"wires", g.wires}});
  return {{"type", "circuit"},   {"memory_in", c.memory_in},   {"message_in", c.message_in},
          {"memory_out", c.memory_out}, {"message_out", c.message_out}, {"gates", gates}};
}

std::pair<QuantumChannel, std::optional<CircuitDesc>> parse_channel_object(
    const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected a circuit or matrix object");
  std::string type;
  if (auto it = j.find("type"); it != j.end()) {
    if (!it->is_string()) throw ParseError(join(path, "type") + ": expected a string");
    type = it->get<std::string>();
  } else if (j.contains("gates")) {
    type = "circuit";
  } else if (j.contains("kraus")) {
    type = "kraus";
  } else if (j.contains("accept")) {
    type = "measurement";
  } else {
    throw ParseError(path + ": missing field 'type'");
  }
  if (type == "circuit") {
    CircuitDesc c = parse_circuit(j, path);
    try {
      QuantumChannel ch = channel_from_circuit(c);
      return {std::move(ch), std::move(c)};
    } catch (const Error& e) {
      rethrow_at(path, e);
    }
  }
  try {
    if (type == "kraus") {
      const int in = as_int(field(j, "in_qubits", path), join(path, "in_qubits"));
      const int out = as_int(field(j, "out_qubits", path), join(path, "out_qubits"));
      const json& ks = field(j, "kraus", path);
      const std::string kp = join(path, "kraus");
      if (!ks.is_array() || ks.empty()) throw ParseError(kp + ": expected a nonempty array");
      std::vector<ComplexMatrix> kraus;
      for (std::size_t i = 0; i < ks.size(); ++i) kraus.push_back(parse_matrix(ks[i], element(kp, i)));
      return {QuantumChannel(in, out, std::move(kraus), 1e-8), std::nullopt};
    }
    if (type == "measurement") {
      const ComplexMatrix p1 = parse_matrix(field(j, "accept", path), join(path, "accept"));
      if (p1.rows() != p1.cols()) throw InvariantError("accept: matrix must be square");
      const ComplexMatrix p0 = identity(static_cast<std::size_t>(p1.rows())) - p1;
      return {measurement_channel(p0, p1, 1e-8), std::nullopt};
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    rethrow_at(path, e);
  }
  throw ParseError(join(path, "type") + ": unknown object type '" + type + "'");
}

json channel_to_json(const QuantumChannel& c) {
  json ks = json::array();
  for (const auto& k : c.kraus()) ks.push_back(matrix_to_json(k));
  return {{"type", "kraus"}, {"in_qubits", c.in_qubits()}, {"out_qubits", c.out_qubits()},
          {"kraus", ks}};
}

ProtocolSpec parse_protocol(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("protocol: expected an object");
  ProtocolSpec spec;
  const int t = as_int(field(doc, "rounds", ""), "rounds");
  if (t < 1) throw InvariantError("rounds: must be at least 1");
  spec.shape.q = as_int_array(field(doc, "q", ""), "q");
  spec.shape.r = as_int_array(field(doc, "r", ""), "r");
  spec.memory = as_int_array(field(doc, "v", ""), "v");
  if (static_cast<int>(spec.shape.q.size()) != t) {
    throw InvariantError("q: expected " + std::to_string(t) + " entries");
  }
  if (static_cast<int>(spec.shape.r.size()) != t) {
    throw InvariantError("r: expected " + std::to_string(t) + " entries");
  }
  spec.completeness = as_number(field(doc, "a", ""), "a");
  spec.soundness = as_number(field(doc, "b", ""), "b");
  spec.gap = as_number(field(doc, "gap", ""), "gap");
  const json& steps = field(doc, "verifier", "");
  if (!steps.is_array()) throw ParseError("verifier: expected an array");
  for (std::size_t j = 0; j < steps.size(); ++j) {
    auto [ch, circ] = parse_channel_object(steps[j], element("verifier", j));
    spec.verifier.push_back(std::move(ch));
    spec.circuits.push_back(std::move(circ));
  }
  spec.validate();
  return spec;
}

std::string protocol_to_text(const ProtocolSpec& spec) {
  json steps = json::array();
  for (std::size_t j = 0; j < spec.verifier.size(); ++j) {
    if (j < spec.circuits.size() && spec.circuits[j]) {
      steps.push_back(circuit_to_json(*spec.circuits[j]));
    } else {
      steps.push_back(channel_to_json(spec.verifier[j]));
    }
  }
  json doc = {{"rounds", spec.rounds()}, {"q", spec.shape.q},        {"r", spec.shape.r},
              {"v", spec.memory},        {"verifier", steps},        {"a", spec.completeness},
              {"b", spec.soundness},     {"gap", spec.gap}};
  return doc.dump(2);
}

ProverSpec parse_prover(const std::string& text) {
  const json doc = parse_document(text);
  const json& chans = field(doc, "channels", "prover");
  if (!chans.is_array()) throw ParseError("channels: expected an array");
  ProverSpec p;
  for (std::size_t j = 0; j < chans.size(); ++j) {
    p.channels.push_back(parse_channel_object(chans[j], element("channels", j)).first);
  }
  return p;
}

std::string prover_to_text(const ProverSpec& prover) {
  json chans = json::array();
  for (const auto& c : prover.channels) chans.push_back(channel_to_json(c));
  return json{{"channels", chans}}.dump(2);
}

QamProblem parse_qam(const std::string& text) {
  const json doc = parse_document(text);
  if (auto it = doc.find("kind"); it != doc.end() && *it != "qam") {
    throw ParseError("kind: expected \"qam\"");
  }
  QamProblem p;
  const json& inst = field(doc, "instances", "qam");
  if (!inst.is_array()) throw ParseError("instances: expected an array");
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const std::string ip = element("instances", i);
    QamInstance q;
    if (auto it = inst[i].find("weight"); it != inst[i].end()) {
      q.weight = as_number(*it, join(ip, "weight"));
    }
    q.accept = parse_matrix(field(inst[i], "accept", ip), join(ip, "accept"));
    p.instances.push_back(std::move(q));
  }
  p.completeness = as_number(field(doc, "a", ""), "a");
  p.soundness = as_number(field(doc, "b", ""), "b");
  p.gap = as_number(field(doc, "gap", ""), "gap");
  p.validate();
  return p;
}

ArthurWitness parse_witness(const std::string& text) {
  const json doc = parse_document(text);
  ArthurWitness w;
  w.r_qubits = as_int(field(doc, "r", "witness"), "r");
  w.q_qubits = as_int(field(doc, "q", "witness"), "q");
  const std::size_t pair_dim = std::size_t{1} << (w.r_qubits + w.q_qubits);
  if (doc.contains("pair_state")) {
    w.form = ArthurWitness::Form::kProduct;
    w.pair_state = parse_matrix(doc["pair_state"], "pair_state");
    if (auto it = doc.find("copies"); it != doc.end()) w.copies = as_u64(*it, "copies");
    if (static_cast<std::size_t>(w.pair_state.rows()) != pair_dim) {
      throw InvariantError("pair_state: dimension does not match r + q qubits");
    }
    try {
      DensityOperator(w.pair_state, 1e-8);
    } catch (const Error& e) {
      rethrow_at("pair_state", e);
    }
  } else {
    w.form = ArthurWitness::Form::kJoint;
    w.joint = parse_matrix(field(doc, "state", "witness"), "state");
    w.pairs = as_u64(field(doc, "pairs", "witness"), "pairs");
    double expect = std::pow(static_cast<double>(pair_dim), static_cast<double>(w.pairs));
    if (static_cast<double>(w.joint.rows()) != expect) {
      throw InvariantError("state: dimension does not match pairs * (r + q) qubits");
    }
    try {
      DensityOperator(w.joint, 1e-8);
    } catch (const Error& e) {
      rethrow_at("state", e);
    }
  }
  return w;
}

ComplexMatrix parse_state(const std::string& text) {
  const json doc = parse_document(text);
  ComplexMatrix m = parse_matrix(field(doc, "state", "document"), "state");
  try {
    DensityOperator(m, 1e-8);
  } catch (const Error& e) {
    rethrow_at("state", e);
  }
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace sqip
