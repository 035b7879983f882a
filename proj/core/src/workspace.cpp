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

#include "sqip/workspace.hpp"

#include <algorithm>

namespace sqip {

RegisterWorkspace::RegisterWorkspace() : op_(ComplexMatrix::Ones(1, 1)) {}

RegisterWorkspace::RegisterWorkspace(ComplexMatrix op, std::vector<Register> registers)
    : op_(std::move(op)), registers_(std::move(registers)) {
  if (static_cast<std::size_t>(op_.rows()) != shape().total_dim() ||
      op_.rows() != op_.cols()) {
    throw ArgumentError("RegisterWorkspace: operator does not match registers");
  }
}

int RegisterWorkspace::total_qubits() const {
  int n = 0;
  for (const auto& r : registers_) n += r.qubits;
  return n;
}

bool RegisterWorkspace::has(const std::string& label) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.label == label; });
}

std::size_t RegisterWorkspace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].label == label) return i;
  }
  throw ArgumentError("RegisterWorkspace: no register named '" + label + "'");
}

SubsystemShape RegisterWorkspace::shape() const {
  std::vector<int> q;
  for (const auto& r : registers_) q.push_back(r.qubits);
  return SubsystemShape::FromQubits(q);
}

void RegisterWorkspace::check_cap() const {
  if (total_qubits() > cap_) {
    throw CapExceededError("composition needs " + std::to_string(total_qubits()) +
                           " live qubits, cap is " + std::to_string(cap_));
  }
}

void RegisterWorkspace::bring_to_front(const std::vector<std::string>& labels) {
  std::vector<std::size_t> perm;
  std::vector<bool> used(registers_.size(), false);
  for (const auto& l : labels) {
    const auto i = index_of(l);
    if (used[i]) throw ArgumentError("RegisterWorkspace: register listed twice");
    used[i] = true;
    perm.push_back(i);
  }
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (!used[i]) perm.push_back(i);
  }
  bool identity_perm = true;
  for (std::size_t i = 0; i < perm.size(); ++i) identity_perm &= perm[i] == i;
  if (identity_perm) return;
  op_ = permute_subsystems(op_, shape(), perm);
  std::vector<Register> regs;
  for (auto i : perm) regs.push_back(registers_[i]);
  registers_ = std::move(regs);
}

void RegisterWorkspace::apply(const std::vector<ComplexMatrix>& kraus,
                              const std::vector<std::string>& inputs,
                              const std::vector<Register>& outputs) {
  bring_to_front(inputs);
  std::size_t din = 1, dout = 1;
  for (std::size_t i = 0; i < inputs.size(); ++i) din <<= registers_[i].qubits;
  for (const auto& o : outputs) {
    if (has(o.label) &&
        std::find(inputs.begin(), inputs.end(), o.label) == inputs.end()) {
      throw ArgumentError("RegisterWorkspace: output register '" + o.label +
                          "' already exists");
    }
    dout <<= o.qubits;
  }
  const std::size_t env = static_cast<std::size_t>(op_.rows()) / din;
  const auto n_out = static_cast<Eigen::Index>(dout * env);
  ComplexMatrix next = ComplexMatrix::Zero(n_out, n_out);
  const auto e = static_cast<Eigen::Index>(env);
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != dout ||
        static_cast<std::size_t>(k.cols()) != din) {
      throw ArgumentError("RegisterWorkspace: Kraus operator has the wrong shape");
    }
    // (K (x) 1) op computed block-wise to avoid forming K (x) 1.
    ComplexMatrix left = ComplexMatrix::Zero(n_out, op_.cols());
    for (Eigen::Index o = 0; o < k.rows(); ++o) {
      for (Eigen::Index i = 0; i < k.cols(); ++i) {
        const Complex c = k(o, i);
        if (c == Complex(0.0)) continue;
        left.middleRows(o * e, e) += c * op_.middleRows(i * e, e);
      }
    }
    for (Eigen::Index o = 0; o < k.rows(); ++o) {
      for (Eigen::Index i = 0; i < k.cols(); ++i) {
        const Complex c = std::conj(k(o, i));
        if (c == Complex(0.0)) continue;
        next.middleCols(o * e, e) += c * left.middleCols(i * e, e);
      }
    }
  }
  op_ = std::move(next);
  std::vector<Register> regs(outputs.begin(), outputs.end());
  regs.insert(regs.end(), registers_.begin() + static_cast<std::ptrdiff_t>(inputs.size()),
              registers_.end());
  registers_ = std::move(regs);
  check_cap();
}

void RegisterWorkspace::append(const ComplexMatrix& op, const Register& reg) {
  if (has(reg.label)) {
    throw ArgumentError("RegisterWorkspace: register '" + reg.label + "' already exists");
  }
  if (op.rows() != (Eigen::Index{1} << reg.qubits)) {
    throw ArgumentError("RegisterWorkspace: appended operator has the wrong size");
  }
  op_ = tensor(op_, op);
  registers_.push_back(reg);
  check_cap();
}

void RegisterWorkspace::trace_out(const std::vector<std::string>& labels) {
  std::vector<bool> drop(registers_.size(), false);
  for (const auto& l : labels) drop[index_of(l)] = true;
  std::vector<std::size_t> keep;
  std::vector<Register> regs;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (!drop[i]) {
      keep.push_back(i);
      regs.push_back(registers_[i]);
    }
  }
  op_ = partial_trace(op_, shape(), keep);
  registers_ = std::move(regs);
}

ComplexMatrix RegisterWorkspace::matrix_in_order(const std::vector<std::string>& order) const {
  if (order.size() != registers_.size()) {
    throw ArgumentError("RegisterWorkspace: order must list every register");
  }
  RegisterWorkspace copy = *this;
  copy.bring_to_front(order);
  return copy.op_;
}

}  // namespace sqip
