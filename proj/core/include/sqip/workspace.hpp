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

#ifndef SQIP_WORKSPACE_HPP_
#define SQIP_WORKSPACE_HPP_

#include <string>
#include <vector>

#include "sqip/qcore.hpp"

namespace sqip {

struct Register {
  std::string label;
  int qubits = 0;
};

/// An operator on a list of labelled registers. Maps given by Kraus lists act
/// on named registers and replace them with new ones; the maps need not be
/// trace preserving, which lets the same machinery run Heisenberg-picture
/// (adjoint) propagation.
class RegisterWorkspace {
 public:
  /// Scalar 1 on no registers.
  RegisterWorkspace();
  RegisterWorkspace(ComplexMatrix op, std::vector<Register> registers);

  const ComplexMatrix& matrix() const { return op_; }
  const std::vector<Register>& registers() const { return registers_; }
  int total_qubits() const;
  bool has(const std::string& label) const;

  /// op -> sum_K (K (x) 1) op (K (x) 1)^* with K acting on `inputs` (in the
  /// listed order). The outputs become the leading registers.
  void apply(const std::vector<ComplexMatrix>& kraus,
             const std::vector<std::string>& inputs,
             const std::vector<Register>& outputs);

  /// Tensor `op` onto the end as register `reg`.
  void append(const ComplexMatrix& op, const Register& reg);

  void trace_out(const std::vector<std::string>& labels);

  /// The operator with registers reordered to `order`, which must list every
  /// register exactly once.
  ComplexMatrix matrix_in_order(const std::vector<std::string>& order) const;

  /// Moves the listed registers to the front in the listed order.
  void bring_to_front(const std::vector<std::string>& labels);

  void set_cap(int max_qubits) { cap_ = max_qubits; }

 private:
  std::size_t index_of(const std::string& label) const;
  SubsystemShape shape() const;
  void check_cap() const;

  ComplexMatrix op_;
  std::vector<Register> registers_;
  int cap_ = 12;
};

}  // namespace sqip

#endif  // SQIP_WORKSPACE_HPP_
