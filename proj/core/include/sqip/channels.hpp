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

#ifndef SQIP_CHANNELS_HPP_
#define SQIP_CHANNELS_HPP_

#include <memory>
#include <mutex>
#include <vector>

#include "sqip/qcore.hpp"

namespace sqip {

/// Completely positive trace-preserving map from `in_qubits` to `out_qubits`
/// qubits, stored in Kraus form. Either side may have zero qubits (state
/// preparation or full discard).
class QuantumChannel {
 public:
  QuantumChannel(int in_qubits, int out_qubits,
                 std::vector<ComplexMatrix> kraus,
                 double tol = kDefaultTolerance);

  static QuantumChannel Identity(int qubits);
  static QuantumChannel Unitary(const ComplexMatrix& u);
  /// Prepares `state` from nothing.
  static QuantumChannel Preparation(const ComplexMatrix& state);
  /// Replaces every input with the maximally mixed state.
  static QuantumChannel Depolarizing(int qubits);
  /// Builds a channel from an unnormalized Choi matrix
  /// J = sum_{y,z} Phi(|y><z|) (x) |y><z| (output factors first).
  static QuantumChannel FromChoiMatrix(const ComplexMatrix& choi, int in_qubits,
                                       int out_qubits,
                                       double tol = kDefaultTolerance);

  int in_qubits() const { return in_qubits_; }
  int out_qubits() const { return out_qubits_; }
  std::size_t in_dim() const { return std::size_t{1} << in_qubits_; }
  std::size_t out_dim() const { return std::size_t{1} << out_qubits_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// (Phi (x) id_env)(rho) where `rho` acts on input (x) env.
  ComplexMatrix apply_first(const ComplexMatrix& rho, std::size_t env_dim) const;

  /// Row-major superoperator sum_K K (x) conj(K); computed once per value.
  const ComplexMatrix& superoperator() const;

  /// Unnormalized Choi matrix sum_{y,z} Phi(|y><z|) (x) |y><z|.
  ComplexMatrix choi_matrix() const;

  /// `next` applied after this channel.
  QuantumChannel then(const QuantumChannel& next) const;
  /// This channel in parallel with `other` (this one on the leading factor).
  QuantumChannel tensor(const QuantumChannel& other) const;

 private:
  struct Cache {
    std::once_flag once;
    ComplexMatrix superop;
  };

  int in_qubits_;
  int out_qubits_;
  std::vector<ComplexMatrix> kraus_;
  std::shared_ptr<Cache> cache_;
};

/// Minimal Kraus decomposition of a CP map given its unnormalized Choi matrix.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi,
                                           std::size_t in_dim,
                                           std::size_t out_dim);

/// Normalized Choi state rho = 2^-k sum_{y,z} Phi(|y><z|) (x) |y><z| on
/// (output registers, input copies).
class ChoiState {
 public:
  ChoiState(DensityOperator state, int in_qubits, int out_qubits,
            double tol = kDefaultTolerance);

  const DensityOperator& state() const { return state_; }
  const ComplexMatrix& matrix() const { return state_.matrix(); }
  int in_qubits() const { return in_qubits_; }
  int out_qubits() const { return out_qubits_; }

 private:
  DensityOperator state_;
  int in_qubits_;
  int out_qubits_;
};

ChoiState choi_of_channel(const QuantumChannel& channel);

/// Phi(xi) recovered from the Choi state as 2^k Tr_in[(1 (x) xi^T) rho].
DensityOperator apply_via_choi(const ChoiState& choi, const DensityOperator& xi);

struct PostselectResult {
  double success_probability;
  /// State of (R, env) conditioned on every Bell outcome being phi+. Only
  /// meaningful when success_probability > 0.
  ComplexMatrix conditional;
};

/// Measures each qubit of Q with its partner in Q0 in the Bell basis and
/// keeps the all-phi+ branch. `pair_state` acts on (R, Q0) with
/// `q_qubits` in Q0; `joint` acts on (Q, env). The projection is evaluated
/// analytically. Works for any pair state, not only valid Choi states.
PostselectResult bell_postselect(const ComplexMatrix& pair_state, int q_qubits,
                                 const ComplexMatrix& joint);

/// Post-selected application of the channel encoded by `choi` to the Q part
/// of `joint` (Q (x) env). The reported success probability is the trace of
/// the projected branch; for a valid Choi state it equals 4^-k.
struct ChannelPostselectResult {
  double success_probability;
  DensityOperator conditional;
};
ChannelPostselectResult postselect_apply(const ChoiState& choi,
                                         const DensityOperator& joint);

/// sigma -> <P0, sigma>|0><0| + <P1, sigma>|1><1|.
QuantumChannel measurement_channel(const ComplexMatrix& p0,
                                   const ComplexMatrix& p1,
                                   double tol = kDefaultTolerance);

/// Applies a linear map given by its unnormalized Choi matrix J (out (x) in)
/// to the leading `in_dim` factor of `rho`; need not be CP or TP.
ComplexMatrix apply_choi_map(const ComplexMatrix& choi, std::size_t in_dim,
                             std::size_t out_dim, const ComplexMatrix& rho,
                             std::size_t env_dim);

}  // namespace sqip

#endif  // SQIP_CHANNELS_HPP_
