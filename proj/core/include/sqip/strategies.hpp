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

#ifndef SQIP_STRATEGIES_HPP_
#define SQIP_STRATEGIES_HPP_

#include <string>
#include <vector>

#include "sqip/channels.hpp"
#include "sqip/qcore.hpp"

namespace sqip {

/// Message widths of a t-round interaction: q_j question qubits sent by the
/// verifier and r_j response qubits returned by the prover in round j.
struct RoundShape {
  std::vector<int> q;
  std::vector<int> r;

  int rounds() const { return static_cast<int>(q.size()); }
  int total_q() const;
  int total_r() const;
  /// Throws ArgumentError / CapExceededError on malformed or oversize shapes.
  void validate(int max_message_qubits = 8) const;
  /// Register shape [R_1..R_t, Q_1..Q_t] of a strategy.
  SubsystemShape strategy_shape() const;
};

/// Default cap on the strategy dimension 2^(sum q + sum r).
inline constexpr std::size_t kDefaultStrategyDimCap = 256;

/// Prover strategy: X >= 0 on R_1..R_t (x) Q_1..Q_t.
struct Strategy {
  ComplexMatrix x;
  RoundShape shape;
};

/// Verifier co-strategy rho_1: the accept-branch of the rewired verifier's
/// Choi state, in strategy register order [R_1..R_t, Q_1..Q_t]. The
/// acceptance probability of strategy X is 2^(sum r) <rho_1, X>.
struct CoStrategyView {
  ComplexMatrix rho1;
  RoundShape shape;

  double normalization() const;
};

/// Projects the leading acceptance qubit of an operator on
/// [A, Q_1..Q_t, R_1..R_t] onto |1> and reorders the remaining registers to
/// [R_1..R_t, Q_1..Q_t]. Accepts non-positive estimates as well as states.
CoStrategyView accept_projection(const ComplexMatrix& choi, const RoundShape& shape);
CoStrategyView accept_projection(const ChoiState& choi, const RoundShape& shape);

struct FeasibilityReport {
  bool feasible = false;
  double worst_violation = 0.0;
  std::string worst_constraint;
};

/// Checks X >= 0 and Tr_{R_j}(Y_j) = Y_{j-1} (x) 1_{Q_j} for j = t..1 with
/// Y_t = X and Y_0 = 1, each within `tol`.
FeasibilityReport strategy_feasible(const ComplexMatrix& x, const RoundShape& shape,
                                    double tol);

/// 2^(sum r) <rho_1, X>.
double strategy_value(const CoStrategyView& view, const ComplexMatrix& x);

struct SdpConfig {
  std::size_t max_dimension = kDefaultStrategyDimCap;
  double gap_tolerance = 1e-7;
  int max_iterations = 200;
  /// Solutions whose final duality gap exceeds this raise SolverError.
  double accept_gap = 1e-6;
};

struct SdpResult {
  double value = 0.0;
  Strategy x_opt;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// maximize 2^(sum r) <rho_1, X> over X in S_t, solved as a real-embedded
/// block SDP over (X, Y_{t-1}, ..., Y_1).
SdpResult max_acceptance_sdp(const CoStrategyView& view, const SdpConfig& config = {});

}  // namespace sqip

#endif  // SQIP_STRATEGIES_HPP_
