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

#ifndef SQIP_SDP_HPP_
#define SQIP_SDP_HPP_

#include <vector>

#include <Eigen/Dense>

namespace sqip::sdp {

/// One nonzero of a symmetric constraint matrix. Off-diagonal entries must be
/// listed twice, once per triangle.
struct Entry {
  int block;
  int row;
  int col;
  double value;
};

/// Real block-diagonal SDP in standard form:
///   maximize <C, Z>  subject to  <A_i, Z> = b_i,  Z >= 0
/// with dual
///   minimize b'y     subject to  sum_i y_i A_i - C = S >= 0.
struct Problem {
  std::vector<int> block_sizes;
  std::vector<Eigen::MatrixXd> objective;
  std::vector<std::vector<Entry>> constraints;
  Eigen::VectorXd rhs;
};

struct Options {
  double gap_tolerance = 1e-7;
  double feasibility_tolerance = 1e-9;
  int max_iterations = 200;
};

struct Solution {
  std::vector<Eigen::MatrixXd> primal;
  std::vector<Eigen::MatrixXd> slack;
  Eigen::VectorXd dual;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// dual_objective - primal_objective.
  double gap = 0.0;
  double relative_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Infeasible-start primal-dual path following with the HKM search direction
/// and Mehrotra predictor-corrector steps. Dense, single-threaded.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace sqip::sdp

#endif  // SQIP_SDP_HPP_
