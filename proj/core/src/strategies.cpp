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

#include "sqip/strategies.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "sqip/sdp.hpp"

namespace sqip {
namespace {

// Dimension of Y_j on [R_1..R_j, Q_1..Q_j].
std::size_t prefix_dim(const RoundShape& s, int j) {
  int bits = 0;
  for (int i = 0; i < j; ++i) bits += s.q[i] + s.r[i];
  return std::size_t{1} << bits;
}

SubsystemShape prefix_shape(const RoundShape& s, int j) {
  std::vector<int> qubits;
  for (int i = 0; i < j; ++i) qubits.push_back(s.r[i]);
  for (int i = 0; i < j; ++i) qubits.push_back(s.q[i]);
  return SubsystemShape::FromQubits(qubits);
}

// Accumulates linear functionals of Hermitian blocks in the real embedding
// Z -> [[Re Z, -Im Z], [Im Z, Re Z]].
class ConstraintBuilder {
 public:
  explicit ConstraintBuilder(const std::vector<int>& complex_sizes)
      : sizes_(complex_sizes) {}

  void add_re(int block, int u, int v, double c) {
    const int n = sizes_[block];
    if (u == v) {
      push(block, u, u, c / 2);
      push(block, n + u, n + u, c / 2);
    } else {
      push(block, u, v, c / 4);
      push(block, v, u, c / 4);
      push(block, n + u, n + v, c / 4);
      push(block, n + v, n + u, c / 4);
    }
  }

  void add_im(int block, int u, int v, double c) {
    if (u == v) return;
    const int n = sizes_[block];
    push(block, n + u, v, c / 4);
    push(block, v, n + u, c / 4);
    push(block, u, n + v, -c / 4);
    push(block, n + v, u, -c / 4);
  }

  std::vector<sdp::Entry> take() { return std::move(entries_); }

 private:
  void push(int block, int r, int c, double v) { entries_.push_back({block, r, c, v}); }

  std::vector<int> sizes_;
  std::vector<sdp::Entry> entries_;
};

Eigen::MatrixXd real_embedding(const ComplexMatrix& h) {
  const auto n = h.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

ComplexMatrix from_real_embedding(const Eigen::MatrixXd& z) {
  const auto n = z.rows() / 2;
  ComplexMatrix out(n, n);
  const Eigen::MatrixXd re = 0.5 * (z.topLeftCorner(n, n) + z.bottomRightCorner(n, n));
  const Eigen::MatrixXd im = 0.5 * (z.bottomLeftCorner(n, n) - z.topRightCorner(n, n));
  out.real() = re;
  out.imag() = im;
  return hermitian_part(out);
}

}  // namespace

int RoundShape::total_q() const { return std::accumulate(q.begin(), q.end(), 0); }
int RoundShape::total_r() const { return std::accumulate(r.begin(), r.end(), 0); }

void RoundShape::validate(int max_message_qubits) const {
  if (q.empty()) throw ArgumentError("RoundShape: need at least one round");
  if (q.size() != r.size()) {
    throw ArgumentError("RoundShape: q and r must have one entry per round");
  }
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] < 0 || r[j] < 0) {
      throw ArgumentError("RoundShape: negative message width in round " +
                          std::to_string(j + 1));
    }
  }
  if (total_q() + total_r() > max_message_qubits) {
    throw CapExceededError("RoundShape: " + std::to_string(total_q() + total_r()) +
                           " message qubits exceed the cap of " +
                           std::to_string(max_message_qubits));
  }
}

SubsystemShape RoundShape::strategy_shape() const { return prefix_shape(*this, rounds()); }

double CoStrategyView::normalization() const { return std::ldexp(1.0, shape.total_r()); }

CoStrategyView accept_projection(const ComplexMatrix& choi, const RoundShape& shape) {
  shape.validate(30);
  const int t = shape.rounds();
  const std::size_t rest = prefix_dim(shape, t);
  if (static_cast<std::size_t>(choi.rows()) != 2 * rest || choi.rows() != choi.cols()) {
    throw ArgumentError(
        "accept_projection: operator does not have a leading acceptance qubit "
        "over the declared message registers");
  }
  const auto n = static_cast<Eigen::Index>(rest);
  const ComplexMatrix block = choi.block(n, n, n, n);
  // [Q_1..Q_t, R_1..R_t] -> [R_1..R_t, Q_1..Q_t]
  std::vector<int> qubits;
  for (int j = 0; j < t; ++j) qubits.push_back(shape.q[j]);
  for (int j = 0; j < t; ++j) qubits.push_back(shape.r[j]);
  std::vector<std::size_t> perm;
  for (int j = 0; j < t; ++j) perm.push_back(static_cast<std::size_t>(t + j));
  for (int j = 0; j < t; ++j) perm.push_back(static_cast<std::size_t>(j));
  return {permute_subsystems(block, SubsystemShape::FromQubits(qubits), perm), shape};
}

CoStrategyView accept_projection(const ChoiState& choi, const RoundShape& shape) {
  if (choi.in_qubits() != shape.total_r() || choi.out_qubits() != 1 + shape.total_q()) {
    throw ArgumentError("accept_projection: Choi state widths do not match the round shape");
  }
  return accept_projection(choi.matrix(), shape);
}

FeasibilityReport strategy_feasible(const ComplexMatrix& x, const RoundShape& shape,
                                    double tol) {
  shape.validate(30);
  const int t = shape.rounds();
  if (static_cast<std::size_t>(x.rows()) != prefix_dim(shape, t) || x.rows() != x.cols()) {
    throw ArgumentError("strategy_feasible: operator dimension does not match the round shape");
  }
  FeasibilityReport rep;
  auto record = [&rep](double v, std::string what) {
    if (v > rep.worst_violation) {
      rep.worst_violation = v;
      rep.worst_constraint = std::move(what);
    }
  };
  record((x - x.adjoint()).cwiseAbs().maxCoeff(), "hermiticity of X");
  const double lmin = hermitian_eigenvalues(hermitian_part(x), 1.0).minCoeff();
  record(std::max(0.0, -lmin), "positivity of X");

  ComplexMatrix y = hermitian_part(x);
  for (int j = t; j >= 1; --j) {
    const SubsystemShape sh = prefix_shape(shape, j);
    // Registers: R_1..R_j at 0..j-1, Q_1..Q_j at j..2j-1.
    std::vector<std::size_t> keep;
    for (int i = 0; i < 2 * j; ++i) {
      if (i != j - 1) keep.push_back(static_cast<std::size_t>(i));
    }
    const ComplexMatrix traced = partial_trace(y, sh, keep);
    const std::size_t dq = std::size_t{1} << shape.q[j - 1];
    const std::size_t lead = static_cast<std::size_t>(traced.rows()) / dq;
    const std::size_t keep_lead[] = {0};
    const ComplexMatrix prev =
        partial_trace(traced, SubsystemShape({lead, dq}), keep_lead) /
        static_cast<double>(dq);
    const ComplexMatrix rebuilt = tensor(prev, identity(dq));
    std::ostringstream os;
    os << "Tr_R" << j << "(Y" << j << ") = Y" << j - 1 << " (x) 1_Q" << j;
    record((traced - rebuilt).cwiseAbs().maxCoeff(), os.str());
    y = prev;
  }
  record(std::abs(y(0, 0) - Complex(1.0)), "Y0 = 1");
  rep.feasible = rep.worst_violation <= tol;
  return rep;
}

double strategy_value(const CoStrategyView& view, const ComplexMatrix& x) {
  return view.normalization() * inner_product(view.rho1, x);
}

SdpResult max_acceptance_sdp(const CoStrategyView& view, const SdpConfig& config) {
  const RoundShape& shape = view.shape;
  shape.validate(30);
  const int t = shape.rounds();
  const std::size_t dim = prefix_dim(shape, t);
  if (dim > config.max_dimension) {
    throw CapExceededError("max_acceptance_sdp: strategy dimension " + std::to_string(dim) +
                           " exceeds the cap of " + std::to_string(config.max_dimension));
  }
  if (static_cast<std::size_t>(view.rho1.rows()) != dim) {
    throw ArgumentError("max_acceptance_sdp: co-strategy dimension mismatch");
  }

  // Block b holds Y_{t-b}: block 0 is X = Y_t, the last is Y_1.
  std::vector<int> complex_sizes;
  for (int j = t; j >= 1; --j) complex_sizes.push_back(static_cast<int>(prefix_dim(shape, j)));
  auto block_of = [t](int j) { return t - j; };

  sdp::Problem prob;
  for (int n : complex_sizes) prob.block_sizes.push_back(2 * n);
  for (int n : complex_sizes) prob.objective.push_back(Eigen::MatrixXd::Zero(2 * n, 2 * n));
  prob.objective[0] = 0.5 * real_embedding(view.normalization() * hermitian_part(view.rho1));

  std::vector<double> rhs;
  for (int j = 1; j <= t; ++j) {
    // Tr_{R_j}(Y_j) - Y_{j-1} (x) 1_{Q_j} = [j == 1] 1_{Q_1}
    std::size_t a_dim = 1, b_prev = 1;
    for (int i = 0; i < j - 1; ++i) {
      a_dim <<= shape.r[i];
      b_prev <<= shape.q[i];
    }
    const std::size_t s_dim = std::size_t{1} << shape.r[j - 1];
    const std::size_t qj = std::size_t{1} << shape.q[j - 1];
    const std::size_t b_dim = b_prev * qj;
    const std::size_t d = a_dim * b_dim;
    auto y_index = [&](std::size_t a, std::size_t s, std::size_t b) {
      return static_cast<int>((a * s_dim + s) * b_dim + b);
    };
    auto prev_index = [&](std::size_t a, std::size_t b1) {
      return static_cast<int>(a * b_prev + b1);
    };
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = k; l < d; ++l) {
        const std::size_t a = k / b_dim, b = k % b_dim;
        const std::size_t a2 = l / b_dim, b2 = l % b_dim;
        for (int part = 0; part < 2; ++part) {
          if (part == 1 && k == l) continue;
          ConstraintBuilder cb(complex_sizes);
          for (std::size_t s = 0; s < s_dim; ++s) {
            const int u = y_index(a, s, b), v = y_index(a2, s, b2);
            part == 0 ? cb.add_re(block_of(j), u, v, 1.0) : cb.add_im(block_of(j), u, v, 1.0);
          }
          double target = 0.0;
          if (j == 1) {
            target = (part == 0 && k == l) ? 1.0 : 0.0;
          } else if (b % qj == b2 % qj) {
            const int u = prev_index(a, b / qj), v = prev_index(a2, b2 / qj);
            part == 0 ? cb.add_re(block_of(j - 1), u, v, -1.0)
                      : cb.add_im(block_of(j - 1), u, v, -1.0);
          }
          prob.constraints.push_back(cb.take());
          rhs.push_back(target);
        }
      }
    }
  }
  prob.rhs = Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));

  sdp::Options opts;
  opts.gap_tolerance = config.gap_tolerance;
  opts.max_iterations = config.max_iterations;
  const sdp::Solution sol = sdp::solve(prob, opts);

  SdpResult res;
  res.x_opt = {from_real_embedding(sol.primal[0]), shape};
  res.value = strategy_value(view, res.x_opt.x);
  res.gap = std::abs(sol.gap);
  res.primal_infeasibility = sol.primal_infeasibility;
  res.dual_infeasibility = sol.dual_infeasibility;
  res.iterations = sol.iterations;
  res.converged = sol.converged;
  if (!sol.converged && (res.gap > config.accept_gap || sol.primal_infeasibility > 1e-7)) {
    std::ostringstream os;
    os << "max_acceptance_sdp: solver stopped after " << sol.iterations
       << " iterations with duality gap " << sol.gap << " and primal infeasibility "
       << sol.primal_infeasibility;
    throw SolverError(os.str());
  }
  return res;
}

}  // namespace sqip
