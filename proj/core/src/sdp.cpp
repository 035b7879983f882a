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

#include "sqip/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "sqip/errors.hpp"

namespace sqip::sdp {
namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

Blocks zeros_like(const std::vector<int>& sizes) {
  Blocks out;
  for (int n : sizes) out.push_back(Eigen::MatrixXd::Zero(n, n));
  return out;
}

Blocks scaled_identity(const std::vector<int>& sizes, double s) {
  Blocks out;
  for (int n : sizes) out.push_back(s * Eigen::MatrixXd::Identity(n, n));
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

void axpy(Blocks& y, double alpha, const Blocks& x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += alpha * x[k];
}

Blocks symmetrized(Blocks a) {
  for (auto& m : a) m = 0.5 * (m + m.transpose()).eval();
  return a;
}

Eigen::VectorXd apply_a(const Problem& p, const Blocks& z) {
  Eigen::VectorXd out(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    double s = 0.0;
    for (const auto& e : p.constraints[i]) s += e.value * z[e.block](e.row, e.col);
    out(static_cast<Eigen::Index>(i)) = s;
  }
  return out;
}

Blocks apply_at(const Problem& p, const Eigen::VectorXd& y) {
  Blocks out = zeros_like(p.block_sizes);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const double yi = y(static_cast<Eigen::Index>(i));
    if (yi == 0.0) continue;
    for (const auto& e : p.constraints[i]) out[e.block](e.row, e.col) += yi * e.value;
  }
  return out;
}

// Largest alpha in (0, 1] keeping x + alpha dx positive definite.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].rows() == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    const Eigen::MatrixXd l_inv_dx =
        llt.matrixL().solve(llt.matrixL().solve(dx[k]).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (l_inv_dx + l_inv_dx.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

Blocks inverse(const Blocks& s) {
  Blocks out;
  for (const auto& m : s) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) {
      throw SolverError("sdp: slack matrix lost positive definiteness");
    }
    out.push_back(llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols())));
  }
  return out;
}

// M_ij = Tr(A_i Z A_j S^{-1}).
Eigen::MatrixXd schur_complement(const Problem& p, const Blocks& z,
                                 const Blocks& s_inv) {
  const auto m = static_cast<Eigen::Index>(p.constraints.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& ai = p.constraints[i];
    for (Eigen::Index j = i; j < m; ++j) {
      const auto& aj = p.constraints[j];
      double s = 0.0;
      for (const auto& e : ai) {
        const auto& zb = z[e.block];
        const auto& sb = s_inv[e.block];
        for (const auto& f : aj) {
          if (f.block != e.block) continue;
          s += e.value * f.value * zb(e.col, f.row) * sb(f.col, e.row);
        }
      }
      out(i, j) = out(j, i) = s;
    }
  }
  return out;
}

struct Direction {
  Blocks dz;
  Eigen::VectorXd dy;
  Blocks ds;
};

// Solves for the HKM direction with complementarity target `r`
// (Z S -> r): dZ = r S^{-1} - Z - Z dS S^{-1}, dS = A*(dy) - Rd, A(dZ) = rp.
Direction hkm_direction(const Problem& p, const Eigen::LDLT<Eigen::MatrixXd>& schur,
                        const Blocks& z, const Blocks& s_inv, const Blocks& r,
                        const Blocks& rd) {
  Blocks t;
  for (std::size_t k = 0; k < z.size(); ++k) {
    t.push_back(r[k] * s_inv[k] + z[k] * rd[k] * s_inv[k]);
  }
  const Eigen::VectorXd rhs = apply_a(p, symmetrized(t)) - p.rhs;
  Direction d;
  d.dy = schur.solve(rhs);
  d.ds = apply_at(p, d.dy);
  axpy(d.ds, -1.0, rd);
  for (std::size_t k = 0; k < z.size(); ++k) {
    d.dz.push_back(r[k] * s_inv[k] - z[k] - z[k] * d.ds[k] * s_inv[k]);
  }
  d.dz = symmetrized(std::move(d.dz));
  return d;
}

}  // namespace

Solution solve(const Problem& p, const Options& options) {
  const std::size_t nb = p.block_sizes.size();
  if (p.objective.size() != nb) {
    throw ArgumentError("sdp: objective has the wrong number of blocks");
  }
  if (static_cast<std::size_t>(p.rhs.size()) != p.constraints.size()) {
    throw ArgumentError("sdp: rhs size does not match constraint count");
  }
  for (const auto& a : p.constraints) {
    for (const auto& e : a) {
      if (e.block < 0 || static_cast<std::size_t>(e.block) >= nb ||
          e.row < 0 || e.col < 0 || e.row >= p.block_sizes[e.block] ||
          e.col >= p.block_sizes[e.block]) {
        throw ArgumentError("sdp: constraint entry out of range");
      }
    }
  }
  int n = 0;
  for (int s : p.block_sizes) n += s;

  // Starting point scaled to the data.
  double max_a = 0.0, max_ratio = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    double fro = 0.0;
    for (const auto& e : p.constraints[i]) fro += e.value * e.value;
    fro = std::sqrt(fro);
    max_a = std::max(max_a, fro);
    max_ratio = std::max(max_ratio, (1.0 + std::abs(p.rhs(i))) / (1.0 + fro));
  }
  const double c_norm = frobenius(p.objective);
  const double z0 = std::max(10.0, std::sqrt(static_cast<double>(n)) * max_ratio);
  const double s0 =
      std::max(10.0, (1.0 + std::max(max_a, c_norm)) / std::sqrt(static_cast<double>(n)));

  Blocks z = scaled_identity(p.block_sizes, z0);
  Blocks s = scaled_identity(p.block_sizes, s0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p.rhs.size());
  const double b_norm = p.rhs.norm();

  Solution sol;
  int stalls = 0;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd rp = p.rhs - apply_a(p, z);
    Blocks rd = p.objective;
    axpy(rd, -1.0, apply_at(p, y));
    axpy(rd, 1.0, s);

    sol.primal_objective = inner(p.objective, z);
    sol.dual_objective = p.rhs.dot(y);
    sol.gap = sol.dual_objective - sol.primal_objective;
    sol.relative_gap = std::abs(sol.gap) /
                       (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
    sol.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    sol.dual_infeasibility = frobenius(rd) / (1.0 + c_norm);
    sol.iterations = iter;

    if (sol.relative_gap <= options.gap_tolerance &&
        sol.primal_infeasibility <= options.feasibility_tolerance &&
        sol.dual_infeasibility <= options.feasibility_tolerance) {
      sol.converged = true;
      break;
    }
    if (iter >= options.max_iterations || stalls >= 5) break;

    const double mu = inner(z, s) / n;
    Blocks s_inv;
    try {
      s_inv = inverse(s);
    } catch (const SolverError&) {
      break;
    }
    const Eigen::MatrixXd m = schur_complement(p, z, s_inv);
    Eigen::LDLT<Eigen::MatrixXd> schur(m);
    if (schur.info() != Eigen::Success) break;

    // Predictor.
    const Blocks zero = zeros_like(p.block_sizes);
    const Direction aff = hkm_direction(p, schur, z, s_inv, zero, rd);
    const double ap_aff = max_step(z, aff.dz);
    const double ad_aff = max_step(s, aff.ds);
    Blocks z_aff = z, s_aff = s;
    axpy(z_aff, ap_aff, aff.dz);
    axpy(s_aff, ad_aff, aff.ds);
    const double mu_aff = inner(z_aff, s_aff) / n;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    // Corrector with the second-order term.
    Blocks target = scaled_identity(p.block_sizes, sigma * mu);
    for (std::size_t k = 0; k < nb; ++k) target[k] -= aff.dz[k] * aff.ds[k];
    const Direction dir = hkm_direction(p, schur, z, s_inv, target, rd);

    const double ap = max_step(z, dir.dz);
    const double ad = max_step(s, dir.ds);
    const double gamma = 0.95;
    const double step_p = std::min(1.0, gamma * ap);
    const double step_d = std::min(1.0, gamma * ad);
    if (step_p < 1e-10 && step_d < 1e-10) {
      ++stalls;
    } else {
      stalls = 0;
    }
    axpy(z, step_p, dir.dz);
    y += step_d * dir.dy;
    axpy(s, step_d, dir.ds);
    z = symmetrized(std::move(z));
    s = symmetrized(std::move(s));
  }
  sol.primal = std::move(z);
  sol.slack = std::move(s);
  sol.dual = std::move(y);
  return sol;
}

}  // namespace sqip::sdp
