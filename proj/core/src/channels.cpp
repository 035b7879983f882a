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

#include "sqip/channels.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace sqip {
namespace {

// Block (I (x) <y|) M (I (x) |z>) of a matrix on (lead (x) tail), with the
// tail of dimension `tail` indexed by y, z.
ComplexMatrix tail_block(const ComplexMatrix& m, std::size_t tail,
                         std::size_t y, std::size_t z) {
  const auto lead = static_cast<Eigen::Index>(m.rows() / tail);
  ComplexMatrix out(lead, lead);
  for (Eigen::Index a = 0; a < lead; ++a) {
    for (Eigen::Index b = 0; b < lead; ++b) {
      out(a, b) = m(a * tail + y, b * tail + z);
    }
  }
  return out;
}

// Block (<y| (x) I) M (|z> (x) I) with the leading factor of dimension
// `m.rows() / tail_dim`.
ComplexMatrix lead_block(const ComplexMatrix& m, std::size_t tail_dim,
                         std::size_t y, std::size_t z) {
  const auto t = static_cast<Eigen::Index>(tail_dim);
  return m.block(y * t, z * t, t, t);
}

}  // namespace

QuantumChannel::QuantumChannel(int in_qubits, int out_qubits,
                               std::vector<ComplexMatrix> kraus, double tol)
    : in_qubits_(in_qubits),
      out_qubits_(out_qubits),
      kraus_(std::move(kraus)),
      cache_(std::make_shared<Cache>()) {
  if (in_qubits < 0 || out_qubits < 0 || in_qubits > 16 || out_qubits > 16) {
    throw ArgumentError("QuantumChannel: qubit counts out of range");
  }
  if (kraus_.empty()) {
    throw InvariantError("QuantumChannel: empty Kraus set");
  }
  const auto din = static_cast<Eigen::Index>(in_dim());
  const auto dout = static_cast<Eigen::Index>(out_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(din, din);
  for (const auto& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) {
      std::ostringstream os;
      os << "QuantumChannel: Kraus operator is " << k.rows() << "x" << k.cols()
         << ", expected " << dout << "x" << din;
      throw InvariantError(os.str());
    }
    sum += k.adjoint() * k;
  }
  const double dev = (sum - ComplexMatrix::Identity(din, din)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    std::ostringstream os;
    os << "QuantumChannel: Kraus completeness violated by " << dev;
    throw InvariantError(os.str());
  }
}

QuantumChannel QuantumChannel::Identity(int qubits) {
  return QuantumChannel(qubits, qubits, {sqip::identity(std::size_t{1} << qubits)});
}

QuantumChannel QuantumChannel::Unitary(const ComplexMatrix& u) {
  const int q = qubit_count(static_cast<std::size_t>(u.rows()));
  return QuantumChannel(q, q, {u});
}

QuantumChannel QuantumChannel::Preparation(const ComplexMatrix& state) {
  const DensityOperator rho(state);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-14) kraus.push_back(std::sqrt(l) * es.eigenvectors().col(i));
  }
  // Renormalize so completeness holds to machine precision.
  double total = 0.0;
  for (const auto& k : kraus) total += k.squaredNorm();
  for (auto& k : kraus) k /= std::sqrt(total);
  return QuantumChannel(0, qubit_count(rho.dim()), std::move(kraus));
}

QuantumChannel QuantumChannel::Depolarizing(int qubits) {
  const std::size_t d = std::size_t{1} << qubits;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(d, d);
      k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(qubits, qubits, std::move(kraus));
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi,
                                           std::size_t in_dim,
                                           std::size_t out_dim) {
  if (static_cast<std::size_t>(choi.rows()) != in_dim * out_dim) {
    throw ArgumentError("kraus_from_choi: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(choi));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    const double l = es.eigenvalues()(i);
    if (l <= 1e-13 * scale) continue;
    const ComplexVector v = std::sqrt(l) * es.eigenvectors().col(i);
    ComplexMatrix k(out_dim, in_dim);
    for (std::size_t o = 0; o < out_dim; ++o) {
      for (std::size_t y = 0; y < in_dim; ++y) k(o, y) = v(o * in_dim + y);
    }
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(out_dim, in_dim));
  return kraus;
}

QuantumChannel QuantumChannel::FromChoiMatrix(const ComplexMatrix& choi,
                                              int in_qubits, int out_qubits,
                                              double tol) {
  const std::size_t din = std::size_t{1} << in_qubits;
  const std::size_t dout = std::size_t{1} << out_qubits;
  if (!is_psd(choi, tol)) {
    throw InvariantError("FromChoiMatrix: Choi matrix is not positive semidefinite");
  }
  return QuantumChannel(in_qubits, out_qubits, kraus_from_choi(choi, din, dout),
                        tol);
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != in_dim() ||
      rho.rows() != rho.cols()) {
    throw ArgumentError("QuantumChannel::apply: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(out_dim(), out_dim());
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::apply_first(const ComplexMatrix& rho,
                                          std::size_t env_dim) const {
  if (static_cast<std::size_t>(rho.rows()) != in_dim() * env_dim) {
    throw ArgumentError("QuantumChannel::apply_first: dimension mismatch");
  }
  const ComplexMatrix id = sqip::identity(env_dim);
  const auto dout = static_cast<Eigen::Index>(out_dim() * env_dim);
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  for (const auto& k : kraus_) {
    const ComplexMatrix ke = sqip::tensor(k, id);
    out.noalias() += ke * rho * ke.adjoint();
  }
  return out;
}

const ComplexMatrix& QuantumChannel::superoperator() const {
  std::call_once(cache_->once, [this] {
    const auto n = static_cast<Eigen::Index>(out_dim() * out_dim());
    const auto m = static_cast<Eigen::Index>(in_dim() * in_dim());
    ComplexMatrix s = ComplexMatrix::Zero(n, m);
    for (const auto& k : kraus_) s += sqip::tensor(k, k.conjugate());
    cache_->superop = std::move(s);
  });
  return cache_->superop;
}

ComplexMatrix QuantumChannel::choi_matrix() const {
  const auto n = static_cast<Eigen::Index>(in_dim() * out_dim());
  ComplexMatrix j = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus_) {
    // Row-major vectorization: index (o, y) -> o * din + y.
    ComplexVector v(n);
    for (Eigen::Index o = 0; o < k.rows(); ++o) {
      for (Eigen::Index y = 0; y < k.cols(); ++y) v(o * k.cols() + y) = k(o, y);
    }
    j.noalias() += v * v.adjoint();
  }
  return j;
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.in_qubits_ != out_qubits_) {
    throw ArgumentError("QuantumChannel::then: qubit count mismatch");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_.size() * next.kraus_.size());
  for (const auto& b : next.kraus_) {
    for (const auto& a : kraus_) kraus.push_back(b * a);
  }
  const std::size_t bound = in_dim() * next.out_dim();
  if (kraus.size() > bound) {
    QuantumChannel tmp(in_qubits_, next.out_qubits_, std::move(kraus), 1e-8);
    return QuantumChannel(in_qubits_, next.out_qubits_,
                          kraus_from_choi(tmp.choi_matrix(), in_dim(), next.out_dim()),
                          1e-8);
  }
  return QuantumChannel(in_qubits_, next.out_qubits_, std::move(kraus), 1e-8);
}

QuantumChannel QuantumChannel::tensor(const QuantumChannel& other) const {
  std::vector<ComplexMatrix> kraus;
  for (const auto& a : kraus_) {
    for (const auto& b : other.kraus_) kraus.push_back(sqip::tensor(a, b));
  }
  return QuantumChannel(in_qubits_ + other.in_qubits_,
                        out_qubits_ + other.out_qubits_, std::move(kraus), 1e-8);
}

ChoiState::ChoiState(DensityOperator state, int in_qubits, int out_qubits,
                     double tol)
    : state_(std::move(state)), in_qubits_(in_qubits), out_qubits_(out_qubits) {
  const std::size_t din = std::size_t{1} << in_qubits;
  const std::size_t dout = std::size_t{1} << out_qubits;
  if (state_.dim() != din * dout) {
    throw ArgumentError("ChoiState: dimension does not match qubit counts");
  }
  const std::size_t keep[] = {1};
  const ComplexMatrix marginal =
      partial_trace(state_.matrix(), SubsystemShape({dout, din}), keep);
  const double dev = (marginal - maximally_mixed(din)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    std::ostringstream os;
    os << "ChoiState: input marginal deviates from I/2^k by " << dev;
    throw InvariantError(os.str());
  }
}

ChoiState choi_of_channel(const QuantumChannel& channel) {
  ComplexMatrix j = channel.choi_matrix() / static_cast<double>(channel.in_dim());
  j = hermitian_part(j);
  SubsystemShape shape({channel.out_dim(), channel.in_dim()});
  return ChoiState(DensityOperator(std::move(j), std::move(shape)),
                   channel.in_qubits(), channel.out_qubits());
}

ComplexMatrix apply_choi_map(const ComplexMatrix& choi, std::size_t in_dim,
                             std::size_t out_dim, const ComplexMatrix& rho,
                             std::size_t env_dim) {
  if (static_cast<std::size_t>(choi.rows()) != in_dim * out_dim ||
      static_cast<std::size_t>(rho.rows()) != in_dim * env_dim) {
    throw ArgumentError("apply_choi_map: dimension mismatch");
  }
  const auto n = static_cast<Eigen::Index>(out_dim * env_dim);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t y = 0; y < in_dim; ++y) {
    for (std::size_t z = 0; z < in_dim; ++z) {
      const ComplexMatrix env_block = lead_block(rho, env_dim, y, z);
      if (env_block.cwiseAbs().maxCoeff() == 0.0) continue;
      out += sqip::tensor(tail_block(choi, in_dim, y, z), env_block);
    }
  }
  return out;
}

DensityOperator apply_via_choi(const ChoiState& choi, const DensityOperator& xi) {
  const std::size_t din = std::size_t{1} << choi.in_qubits();
  const std::size_t dout = std::size_t{1} << choi.out_qubits();
  if (xi.dim() != din) {
    throw ArgumentError("apply_via_choi: input state dimension mismatch");
  }
  // 2^k Tr_in[(1 (x) xi^T) rho] = sum_{y,z} xi_{yz} * 2^k rho_[yz]
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  const double scale = static_cast<double>(din);
  for (std::size_t y = 0; y < din; ++y) {
    for (std::size_t z = 0; z < din; ++z) {
      out += scale * xi.matrix()(y, z) * tail_block(choi.matrix(), din, y, z);
    }
  }
  return DensityOperator(hermitian_part(out));
}

PostselectResult bell_postselect(const ComplexMatrix& pair_state, int q_qubits,
                                 const ComplexMatrix& joint) {
  const std::size_t dq = std::size_t{1} << q_qubits;
  if (pair_state.rows() % static_cast<Eigen::Index>(dq) != 0 ||
      joint.rows() % static_cast<Eigen::Index>(dq) != 0) {
    throw ArgumentError("bell_postselect: register dimensions do not divide");
  }
  const std::size_t env = static_cast<std::size_t>(joint.rows()) / dq;
  const auto dr = pair_state.rows() / static_cast<Eigen::Index>(dq);
  const auto n = dr * static_cast<Eigen::Index>(env);
  // (<Phi|_{Q0,Q} (x) 1)(pair (x) joint)(|Phi> (x) 1), |Phi> = 2^{-q/2} sum |y>|y>
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t y = 0; y < dq; ++y) {
    for (std::size_t z = 0; z < dq; ++z) {
      out += sqip::tensor(tail_block(pair_state, dq, y, z),
                          lead_block(joint, env, y, z));
    }
  }
  out /= static_cast<double>(dq);
  const double p = out.trace().real();
  PostselectResult res{std::max(p, 0.0), ComplexMatrix()};
  res.conditional = p > 0 ? ComplexMatrix(hermitian_part(out) / p) : out;
  return res;
}

ChannelPostselectResult postselect_apply(const ChoiState& choi,
                                         const DensityOperator& joint) {
  const int k = choi.in_qubits();
  const std::size_t dq = std::size_t{1} << k;
  if (joint.dim() % dq != 0) {
    throw ArgumentError("postselect_apply: joint state has no " +
                        std::to_string(k) + "-qubit leading register");
  }
  auto res = bell_postselect(choi.matrix(), k, joint.matrix());
  const std::size_t env = joint.dim() / dq;
  const std::size_t dr = std::size_t{1} << choi.out_qubits();
  return {res.success_probability,
          DensityOperator(std::move(res.conditional), SubsystemShape({dr, env}),
                          1e-8)};
}

QuantumChannel measurement_channel(const ComplexMatrix& p0,
                                   const ComplexMatrix& p1, double tol) {
  if (p0.rows() != p1.rows() || p0.rows() != p0.cols() ||
      p1.rows() != p1.cols()) {
    throw ArgumentError("measurement_channel: operators must be square and equal-sized");
  }
  const auto d = p0.rows();
  if (!is_psd(p0, tol) || !is_psd(p1, tol) ||
      (p0 + p1 - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
    throw InvariantError("measurement_channel: {P0, P1} is not a binary measurement");
  }
  std::vector<ComplexMatrix> kraus;
  const ComplexMatrix roots[2] = {psd_sqrt(p0), psd_sqrt(p1)};
  for (int b = 0; b < 2; ++b) {
    for (Eigen::Index i = 0; i < d; ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(2, d);
      k.row(b) = roots[b].row(i);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(qubit_count(static_cast<std::size_t>(d)), 1,
                        std::move(kraus), std::max(tol, 1e-9));
}

}  // namespace sqip
