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

#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace sqip::testing {

std::string data_path(const std::string& relative) {
  return std::string(SQIP_DATA_DIR) + "/" + relative;
}

ComplexMatrix oracle_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

namespace {

std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = index % dims[i];
    index /= dims[i];
  }
  return d;
}

}  // namespace

ComplexMatrix oracle_partial_trace(const ComplexMatrix& x, const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
  std::size_t total = 1, kept = 1;
  for (auto d : dims) total *= d;
  std::vector<std::size_t> kdims;
  for (auto k : keep) {
    kdims.push_back(dims[k]);
    kept *= dims[k];
  }
  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (std::size_t r = 0; r < total; ++r) {
    const auto dr = digits(r, dims);
    for (std::size_t c = 0; c < total; ++c) {
      const auto dc = digits(c, dims);
      bool traced_equal = true;
      for (std::size_t i = 0; i < dims.size() && traced_equal; ++i) {
        if (std::find(keep.begin(), keep.end(), i) == keep.end() && dr[i] != dc[i]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::size_t kr = 0, kc = 0;
      for (std::size_t i = 0; i < keep.size(); ++i) {
        kr = kr * kdims[i] + dr[keep[i]];
        kc = kc * kdims[i] + dc[keep[i]];
      }
      out(kr, kc) += x(r, c);
    }
  }
  return out;
}

ComplexMatrix oracle_apply_kraus(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) {
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index a = 0; a < rho.rows(); ++a)
          for (Eigen::Index b = 0; b < rho.cols(); ++b)
            out(i, j) += k(i, a) * rho(a, b) * std::conj(k(j, b));
  }
  return out;
}

ComplexMatrix oracle_apply_kraus_first(const std::vector<ComplexMatrix>& kraus,
                                       const ComplexMatrix& rho, std::size_t env) {
  std::vector<ComplexMatrix> lifted;
  for (const auto& k : kraus) lifted.push_back(oracle_kron(k, ComplexMatrix::Identity(env, env)));
  return oracle_apply_kraus(lifted, rho);
}

std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h) {
  const Eigen::Index n = h.rows();
  const Eigen::Index m = 2 * n;
  std::vector<double> a(static_cast<std::size_t>(m * m));
  auto at = [&](Eigen::Index i, Eigen::Index j) -> double& { return a[static_cast<std::size_t>(i * m + j)]; };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = 0.5 * (h(i, j).real() + h(j, i).real());
      const double im = 0.5 * (h(i, j).imag() - h(j, i).imag());
      at(i, j) = re;
      at(i + n, j + n) = re;
      at(i, j + n) = -im;
      at(i + n, j) = im;
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < m; ++p)
      for (Eigen::Index q = p + 1; q < m; ++q) off += at(p, q) * at(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < m; ++p) {
      for (Eigen::Index q = p + 1; q < m; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  // The embedding doubles every eigenvalue; keep one of each pair.
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < m; ++i) ev.push_back(at(i, i));
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

double oracle_max_eigenvalue(const ComplexMatrix& h) { return jacobi_eigenvalues(h).back(); }

double oracle_trace_norm_hermitian(const ComplexMatrix& h) {
  double s = 0.0;
  for (double e : jacobi_eigenvalues(h)) s += std::abs(e);
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

QuantumChannel random_channel(int in_qubits, int out_qubits, std::size_t env, CounterRng& rng) {
  const std::size_t din = std::size_t{1} << in_qubits;
  const std::size_t dout = std::size_t{1} << out_qubits;
  const ComplexMatrix v = random_isometry(dout * env, din, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t e = 0; e < env; ++e) {
    kraus.push_back(v.middleRows(static_cast<Eigen::Index>(e * dout), static_cast<Eigen::Index>(dout)));
  }
  return QuantumChannel(in_qubits, out_qubits, kraus, 1e-8);
}

ComplexMatrix random_effect(std::size_t dim, CounterRng& rng) {
  // U diag(lambda) U^* with eigenvalues uniform in [0, 1].
  const ComplexMatrix u = random_unitary(dim, rng);
  ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) d(i, i) = rng.uniform();
  ComplexMatrix p = u * d * u.adjoint();
  return 0.5 * (p + p.adjoint());
}

ProtocolSpec measure_only_protocol(const ComplexMatrix& accept) {
  const std::size_t d = static_cast<std::size_t>(accept.rows());
  ProtocolSpec spec;
  const int r = qubit_count(d);
  spec.shape.q = {0};
  spec.shape.r = {r};
  spec.memory = {0};
  spec.verifier.push_back(QuantumChannel(0, 0, {ComplexMatrix::Ones(1, 1)}));
  spec.verifier.push_back(measurement_channel(ComplexMatrix::Identity(d, d) - accept, accept, 1e-8));
  spec.circuits.resize(2);
  spec.completeness = 0.6;
  spec.soundness = 0.3;
  spec.gap = 0.25;
  return spec;
}

ProtocolSpec random_protocol(const RoundShape& shape, const std::vector<int>& memory, CounterRng& rng) {
  ProtocolSpec spec;
  spec.shape = shape;
  spec.memory = memory;
  const int t = shape.rounds();
  // Enough Kraus operators for the isometry to exist, and at least two.
  auto step = [&](int in, int out) {
    const std::size_t env = std::max<std::size_t>(2, std::size_t{1} << std::max(0, in - out));
    return random_channel(in, out, env, rng);
  };
  spec.verifier.push_back(random_channel(0, memory[0] + shape.q[0], 1, rng));
  for (int j = 1; j < t; ++j) {
    spec.verifier.push_back(step(memory[j - 1] + shape.r[j - 1], memory[j] + shape.q[j]));
  }
  spec.verifier.push_back(step(memory[t - 1] + shape.r[t - 1], 1));
  spec.circuits.resize(t + 1);
  spec.completeness = 0.6;
  spec.soundness = 0.3;
  spec.gap = 0.25;
  spec.validate();
  return spec;
}

ProverSpec commit_basis_epr_prover() {
  ProverSpec epr;
  epr.channels.push_back(QuantumChannel::Preparation(max_entangled_projector(1)));
  // Round 2: [c, memory] -> response; apply H to the memory when c = 1.
  std::vector<ComplexMatrix> kraus;
  for (int c = 0; c < 2; ++c) {
    ComplexMatrix k = ComplexMatrix::Zero(2, 4);
    k.middleCols(2 * c, 2) = c == 0 ? identity(2) : ComplexMatrix(hadamard_matrix());
    kraus.push_back(k);
  }
  epr.channels.push_back(QuantumChannel(2, 1, kraus, 1e-12));
  return epr;
}

std::vector<double> oracle_frame_probabilities(const std::vector<ComplexMatrix>& p,
                                               const ComplexMatrix& rho) {
  std::vector<double> out;
  for (const auto& pa : p) {
    Complex s = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
      for (Eigen::Index j = 0; j < rho.cols(); ++j) s += pa(i, j) * rho(j, i);
    out.push_back(s.real());
  }
  return out;
}

}  // namespace sqip::testing
