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

#include "sqip/seesaw.hpp"

#include <algorithm>
#include <cmath>

#include "sqip/random.hpp"
#include "sqip/workspace.hpp"

namespace sqip {
namespace {

std::string reg(const char* name, int j) { return std::string(name) + std::to_string(j); }

std::vector<ComplexMatrix> adjoints(const std::vector<ComplexMatrix>& kraus) {
  std::vector<ComplexMatrix> out;
  out.reserve(kraus.size());
  for (const auto& k : kraus) out.push_back(k.adjoint());
  return out;
}

// Prover channel j is stored as an isometry in -> out (x) env, row index
// o * env + e. Kraus operator e is the row slice {o * env + e}.
struct Isometry {
  ComplexMatrix v;
  std::size_t in_dim, out_dim, env;
};

std::vector<ComplexMatrix> kraus_of(const Isometry& iso) {
  std::vector<ComplexMatrix> out(iso.env, ComplexMatrix(iso.out_dim, iso.in_dim));
  for (std::size_t o = 0; o < iso.out_dim; ++o) {
    for (std::size_t e = 0; e < iso.env; ++e) {
      out[e].row(static_cast<Eigen::Index>(o)) = iso.v.row(static_cast<Eigen::Index>(o * iso.env + e));
    }
  }
  return out;
}

struct Layout {
  const ProtocolSpec* protocol;
  std::vector<int> pmem;  // pmem[j] = memory after round j, pmem[0] = 0
  int cap;

  int in_qubits(int j) const { return protocol->shape.q[j - 1] + pmem[j - 1]; }
  int out_qubits(int j) const { return protocol->shape.r[j - 1] + pmem[j]; }
};

// State on [Q_j, pm, vm] just before prover round j.
ComplexMatrix forward_state(const Layout& lay, const std::vector<Isometry>& provers, int j) {
  const auto& v = *lay.protocol;
  RegisterWorkspace ws;
  ws.set_cap(lay.cap);
  ws.apply(v.verifier[0].kraus(), {}, {{"vm", v.memory[0]}, {reg("Q", 1), v.shape.q[0]}});
  ws.append(ComplexMatrix::Ones(1, 1), {"pm", 0});
  for (int i = 1; i < j; ++i) {
    ws.apply(kraus_of(provers[i - 1]), {reg("Q", i), "pm"},
             {{reg("R", i), v.shape.r[i - 1]}, {"pm", lay.pmem[i]}});
    ws.apply(v.verifier[i].kraus(), {"vm", reg("R", i)},
             {{"vm", v.memory[i]}, {reg("Q", i + 1), v.shape.q[i]}});
  }
  return ws.matrix_in_order({reg("Q", j), "pm", "vm"});
}

// Heisenberg image of the accept projector on [R_j, pm, vm] just after
// prover round j.
ComplexMatrix backward_effect(const Layout& lay, const std::vector<Isometry>& provers, int j) {
  const auto& v = *lay.protocol;
  const int t = v.rounds();
  RegisterWorkspace ws(basis_projector(2, 1), {{"A", 1}});
  ws.set_cap(lay.cap);
  ws.apply(adjoints(v.verifier[t].kraus()), {"A"},
           {{"vm", v.memory[t - 1]}, {reg("R", t), v.shape.r[t - 1]}});
  ws.append(identity(std::size_t{1} << lay.pmem[t]), {"pm", lay.pmem[t]});
  for (int i = t; i > j; --i) {
    ws.apply(adjoints(kraus_of(provers[i - 1])), {reg("R", i), "pm"},
             {{reg("Q", i), v.shape.q[i - 1]}, {"pm", lay.pmem[i - 1]}});
    ws.apply(adjoints(v.verifier[i - 1].kraus()), {"vm", reg("Q", i)},
             {{"vm", v.memory[i - 2]}, {reg("R", i - 1), v.shape.r[i - 2]}});
  }
  return ws.matrix_in_order({reg("R", j), "pm", "vm"});
}

// acc = sum_e vec(K_e)^* W vec(K_e) with vec index (o, i).
ComplexMatrix linear_form(const ComplexMatrix& sigma, const ComplexMatrix& effect,
                          std::size_t din, std::size_t dout) {
  const std::size_t dv = static_cast<std::size_t>(sigma.rows()) / din;
  ComplexMatrix w = ComplexMatrix::Zero(din * dout, din * dout);
  for (std::size_t o1 = 0; o1 < dout; ++o1) {
    for (std::size_t i1 = 0; i1 < din; ++i1) {
      for (std::size_t o = 0; o < dout; ++o) {
        for (std::size_t i = 0; i < din; ++i) {
          Complex s = 0.0;
          for (std::size_t a = 0; a < dv; ++a) {
            for (std::size_t b = 0; b < dv; ++b) {
              s += effect(o1 * dv + b, o * dv + a) * sigma(i * dv + a, i1 * dv + b);
            }
          }
          w(o1 * din + i1, o * din + i) = s;
        }
      }
    }
  }
  return hermitian_part(w);
}

double objective(const ComplexMatrix& w, const Isometry& iso) {
  double acc = 0.0;
  for (const auto& k : kraus_of(iso)) {
    ComplexVector vec(iso.in_dim * iso.out_dim);
    for (std::size_t o = 0; o < iso.out_dim; ++o) {
      for (std::size_t i = 0; i < iso.in_dim; ++i) vec(o * iso.in_dim + i) = k(o, i);
    }
    acc += (vec.adjoint() * w * vec)(0, 0).real();
  }
  return acc;
}

// Monotone ascent of the convex quadratic sum_e vec_e^* (W + cI) vec_e over
// isometries: step to the polar factor of the gradient.
void optimize_round(const ComplexMatrix& w, Isometry& iso, const SeesawConfig& cfg) {
  const double shift =
      std::max(0.0, -hermitian_eigenvalues(w, 1e-8).minCoeff()) + 1e-3;
  const ComplexMatrix ws = w + shift * identity(static_cast<std::size_t>(w.rows()));
  double prev = objective(w, iso);
  for (int step = 0; step < cfg.inner_steps; ++step) {
    ComplexMatrix grad(iso.v.rows(), iso.v.cols());
    auto kraus = kraus_of(iso);
    for (std::size_t e = 0; e < iso.env; ++e) {
      ComplexVector vec(iso.in_dim * iso.out_dim);
      for (std::size_t o = 0; o < iso.out_dim; ++o) {
        for (std::size_t i = 0; i < iso.in_dim; ++i) vec(o * iso.in_dim + i) = kraus[e](o, i);
      }
      const ComplexVector g = ws * vec;
      for (std::size_t o = 0; o < iso.out_dim; ++o) {
        for (std::size_t i = 0; i < iso.in_dim; ++i) {
          grad(o * iso.env + e, i) = g(o * iso.in_dim + i);
        }
      }
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(grad, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Isometry next = iso;
    next.v = svd.matrixU() * svd.matrixV().adjoint();
    const double val = objective(w, next);
    if (val < prev - 1e-14) break;
    iso = std::move(next);
    const bool done = val - prev < cfg.inner_tolerance;
    prev = val;
    if (done) break;
  }
}

ProverSpec to_prover(const Layout& lay, const std::vector<Isometry>& provers) {
  ProverSpec p;
  for (std::size_t j = 0; j < provers.size(); ++j) {
    const int j1 = static_cast<int>(j) + 1;
    p.channels.emplace_back(lay.in_qubits(j1), lay.out_qubits(j1), kraus_of(provers[j]), 1e-7);
  }
  return p;
}

}  // namespace

SeesawResult seesaw_lower_bound(const ProtocolSpec& protocol, std::uint64_t seed,
                                const SeesawConfig& config) {
  protocol.validate();
  const int t = protocol.rounds();
  Layout lay{&protocol, std::vector<int>(t + 1, 0), config.max_live_qubits};
  for (int j = 1; j < t; ++j) lay.pmem[j] = std::max(0, config.prover_memory);

  const CounterRng root(seed, 0x5ee5a3);
  SeesawResult best;
  best.value = -1.0;
  for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(restart));
    std::vector<Isometry> provers;
    for (int j = 1; j <= t; ++j) {
      const std::size_t din = std::size_t{1} << lay.in_qubits(j);
      const std::size_t dout = std::size_t{1} << lay.out_qubits(j);
      const std::size_t env = din * dout;
      provers.push_back({random_isometry(dout * env, din, rng), din, dout, env});
    }
    std::vector<double> history;
    double value = interact(protocol, to_prover(lay, provers), config.max_live_qubits);
    for (int it = 0; it < config.iterations; ++it) {
      for (int j = 1; j <= t; ++j) {
        auto& iso = provers[j - 1];
        const ComplexMatrix w = linear_form(forward_state(lay, provers, j),
                                            backward_effect(lay, provers, j), iso.in_dim,
                                            iso.out_dim);
        optimize_round(w, iso, config);
      }
      const double next = interact(protocol, to_prover(lay, provers), config.max_live_qubits);
      value = std::max(value, next);
      history.push_back(value);
      if (it > 0 && history[it] - history[it - 1] < 1e-12) break;
    }
    if (value > best.value) {
      best.value = value;
      best.prover = to_prover(lay, provers);
      best.history = std::move(history);
    }
  }
  best.value = interact(protocol, best.prover, config.max_live_qubits);
  return best;
}

}  // namespace sqip
