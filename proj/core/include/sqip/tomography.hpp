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

#ifndef SQIP_TOMOGRAPHY_HPP_
#define SQIP_TOMOGRAPHY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sqip/qcore.hpp"
#include "sqip/random.hpp"

namespace sqip {

/// Information-complete measurement {P_x} on k qubits with its dual set {M_x}:
/// sum_x <P_x, X> M_x = X for every operator X. Outcomes x in {0,1,2,3}^k are
/// flattened base-4 with x_1 most significant.
class Frame {
 public:
  Frame(int arity, std::vector<ComplexMatrix> p, std::vector<ComplexMatrix> m);

  int arity() const { return arity_; }
  std::size_t dim() const { return std::size_t{1} << arity_; }
  std::size_t outcome_count() const { return p_.size(); }
  const std::vector<ComplexMatrix>& p() const { return p_; }
  const std::vector<ComplexMatrix>& m() const { return m_; }

 private:
  int arity_;
  std::vector<ComplexMatrix> p_;
  std::vector<ComplexMatrix> m_;
};

/// Largest arity canonical_frame will build (4^k operators of size 2^k).
inline constexpr int kMaxFrameArity = 5;

/// The four single-qubit operators P_0..P_3, realizable with H, CNOT, T and a
/// standard-basis measurement.
std::vector<ComplexMatrix> single_qubit_measurement();
/// Their duals M_0..M_3 in closed form.
std::vector<ComplexMatrix> single_qubit_duals();

/// Tensor-power frame: P_x = P_{x_1} (x) ... (x) P_{x_k}, M_x likewise.
Frame canonical_frame(int k, int max_arity = kMaxFrameArity);

/// Solves sum_a M_a <P_a, X> = X for {M_a}. Requires exactly 4^k operators
/// spanning L(C^{2^k}).
std::vector<ComplexMatrix> dual_frame(const std::vector<ComplexMatrix>& p);

enum class SampleMode { kExact, kSampled };

struct OutcomeDistribution {
  std::vector<double> weights;
  SampleMode mode = SampleMode::kExact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Born probabilities <P_x, rho>.
OutcomeDistribution measure_exact(const ComplexMatrix& rho, const Frame& frame);

/// Empirical frequencies of `shots` independent measurements. Shots are split
/// into fixed-size chunks, chunk c drawing from rng.split(c); counts merge by
/// summation.
OutcomeDistribution measure_sampled(const ComplexMatrix& rho, const Frame& frame,
                                    std::uint64_t shots, const CounterRng& rng);

/// Categorical sampling of `shots` draws from `probabilities`, chunked as in
/// measure_sampled. Returns counts.
std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots,
                                         const CounterRng& rng);

struct ReconstructOptions {
  /// Replace H by its positive part renormalized to unit trace.
  bool project_positive = false;
};

/// H = sum_x q(x) M_x. Hermitian, unit trace when q sums to one; not
/// necessarily positive semidefinite.
ComplexMatrix reconstruct(const OutcomeDistribution& q, const Frame& frame,
                          ReconstructOptions options = {});

/// Smallest integer N >= 2^{10k} / eps^3.
std::uint64_t sample_size(int k, double eps);

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

/// Frame error bound max_x ||M_x||_1 = 10^{k/2} for the canonical frame.
double canonical_dual_trace_norm(int k);

}  // namespace sqip

#endif  // SQIP_TOMOGRAPHY_HPP_
