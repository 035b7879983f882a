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

#include "sqip/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

namespace sqip {
namespace {

constexpr std::uint64_t kShotsPerChunk = 1 << 16;

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

Frame::Frame(int arity, std::vector<ComplexMatrix> p, std::vector<ComplexMatrix> m)
    : arity_(arity), p_(std::move(p)), m_(std::move(m)) {
  const std::size_t n = std::size_t{1} << (2 * arity);
  if (p_.size() != n || m_.size() != n) {
    throw ArgumentError("Frame: expected 4^k measurement and dual operators");
  }
}

std::vector<ComplexMatrix> single_qubit_measurement() {
  const double s = std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  return {
      mat2((2 + s) / 8, (1.0 + i) / 8.0, (1.0 - i) / 8.0, (2 - s) / 8),
      mat2((2 - s) / 8, (1.0 - i) / 8.0, (1.0 + i) / 8.0, (2 + s) / 8),
      mat2((2 + s) / 8, (-1.0 - i) / 8.0, (-1.0 + i) / 8.0, (2 - s) / 8),
      mat2((2 - s) / 8, (-1.0 + i) / 8.0, (-1.0 - i) / 8.0, (2 + s) / 8),
  };
}

std::vector<ComplexMatrix> single_qubit_duals() {
  const double s = std::numbers::sqrt2;
  const Complex i(0.0, 1.0);
  return {
      mat2((1 + s) / 2, 1.0 + i, 1.0 - i, (1 - s) / 2),
      mat2((1 - s) / 2, 1.0 - i, 1.0 + i, (1 + s) / 2),
      mat2((1 + s) / 2, -1.0 - i, -1.0 + i, (1 - s) / 2),
      mat2((1 - s) / 2, -1.0 + i, -1.0 - i, (1 + s) / 2),
  };
}

Frame canonical_frame(int k, int max_arity) {
  if (k < 1) throw ArgumentError("canonical_frame: k must be at least 1");
  if (k > max_arity) {
    throw CapExceededError("canonical_frame: arity " + std::to_string(k) +
                           " exceeds the cap of " + std::to_string(max_arity));
  }
  std::vector<ComplexMatrix> p = single_qubit_measurement();
  std::vector<ComplexMatrix> m = single_qubit_duals();
  const auto p1 = p;
  const auto m1 = m;
  for (int level = 1; level < k; ++level) {
    std::vector<ComplexMatrix> np, nm;
    np.reserve(p.size() * 4);
    nm.reserve(m.size() * 4);
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (int a = 0; a < 4; ++a) {
        np.push_back(tensor(p[x], p1[a]));
        nm.push_back(tensor(m[x], m1[a]));
      }
    }
    p = std::move(np);
    m = std::move(nm);
  }
  return Frame(k, std::move(p), std::move(m));
}

std::vector<ComplexMatrix> dual_frame(const std::vector<ComplexMatrix>& p) {
  if (p.empty()) throw ArgumentError("dual_frame: empty operator set");
  const auto d = p.front().rows();
  const auto n = d * d;
  if (static_cast<Eigen::Index>(p.size()) != n) {
    throw ArgumentError("dual_frame: need exactly 4^k = " + std::to_string(n) +
                        " operators, got " + std::to_string(p.size()));
  }
  // Row a of T is vec(P_a)^*, so (T vec X)_a = <P_a, X>. The duals are the
  // columns of T^{-1}.
  ComplexMatrix t(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (p[a].rows() != d || p[a].cols() != d) {
      throw ArgumentError("dual_frame: operators differ in size");
    }
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) t(a, r * d + c) = std::conj(p[a](r, c));
    }
  }
  Eigen::FullPivLU<ComplexMatrix> lu(t);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw InvariantError("dual_frame: operators do not form a basis");
  }
  const ComplexMatrix inv = lu.inverse();
  std::vector<ComplexMatrix> m(n, ComplexMatrix(d, d));
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) m[a](r, c) = inv(r * d + c, a);
    }
  }
  return m;
}

OutcomeDistribution measure_exact(const ComplexMatrix& rho, const Frame& frame) {
  if (static_cast<std::size_t>(rho.rows()) != frame.dim() ||
      rho.rows() != rho.cols()) {
    throw ArgumentError("measure: state dimension " + std::to_string(rho.rows()) +
                        " does not match frame dimension " +
                        std::to_string(frame.dim()));
  }
  OutcomeDistribution out;
  out.weights.reserve(frame.outcome_count());
  for (const auto& p : frame.p()) out.weights.push_back(inner_product(p, rho));
  return out;
}

std::vector<std::uint64_t> sample_counts(const std::vector<double>& probabilities,
                                         std::uint64_t shots,
                                         const CounterRng& rng) {
  std::vector<double> prob(probabilities.size());
  for (std::size_t i = 0; i < prob.size(); ++i) {
    prob[i] = std::max(probabilities[i], 0.0);
  }
  std::vector<std::uint64_t> counts(prob.size(), 0);
  const std::uint64_t chunks = (shots + kShotsPerChunk - 1) / kShotsPerChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    CounterRng stream = rng.split(c);
    std::uint64_t remaining =
        std::min(kShotsPerChunk, shots - c * kShotsPerChunk);
    // Sequential conditional binomials give an exact multinomial draw.
    double mass = 0.0;
    for (double p : prob) mass += p;
    for (std::size_t i = 0; i + 1 < prob.size() && remaining > 0; ++i) {
      if (mass <= 0.0) break;
      const double cond = std::clamp(prob[i] / mass, 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> binom(remaining, cond);
      const std::uint64_t k = binom(stream);
      counts[i] += k;
      remaining -= k;
      mass -= prob[i];
    }
    if (!prob.empty()) counts.back() += remaining;
  }
  return counts;
}

OutcomeDistribution measure_sampled(const ComplexMatrix& rho, const Frame& frame,
                                    std::uint64_t shots, const CounterRng& rng) {
  if (shots == 0) throw ArgumentError("measure: sampled mode needs N >= 1");
  const auto exact = measure_exact(rho, frame);
  const auto counts = sample_counts(exact.weights, shots, rng);
  OutcomeDistribution out;
  out.mode = SampleMode::kSampled;
  out.shots = shots;
  out.seed = rng.key();
  out.weights.reserve(counts.size());
  for (auto c : counts) {
    out.weights.push_back(static_cast<double>(c) / static_cast<double>(shots));
  }
  return out;
}

ComplexMatrix reconstruct(const OutcomeDistribution& q, const Frame& frame,
                          ReconstructOptions options) {
  if (q.weights.size() != frame.outcome_count()) {
    throw ArgumentError("reconstruct: distribution has " +
                        std::to_string(q.weights.size()) + " outcomes, frame has " +
                        std::to_string(frame.outcome_count()));
  }
  const auto d = static_cast<Eigen::Index>(frame.dim());
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (std::size_t x = 0; x < q.weights.size(); ++x) {
    if (q.weights[x] != 0.0) h += q.weights[x] * frame.m()[x];
  }
  h = hermitian_part(h);
  if (options.project_positive) h = positive_part_normalized(h);
  return h;
}

std::uint64_t sample_size(int k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ArgumentError("sample_size: accuracy must lie in (0, 1)");
  }
  if (k < 0 || k > 5) throw ArgumentError("sample_size: k out of range");
  const long double n = std::ldexp(1.0L, 10 * k) /
                        (static_cast<long double>(eps) * eps * eps);
  if (n > 1.8e19L) throw CapExceededError("sample_size: N overflows 64 bits");
  return static_cast<std::uint64_t>(std::ceil(n));
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ArgumentError("l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double canonical_dual_trace_norm(int k) { return std::pow(10.0, 0.5 * k); }

}  // namespace sqip
