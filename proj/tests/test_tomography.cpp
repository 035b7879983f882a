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

#include <gtest/gtest.h>

#include <cmath>

#include "sqip/random.hpp"
#include "sqip/tomography.hpp"
#include "support.hpp"

namespace sqip {
namespace {

using testing::max_abs_diff;

TEST(Frame, SingleQubitMeasurementIsAPovm) {
  const auto p = single_qubit_measurement();
  ASSERT_EQ(p.size(), 4u);
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& pa : p) {
    sum += pa;
    EXPECT_TRUE(is_psd(pa, 1e-14));
  }
  EXPECT_LT(max_abs_diff(sum, identity(2)), 1e-12);
}

TEST(Frame, DualsHaveTraceNormSqrtTen) {
  for (const auto& m : single_qubit_duals()) EXPECT_NEAR(trace_norm(m), std::sqrt(10.0), 1e-10);
  for (int k = 1; k <= 3; ++k) {
    const Frame f = canonical_frame(k);
    for (const auto& m : f.m()) EXPECT_NEAR(trace_norm(m), std::pow(10.0, k / 2.0), 1e-9);
    EXPECT_NEAR(canonical_dual_trace_norm(k), std::pow(10.0, k / 2.0), 1e-12);
  }
}

TEST(Frame, DualFrameSolvesTheLinearSystemIndependently) {
  // dual_frame recomputes the duals from P alone; they must agree with the
  // tabulated matrices.
  const auto m = dual_frame(single_qubit_measurement());
  const auto tab = single_qubit_duals();
  for (std::size_t a = 0; a < 4; ++a) EXPECT_LT(max_abs_diff(m[a], tab[a]), 1e-12);
}

TEST(Frame, ReconstructionIdentityOnArbitraryOperators) {
  CounterRng rng(61);
  for (int k = 1; k <= 2; ++k) {
    const Frame f = canonical_frame(k);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t d = f.dim();
      ComplexMatrix x = random_unitary(d, rng) * Complex(0.3, 0.7) + random_hermitian(d, rng);
      ComplexMatrix rec = ComplexMatrix::Zero(d, d);
      for (std::size_t a = 0; a < f.outcome_count(); ++a) {
        rec += (f.p()[a].adjoint() * x).trace() * f.m()[a];
      }
      EXPECT_LT(max_abs_diff(rec, x), 1e-9);
    }
  }
}

TEST(Frame, ArityCap) {
  EXPECT_THROW(canonical_frame(kMaxFrameArity + 1), CapExceededError);
  EXPECT_THROW(dual_frame({identity(2)}), ArgumentError);
}

TEST(Tomography, ExactStatisticsMatchDirectTraces) {
  CounterRng rng(62);
  const Frame f = canonical_frame(2);
  const ComplexMatrix rho = random_density(4, rng);
  const OutcomeDistribution d = measure_exact(rho, f);
  const auto oracle = testing::oracle_frame_probabilities(f.p(), rho);
  for (std::size_t a = 0; a < oracle.size(); ++a) EXPECT_NEAR(d.weights[a], oracle[a], 1e-14);
  EXPECT_LT(max_abs_diff(reconstruct(d, f), rho), 1e-10);
}

TEST(Tomography, SampledCountsAreReproducibleAndNormalized) {
  CounterRng rng(63);
  const Frame f = canonical_frame(1);
  const ComplexMatrix rho = random_density(2, rng);
  const CounterRng s(7);
  const OutcomeDistribution a = measure_sampled(rho, f, 100000, s);
  const OutcomeDistribution b = measure_sampled(rho, f, 100000, s);
  EXPECT_EQ(a.weights, b.weights);
  double total = 0.0;
  for (double w : a.weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
  const auto counts = sample_counts({0.5, 0.25, 0.25, 0.0}, 1000, s);
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[3], 1000u);
  EXPECT_EQ(counts[3], 0u);
}

TEST(Tomography, MultinomialMeanAndVariance) {
  // Chunked sampling must still be multinomial: compare mean and variance of
  // one coordinate across seeds with the binomial values.
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const std::uint64_t shots = 200000;
  double sum = 0.0, sum2 = 0.0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    const double c = static_cast<double>(sample_counts(p, shots, CounterRng(100 + i))[1]);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / reps;
  const double var = sum2 / reps - mean * mean;
  EXPECT_NEAR(mean, 0.2 * shots, 4.0 * std::sqrt(0.16 * shots / reps));
  EXPECT_NEAR(var / (0.16 * shots), 1.0, 0.35);
}

TEST(Tomography, BoundChainHoldsOnEverySampledRun) {
  CounterRng rng(64);
  for (int k = 1; k <= 2; ++k) {
    const Frame f = canonical_frame(k);
    for (int trial = 0; trial < 30; ++trial) {
      const ComplexMatrix rho = random_density(f.dim(), rng);
      const OutcomeDistribution exact = measure_exact(rho, f);
      const OutcomeDistribution q = measure_sampled(rho, f, 500 + 100 * trial, rng.split(trial));
      const double lhs = trace_norm(reconstruct(q, f) - rho);
      const double rhs = std::pow(10.0, k / 2.0) * l1_distance(q.weights, exact.weights);
      EXPECT_LE(lhs, rhs + 1e-12);
    }
  }
}

TEST(Tomography, PositiveProjectionYieldsState) {
  CounterRng rng(65);
  const Frame f = canonical_frame(1);
  const ComplexMatrix rho = basis_projector(2, 0);
  ReconstructOptions opt;
  opt.project_positive = true;
  const OutcomeDistribution q = measure_sampled(rho, f, 50, rng);
  EXPECT_NO_THROW(DensityOperator(reconstruct(q, f, opt), 1e-9));
}

TEST(SampleSize, MatchesFormula) {
  EXPECT_EQ(sample_size(1, 0.5), 8192u);
  EXPECT_EQ(sample_size(2, 0.5), 8388608u);
  EXPECT_EQ(sample_size(0, 0.5), 8u);
  EXPECT_THROW(sample_size(1, 0.0), ArgumentError);
  EXPECT_THROW(sample_size(1, 1.0), ArgumentError);
  EXPECT_THROW(sample_size(5, 1e-3), CapExceededError);
  EXPECT_GE(sample_size(1, 0.3), sample_size(1, 0.5));
}

}  // namespace
}  // namespace sqip
