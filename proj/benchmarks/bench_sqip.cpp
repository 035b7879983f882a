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

#include <benchmark/benchmark.h>

#include "sqip/random.hpp"
#include "sqip/seesaw.hpp"
#include "sqip/strategies.hpp"
#include "sqip/tomography.hpp"

namespace sqip {
namespace {

ComplexMatrix random_effect(std::size_t d, CounterRng& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = rng.uniform();
  return u * diag * u.adjoint();
}

// One-round protocol with q = r = 1: V_0 prepares a random state on
// [memory, Q], V_1 is a random channel [memory, R] -> A.
ProtocolSpec random_round(std::uint64_t seed) {
  CounterRng rng(seed);
  ProtocolSpec spec;
  spec.shape = {{1}, {1}};
  spec.memory = {1};
  spec.verifier.push_back(QuantumChannel::Preparation(random_density(4, rng)));
  const ComplexMatrix v = random_isometry(4, 4, rng);
  std::vector<ComplexMatrix> kraus{v.topRows(2), v.bottomRows(2)};
  spec.verifier.push_back(QuantumChannel(2, 1, kraus, 1e-9));
  spec.circuits.resize(2);
  spec.completeness = 0.6;
  spec.soundness = 0.3;
  spec.gap = 0.25;
  return spec;
}

void BM_MeasureSampled(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Frame f = canonical_frame(k);
  CounterRng rng(1);
  const ComplexMatrix rho = random_density(f.dim(), rng);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_sampled(rho, f, 1000000, CounterRng(++seed)));
  }
}
BENCHMARK(BM_MeasureSampled)->Arg(1)->Arg(2)->Arg(3);

void BM_Reconstruct(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Frame f = canonical_frame(k);
  CounterRng rng(2);
  const OutcomeDistribution d = measure_exact(random_density(f.dim(), rng), f);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(d, f));
}
BENCHMARK(BM_Reconstruct)->Arg(1)->Arg(2)->Arg(3);

void BM_StrategySdpNoQuestion(benchmark::State& state) {
  CounterRng rng(3);
  const std::size_t d = std::size_t{1} << state.range(0);
  CoStrategyView v;
  v.shape = {{0}, {static_cast<int>(state.range(0))}};
  v.rho1 = random_effect(d, rng).transpose() / static_cast<double>(d);
  for (auto _ : state) benchmark::DoNotOptimize(max_acceptance_sdp(v));
}
BENCHMARK(BM_StrategySdpNoQuestion)->Arg(1)->Arg(2)->Arg(3);

void BM_StrategySdpOneRound(benchmark::State& state) {
  const ProtocolSpec spec = random_round(4);
  const CoStrategyView v = accept_projection(rewired_choi(spec), spec.shape);
  for (auto _ : state) benchmark::DoNotOptimize(max_acceptance_sdp(v));
}
BENCHMARK(BM_StrategySdpOneRound);

void BM_Seesaw(benchmark::State& state) {
  const ProtocolSpec spec = random_round(5);
  for (auto _ : state) benchmark::DoNotOptimize(seesaw_lower_bound(spec, 1));
}
BENCHMARK(BM_Seesaw)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sqip

BENCHMARK_MAIN();
