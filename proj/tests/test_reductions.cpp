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

#include "sqip/protocol_io.hpp"
#include "sqip/random.hpp"
#include "sqip/reductions.hpp"
#include "support.hpp"

namespace sqip {
namespace {

std::string text(const std::string& name) {
  return read_text_file(testing::data_path(name));
}

ProtocolSpec load(const std::string& name) {
  return parse_protocol(text("protocols/" + name));
}

TEST(ArthurParams, QuestionWidthOneQuarterGap) {
  const ArthurParams p = arthur_params(1, 0.25);
  EXPECT_EQ(p.eps, BigRational(1, 64));
  EXPECT_EQ(p.delta, BigRational(1, 16384));
  EXPECT_EQ(p.n, BigInt(1) << 55);
  EXPECT_EQ(p.m, BigInt(1) << 64);
}

TEST(ArthurParams, QuestionWidthZeroHalfGap) {
  const ArthurParams p = arthur_params(0, 0.5);
  EXPECT_EQ(p.eps, BigRational(1, 8));
  EXPECT_EQ(p.delta, BigRational(1, 256));
  EXPECT_EQ(p.n, BigInt(1) << 27);
  EXPECT_EQ(p.m, BigInt(1) << 31);
}

TEST(ArthurParams, RecomputedFromTheDefiningFormulas) {
  for (int q = 0; q <= 3; ++q) {
    for (double gap : {0.5, 0.25, 0.1, 0.03}) {
      const ArthurParams p = arthur_params(q, gap);
      const BigRational g = exact_rational(gap);
      BigRational four_q = 1;
      for (int i = 0; i < q; ++i) four_q *= 4;
      const BigRational eps = g / (four_q * 4);
      const BigRational delta = eps * eps / 4;
      BigRational two_10q = 1;
      for (int i = 0; i < 10 * q; ++i) two_10q *= 2;
      const BigRational n_real = two_10q / ((delta / 2) * (delta / 2) * (delta / 2));
      // n is the least integer >= n_real.
      EXPECT_GE(BigRational(p.n), n_real);
      EXPECT_LT(BigRational(p.n - 1), n_real);
      const BigRational m_real = 2 * BigRational(p.n) * four_q / eps;
      EXPECT_GE(BigRational(p.m), m_real);
      EXPECT_LT(BigRational(p.m - 1), m_real);
    }
  }
}

TEST(ArthurParams, MonotoneInWidthAndGap) {
  for (int q = 0; q < 4; ++q) {
    EXPECT_LT(arthur_params(q, 0.25).n, arthur_params(q + 1, 0.25).n);
    EXPECT_LT(arthur_params(q, 0.25).m, arthur_params(q + 1, 0.25).m);
    EXPECT_LT(arthur_params(q, 0.5).n, arthur_params(q, 0.25).n);
  }
  EXPECT_THROW(arthur_params(-1, 0.25), ArgumentError);
  EXPECT_THROW(arthur_params(1, 0.0), ArgumentError);
  EXPECT_THROW(arthur_params(1, 1.0), ArgumentError);
}

TEST(DeFinetti, Examples) {
  EXPECT_EQ(definetti_bound_exact(1, 3, 1), BigRational(1));
  EXPECT_EQ(definetti_bound_exact(1, 1, 1), BigRational(2));
  EXPECT_DOUBLE_EQ(definetti_bound(2, 6, 2), 2.0);
  EXPECT_THROW(definetti_bound(0, 1, 1), ArgumentError);
  EXPECT_THROW(definetti_bound(1, 1, 0), ArgumentError);
}

TEST(DeFinetti, MonotoneInEachArgument) {
  CounterRng rng(91);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t n = 1 + rng() % 1000, m = 1 + rng() % 1000;
    const int k = 1 + static_cast<int>(rng() % 6);
    const double b = definetti_bound(n, m, k);
    EXPECT_LE(b, definetti_bound(n + 1, m, k));
    EXPECT_GE(b, definetti_bound(n, m + 1, k));
    EXPECT_LT(b, definetti_bound(n, m, k + 1));
    EXPECT_NEAR(b, static_cast<double>(n) / static_cast<double>(n + m) * std::ldexp(1.0, k + 1), 1e-12);
  }
}

TEST(HonestWitness, EchoIdentityProverGivesMaximallyEntangledPair) {
  const ProtocolSpec v = load("echo.json");
  const ArthurWitness w = honest_witness(v, parse_prover(text("provers/echo_identity.json")), 7);
  EXPECT_EQ(w.copies, 7u);
  EXPECT_EQ(w.r_qubits, 1);
  EXPECT_EQ(w.q_qubits, 1);
  EXPECT_LT(testing::max_abs_diff(w.pair_state, max_entangled_projector(1)), 1e-12);
  const ArthurWitness file = parse_witness(text("witnesses/echo_honest.json"));
  EXPECT_LT(testing::max_abs_diff(w.pair_state, file.pair_state), 1e-12);
}

TEST(HonestWitness, DenseFormOfFewCopies) {
  const ProtocolSpec v = load("echo.json");
  const ArthurWitness w = honest_witness(v, parse_prover(text("provers/echo_identity.json")), 3);
  const ComplexMatrix one = max_entangled_projector(1);
  EXPECT_LT(testing::max_abs_diff(w.dense().matrix(), testing::oracle_kron(testing::oracle_kron(one, one), one)),
            1e-12);
  ArthurWitness big = w;
  big.copies = 10;
  EXPECT_THROW(big.dense(), CapExceededError);
}

TEST(ArthurVerify, HonestExactAcceptsAtRateFourToMinusQ) {
  const ProtocolSpec v = load("echo.json");
  const ArthurWitness w = parse_witness(text("witnesses/echo_honest.json"));
  const DecisionReport rep = arthur_qma_verify(v, w, {});
  EXPECT_NEAR(rep.estimate, 0.25, 1e-10);
  EXPECT_EQ(rep.verdict, Verdict::kAccept);
  // threshold = ((a/4 - eps) + (b/4 + 2 eps)) / 2 with eps = 1/64.
  EXPECT_NEAR(rep.threshold, 0.5 * ((0.95 / 4 - 1.0 / 64) + (0.5 / 4 + 2.0 / 64)), 1e-12);
  EXPECT_EQ(rep.parameters["nominal"]["N"]["exact"], "36028797018963968");
}

TEST(ArthurVerify, ZeroQuestionWitnessFailsTomography) {
  const ProtocolSpec v = load("echo.json");
  const DecisionReport rep = arthur_qma_verify(v, parse_witness(text("witnesses/echo_zero_question.json")), {});
  EXPECT_EQ(rep.diagnostics["step3_pass"], false);
  EXPECT_NEAR(rep.diagnostics["tomography_distance"].get<double>(), 1.0, 1e-10);
  EXPECT_EQ(rep.estimate, 0.0);
  EXPECT_EQ(rep.verdict, Verdict::kReject);
}

TEST(ArthurVerify, SampledHonestAndDishonest) {
  const ProtocolSpec v = load("echo.json");
  ArthurConfig c;
  c.mode = SampleMode::kSampled;
  c.overrides.n = 20000;
  c.overrides.delta = 0.2;
  c.trials = 1000;
  c.seed = 5;
  const DecisionReport honest = arthur_qma_verify(v, parse_witness(text("witnesses/echo_honest.json")), c);
  EXPECT_EQ(honest.diagnostics["step3_rejections"], 0);
  EXPECT_NEAR(honest.estimate, 0.25, 0.05);
  EXPECT_EQ(honest.verdict, Verdict::kAccept);
  const DecisionReport cheat = arthur_qma_verify(v, parse_witness(text("witnesses/echo_zero_question.json")), c);
  EXPECT_EQ(cheat.diagnostics["step3_rejections"], 1000);
  EXPECT_EQ(cheat.verdict, Verdict::kReject);
  // Same seed, same report.
  EXPECT_EQ(to_json(honest), to_json(arthur_qma_verify(v, parse_witness(text("witnesses/echo_honest.json")), c)));
}

TEST(ArthurVerify, NoDiscardsNeedsOnlyNPlusOnePairs) {
  const ProtocolSpec v = load("echo.json");
  ArthurWitness w = parse_witness(text("witnesses/echo_honest.json"));
  ArthurConfig c;
  c.mode = SampleMode::kSampled;
  c.overrides.n = 50;
  c.overrides.m = 0;
  c.overrides.delta = 4.0;
  c.trials = 10;
  w.copies = 51;
  EXPECT_NO_THROW(arthur_qma_verify(v, w, c));
  w.copies = 50;
  EXPECT_THROW(arthur_qma_verify(v, w, c), ArgumentError);
}

TEST(ArthurVerify, NominalScaleSampledRunNeedsAnOverride) {
  const ProtocolSpec v = load("echo.json");
  ArthurConfig c;
  c.mode = SampleMode::kSampled;
  EXPECT_THROW(arthur_qma_verify(v, parse_witness(text("witnesses/echo_honest.json")), c), CapExceededError);
}

ArthurWitness joint_honest(std::size_t pairs) {
  ArthurWitness j;
  j.form = ArthurWitness::Form::kJoint;
  j.r_qubits = 1;
  j.q_qubits = 1;
  j.pairs = pairs;
  const ComplexMatrix one = max_entangled_projector(1);
  j.joint = one;
  for (std::size_t i = 1; i < pairs; ++i) j.joint = testing::oracle_kron(j.joint, one);
  return j;
}

TEST(ArthurVerify, JointWitnessMatchesProductWitness) {
  const ProtocolSpec v = load("echo.json");
  ArthurConfig c;
  c.overrides.n = 3;
  c.overrides.m = 0;
  c.overrides.delta = 0.1;
  ArthurWitness p = parse_witness(text("witnesses/echo_honest.json"));
  p.copies = 4;
  EXPECT_NEAR(arthur_qma_verify(v, joint_honest(4), c).estimate, arthur_qma_verify(v, p, c).estimate, 1e-10);

  c.mode = SampleMode::kSampled;
  c.overrides.delta = 10.0;  // tomography never rejects
  c.trials = 800;
  const DecisionReport rep = arthur_qma_verify(v, joint_honest(4), c);
  EXPECT_EQ(rep.diagnostics["step3_rejections"], 0);
  EXPECT_NEAR(rep.estimate, 0.25, 0.06);
  EXPECT_THROW(arthur_qma_verify(v, joint_honest(3), c), ArgumentError);
}

TEST(ArthurVerify, JointWitnessCollapsesOnMeasurement) {
  // Every pair is (b, b) with one shared random bit b. Measuring the
  // tomography registers collapses b; averaged over outcomes the kept pair is
  // still the classical mixture, so the sampled rate tracks the exact one.
  const ProtocolSpec v = load("echo.json");
  ArthurWitness j;
  j.form = ArthurWitness::Form::kJoint;
  j.r_qubits = 1;
  j.q_qubits = 1;
  j.pairs = 3;
  const std::size_t dim = 64;
  j.joint = ComplexMatrix::Zero(dim, dim);
  // Pair bits (R, Q) = (b, b) for all three pairs.
  const std::size_t all0 = 0, all1 = 0b111111;
  j.joint(all0, all0) = 0.5;
  j.joint(all1, all1) = 0.5;
  ArthurConfig c;
  c.mode = SampleMode::kSampled;
  c.overrides.n = 2;
  c.overrides.m = 0;
  c.overrides.delta = 10.0;
  c.trials = 400;
  const DecisionReport rep = arthur_qma_verify(v, j, c);
  c.mode = SampleMode::kExact;
  const double exact = arthur_qma_verify(v, j, c).estimate;
  EXPECT_GT(exact, 0.0);
  EXPECT_NEAR(rep.estimate, exact, 0.07);
}

TEST(Qiplog, NamedInstances) {
  const DecisionReport echo = qiplog_decide(load("echo.json"), {});
  EXPECT_NEAR(echo.estimate, 1.0, 1e-6);
  EXPECT_EQ(echo.verdict, Verdict::kYes);
  const DecisionReport guess = qiplog_decide(load("basis_guess.json"), {});
  EXPECT_NEAR(guess.estimate, std::pow(std::cos(M_PI / 8.0), 2), 1e-6);
  EXPECT_EQ(guess.verdict, Verdict::kNo);
  EXPECT_NEAR(qiplog_decide(load("commit_basis.json"), {}).estimate, 1.0, 1e-6);
}

TEST(Qiplog, InjectedExactFrequenciesReproduceTheExactValue) {
  for (const char* name : {"echo.json", "basis_guess.json", "measure_only.json"}) {
    const ProtocolSpec v = load(name);
    QiplogConfig c;
    c.mode = SampleMode::kSampled;
    c.inject_exact = true;
    const DecisionReport s = qiplog_decide(v, c);
    const DecisionReport e = qiplog_decide(v, {});
    EXPECT_NEAR(s.estimate, e.estimate, 1e-6) << name;
    EXPECT_EQ(s.verdict, e.verdict) << name;
    EXPECT_LT(s.diagnostics["tomography_error"].get<double>(), 1e-9) << name;
  }
}

TEST(Qiplog, SampledDeviationStaysWithinTheTomographyBound) {
  CounterRng rng(92);
  for (int trial = 0; trial < 4; ++trial) {
    const ProtocolSpec v = trial < 2 ? load(trial == 0 ? "echo.json" : "measure_only.json")
                                     : testing::random_protocol({{1}, {1}}, {1}, rng);
    QiplogConfig c;
    c.mode = SampleMode::kSampled;
    c.shots = 20000;
    c.seed = 3 + trial;
    const DecisionReport s = qiplog_decide(v, c);
    EXPECT_LE(s.diagnostics["actual_difference"].get<double>(),
              s.diagnostics["error_bound"].get<double>() + 1e-6);
  }
}

TEST(QamAlpha, DiagonalExample) {
  // Lower-right block of the measurement Choi state is P_1^T / 2^r.
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(0, 0) = 0.05;
  h(1, 1) = 0.4;
  h(2, 2) = 0.45;
  h(3, 3) = 0.1;
  EXPECT_NEAR(qam_alpha(h, 1), 0.9, 1e-12);
  EXPECT_THROW(qam_alpha(h, 2), ArgumentError);
}

TEST(QamAlpha, EqualsLargestEigenvalueOfTheAcceptingElement) {
  CounterRng rng(93);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = 1 + trial % 2;
    const std::size_t d = std::size_t{1} << r;
    const ComplexMatrix p1 = testing::random_effect(d, rng);
    const ComplexMatrix p0 = identity(d) - p1;
    ComplexMatrix h = ComplexMatrix::Zero(2 * d, 2 * d);
    h.topLeftCorner(d, d) = p0.transpose() / static_cast<double>(d);
    h.bottomRightCorner(d, d) = p1.transpose() / static_cast<double>(d);
    EXPECT_NEAR(qam_alpha(h, r), testing::oracle_max_eigenvalue(p1), 1e-9);
  }
}

TEST(QamDecide, NamedInstances) {
  QamConfig c;
  c.trials = 4000;
  c.seed = 8;
  const DecisionReport diag = qam_decide(parse_qam(text("protocols/qam_diag.json")), c);
  EXPECT_NEAR(diag.estimate, 0.9, 0.03);
  EXPECT_EQ(diag.verdict, Verdict::kYes);
  const DecisionReport coins = qam_decide(parse_qam(text("protocols/qam_two_coins.json")), c);
  EXPECT_NEAR(coins.estimate, 0.5, 0.04);
  EXPECT_EQ(coins.verdict, Verdict::kNo);
  EXPECT_NEAR(coins.diagnostics["expected_norm"].get<double>(), 0.5, 1e-12);
}

TEST(QamDecide, SampledModeNeedsAShotCount) {
  QamConfig c;
  c.mode = SampleMode::kSampled;
  const QamProblem p = parse_qam(text("protocols/qam_diag.json"));
  EXPECT_THROW(qam_decide(p, c), CapExceededError);
  c.shots = 20000;
  c.trials = 300;
  const DecisionReport rep = qam_decide(p, c);
  EXPECT_NEAR(rep.diagnostics["mean_alpha"].get<double>(), 0.9, 0.05);
  EXPECT_EQ(rep.verdict, Verdict::kYes);
}

TEST(QamProblem, ValidationErrors) {
  QamProblem p = parse_qam(text("protocols/qam_diag.json"));
  p.soundness = 0.7;
  EXPECT_THROW(p.validate(), InvariantError);
  p = parse_qam(text("protocols/qam_diag.json"));
  p.instances.push_back({1.0, identity(4)});
  EXPECT_THROW(p.validate(), InvariantError);
  p = parse_qam(text("protocols/qam_diag.json"));
  p.instances[0].weight = -1.0;
  EXPECT_THROW(p.validate(), InvariantError);
}

}  // namespace
}  // namespace sqip
