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

#include <nlohmann/json.hpp>

#include "sqip/protocol_io.hpp"
#include "sqip/random.hpp"
#include "sqip/seesaw.hpp"
#include "sqip/workspace.hpp"
#include "support.hpp"

namespace sqip {
namespace {

using nlohmann::json;
using testing::max_abs_diff;

const double kCos2PiOver8 = std::pow(std::cos(M_PI / 8.0), 2);

std::string text(const std::string& name) {
  return read_text_file(testing::data_path(name));
}

json minimal_document() {
  return json::parse(text("protocols/measure_only.json"));
}

std::string error_of(const std::string& doc) {
  try {
    parse_protocol(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ParseProtocol, MinimalMeasureOnlyDocument) {
  const ProtocolSpec spec = parse_protocol(minimal_document().dump());
  EXPECT_EQ(spec.rounds(), 1);
  EXPECT_EQ(spec.shape.q, std::vector<int>{0});
  EXPECT_EQ(spec.shape.r, std::vector<int>{1});
  EXPECT_EQ(spec.verifier[1].out_qubits(), 1);
}

TEST(ParseProtocol, FinalStepWithTwoOutputsIsRejected) {
  json doc = minimal_document();
  // K_b = |b 0><b|: a two-qubit output.
  json kraus = json::array();
  for (int b = 0; b < 2; ++b) {
    json k = json::array();
    for (int row = 0; row < 4; ++row) {
      json line = json::array();
      for (int col = 0; col < 2; ++col) {
        line.push_back(json::array({row == 2 * b && col == b ? 1.0 : 0.0, 0.0}));
      }
      k.push_back(line);
    }
    kraus.push_back(k);
  }
  doc["verifier"][1] = {{"type", "kraus"}, {"in_qubits", 1}, {"out_qubits", 2}, {"kraus", kraus}};
  try {
    parse_protocol(doc.dump());
    FAIL() << "expected rejection";
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("acceptance qubit"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("verifier[1]"), std::string::npos) << e.what();
  }
}

TEST(ParseProtocol, InvertedThresholdsAreRejected) {
  json doc = minimal_document();
  doc["a"] = 0.6;
  doc["b"] = 0.7;
  const std::string msg = error_of(doc.dump());
  EXPECT_NE(msg.find("threshold gap"), std::string::npos) << msg;
  EXPECT_THROW(parse_protocol(doc.dump()), InvariantError);
}

TEST(ParseProtocol, SyntaxAndSchemaErrorsCarryFieldPaths) {
  EXPECT_THROW(parse_protocol("{ not json"), ParseError);
  json doc = minimal_document();
  doc.erase("gap");
  EXPECT_NE(error_of(doc.dump()).find("gap"), std::string::npos);
  doc = minimal_document();
  doc["verifier"][1]["accept"][0][0] = json::array({1.0});
  const std::string msg = error_of(doc.dump());
  EXPECT_NE(msg.find("verifier[1].accept[0][0]"), std::string::npos) << msg;
  doc = minimal_document();
  doc["verifier"][1]["accept"][0][0] = json::array({1.5, 0.0});
  EXPECT_THROW(parse_protocol(doc.dump()), InvariantError);
  doc = minimal_document();
  doc["r"] = json::array({2});
  EXPECT_THROW(parse_protocol(doc.dump()), InvariantError);
  json circ = json::parse(text("protocols/echo.json"));
  circ["verifier"][1]["gates"][0]["op"] = "FROB";
  EXPECT_THROW(parse_protocol(circ.dump()), ParseError);
}

TEST(ParseProtocol, CircuitDocumentsRoundTrip) {
  for (const char* name : {"echo.json", "commit_basis.json", "basis_guess.json", "measure_only.json"}) {
    const ProtocolSpec spec = parse_protocol(text(std::string("protocols/") + name));
    const ProtocolSpec again = parse_protocol(protocol_to_text(spec));
    EXPECT_NEAR(exact_value(again).value, exact_value(spec).value, 1e-7) << name;
  }
}

TEST(ParseProver, WidthsAreCheckedAgainstTheProtocol) {
  const ProtocolSpec echo = parse_protocol(text("protocols/echo.json"));
  const ProverSpec wrong = parse_prover(text("provers/mixed_response.json"));
  EXPECT_THROW(interact(echo, wrong), InvariantError);
  const ProverSpec id = parse_prover(text("provers/echo_identity.json"));
  EXPECT_EQ(parse_prover(prover_to_text(id)).channels.size(), 1u);
}

TEST(Workspace, ApplyMatchesDirectComposition) {
  CounterRng rng(81);
  const ComplexMatrix a = random_density(2, rng), b = random_density(4, rng);
  RegisterWorkspace ws(tensor(a, b), {{"a", 1}, {"b", 2}});
  const QuantumChannel ch = testing::random_channel(2, 1, 2, rng);
  ws.apply(ch.kraus(), {"b"}, {{"c", 1}});
  EXPECT_LT(max_abs_diff(ws.matrix_in_order({"a", "c"}), tensor(a, ch.apply(b))), 1e-12);
  ws.trace_out({"a"});
  EXPECT_LT(max_abs_diff(ws.matrix(), ch.apply(b)), 1e-12);
  EXPECT_THROW(ws.append(identity(2), {"c", 1}), ArgumentError);
  ws.set_cap(2);
  EXPECT_THROW(ws.append(identity(4), {"d", 2}), CapExceededError);
}

TEST(Interact, MeasureOnlyWithMaximallyMixedResponse) {
  const ProtocolSpec spec = parse_protocol(text("protocols/measure_only.json"));
  EXPECT_NEAR(interact(spec, parse_prover(text("provers/mixed_response.json"))), 0.5, 1e-12);
  EXPECT_NEAR(interact(spec, parse_prover(text("provers/zero_response.json"))), 0.75, 1e-12);
}

TEST(Interact, EchoGameWithIdentityProver) {
  const ProtocolSpec spec = parse_protocol(text("protocols/echo.json"));
  EXPECT_NEAR(interact(spec, parse_prover(text("provers/echo_identity.json"))), 1.0, 1e-12);
}

TEST(Interact, NeverExceedsExactValue) {
  CounterRng rng(82);
  for (int trial = 0; trial < 6; ++trial) {
    const ProtocolSpec spec = testing::random_protocol({{1, 1}, {1, 1}}, {1, 1}, rng);
    const double best = exact_value(spec).value;
    ProverSpec p;
    p.channels.push_back(testing::random_channel(1, 2, 2, rng));
    p.channels.push_back(testing::random_channel(2, 1, 2, rng));
    EXPECT_LE(interact(spec, p), best + 1e-8);
  }
}

TEST(Interact, MatchesCoStrategyInnerProductForMemorylessProver) {
  // A memoryless one-round prover's strategy is the transpose of its
  // unnormalized Choi matrix (link product over the shared registers).
  CounterRng rng(83);
  const ProtocolSpec spec = testing::random_protocol({{1}, {1}}, {1}, rng);
  const QuantumChannel p = testing::random_channel(1, 1, 2, rng);
  ProverSpec prover;
  prover.channels.push_back(p);
  const ComplexMatrix x = p.choi_matrix().transpose();  // [R, Q], trace 2^q
  const CoStrategyView v = accept_projection(rewired_choi(spec), spec.shape);
  EXPECT_NEAR(interact(spec, prover), strategy_value(v, x), 1e-10);
}

TEST(Rewire, MeasureOnlyVerifierIsItsMeasurement) {
  CounterRng rng(84);
  const ComplexMatrix p1 = testing::random_effect(4, rng);
  const ProtocolSpec spec = testing::measure_only_protocol(p1);
  const QuantumChannel phi = rewire_verifier(spec);
  const QuantumChannel m = measurement_channel(identity(4) - p1, p1);
  EXPECT_LT(max_abs_diff(phi.choi_matrix(), m.choi_matrix()), 1e-10);
}

TEST(Rewire, ChoiStateHasMaximallyMixedResponseMarginal) {
  CounterRng rng(85);
  const ProtocolSpec spec = testing::random_protocol({{0, 1}, {1, 1}}, {1, 1}, rng);
  const ChoiState c = rewired_choi(spec);
  // Registers [A, Q1, Q2, R1, R2] with widths 1, 0, 1, 1, 1.
  const std::vector<std::size_t> keep{3, 4};
  EXPECT_LT(max_abs_diff(partial_trace(c.matrix(), SubsystemShape({2, 1, 2, 2, 2}), keep), maximally_mixed(4)),
            1e-12);
  EXPECT_NEAR(max_acceptance_sdp(accept_projection(choi_of_channel(rewire_verifier(spec)), spec.shape)).value,
              exact_value(spec).value, 1e-6);
}

TEST(Rewire, EchoSdpOnRewiredChannelIsOne) {
  const ProtocolSpec spec = parse_protocol(text("protocols/echo.json"));
  const CoStrategyView v = accept_projection(choi_of_channel(rewire_verifier(spec)), spec.shape);
  EXPECT_NEAR(max_acceptance_sdp(v).value, 1.0, 1e-6);
}

TEST(ExactValue, NamedExamples) {
  EXPECT_NEAR(exact_value(parse_protocol(text("protocols/measure_only.json"))).value, 0.75, 1e-10);
  EXPECT_NEAR(exact_value(testing::measure_only_protocol(maximally_mixed(2))).value, 0.5, 1e-10);
  EXPECT_NEAR(exact_value(parse_protocol(text("protocols/basis_guess.json"))).value, kCos2PiOver8, 1e-6);
}

TEST(Seesaw, NamedGames) {
  EXPECT_NEAR(seesaw_lower_bound(parse_protocol(text("protocols/measure_only.json")), 1).value, 0.75, 1e-6);
  EXPECT_NEAR(seesaw_lower_bound(parse_protocol(text("protocols/echo.json")), 1).value, 1.0, 1e-6);
  EXPECT_NEAR(seesaw_lower_bound(parse_protocol(text("protocols/basis_guess.json")), 1).value, kCos2PiOver8, 1e-6);
}

TEST(Seesaw, CommitThenBasisDependsOnProverMemory) {
  const ProtocolSpec spec = parse_protocol(text("protocols/commit_basis.json"));
  SeesawConfig memoryless;
  memoryless.prover_memory = 0;
  EXPECT_NEAR(seesaw_lower_bound(spec, 2, memoryless).value, kCos2PiOver8, 1e-6);
  EXPECT_NEAR(seesaw_lower_bound(spec, 2).value, 1.0, 1e-6);
}

TEST(Seesaw, IsAchievableMonotoneAndBelowTheSdp) {
  CounterRng rng(86);
  for (int trial = 0; trial < 6; ++trial) {
    const bool two = trial % 2 == 1;
    const ProtocolSpec spec = two ? testing::random_protocol({{1, 1}, {1, 1}}, {1, 1}, rng)
                                  : testing::random_protocol({{1}, {1}}, {1}, rng);
    const SeesawResult s = seesaw_lower_bound(spec, 10 + trial);
    const double sdp = exact_value(spec).value;
    EXPECT_LE(s.value, sdp + 1e-6);
    for (std::size_t i = 1; i < s.history.size(); ++i) EXPECT_GE(s.history[i], s.history[i - 1] - 1e-12);
    EXPECT_NEAR(interact(spec, s.prover), s.value, 1e-8);
    if (!two) {
      EXPECT_NEAR(s.value, sdp, 1e-4);
    }
  }
}

}  // namespace
}  // namespace sqip
