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

#ifndef SQIP_REDUCTIONS_HPP_
#define SQIP_REDUCTIONS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "sqip/protocols.hpp"
#include "sqip/tomography.hpp"

namespace sqip {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational value of a finite double.
BigRational exact_rational(double x);
/// ceil(x) for x >= 0.
BigInt ceil_rational(const BigRational& x);
/// "p/q", or "p" when the denominator is 1.
std::string rational_string(const BigRational& x);
double rational_to_double(const BigRational& x);
double log2_of(const BigInt& x);

/// Parameters of the one-round QMA verifier, derived from the question width
/// q and the completeness/soundness gap g:
///   eps = g / 4^(q+1), delta = eps^2 / 4,
///   N = ceil(2^(10 q) / (delta/2)^3), m = ceil(2 N 4^q / eps).
struct ArthurParams {
  int q = 0;
  BigRational gap;
  BigRational eps;
  BigRational delta;
  BigInt n;
  BigInt m;
};

ArthurParams arthur_params(int q, double gap);

/// Desk-scale replacements; unset fields fall back to ArthurParams.
struct ArthurOverrides {
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> m;
};

/// Finite de Finetti bound N/(N+m) * 2^(k+1).
BigRational definetti_bound_exact(std::uint64_t n, std::uint64_t m, int k);
double definetti_bound(std::uint64_t n, std::uint64_t m, int k);

enum class Verdict { kAccept, kReject, kYes, kNo };
const char* verdict_name(Verdict v);

struct DecisionReport {
  std::string pipeline;
  Verdict verdict = Verdict::kNo;
  double estimate = 0.0;
  double threshold = 0.0;
  SampleMode mode = SampleMode::kExact;
  /// Resolved parameters: nominal exact values and the ones actually used.
  nlohmann::json parameters = nlohmann::json::object();
  /// Per-step records.
  nlohmann::json diagnostics = nlohmann::json::object();
};

nlohmann::json to_json(const DecisionReport& report);

/// Witness for the one-round QMA verifier: pairs (R_i, Q_i), each ordered
/// [R, Q]. Either i.i.d. copies of one pair state (stored factored, so the
/// copy count may be large) or one dense joint state over all pairs.
struct ArthurWitness {
  enum class Form { kProduct, kJoint };
  Form form = Form::kProduct;
  int r_qubits = 0;
  int q_qubits = 0;
  /// kProduct: state of one pair.
  ComplexMatrix pair_state;
  /// kProduct: number of copies (0 = as many as the parameters need).
  std::uint64_t copies = 0;
  /// kJoint: state over pairs ordered (R_1, Q_1, R_2, Q_2, ...).
  ComplexMatrix joint;
  std::size_t pairs = 0;

  /// Dense state over all pairs; product witnesses must fit the cap.
  DensityOperator dense(int max_qubits = 12) const;
};

/// copies of the normalized Choi state of a one-round prover, factored.
ArthurWitness honest_witness(const ProtocolSpec& v, const ProverSpec& prover,
                             std::uint64_t copies);

struct ArthurConfig {
  SampleMode mode = SampleMode::kExact;
  ArthurOverrides overrides;
  /// Independent executions in sampled mode.
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  /// Largest N executed in sampled mode.
  std::uint64_t max_shots = std::uint64_t{1} << 30;
};

/// Runs the one-round verifier: permute the pairs, keep the first N+1,
/// tomography of Q_2..Q_{N+1} against I/2^q at radius delta/2, then simulate
/// the protocol on (R_1, Q_1) by post-selection. Exact mode reports the
/// acceptance probability analytically (tomography replaced by its
/// expectation, permutation averaged); sampled mode reports the acceptance
/// rate over `trials`.
DecisionReport arthur_qma_verify(const ProtocolSpec& v, const ArthurWitness& witness,
                                 const ArthurConfig& config);

struct QiplogConfig {
  SampleMode mode = SampleMode::kExact;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  /// Sampled mode with the exact outcome frequencies (no sampling error).
  bool inject_exact = false;
  SdpConfig sdp;
};

/// Decides by the strategy SDP on the accept block of (an estimate of) the
/// rewired verifier's Choi state; yes iff the value reaches (a+b)/2.
DecisionReport qiplog_decide(const ProtocolSpec& v, const QiplogConfig& config);

/// 2^r * || (<1| (x) I) H (|1> (x) I) || for H on [A, R].
double qam_alpha(const ComplexMatrix& h, int r);

struct QamInstance {
  double weight = 1.0;
  /// Accepting element P_1 on the r response qubits.
  ComplexMatrix accept;
};

struct QamProblem {
  std::vector<QamInstance> instances;
  double completeness = 0.0;
  double soundness = 0.0;
  double gap = 0.0;

  int response_qubits() const;
  void validate() const;
};

struct QamConfig {
  SampleMode mode = SampleMode::kExact;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  /// Tomography shots per trial; unset uses sample_size(r+1, 1/(2^(r+3) p)).
  std::optional<std::uint64_t> shots;
  std::uint64_t max_shots = std::uint64_t{1} << 30;
};

DecisionReport qam_decide(const QamProblem& problem, const QamConfig& config);

}  // namespace sqip

#endif  // SQIP_REDUCTIONS_HPP_
