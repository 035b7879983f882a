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

#include "sqip/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "sqip/random.hpp"

namespace sqip {
namespace {

using nlohmann::json;

BigInt pow2(unsigned e) { return BigInt(1) << e; }

json rational_json(const BigRational& x) {
  return {{"exact", rational_string(x)}, {"value", rational_to_double(x)}};
}

json integer_json(const BigInt& x) {
  return {{"exact", x.str()}, {"log2", log2_of(x)}};
}

// Outcome 1 of the acceptance qubit after V_t.
double accept_probability(const QuantumChannel& last, const ComplexMatrix& input) {
  const ComplexMatrix out = last.apply(input);
  return std::clamp(out(1, 1).real(), 0.0, 1.0);
}

struct OneRound {
  int q = 0;
  int r = 0;
  int vmem = 0;
  ComplexMatrix question;  // V_0 output on [Q, vm]
  const QuantumChannel* last = nullptr;
};

OneRound one_round(const ProtocolSpec& v) {
  if (v.rounds() != 1) throw ArgumentError("expected a one-round protocol, got t = " +
                                           std::to_string(v.rounds()));
  OneRound o;
  o.q = v.shape.q[0];
  o.r = v.shape.r[0];
  o.vmem = v.memory[0];
  const ComplexMatrix out0 = v.verifier[0].apply(ComplexMatrix::Ones(1, 1));
  const std::vector<int> qubits{o.vmem, o.q};
  const std::vector<std::size_t> perm{1, 0};
  o.question = permute_subsystems(out0, SubsystemShape::FromQubits(qubits), perm);
  o.last = &v.verifier[1];
  return o;
}

struct PostselectOutcome {
  double success = 0.0;
  double accept = 0.0;  // conditioned on success
};

// Post-selected simulation on a pair state ordered [R, Q].
PostselectOutcome simulate_pair(const OneRound& o, const ComplexMatrix& pair) {
  const PostselectResult ps = bell_postselect(pair, o.q, o.question);
  PostselectOutcome out;
  out.success = ps.success_probability;
  if (out.success <= 0.0) return out;
  const std::vector<int> qubits{o.r, o.vmem};
  const std::vector<std::size_t> perm{1, 0};
  const ComplexMatrix in = permute_subsystems(ps.conditional, SubsystemShape::FromQubits(qubits), perm);
  out.accept = accept_probability(*o.last, in);
  return out;
}

ComplexMatrix question_marginal(const ComplexMatrix& pair, int r, int q) {
  const std::vector<int> qubits{r, q};
  const std::vector<std::size_t> keep{1};
  return partial_trace(pair, SubsystemShape::FromQubits(qubits), keep);
}

double distance_to_mixed(const ComplexMatrix& h) {
  return trace_norm(h - maximally_mixed(static_cast<std::size_t>(h.rows())));
}

// Frame statistics of Q marginal weighted by P_a; then collapse: returns
// Tr_last[(I (x) P_a) rho] for the register at the end.
ComplexMatrix measure_last(const ComplexMatrix& rho, std::size_t dq, const ComplexMatrix& p) {
  const std::size_t rest = static_cast<std::size_t>(rho.rows()) / dq;
  ComplexMatrix out = ComplexMatrix::Zero(rest, rest);
  for (std::size_t i = 0; i < rest; ++i) {
    for (std::size_t j = 0; j < rest; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < dq; ++k) {
        for (std::size_t l = 0; l < dq; ++l) s += p(l, k) * rho(i * dq + k, j * dq + l);
      }
      out(i, j) = s;
    }
  }
  return out;
}

bool bernoulli(CounterRng& rng, double p) { return rng.uniform() < std::clamp(p, 0.0, 1.0); }

std::vector<std::size_t> random_permutation(std::size_t n, CounterRng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  return perm;
}

}  // namespace

BigRational exact_rational(double x) {
  if (!std::isfinite(x)) throw ArgumentError("exact_rational: value is not finite");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  BigRational r{BigInt(scaled)};
  exp -= 53;
  if (exp >= 0) {
    r *= BigRational(pow2(static_cast<unsigned>(exp)));
  } else {
    r /= BigRational(pow2(static_cast<unsigned>(-exp)));
  }
  return r;
}

BigInt ceil_rational(const BigRational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q;
}

std::string rational_string(const BigRational& x) {
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

double rational_to_double(const BigRational& x) { return x.convert_to<double>(); }

double log2_of(const BigInt& x) {
  if (x <= 0) return -INFINITY;
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits < 60) return std::log2(x.convert_to<double>());
  const BigInt top = x >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

ArthurParams arthur_params(int q, double gap) {
  if (q < 0) throw ArgumentError("arthur_params: q must be nonnegative");
  if (!(gap > 0.0 && gap < 1.0)) throw ArgumentError("arthur_params: gap must lie in (0, 1)");
  ArthurParams p;
  p.q = q;
  p.gap = exact_rational(gap);
  const BigRational four_q(pow2(2 * static_cast<unsigned>(q)));
  p.eps = p.gap / (four_q * 4);
  p.delta = p.eps * p.eps / 4;
  const BigRational half_delta = p.delta / 2;
  p.n = ceil_rational(BigRational(pow2(10 * static_cast<unsigned>(q))) /
                      (half_delta * half_delta * half_delta));
  p.m = ceil_rational(BigRational(p.n) * 2 * four_q / p.eps);
  return p;
}

BigRational definetti_bound_exact(std::uint64_t n, std::uint64_t m, int k) {
  if (n < 1 || m < 1 || k < 1) throw ArgumentError("definetti_bound: need N, m, k >= 1");
  return BigRational(BigInt(n), BigInt(n) + BigInt(m)) *
         BigRational(pow2(static_cast<unsigned>(k) + 1));
}

double definetti_bound(std::uint64_t n, std::uint64_t m, int k) {
  return rational_to_double(definetti_bound_exact(n, m, k));
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAccept:
      return "accept";
    case Verdict::kReject:
      return "reject";
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
  }
  return "?";
}

json to_json(const DecisionReport& r) {
  return {{"pipeline", r.pipeline},
          {"verdict", verdict_name(r.verdict)},
          {"estimate", r.estimate},
          {"threshold", r.threshold},
          {"mode", r.mode == SampleMode::kExact ? "exact" : "sampled"},
          {"parameters", r.parameters},
          {"diagnostics", r.diagnostics}};
}

DensityOperator ArthurWitness::dense(int max_qubits) const {
  const int pair_qubits = r_qubits + q_qubits;
  if (form == Form::kJoint) return DensityOperator(joint, 1e-8);
  if (copies == 0) throw ArgumentError("ArthurWitness: product witness has no copy count");
  if (static_cast<std::uint64_t>(pair_qubits) * copies > static_cast<std::uint64_t>(max_qubits)) {
    throw CapExceededError("ArthurWitness: " + std::to_string(copies) + " copies of " +
                           std::to_string(pair_qubits) + " qubits exceed the dense cap of " +
                           std::to_string(max_qubits));
  }
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (std::uint64_t i = 0; i < copies; ++i) out = tensor(out, pair_state);
  return DensityOperator(out, 1e-8);
}

ArthurWitness honest_witness(const ProtocolSpec& v, const ProverSpec& prover,
                             std::uint64_t copies) {
  const OneRound o = one_round(v);
  prover.validate_against(v.shape);
  const QuantumChannel& p = prover.channels[0];
  const int mem = p.out_qubits() - o.r;
  const ChoiState choi = choi_of_channel(p);
  const std::vector<int> qubits{o.r, mem, o.q};
  const std::vector<std::size_t> keep{0, 2};
  ArthurWitness w;
  w.form = ArthurWitness::Form::kProduct;
  w.r_qubits = o.r;
  w.q_qubits = o.q;
  w.copies = copies;
  w.pair_state = hermitian_part(partial_trace(choi.matrix(), SubsystemShape::FromQubits(qubits), keep));
  return w;
}

DecisionReport arthur_qma_verify(const ProtocolSpec& v, const ArthurWitness& witness,
                                 const ArthurConfig& config) {
  v.validate();
  const OneRound o = one_round(v);
  if (witness.r_qubits != o.r || witness.q_qubits != o.q) {
    throw ArgumentError("arthur_qma_verify: witness pairs have (r, q) = (" +
                        std::to_string(witness.r_qubits) + ", " + std::to_string(witness.q_qubits) +
                        "), protocol expects (" + std::to_string(o.r) + ", " +
                        std::to_string(o.q) + ")");
  }
  const ArthurParams nominal = arthur_params(o.q, v.gap);
  const auto& ov = config.overrides;
  const double eps = ov.eps.value_or(rational_to_double(nominal.eps));
  const double delta = ov.delta ? *ov.delta : (ov.eps ? eps * eps / 4.0 : rational_to_double(nominal.delta));
  const bool n_fits = nominal.n <= BigInt(config.max_shots);
  const bool m_fits = nominal.m <= BigInt(std::numeric_limits<std::uint64_t>::max() / 2);
  std::optional<std::uint64_t> n = ov.n;
  if (!n && n_fits) n = nominal.n.convert_to<std::uint64_t>();
  std::optional<std::uint64_t> m = ov.m;
  if (!m && m_fits) m = nominal.m.convert_to<std::uint64_t>();

  const double four_q = std::ldexp(1.0, 2 * o.q);
  DecisionReport rep;
  rep.pipeline = "qma";
  rep.mode = config.mode;
  rep.threshold = 0.5 * ((v.completeness / four_q - eps) + (v.soundness / four_q + 2.0 * eps));
  json used = {{"eps", eps}, {"delta", delta}, {"radius", delta / 2.0}};
  used["N"] = n ? json(*n) : json(nominal.n.str());
  used["m"] = m ? json(*m) : json(nominal.m.str());
  json overridden = json::array();
  if (ov.eps) overridden.push_back("eps");
  if (ov.delta) overridden.push_back("delta");
  if (ov.n) overridden.push_back("N");
  if (ov.m) overridden.push_back("m");
  used["overridden"] = overridden;
  rep.parameters = {{"nominal", {{"q", o.q},
                               {"gap", rational_json(nominal.gap)},
                               {"eps", rational_json(nominal.eps)},
                               {"delta", rational_json(nominal.delta)},
                               {"N", integer_json(nominal.n)},
                               {"m", integer_json(nominal.m)}}},
                    {"used", used},
                    {"a", v.completeness},
                    {"b", v.soundness},
                    {"seed", config.seed},
                    {"trials", config.trials}};

  // Pair bookkeeping: N + m pairs in, the first N + 1 kept (m = 0 means no
  // discards, so the witness then carries N + 1 pairs).
  const double radius = delta / 2.0;
  auto pairs_needed = [&]() -> std::uint64_t {
    if (!n) {
      throw CapExceededError("arthur_qma_verify: N = 2^" + std::to_string(log2_of(nominal.n)) +
                             " is not executable; override N");
    }
    return *n + std::max<std::uint64_t>(m.value_or(1), 1);
  };

  if (witness.form == ArthurWitness::Form::kProduct) {
    if (witness.copies != 0 && n && witness.copies < *n + 1) {
      throw ArgumentError("arthur_qma_verify: witness has " + std::to_string(witness.copies) +
                          " pairs, need at least N + 1 = " + std::to_string(*n + 1));
    }
    const ComplexMatrix h_exact = question_marginal(witness.pair_state, o.r, o.q);
    const PostselectOutcome ps = simulate_pair(o, witness.pair_state);
    if (config.mode == SampleMode::kExact) {
      const double dist = distance_to_mixed(h_exact);
      const bool pass = o.q == 0 || dist <= radius;
      rep.estimate = pass ? ps.success * ps.accept : 0.0;
      rep.diagnostics = {{"tomography_distance", dist},
                         {"step3_pass", pass},
                         {"postselect_success", ps.success},
                         {"conditional_accept", ps.accept},
                         {"acceptance_probability", rep.estimate}};
    } else {
      const std::uint64_t shots = pairs_needed() - std::max<std::uint64_t>(m.value_or(1), 1);
      std::uint64_t rejected3 = 0, failed4 = 0, accepted = 0;
      double max_dist = 0.0;
      std::optional<Frame> frame;
      OutcomeDistribution exact_q;
      if (o.q > 0) {
        frame = canonical_frame(o.q);
        exact_q = measure_exact(h_exact, *frame);
      }
      const CounterRng root(config.seed, 0xa27);
      for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        CounterRng rng = root.split(trial);
        if (o.q > 0) {
          const OutcomeDistribution d = measure_sampled(h_exact, *frame, shots, rng.split(1));
          const double dist = distance_to_mixed(reconstruct(d, *frame));
          max_dist = std::max(max_dist, dist);
          if (dist > radius) {
            ++rejected3;
            continue;
          }
        }
        if (!bernoulli(rng, ps.success)) {
          ++failed4;
          continue;
        }
        if (bernoulli(rng, ps.accept)) ++accepted;
      }
      rep.estimate = config.trials ? static_cast<double>(accepted) / static_cast<double>(config.trials) : 0.0;
      rep.diagnostics = {{"trials", config.trials},
                         {"tomography_shots", shots},
                         {"step3_rejections", rejected3},
                         {"postselect_failures", failed4},
                         {"accepts", accepted},
                         {"max_tomography_distance", max_dist},
                         {"analytic_postselect_success", ps.success},
                         {"analytic_conditional_accept", ps.accept},
                         {"permutation", "exchangeable product witness"}};
    }
  } else {
    const std::size_t pairs = witness.pairs;
    const std::uint64_t nn = pairs_needed() - std::max<std::uint64_t>(m.value_or(1), 1);
    if (pairs < nn + 1) {
      throw ArgumentError("arthur_qma_verify: joint witness has " + std::to_string(pairs) +
                          " pairs, need at least N + 1 = " + std::to_string(nn + 1));
    }
    std::vector<int> qubits;
    for (std::size_t i = 0; i < pairs; ++i) {
      qubits.push_back(o.r);
      qubits.push_back(o.q);
    }
    const SubsystemShape shape = SubsystemShape::FromQubits(qubits);
    if (config.mode == SampleMode::kExact) {
      // Expectation over permutations: the kept pair is a uniform pair and the
      // expected tomography estimate is the average question marginal.
      ComplexMatrix avg_pair = ComplexMatrix::Zero(std::size_t{1} << (o.r + o.q), std::size_t{1} << (o.r + o.q));
      ComplexMatrix avg_q = ComplexMatrix::Zero(std::size_t{1} << o.q, std::size_t{1} << o.q);
      for (std::size_t i = 0; i < pairs; ++i) {
        const std::vector<std::size_t> keep{2 * i, 2 * i + 1};
        const ComplexMatrix pi = partial_trace(witness.joint, shape, keep);
        avg_pair += pi / static_cast<double>(pairs);
        avg_q += question_marginal(pi, o.r, o.q) / static_cast<double>(pairs);
      }
      const double dist = distance_to_mixed(avg_q);
      const bool pass = o.q == 0 || dist <= radius;
      const PostselectOutcome ps = simulate_pair(o, hermitian_part(avg_pair));
      rep.estimate = pass ? ps.success * ps.accept : 0.0;
      rep.diagnostics = {{"tomography_distance", dist},
                         {"step3_pass", pass},
                         {"postselect_success", ps.success},
                         {"conditional_accept", ps.accept},
                         {"acceptance_probability", rep.estimate}};
    } else {
      std::optional<Frame> frame;
      if (o.q > 0) frame = canonical_frame(o.q);
      const std::size_t dq = std::size_t{1} << o.q;
      std::uint64_t rejected3 = 0, failed4 = 0, accepted = 0;
      const CounterRng root(config.seed, 0xa27);
      for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        CounterRng rng = root.split(trial);
        const std::vector<std::size_t> order = random_permutation(pairs, rng);
        // Keep (R_1, Q_1) and Q_2..Q_{N+1} of the permuted pairs.
        std::vector<std::size_t> perm;
        for (std::size_t i = 0; i < pairs; ++i) {
          perm.push_back(2 * order[i]);
          perm.push_back(2 * order[i] + 1);
        }
        const ComplexMatrix permuted = permute_subsystems(witness.joint, shape, perm);
        std::vector<std::size_t> keep{0, 1};
        for (std::size_t i = 1; i <= nn; ++i) keep.push_back(2 * i + 1);
        ComplexMatrix state = partial_trace(permuted, shape, keep);
        std::vector<double> counts(frame ? frame->outcome_count() : 0, 0.0);
        for (std::size_t i = 0; i < nn && frame; ++i) {
          std::vector<ComplexMatrix> branches;
          std::vector<double> probs;
          for (const auto& pa : frame->p()) {
            branches.push_back(measure_last(state, dq, pa));
            probs.push_back(std::max(0.0, branches.back().trace().real()));
          }
          double u = rng.uniform() * std::accumulate(probs.begin(), probs.end(), 0.0);
          std::size_t a = 0;
          while (a + 1 < probs.size() && u >= probs[a]) u -= probs[a++];
          counts[a] += 1.0;
          state = branches[a] / probs[a];
        }
        if (frame) {
          OutcomeDistribution d;
          d.mode = SampleMode::kSampled;
          d.shots = nn;
          for (double c : counts) d.weights.push_back(c / static_cast<double>(nn));
          if (distance_to_mixed(reconstruct(d, *frame)) > radius) {
            ++rejected3;
            continue;
          }
        }
        const PostselectOutcome ps = simulate_pair(o, hermitian_part(state));
        if (!bernoulli(rng, ps.success)) {
          ++failed4;
          continue;
        }
        if (bernoulli(rng, ps.accept)) ++accepted;
      }
      rep.estimate = config.trials ? static_cast<double>(accepted) / static_cast<double>(config.trials) : 0.0;
      rep.diagnostics = {{"trials", config.trials},
                         {"tomography_shots", nn},
                         {"step3_rejections", rejected3},
                         {"postselect_failures", failed4},
                         {"accepts", accepted}};
    }
  }
  rep.verdict = rep.estimate >= rep.threshold ? Verdict::kAccept : Verdict::kReject;
  return rep;
}

DecisionReport qiplog_decide(const ProtocolSpec& v, const QiplogConfig& config) {
  v.validate();
  const ChoiState choi = rewired_choi(v);
  const ComplexMatrix& rho = choi.matrix();
  const int total_q = v.shape.total_q();
  const int total_r = v.shape.total_r();
  const int n = 1 + total_q + total_r;

  DecisionReport rep;
  rep.pipeline = "qiplog";
  rep.mode = config.mode;
  rep.threshold = 0.5 * (v.completeness + v.soundness);

  const BigRational gap = exact_rational(v.gap);
  const BigRational eps = gap / BigRational(pow2(2 * static_cast<unsigned>(v.rounds() + 1)));
  const BigInt nominal_shots = ceil_rational(BigRational(pow2(10 * static_cast<unsigned>(n))) / (eps * eps * eps));
  rep.parameters = {{"nominal", {{"eps", rational_json(eps)}, {"shots", integer_json(nominal_shots)}}},
                    {"used", {{"shots", config.mode == SampleMode::kExact ? 0 : config.shots},
                              {"inject_exact", config.inject_exact}}},
                    {"a", v.completeness},
                    {"b", v.soundness},
                    {"seed", config.seed},
                    {"choi_qubits", n}};

  const SdpResult exact = max_acceptance_sdp(accept_projection(choi, v.shape), config.sdp);
  if (config.mode == SampleMode::kExact) {
    rep.estimate = exact.value;
    rep.diagnostics = {{"sdp_gap", exact.gap}, {"sdp_iterations", exact.iterations},
                       {"error_bound", 0.0}};
  } else {
    const Frame frame = canonical_frame(n);
    const OutcomeDistribution d = config.inject_exact
                                      ? measure_exact(rho, frame)
                                      : measure_sampled(rho, frame, config.shots, CounterRng(config.seed, 0x91));
    const ComplexMatrix h = hermitian_part(reconstruct(d, frame));
    const SdpResult est = max_acceptance_sdp(accept_projection(h, v.shape), config.sdp);
    const double tomo_error = trace_norm(rho - h);
    rep.estimate = est.value;
    rep.diagnostics = {{"sdp_gap", est.gap},
                       {"sdp_iterations", est.iterations},
                       {"tomography_error", tomo_error},
                       {"error_bound", std::ldexp(1.0, total_q + total_r) * tomo_error},
                       {"exact_value", exact.value},
                       {"actual_difference", std::abs(est.value - exact.value)}};
  }
  rep.verdict = rep.estimate >= rep.threshold ? Verdict::kYes : Verdict::kNo;
  return rep;
}

double qam_alpha(const ComplexMatrix& h, int r) {
  const Eigen::Index d = Eigen::Index{1} << r;
  if (h.rows() != 2 * d || h.cols() != 2 * d) {
    throw ArgumentError("qam_alpha: expected an operator on 1 + " + std::to_string(r) + " qubits");
  }
  return std::ldexp(1.0, r) * spectral_norm(h.bottomRightCorner(d, d));
}

int QamProblem::response_qubits() const {
  if (instances.empty()) return 0;
  return qubit_count(static_cast<std::size_t>(instances.front().accept.rows()));
}

void QamProblem::validate() const {
  if (instances.empty()) throw InvariantError("instances: empty family");
  const auto d = instances.front().accept.rows();
  double total = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string path = "instances[" + std::to_string(i) + "]";
    const auto& in = instances[i];
    if (in.accept.rows() != d || in.accept.cols() != d) {
      throw InvariantError(path + ".accept: all instances must share one response space");
    }
    if (!(in.weight >= 0.0)) throw InvariantError(path + ".weight: must be nonnegative");
    total += in.weight;
    try {
      measurement_channel(identity(static_cast<std::size_t>(d)) - in.accept, in.accept, 1e-8);
    } catch (const Error& e) {
      throw InvariantError(path + ".accept: " + e.what());
    }
  }
  if (!(total > 0.0)) throw InvariantError("instances: weights sum to zero");
  auto in_open_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_open_unit(completeness)) throw InvariantError("a: must lie in (0, 1)");
  if (!in_open_unit(soundness)) throw InvariantError("b: must lie in (0, 1)");
  if (!(gap > 0.0)) throw InvariantError("gap: must be positive");
  if (completeness - soundness < gap - 1e-12) {
    throw InvariantError("a/b: threshold gap a - b is smaller than the required gap");
  }
}

DecisionReport qam_decide(const QamProblem& problem, const QamConfig& config) {
  problem.validate();
  const int r = problem.response_qubits();
  const std::size_t d = std::size_t{1} << r;
  const std::size_t count = problem.instances.size();

  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& in : problem.instances) cumulative.push_back(total += in.weight);

  std::vector<ComplexMatrix> choi;
  std::vector<double> alpha_exact;
  double expected_norm = 0.0;
  for (const auto& in : problem.instances) {
    const QuantumChannel ch = measurement_channel(identity(d) - in.accept, in.accept, 1e-8);
    choi.push_back(choi_of_channel(ch).matrix());
    alpha_exact.push_back(qam_alpha(choi.back(), r));
    expected_norm += in.weight / total * spectral_norm(in.accept);
  }

  DecisionReport rep;
  rep.pipeline = "qam";
  rep.mode = config.mode;
  rep.threshold = 0.5 * (problem.completeness + problem.soundness);

  const BigRational eps = exact_rational(problem.gap) / BigRational(pow2(static_cast<unsigned>(r) + 3));
  const BigInt nominal_shots =
      ceil_rational(BigRational(pow2(10 * static_cast<unsigned>(r + 1))) / (eps * eps * eps));
  std::uint64_t shots = 0;
  if (config.mode == SampleMode::kSampled) {
    if (config.shots) {
      shots = *config.shots;
    } else if (nominal_shots <= BigInt(config.max_shots)) {
      shots = nominal_shots.convert_to<std::uint64_t>();
    } else {
      throw CapExceededError("qam_decide: tomography needs 2^" + std::to_string(log2_of(nominal_shots)) +
                             " shots per trial; override the shot count");
    }
  }
  rep.parameters = {{"nominal", {{"eps", rational_json(eps)}, {"shots", integer_json(nominal_shots)}}},
                    {"used", {{"shots", shots}, {"overridden", config.shots.has_value()}}},
                    {"a", problem.completeness},
                    {"b", problem.soundness},
                    {"seed", config.seed},
                    {"trials", config.trials},
                    {"response_qubits", r}};

  std::optional<Frame> frame;
  if (config.mode == SampleMode::kSampled) frame = canonical_frame(r + 1);
  std::vector<std::uint64_t> drawn(count, 0);
  std::uint64_t accepted = 0;
  double alpha_sum = 0.0;
  const CounterRng root(config.seed, 0x9a3);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    CounterRng rng = root.split(trial);
    const double u = rng.uniform() * total;
    std::size_t y = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    y = std::min(y, count - 1);
    ++drawn[y];
    double alpha = alpha_exact[y];
    if (frame) {
      const OutcomeDistribution dist = measure_sampled(choi[y], *frame, shots, rng.split(1));
      alpha = qam_alpha(reconstruct(dist, *frame), r);
    }
    alpha_sum += alpha;
    if (alpha >= 1.0 || bernoulli(rng, alpha)) ++accepted;
  }
  const double trials = static_cast<double>(std::max<std::uint64_t>(config.trials, 1));
  rep.estimate = static_cast<double>(accepted) / trials;
  rep.diagnostics = {{"trials", config.trials},
                     {"accepts", accepted},
                     {"draws", drawn},
                     {"alpha_exact", alpha_exact},
                     {"mean_alpha", alpha_sum / trials},
                     {"expected_norm", expected_norm}};
  rep.verdict = rep.estimate >= rep.threshold ? Verdict::kYes : Verdict::kNo;
  return rep;
}

}  // namespace sqip
