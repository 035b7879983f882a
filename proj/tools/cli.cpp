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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sqip/protocol_io.hpp"
#include "sqip/reductions.hpp"
#include "sqip/seesaw.hpp"

namespace sqip::cli {
namespace {

using nlohmann::json;

class Overrides {
 public:
  Overrides(const std::map<std::string, std::string>& values, std::vector<std::string> allowed,
            const std::string& command)
      : values_(values) {
    for (const auto& [k, v] : values_) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw ParseError("--override: '" + k + "' is not a parameter of '" + command + "'");
      }
    }
  }

  bool has(const std::string& k) const { return values_.count(k) != 0; }

  std::optional<double> number(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) return std::nullopt;
    // Accept plain decimals and p/q fractions.
    const std::string& s = it->second;
    try {
      std::size_t used = 0;
      if (auto slash = s.find('/'); slash != std::string::npos) {
        const double num = std::stod(s.substr(0, slash), &used);
        const double den = std::stod(s.substr(slash + 1));
        return num / den;
      }
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("--override: '" + k + "' expects a number, got '" + s + "'");
    }
  }

  std::optional<std::uint64_t> count(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) return std::nullopt;
    const std::string& s = it->second;
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("--override: '" + k + "' expects a nonnegative integer, got '" + s + "'");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError("--override: '" + k + "' is out of range");
    }
  }

  bool flag(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) return false;
    if (it->second == "1" || it->second == "true") return true;
    if (it->second == "0" || it->second == "false") return false;
    throw ParseError("--override: '" + k + "' expects true or false");
  }

 private:
  const std::map<std::string, std::string>& values_;
};

const char* mode_name(SampleMode m) { return m == SampleMode::kExact ? "exact" : "sampled"; }

ProtocolSpec load_protocol(const RunConfig& c) {
  if (c.protocol_path.empty()) throw ParseError("--protocol is required for '" + c.command + "'");
  return parse_protocol(read_text_file(c.protocol_path));
}

json run_value(const RunConfig& c) {
  const Overrides ov(c.overrides, {"force_sdp", "seesaw_iterations", "prover_memory", "max_dimension"},
                     "value");
  const ProtocolSpec spec = load_protocol(c);
  SdpConfig sdp;
  if (auto d = ov.count("max_dimension")) sdp.max_dimension = *d;
  const ExactValue v = exact_value(spec, ov.flag("force_sdp"), sdp);
  json out = {{"value", v.value},
              {"method", value_method_name(v.method)},
              {"sdp_gap", v.gap},
              {"sdp_iterations", v.iterations},
              {"rounds", spec.rounds()},
              {"q", spec.shape.q},
              {"r", spec.shape.r}};
  if (auto it = ov.count("seesaw_iterations")) {
    SeesawConfig sc;
    sc.iterations = static_cast<int>(*it);
    if (auto m = ov.count("prover_memory")) sc.prover_memory = static_cast<int>(*m);
    const SeesawResult s = seesaw_lower_bound(spec, c.seed, sc);
    out["seesaw"] = {{"value", s.value}, {"history", s.history}, {"prover_memory", sc.prover_memory}};
  }
  return out;
}

json run_simulate(const RunConfig& c) {
  const Overrides ov(c.overrides, {}, "simulate");
  const ProtocolSpec spec = load_protocol(c);
  if (c.prover_path.empty()) throw ParseError("--prover is required for 'simulate'");
  const ProverSpec prover = parse_prover(read_text_file(c.prover_path));
  return {{"acceptance_probability", interact(spec, prover)}};
}

json run_tomo(const RunConfig& c) {
  const Overrides ov(c.overrides, {"eps", "project_positive"}, "tomo");
  ComplexMatrix rho;
  std::string source;
  if (!c.state_path.empty()) {
    rho = parse_state(read_text_file(c.state_path));
    source = "state";
  } else {
    rho = rewired_choi(load_protocol(c)).matrix();
    source = "rewired_choi";
  }
  const int k = qubit_count(static_cast<std::size_t>(rho.rows()));
  const Frame frame = canonical_frame(k);
  const double eps = ov.number("eps").value_or(0.5);
  const std::uint64_t shots = c.shots.value_or(sample_size(k, eps));
  const OutcomeDistribution exact = measure_exact(rho, frame);
  const OutcomeDistribution dist = c.mode == SampleMode::kExact
                                       ? exact
                                       : measure_sampled(rho, frame, shots, CounterRng(c.seed, 0x70));
  ReconstructOptions opts;
  opts.project_positive = ov.flag("project_positive");
  const ComplexMatrix h = reconstruct(dist, frame, opts);
  const double freq = l1_distance(dist.weights, exact.weights);
  const double err = trace_norm(h - rho);
  const double bound = canonical_dual_trace_norm(k) * freq;
  return {{"source", source},
          {"qubits", k},
          {"shots", c.mode == SampleMode::kExact ? 0 : shots},
          {"sample_size_for_eps", {{"eps", eps}, {"N", sample_size(k, eps)}}},
          {"frequency_l1", freq},
          {"reconstruction_error", err},
          {"error_bound", bound},
          {"bound_holds", opts.project_positive || err <= bound + 1e-9},
          {"estimate", matrix_to_json(h)}};
}

json run_reduce(const RunConfig& c) {
  if (c.pipeline == "qma") {
    const Overrides ov(c.overrides, {"eps", "delta", "N", "m", "trials", "copies"}, "reduce qma");
    const ProtocolSpec spec = load_protocol(c);
    ArthurWitness w;
    if (!c.witness_path.empty()) {
      w = parse_witness(read_text_file(c.witness_path));
    } else if (!c.prover_path.empty()) {
      w = honest_witness(spec, parse_prover(read_text_file(c.prover_path)), ov.count("copies").value_or(0));
    } else {
      throw ParseError("reduce qma needs --witness or --prover");
    }
    ArthurConfig ac;
    ac.mode = c.mode;
    ac.seed = c.seed;
    ac.overrides.eps = ov.number("eps");
    ac.overrides.delta = ov.number("delta");
    ac.overrides.n = ov.count("N");
    ac.overrides.m = ov.count("m");
    ac.trials = ov.count("trials").value_or(ac.trials);
    return to_json(arthur_qma_verify(spec, w, ac));
  }
  if (c.pipeline == "qiplog") {
    const Overrides ov(c.overrides, {"inject_exact"}, "reduce qiplog");
    QiplogConfig qc;
    qc.mode = c.mode;
    qc.seed = c.seed;
    qc.shots = c.shots.value_or(qc.shots);
    qc.inject_exact = ov.flag("inject_exact");
    return to_json(qiplog_decide(load_protocol(c), qc));
  }
  if (c.pipeline == "qam") {
    const Overrides ov(c.overrides, {"trials"}, "reduce qam");
    if (c.protocol_path.empty()) throw ParseError("--protocol is required for 'reduce qam'");
    const QamProblem problem = parse_qam(read_text_file(c.protocol_path));
    QamConfig qc;
    qc.mode = c.mode;
    qc.seed = c.seed;
    qc.shots = c.shots;
    qc.trials = ov.count("trials").value_or(qc.trials);
    return to_json(qam_decide(problem, qc));
  }
  throw ParseError("reduce: pipeline must be qma, qiplog or qam, got '" + c.pipeline + "'");
}

json big_json(const BigInt& x) { return {{"exact", x.str()}, {"log2", log2_of(x)}}; }

json run_params(const RunConfig& c) {
  const Overrides ov(c.overrides, {"q", "gap", "N", "m", "k"}, "params");
  const int q = static_cast<int>(ov.count("q").value_or(1));
  const double gap = ov.number("gap").value_or(0.25);
  const ArthurParams p = arthur_params(q, gap);
  json out;
  out["arthur"] = {{"q", q},
                   {"gap", rational_string(p.gap)},
                   {"eps", rational_string(p.eps)},
                   {"delta", rational_string(p.delta)},
                   {"N", big_json(p.n)},
                   {"m", big_json(p.m)}};
  // Tomography sample sizes ceil(2^(10k) / eps^3), exact.
  json table = json::array();
  for (int k = 1; k <= kMaxFrameArity; ++k) {
    for (const char* e : {"1/2", "1/4", "1/10", "1/100"}) {
      const BigRational eps(e);
      const BigInt n = ceil_rational(BigRational(BigInt(1) << (10 * k)) / (eps * eps * eps));
      table.push_back({{"k", k}, {"eps", e}, {"N", big_json(n)}});
    }
  }
  out["sample_size"] = table;
  if (ov.has("N") || ov.has("m") || ov.has("k")) {
    const std::uint64_t n = ov.count("N").value_or(1);
    const std::uint64_t m = ov.count("m").value_or(1);
    const int k = static_cast<int>(ov.count("k").value_or(1));
    const BigRational b = definetti_bound_exact(n, m, k);
    out["definetti_bound"] = {{"N", n}, {"m", m}, {"k", k}, {"exact", rational_string(b)},
                              {"value", rational_to_double(b)}};
  }
  return out;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return kParseFailure;
    case ErrorKind::kSolver:
      return kSolverFailure;
    case ErrorKind::kCapExceeded:
      return kCapExceeded;
    default:
      return kInvariantFailure;
  }
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArgument:
      return "argument";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kInvariant:
      return "invariant";
    case ErrorKind::kSolver:
      return "solver";
    case ErrorKind::kCapExceeded:
      return "cap_exceeded";
  }
  return "unknown";
}

void render(const json& j, const std::string& indent, std::ostringstream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      os << indent << it.key() << ":\n";
      render(*it, indent + "  ", os);
    } else {
      os << indent << it.key() << ": " << it->dump() << "\n";
    }
  }
}

}  // namespace

std::map<std::string, std::string> parse_overrides(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw ParseError("--override: expected k=v, got '" + item + "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

RunResult run(const RunConfig& c) {
  RunResult res;
  json report = {{"command", c.command}, {"seed", c.seed}, {"mode", mode_name(c.mode)}};
  if (!c.pipeline.empty()) report["pipeline"] = c.pipeline;
  json inputs = json::object();
  if (!c.protocol_path.empty()) inputs["protocol"] = c.protocol_path;
  if (!c.prover_path.empty()) inputs["prover"] = c.prover_path;
  if (!c.witness_path.empty()) inputs["witness"] = c.witness_path;
  if (!c.state_path.empty()) inputs["state"] = c.state_path;
  report["inputs"] = inputs;
  report["shots"] = c.shots ? json(*c.shots) : json(nullptr);
  report["overrides"] = c.overrides;
  try {
    json result;
    if (c.command == "value") {
      result = run_value(c);
    } else if (c.command == "simulate") {
      result = run_simulate(c);
    } else if (c.command == "tomo") {
      result = run_tomo(c);
    } else if (c.command == "reduce") {
      result = run_reduce(c);
    } else if (c.command == "params") {
      result = run_params(c);
    } else {
      throw ParseError("unknown command '" + c.command + "'");
    }
    report["result"] = std::move(result);
    res.exit_code = kOk;
  } catch (const Error& e) {
    report["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    res.exit_code = exit_code_for(e.kind());
  }
  res.report = std::move(report);
  return res;
}

std::string render_human(const json& report) {
  std::ostringstream os;
  render(report, "", os);
  return os.str();
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Short-message quantum interactive proof toolkit"};
  app.require_subcommand(1);
  RunConfig config;
  std::string mode = "exact";
  std::string overrides;
  std::string out_path;
  std::uint64_t shots = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--protocol", config.protocol_path, "Protocol file");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
    sub->add_option("--shots", shots, "Sample count");
    sub->add_option("--override", overrides, "Parameter overrides k=v,...");
    sub->add_option("--out", out_path, "Write the report to a file");
    sub->add_flag("--human", config.human, "Human-readable rendering");
  };
  auto* value = app.add_subcommand("value", "Maximum acceptance probability");
  common(value);
  auto* simulate = app.add_subcommand("simulate", "Acceptance probability against a prover");
  common(simulate);
  simulate->add_option("--prover", config.prover_path, "Prover file");
  auto* tomo = app.add_subcommand("tomo", "Tomography of a state or rewired Choi state");
  common(tomo);
  tomo->add_option("--state", config.state_path, "State file");
  auto* reduce = app.add_subcommand("reduce", "Run a decision pipeline");
  common(reduce);
  reduce->add_option("pipeline", config.pipeline, "qma | qiplog | qam")->required();
  reduce->add_option("--prover", config.prover_path, "Prover file (honest witness)");
  reduce->add_option("--witness", config.witness_path, "Witness file");
  auto* params = app.add_subcommand("params", "Parameter calculators");
  common(params);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParseFailure;
  }
  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  config.mode = mode == "sampled" ? SampleMode::kSampled : SampleMode::kExact;
  if (shots > 0) config.shots = shots;
  if (!out_path.empty()) config.output_path = out_path;

  RunResult res;
  try {
    config.overrides = parse_overrides(overrides);
    res = run(config);
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.kind());
    res.report = {{"command", config.command},
                  {"seed", config.seed},
                  {"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
  }
  const std::string text = config.human ? render_human(res.report) : res.report.dump(2) + "\n";
  out << text;
  if (res.report.contains("error")) err << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << *config.output_path << "'\n";
      return kParseFailure;
    }
    f << text;
  }
  return res.exit_code;
}

}  // namespace sqip::cli
