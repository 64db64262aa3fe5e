// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qclone/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "qclone/circuit.hpp"
#include "qclone/config.hpp"
#include "qclone/errors.hpp"
#include "qclone/robustness.hpp"
#include "qclone/sim.hpp"
#include "qclone/synthesis.hpp"

namespace qclone {

namespace {

constexpr std::size_t kDefaultTrials = 10000;

Json num(double x) {
  if (!std::isfinite(x)) throw InvariantError("non-finite value in report");
  return x;
}

Json num_list(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({num(m(r, c).real()), num(m(r, c).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json stats_json(const GateStats& s) {
  Json j;
  j["single"] = s.single;
  j["cnot"] = s.cnot;
  j["multi"] = s.multi;
  j["pauli_x"] = s.pauli_x;
  j["total"] = s.total();
  j["depth"] = s.depth;
  return j;
}

struct Context {
  ProblemConfig cfg;
  Json report;
  std::ostringstream summary;
  int exit_code = kExitOk;
};

Json header(const char* command, const ProblemConfig& cfg) {
  Json r;
  r["schema_version"] = kReportSchema;
  r["command"] = command;
  r["config"] = cfg.echo;
  r["mode"] = cfg.mode.describe();
  return r;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file", path);
  out << body;
  if (!out) throw ParseError("write failed", path);
}

// Runs `body`, translating library errors into the exit-code contract.
CommandResult run(const char* command, const CommandOptions& opt,
                  const std::function<void(Context&)>& body) {
  CommandResult out;
  Context ctx;
  try {
    ctx.cfg = opt.config_text ? parse_config(*opt.config_text) : load_config(opt.config_path);
    if (opt.tol) {
      if (!(*opt.tol > 0.0)) throw ParseError("tolerance must be positive", "--tol");
      ctx.cfg.invariant_tol = *opt.tol;
    }
    if (opt.seed) ctx.cfg.seed = *opt.seed;
    ctx.report = header(command, ctx.cfg);
    body(ctx);
    out.exit_code = ctx.exit_code;
    out.report = dump(ctx.report);
  } catch (const InfeasibleError& e) {
    out.exit_code = kExitInfeasible;
    ctx.report["feasibility"] = {{"feasible", false}, {"min_eigenvalue", e.min_eigenvalue()}};
    ctx.report["error"] = e.what();
    out.report = dump(ctx.report);
    ctx.summary << "infeasible: minimum residual eigenvalue " << e.min_eigenvalue() << "\n";
  } catch (const InvariantError& e) {
    out.exit_code = kExitInvariant;
    ctx.summary << "invariant violation: " << e.what() << "\n";
  } catch (const UnitarityError& e) {
    out.exit_code = kExitInvariant;
    ctx.summary << "invariant violation: " << e.what() << "\n";
  } catch (const ParseError& e) {
    out.exit_code = kExitInput;
    ctx.summary << "input error: " << e.what() << "\n";
  } catch (const Error& e) {
    out.exit_code = kExitInput;
    ctx.summary << "input error: " << e.what() << "\n";
  }
  out.summary = ctx.summary.str();
  return out;
}

struct Synthesized {
  MachineSpec spec;
  SynthesisResult res;
};

Synthesized synthesize(Context& ctx) {
  const MachineSpec spec = ctx.cfg.machine();
  const Feasibility f = feasibility(*ctx.cfg.set, spec);
  if (!f.feasible)
    throw InfeasibleError("success probabilities exceed the positivity bound", f.min_eigenvalue);
  ctx.report["feasibility"] = {{"feasible", true}, {"min_eigenvalue", num(f.min_eigenvalue)}};
  ctx.report["gammas"] = num_list(spec.gammas());
  return {spec, build_unitary(*ctx.cfg.set, spec)};
}

Json simulate_inputs(const MachineCircuit& mc, const ProblemConfig& cfg, const MachineSpec& spec,
                     std::vector<std::string>& violations, std::ostream& summary) {
  const StateSet& set = *cfg.set;
  const double tol = cfg.invariant_tol;
  Json inputs = Json::array();
  for (int i = 0; i < set.size(); ++i) {
    const SimOutcome o = simulate(mc, set, i);
    const double g = spec.gammas()[static_cast<std::size_t>(i)];
    const std::string& label = set.labels()[static_cast<std::size_t>(i)];
    Json j;
    j["label"] = label;
    j["gamma"] = num(g);
    j["success_probability"] = num(o.success_probability);
    j["failure_target_leak"] = num(o.failure_target_leak);
    if (std::abs(o.success_probability - g) > tol)
      violations.push_back("input " + label + ": success probability differs from gamma");
    if (o.failure_target_leak > tol)
      violations.push_back("input " + label + ": failure branch leaves the blank sector");
    if (mc.mode.is_clone()) {
      j["clone_fidelity"] = num(o.clone_fidelity);
      if (o.success_probability > tol && o.clone_fidelity < 1.0 - tol)
        violations.push_back("input " + label + ": clone fidelity below one");
    } else {
      j["identify_distribution"] = num_list(o.identify_distribution);
      double wrong = 0.0;
      for (std::size_t k = 0; k < o.identify_distribution.size(); ++k)
        if (static_cast<int>(k) != i) wrong += o.identify_distribution[k];
      j["misidentification"] = num(wrong);
      if (o.success_probability > tol && wrong > tol)
        violations.push_back("input " + label + ": success branch misidentifies");
    }
    summary << "  input " << label << ": p_success " << o.success_probability << " (gamma " << g
            << ")";
    if (mc.mode.is_clone()) summary << ", fidelity " << o.clone_fidelity;
    summary << "\n";
    inputs.push_back(std::move(j));
  }
  return inputs;
}

}  // namespace

CommandResult cmd_synth(const CommandOptions& opt) {
  return run("synth", opt, [&](Context& ctx) {
    const Synthesized s = synthesize(ctx);
    const SynthesisResult& res = s.res;
    ctx.report["m"] = num_list(res.m);
    ctx.report["thetas"] = num_list(res.thetas);
    ctx.report["v"] = matrix_json(res.v);
    const HamiltonianSpec h = hamiltonian(res, opt.branch_integers);
    const double ures = unitary_residual(res.u);
    const double hres = max_abs_diff(expi_hermitian(h.h, h.dt / h.hbar), res.u);
    ctx.report["checks"] = {{"unitary_residual", num(ures)},
                            {"hamiltonian_reconstruction", num(hres)}};
    if (!res.note.empty()) ctx.report["note"] = res.note;
    if (!opt.hamiltonian_path.empty()) {
      Json hj;
      hj["schema_version"] = kReportSchema;
      hj["hbar"] = num(h.hbar);
      hj["dt"] = num(h.dt);
      hj["branch_integers"] = h.branch_integers;
      hj["u"] = matrix_json(res.u);
      hj["h"] = matrix_json(h.h);
      write_file(opt.hamiltonian_path, dump(hj));
      ctx.report["hamiltonian_path"] = opt.hamiltonian_path;
    }
    ctx.summary << ctx.cfg.mode.describe() << ": feasible, gamma";
    for (double g : s.spec.gammas()) ctx.summary << " " << g;
    ctx.summary << "\n  m:";
    for (double x : res.m) ctx.summary << " " << x;
    ctx.summary << "\n  unitary residual " << ures << ", exp(-iH) error " << hres << "\n";
    if (ures > ctx.cfg.invariant_tol || hres > ctx.cfg.invariant_tol)
      throw InvariantError("synthesized unitary failed its residual checks");
  });
}

CommandResult cmd_compile(const CommandOptions& opt) {
  return run("compile", opt, [&](Context& ctx) {
    if (opt.lower != "multi" && opt.lower != "universal")
      throw ParseError("expected multi or universal", "--lower");
    if (opt.out_path.empty()) throw ParseError("an output circuit path is required", "--out");
    const Synthesized s = synthesize(ctx);
    const MachineCircuit mc = assemble(*ctx.cfg.set, s.spec, s.res);
    const bool universal = opt.lower == "universal";
    Circuit full(mc.wires);
    Json stages = Json::array();
    for (const auto& st : mc.stages) {
      const Circuit c = universal ? lower_multicontrolled(st.circuit) : st.circuit;
      full.append(c);
      stages.push_back({{"name", st.name}, {"gates", stats_json(gate_stats(c))}});
    }
    write_file(opt.out_path, circuit_to_string(full));
    const GateStats total = gate_stats(full);
    ctx.report["lowering"] = opt.lower;
    ctx.report["wires"] = mc.wires;
    ctx.report["probe_wire"] = mc.probe;
    ctx.report["stages"] = std::move(stages);
    ctx.report["totals"] = stats_json(total);
    ctx.report["circuit_path"] = opt.out_path;
    ctx.summary << ctx.cfg.mode.describe() << ": " << mc.wires << " wires, " << total.total()
                << " gates (" << opt.lower << "), depth " << total.depth << "\n";
  });
}

CommandResult cmd_simulate(const CommandOptions& opt) {
  return run("simulate", opt, [&](Context& ctx) {
    const Synthesized s = synthesize(ctx);
    const MachineCircuit mc = assemble(*ctx.cfg.set, s.spec, s.res);
    ctx.report["wires"] = mc.wires;
    ctx.summary << ctx.cfg.mode.describe() << ": " << mc.wires << " wires\n";
    std::vector<std::string> violations;
    ctx.report["inputs"] = simulate_inputs(mc, ctx.cfg, s.spec, violations, ctx.summary);
    ctx.report["tolerance"] = num(ctx.cfg.invariant_tol);
    ctx.report["violations"] = violations;
    for (const auto& v : violations) ctx.summary << "violation: " << v << "\n";
    if (!violations.empty()) ctx.exit_code = kExitInvariant;
  });
}

CommandResult cmd_robust(const CommandOptions& opt) {
  return run("robust", opt, [&](Context& ctx) {
    if (!ctx.cfg.mode.is_clone()) throw ModeError("robustness runs need a clone configuration");
    if (opt.decoherence && opt.preparation)
      throw ParseError("choose one error model", "--decoherence");
    const int k = ctx.cfg.set->qubits();
    ErrorModel err;
    if (opt.preparation) {
      if (!opt.weights.empty()) throw ParseError("weights apply to decoherence only", "--weights");
      err = ErrorModel::preparation(*opt.preparation, {}, k);
    } else {
      err = ErrorModel::decoherence(opt.decoherence.value_or(0.0), opt.weights, k);
    }
    const std::size_t trials = opt.trials.value_or(kDefaultTrials);
    if (trials == 0) throw ParseError("trials must be positive", "--trials");

    const Synthesized s = synthesize(ctx);
    const MachineCircuit mc = assemble(*ctx.cfg.set, s.spec, s.res);
    ctx.report["wires"] = mc.wires;
    ctx.summary << ctx.cfg.mode.describe() << ": " << mc.wires << " wires\n";
    std::vector<std::string> violations;
    ctx.report["inputs"] = simulate_inputs(mc, ctx.cfg, s.spec, violations, ctx.summary);

    const RobustnessReport r = robustness_run(*ctx.cfg.set, mc, err, trials, ctx.cfg.seed);
    Json rj;
    rj["model"] = err.kind == ErrorModel::Kind::Decoherence ? "decoherence" : "preparation";
    rj["rate"] = num(err.rate);
    rj["seed"] = r.seed;
    rj["trials"] = r.trials;
    rj["probe_failures"] = r.probe_failures;
    rj["detected"] = r.detected;
    rj["undetected_faults"] = r.undetected_faults;
    rj["probe_failure_rate"] = num(r.probe_failure_rate);
    rj["detected_rate"] = num(r.detected_rate);
    rj["model_rate"] = num(r.model_rate);
    rj["exact_detect_probability"] = num(r.exact_detect_probability);
    rj["sigma"] = num(r.sigma);
    rj["z_score"] = num(r.z_score);
    rj["min_recycle_fidelity"] = num(r.min_recycle_fidelity);
    ctx.report["robustness"] = std::move(rj);
    ctx.report["tolerance"] = num(ctx.cfg.invariant_tol);
    ctx.report["violations"] = violations;
    ctx.summary << "  " << r.trials << " trials (seed " << r.seed << "): detected rate "
                << r.detected_rate << ", model " << r.model_rate << ", z " << r.z_score
                << ", min recycle fidelity " << r.min_recycle_fidelity << "\n";
    for (const auto& v : violations) ctx.summary << "violation: " << v << "\n";
    if (!violations.empty()) ctx.exit_code = kExitInvariant;
  });
}

}  // namespace qclone
