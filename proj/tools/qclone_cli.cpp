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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qclone/commands.hpp"

int main(int argc, char** argv) {
  using namespace qclone;
  CLI::App app{"Probabilistic cloning and identification machine synthesizer"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double decoherence = 0.0;
  double preparation = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "problem configuration (JSON)")->required();
    sub->add_option("--out", opt.out_path, "output path");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--tol", tol, "invariant tolerance");
  };

  CLI::App* synth = app.add_subcommand("synth", "synthesize the machine unitary");
  common(synth);
  synth->add_option("--hamiltonian", opt.hamiltonian_path, "write the Hamiltonian to this file");
  synth->add_option("--branch", opt.branch_integers, "logarithm branch integers");

  CLI::App* compile = app.add_subcommand("compile", "assemble and write the machine circuit");
  common(compile);
  compile->add_option("--lower", opt.lower, "lowering level")
      ->check(CLI::IsMember({"multi", "universal"}));

  CLI::App* simulate = app.add_subcommand("simulate", "simulate every input exactly");
  common(simulate);

  CLI::App* robust = app.add_subcommand("robust", "Monte Carlo run under an error model");
  common(robust);
  robust->add_option("--trials", trials, "number of trials");
  auto* dec = robust->add_option("--decoherence", decoherence, "decoherence rate delta_1");
  auto* prep = robust->add_option("--preparation", preparation, "preparation error delta_2");
  dec->excludes(prep);
  robust->add_option("--weights", opt.weights, "decoherence weights eps_2 .. eps_{2^k}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* active = app.get_subcommands().front();
  if (active->count("--seed")) opt.seed = seed;
  if (active->count("--tol")) opt.tol = tol;
  if (active == robust) {
    if (robust->count("--trials")) opt.trials = trials;
    if (robust->count("--decoherence")) opt.decoherence = decoherence;
    if (robust->count("--preparation")) opt.preparation = preparation;
  }

  CommandResult r;
  if (active == synth) r = cmd_synth(opt);
  else if (active == compile) r = cmd_compile(opt);
  else if (active == simulate) r = cmd_simulate(opt);
  else r = cmd_robust(opt);

  if (!opt.out_path.empty() && active != compile && !r.report.empty()) {
    std::ofstream out(opt.out_path, std::ios::binary);
    out << r.report;
  } else {
    std::cout << r.report;
  }
  std::cerr << r.summary;
  return r.exit_code;
}
