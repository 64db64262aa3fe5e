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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "qclone/circuit.hpp"
#include "qclone/config.hpp"
#include "qclone/errors.hpp"
#include "qclone/sim.hpp"

using namespace qclone;

namespace {

const char* kIdentifyPi6 =
    R"({"states": {"theta": "pi/6"}, "mode": {"identify": {"M": 2}}, "gammas": "optimal-uniform"})";

CommandOptions with_text(const std::string& text) {
  CommandOptions o;
  o.config_text = text;
  return o;
}

Json parsed(const CommandResult& r) { return Json::parse(r.report); }

std::string locator_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.locator();
  }
  return "<none>";
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qclone_cli_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& body) {
  std::ofstream(p) << body;
}

struct ProcessRun {
  int code = -1;
  std::string out;
};

ProcessRun run_binary(const std::string& args) {
  const std::string cmd = std::string(QCLONE_CLI_PATH) + " " + args + " 2>/dev/null";
  ProcessRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void expect_finite(const Json& j) {
  if (j.is_number_float()) {
    EXPECT_TRUE(std::isfinite(j.get<double>()));
  } else if (j.is_structured()) {
    for (const auto& e : j) expect_finite(e);
  }
}

}  // namespace

TEST(Config, AnglesParse) {
  EXPECT_DOUBLE_EQ(parse_angle("pi/6", ""), std::numbers::pi / 6);
  EXPECT_DOUBLE_EQ(parse_angle("3*pi/8", ""), 3 * std::numbers::pi / 8);
  EXPECT_DOUBLE_EQ(parse_angle("0.25pi", ""), 0.25 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(parse_angle("0.3", ""), 0.3);
  EXPECT_THROW(parse_angle("pi*6", "/x"), ParseError);
  EXPECT_THROW(parse_angle("tau", "/x"), ParseError);
}

TEST(Config, DiagnosticsCarryFieldLocators) {
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0.3}})"), "/mode");
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0}, "mode": {"identify": {"M": 1}}})"),
            "/states/theta");
  EXPECT_EQ(locator_of(R"({"states": {"k": 1, "vectors": [[1, 0], [0.6, 0.8, 0]]},
                           "mode": {"identify": {"M": 1}}})"),
            "/states/vectors/1");
  EXPECT_EQ(locator_of(R"({"states": {"k": 1, "vectors": [[[1, 0], [0, "x"]]]},
                           "mode": {"identify": {"M": 1}}})"),
            "/states/vectors/0/1/1");
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0.3}, "mode": {"clone": {"M": 2, "N": 2}}})"),
            "/mode/clone/N");
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0.3}, "mode": {"identify": {"M": 1}},
                           "gammas": [0.5]})"),
            "/gammas");
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0.3}, "mode": {"identify": {"M": 1}},
                           "colour": 1})"),
            "/colour");
  EXPECT_EQ(locator_of(R"({"states": {"theta": 0.3}, "mode": {"identify": {"M": 1}},
                           "seed": -4})"),
            "/seed");
  EXPECT_EQ(locator_of("{\"states\": "), "byte 12");
}

TEST(Config, VectorsAreNormalizedAndLabelled) {
  const ProblemConfig c = parse_config(R"({"states": {"k": 1, "vectors": [[2, 0], [[3, 0], [0, 4]]],
                                          "labels": ["a", "b"]},
                                          "mode": {"identify": {"M": 1}}, "seed": 9})");
  ASSERT_TRUE(c.set.has_value());
  EXPECT_NEAR(std::abs(c.set->state(0)[0] - cplx(1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.set->state(1)[1] - cplx(0.0, 0.8)), 0.0, 1e-15);
  EXPECT_EQ(c.set->labels()[1], "b");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_TRUE(c.optimal_uniform);
}

TEST(Synth, SymmetricPairIdentifyReportsOptimum) {
  const CommandResult r = cmd_synth(with_text(kIdentifyPi6));
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  const Json j = parsed(r);
  EXPECT_EQ(j["schema_version"], kReportSchema);
  // s = cos(pi/3) = 1/2: gamma = 1 - s^2, m2 = (1 - s^2) / (1 + s^2).
  EXPECT_NEAR(j["gammas"][0].get<double>(), 0.75, 1e-12);
  EXPECT_NEAR(j["gammas"][1].get<double>(), 0.75, 1e-12);
  EXPECT_NEAR(j["m"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["m"][1].get<double>(), 0.6, 1e-12);
  EXPECT_TRUE(j["feasibility"]["feasible"].get<bool>());
  EXPECT_LE(j["checks"]["unitary_residual"].get<double>(), 1e-12);
  expect_finite(j);
}

TEST(Synth, InfeasibleGammaExitsTwoWithEigenvalue) {
  const CommandResult r = cmd_synth(with_text(
      R"({"states": {"theta": "pi/6"}, "mode": {"identify": {"M": 2}}, "gammas": [0.8, 0.8]})"));
  EXPECT_EQ(r.exit_code, kExitInfeasible);
  // Residual is X - 0.8 I with eigenvalues 1 +- 1/4 - 0.8.
  EXPECT_NEAR(parsed(r)["feasibility"]["min_eigenvalue"].get<double>(), -0.05, 1e-12);
  EXPECT_NE(r.summary.find("-0.05"), std::string::npos);
}

TEST(Synth, MalformedAmplitudesExitOneWithLocator) {
  const CommandResult r = cmd_synth(with_text(
      R"({"states": {"k": 1, "vectors": [[[1, 0], [0, "x"]], [0.6, 0.8]]},
          "mode": {"identify": {"M": 1}}})"));
  EXPECT_EQ(r.exit_code, kExitInput);
  EXPECT_NE(r.summary.find("/states/vectors/0/1/1"), std::string::npos);
}

TEST(Synth, HamiltonianDumpReconstructsUnitary) {
  CommandOptions o = with_text(kIdentifyPi6);
  o.hamiltonian_path = temp_path("ham.json").string();
  o.branch_integers = {1, 0, -2, 3};
  const CommandResult r = cmd_synth(o);
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  std::ifstream in(o.hamiltonian_path);
  const Json h = Json::parse(in);
  auto load = [](const Json& m) {
    CMatrix out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t k = 0; k < m.size(); ++k)
        out(i, k) = {m[i][k][0].get<double>(), m[i][k][1].get<double>()};
    return out;
  };
  EXPECT_LE(max_abs_diff(expi_hermitian(load(h["h"]), 1.0), load(h["u"])), 1e-10);
  EXPECT_EQ(h["branch_integers"].size(), 4u);
}

TEST(Compile, MultiLevelCarriesMachineStages) {
  CommandOptions o = with_text(kIdentifyPi6);
  o.out_path = temp_path("multi.qc").string();
  const CommandResult r = cmd_compile(o);
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  const Json j = parsed(r);
  std::vector<std::string> names;
  for (const auto& s : j["stages"]) names.push_back(s["name"]);
  EXPECT_NE(std::find(names.begin(), names.end(), "compress"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "core"), names.end());
  EXPECT_GT(j["totals"]["multi"].get<std::size_t>(), 0u);
  EXPECT_EQ(j["wires"].get<int>(), 3);
}

TEST(Compile, UniversalFileHasOnlyUCnotX) {
  CommandOptions o = with_text(kIdentifyPi6);
  o.out_path = temp_path("universal.qc").string();
  o.lower = "universal";
  ASSERT_EQ(cmd_compile(o).exit_code, kExitOk);
  std::ifstream in(o.out_path);
  std::string line;
  std::size_t gates = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "wires" || word == "phase" || word.empty()) continue;
    EXPECT_TRUE(word == "U" || word == "CNOT" || word == "X") << line;
    ++gates;
  }
  EXPECT_GT(gates, 0u);
}

TEST(Compile, FileRoundTripsBitExactly) {
  for (const std::string level : {"multi", "universal"}) {
    CommandOptions o = with_text(kIdentifyPi6);
    o.out_path = temp_path("round_" + level + ".qc").string();
    o.lower = level;
    ASSERT_EQ(cmd_compile(o).exit_code, kExitOk);

    const ProblemConfig cfg = parse_config(kIdentifyPi6);
    const MachineSpec spec = cfg.machine();
    const MachineCircuit mc = assemble(*cfg.set, spec, build_unitary(*cfg.set, spec));
    Circuit expected(mc.wires);
    for (const auto& st : mc.stages)
      expected.append(level == "universal" ? lower_multicontrolled(st.circuit) : st.circuit);

    std::ifstream in(o.out_path);
    const Circuit back = read_circuit(in);
    EXPECT_EQ(max_abs_diff(matrix(back), matrix(expected)), 0.0) << level;
  }
}

TEST(Compile, RequiresOutputAndKnownLevel) {
  EXPECT_EQ(cmd_compile(with_text(kIdentifyPi6)).exit_code, kExitInput);
  CommandOptions o = with_text(kIdentifyPi6);
  o.out_path = temp_path("x.qc").string();
  o.lower = "gates";
  EXPECT_EQ(cmd_compile(o).exit_code, kExitInput);
}

TEST(Simulate, CloneAtBoundMatchesClosedForm) {
  for (const auto& [in, out] : {std::pair{1, 2}, std::pair{2, 3}}) {
    std::ostringstream cfg;
    cfg << R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": )" << in << R"(, "N": )" << out
        << "}}}";
    const CommandResult r = cmd_simulate(with_text(cfg.str()));
    ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
    const double s = std::cos(std::numbers::pi / 4);
    const double g = (1 - std::pow(s, in)) / (1 - std::pow(s, out));
    for (const auto& input : parsed(r)["inputs"]) {
      EXPECT_NEAR(input["success_probability"].get<double>(), g, 1e-10);
      EXPECT_NEAR(input["clone_fidelity"].get<double>(), 1.0, 1e-10);
    }
  }
}

TEST(Simulate, OrthogonalPairIdentifiesWithCertainty) {
  const CommandResult r = cmd_simulate(
      with_text(R"({"states": {"k": 1, "vectors": [[1, 0], [0, 1]]}, "mode": {"identify": {"M": 1}}})"));
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  const Json j = parsed(r);
  for (std::size_t i = 0; i < 2; ++i) {
    const Json& in = j["inputs"][i];
    EXPECT_NEAR(in["success_probability"].get<double>(), 1.0, 1e-12);
    for (std::size_t k = 0; k < 2; ++k)
      EXPECT_NEAR(in["identify_distribution"][k].get<double>(), i == k ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_TRUE(j["violations"].empty());
}

TEST(Simulate, PerturbedGammaStopsBeforeSimulation) {
  const CommandResult r = cmd_simulate(with_text(
      R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}, "gammas": [0.6, 0.59]})"));
  EXPECT_EQ(r.exit_code, kExitInfeasible);
  EXPECT_FALSE(parsed(r).contains("inputs"));
}

TEST(Robust, CleanRunMatchesSimulate) {
  const std::string cfg = R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}})";
  CommandOptions o = with_text(cfg);
  o.decoherence = 0.0;
  o.trials = 2000;
  const CommandResult rob = cmd_robust(o);
  const CommandResult sim = cmd_simulate(with_text(cfg));
  ASSERT_EQ(rob.exit_code, kExitOk) << rob.summary;
  const Json rj = parsed(rob);
  EXPECT_EQ(rj["inputs"], parsed(sim)["inputs"]);
  EXPECT_EQ(rj["robustness"]["detected"].get<std::size_t>(), 0u);
  EXPECT_EQ(rj["robustness"]["min_recycle_fidelity"].get<double>(), 1.0);
}

TEST(Robust, ReplayIsByteIdentical) {
  CommandOptions o = with_text(
      R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}, "seed": 5})");
  o.preparation = 0.3;
  o.trials = 5000;
  const CommandResult a = cmd_robust(o);
  const CommandResult b = cmd_robust(o);
  ASSERT_EQ(a.exit_code, kExitOk);
  EXPECT_EQ(a.report, b.report);
  o.seed = 6;
  const CommandResult c = cmd_robust(o);
  EXPECT_NE(parsed(a)["robustness"]["detected"], parsed(c)["robustness"]["detected"]);
  EXPECT_EQ(parsed(c)["robustness"]["seed"].get<std::uint64_t>(), 6u);
}

TEST(Robust, PreparationDetectionWithinThreeSigma) {
  CommandOptions o = with_text(
      R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}, "seed": 2024})");
  o.preparation = 0.1;
  o.trials = 100000;
  const CommandResult r = cmd_robust(o);
  ASSERT_EQ(r.exit_code, kExitOk) << r.summary;
  const Json rob = parsed(r)["robustness"];
  // One target, blank error amplitude 0.1: a fault shows with probability 0.1^2.
  const double p = 0.01;
  const double sigma = std::sqrt(p * (1 - p) / 1e5);
  EXPECT_LE(std::abs(rob["detected_rate"].get<double>() - p), 3 * sigma);
}

TEST(Robust, IdentifyConfigIsAnInputError) {
  CommandOptions o = with_text(kIdentifyPi6);
  EXPECT_EQ(cmd_robust(o).exit_code, kExitInput);
}

TEST(Binary, ExitCodesAndDeterministicOutput) {
  const auto good = temp_path("good.json");
  const auto bad = temp_path("bad.json");
  const auto infeasible = temp_path("infeasible.json");
  write_text(good, R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}, "seed": 3})");
  write_text(bad, R"({"states": {"theta": "pi/8"}, "mode": {"copy": {}}})");
  write_text(infeasible,
             R"({"states": {"theta": "pi/8"}, "mode": {"clone": {"M": 1, "N": 2}}, "gammas": [1, 1]})");

  const ProcessRun a = run_binary("robust --config " + good.string() + " --preparation 0.2 --trials 3000");
  const ProcessRun b = run_binary("robust --config " + good.string() + " --preparation 0.2 --trials 3000");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["schema_version"], kReportSchema);
  expect_finite(Json::parse(a.out));

  EXPECT_EQ(run_binary("synth --config " + bad.string()).code, 1);
  EXPECT_EQ(run_binary("synth --config " + infeasible.string()).code, 2);
  EXPECT_EQ(run_binary("synth --config /nonexistent/config.json").code, 1);
  EXPECT_EQ(run_binary("transmute --config " + good.string()).code, 1);
  EXPECT_EQ(run_binary("compile --config " + good.string() + " --lower gates --out x").code, 1);
}
