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

#include "qclone/robustness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"

using namespace qclone;
using qclone::testing::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture {
  StateSet set;
  MachineCircuit mc;
};

Fixture cloning_machine(StateSet set, int m, int n) {
  const Mode mode = Mode::clone(m, n);
  const double g = optimal_uniform_gamma(set, mode);
  const MachineSpec spec(mode, std::vector<double>(std::size_t(set.size()), g));
  const SynthesisResult res = build_unitary(set, spec);
  MachineCircuit mc = assemble(set, spec, res);
  return {std::move(set), std::move(mc)};
}

}  // namespace

TEST(robustness, error_model_validation) {
  EXPECT_THROW(ErrorModel::decoherence(1.5, {}, 1), DomainError);
  EXPECT_THROW(ErrorModel::decoherence(0.5, {0.5, 0.2, 0.2}, 2), DomainError);
  EXPECT_THROW(ErrorModel::preparation(0.1, {0.5, 0.5, 0.5}, 2), DomainError);
  const ErrorModel d = ErrorModel::decoherence(0.2, {}, 2);
  EXPECT_EQ(d.weights.size(), 3u);
  EXPECT_NEAR(d.model_rate(2), 1 - 0.8 * 0.8, 1e-15);
  const ErrorModel p = ErrorModel::preparation(0.1, {}, 1);
  EXPECT_NEAR(p.model_rate(1), 0.01, 1e-15);
}

TEST(robustness, splitmix_is_deterministic_and_mixing) {
  EXPECT_EQ(splitmix64(1), splitmix64(1));
  EXPECT_NE(splitmix64(1), splitmix64(2));
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
}

TEST(robustness, requires_clone_mode) {
  const StateSet s = StateSet::symmetric_pair(0.3);
  const MachineSpec spec(Mode::identify(1), {0.1, 0.1});
  const MachineCircuit mc = assemble(s, spec, build_unitary(s, spec));
  EXPECT_THROW(robustness_run(s, mc, ErrorModel::decoherence(0.1, {}, 1), 10, 1), ModeError);
}

TEST(robustness, zero_rate_matches_clean_run) {
  const Fixture f = cloning_machine(StateSet::symmetric_pair(kPi / 6), 1, 2);
  const RobustnessReport r = robustness_run(f.set, f.mc, ErrorModel::decoherence(0.0, {}, 1), 20000, 3);
  EXPECT_EQ(r.detected, 0u);
  EXPECT_EQ(r.undetected_faults, 0u);
  // Clean failure probability is 1 - gamma = 1/3.
  const double p = 1.0 / 3.0;
  EXPECT_NEAR(r.probe_failure_rate, p, 4 * std::sqrt(p * (1 - p) / 20000));
}

TEST(robustness, every_target_wrong_is_always_detected) {
  const Fixture f = cloning_machine(StateSet::symmetric_pair(kPi / 6), 2, 3);
  const RobustnessReport r =
      robustness_run(f.set, f.mc, ErrorModel::decoherence(1.0, {1.0}, 1), 2000, 4);
  EXPECT_EQ(r.probe_failures, r.trials);
  EXPECT_EQ(r.detected, r.trials);
  EXPECT_NEAR(r.min_recycle_fidelity, 1.0, 1e-10);
}

TEST(robustness, two_partite_decoherence_recycles) {
  std::mt19937_64 rng(8);
  std::vector<CVector> states;
  for (int i = 0; i < 3; ++i) states.push_back(random_state(4, rng));
  const Fixture f = cloning_machine(StateSet::from_vectors(2, states), 1, 3);
  const RobustnessReport r =
      robustness_run(f.set, f.mc, ErrorModel::decoherence(0.3, {0.2, 0.5, 0.3}, 2), 5000, 5);
  EXPECT_GT(r.detected, 0u);
  EXPECT_EQ(r.undetected_faults, 0u);
  EXPECT_NEAR(r.min_recycle_fidelity, 1.0, 1e-6);
  EXPECT_LT(std::abs(r.z_score), 4.0);
}

TEST(robustness, small_preparation_error_rate) {
  const Fixture f = cloning_machine(StateSet::symmetric_pair(kPi / 8), 1, 2);
  const RobustnessReport r =
      robustness_run(f.set, f.mc, ErrorModel::preparation(0.01, {}, 1), 100000, 6);
  EXPECT_NEAR(r.model_rate, 1e-4, 1e-12);
  EXPECT_NEAR(r.exact_detect_probability, r.model_rate, 1e-10);
  EXPECT_LE(std::abs(r.detected_rate - r.model_rate), 3 * r.sigma);
  if (r.detected > 0) EXPECT_NEAR(r.min_recycle_fidelity, 1.0, 1e-6);
}

TEST(robustness, reports_are_reproducible) {
  const Fixture f = cloning_machine(StateSet::symmetric_pair(0.4), 1, 3);
  const ErrorModel e = ErrorModel::preparation(0.2, {}, 1);
  const RobustnessReport a = robustness_run(f.set, f.mc, e, 3000, 99);
  const RobustnessReport b = robustness_run(f.set, f.mc, e, 3000, 99);
  EXPECT_EQ(a.detected, b.detected);
  EXPECT_EQ(a.probe_failures, b.probe_failures);
  EXPECT_EQ(a.seed, 99u);
}
