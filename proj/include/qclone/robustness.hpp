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

#pragma once

#include <cstdint>
#include <vector>

#include "qclone/sim.hpp"

namespace qclone {

/// Faults on the N - M blank target systems.
///
/// Decoherence: each target is independently |Omega_1> with probability
/// 1 - rate, otherwise |Omega_j> (j >= 2) with probability rate * |eps_j|.
/// Preparation: each target is sqrt(1 - |rate|^2) |Omega_1> + rate *
/// sum_j tau_j |Omega_j>.
struct ErrorModel {
  enum class Kind { Decoherence, Preparation };

  Kind kind = Kind::Decoherence;
  double rate = 0.0;
  std::vector<double> weights;    // eps_2 .. eps_{2^k}
  std::vector<cplx> amplitudes;   // tau_2 .. tau_{2^k}

  /// Empty weights / amplitudes spread evenly over j >= 2. Throws
  /// DomainError when the rate leaves [0, 1] or the weights do not sum to 1
  /// (sum |eps| = 1, sum |tau|^2 = 1).
  static ErrorModel decoherence(double delta1, std::vector<double> weights, int qubits);
  static ErrorModel preparation(double delta2, std::vector<cplx> amplitudes, int qubits);

  /// Probability that at least one of `targets` systems is faulty.
  double model_rate(int targets) const;
};

struct RobustnessReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t probe_failures = 0;    // probe read |0>
  std::size_t detected = 0;          // probe |0> and a non-blank target reading
  std::size_t undetected_faults = 0; // decoherence: fault injected, nothing detected
  double probe_failure_rate = 0.0;
  double detected_rate = 0.0;
  double model_rate = 0.0;
  double sigma = 0.0;      // binomial standard deviation of detected_rate
  double z_score = 0.0;
  double min_recycle_fidelity = 1.0;  // over detected trials
  // Preparation: from the final amplitudes, averaged over inputs.
  // Decoherence: the model rate.
  double exact_detect_probability = 0.0;
};

/// Samples `trials` runs with uniformly random inputs. Every trial draws from
/// its own generator seeded from (seed, trial). Throws ModeError outside
/// cloning.
RobustnessReport robustness_run(const StateSet& set, const MachineCircuit& mc,
                                const ErrorModel& err, std::size_t trials, std::uint64_t seed);

/// splitmix64 step, used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qclone
