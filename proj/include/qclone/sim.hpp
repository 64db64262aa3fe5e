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

#include <string>
#include <vector>

#include "qclone/circuit.hpp"
#include "qclone/dgate.hpp"
#include "qclone/numerics.hpp"
#include "qclone/statesets.hpp"
#include "qclone/synthesis.hpp"

namespace qclone {

/// Dense amplitudes over `wires` qubits, wire 0 most significant.
class StateVector {
 public:
  StateVector() = default;
  /// Throws DimensionError unless amplitudes has 2^wires entries.
  StateVector(int wires, CVector amplitudes);

  static StateVector basis(int wires, std::size_t index);

  int wires() const noexcept { return wires_; }
  std::size_t dim() const noexcept { return amps_.dim(); }
  const CVector& amplitudes() const noexcept { return amps_; }
  CVector& amplitudes() noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  int wires_ = 0;
  CVector amps_;
};

/// Applies the circuit gate by gate (no full matrices). DimensionError on
/// a wire-count mismatch.
StateVector apply(const StateVector& sv, const Circuit& c);
void apply_in_place(StateVector& sv, const Circuit& c);

/// The assembled machine. Parties are k-qubit registers: party p occupies
/// wires p*k .. p*k + k - 1, and the probe is the last wire.
struct MachineCircuit {
  struct Stage {
    std::string name;
    Circuit circuit;
  };

  Mode mode;
  int qubits = 1;   // k
  int parties = 1;  // M for identification, N for cloning
  int wires = 2;
  int probe = 1;
  int states = 2;  // n
  bool symmetric = false;
  CMatrix compressed_in;   // M-copy coordinates after compression
  CMatrix compressed_out;  // N-copy coordinates (cloning)
  std::vector<Stage> stages;
  Circuit circuit;  // concatenation of the stages
};

MachineCircuit assemble(const StateSet& set, const MachineSpec& spec, const SynthesisResult& res);

/// Generic product input: one 2^k state per party (missing parties blank),
/// probe on |0>.
StateVector machine_input(const MachineCircuit& mc, const std::vector<CVector>& party_states);

/// |psi_i>^M |0...0>^(K-M) |P0>.
StateVector machine_input(const MachineCircuit& mc, const StateSet& set, int i);

struct ProbeMeasurement {
  double p_success = 0.0;
  double p_failure = 0.0;
  bool success_empty = true;
  bool failure_empty = true;
  StateVector success_state;  // renormalized, probe |1>
  StateVector failure_state;  // renormalized, probe |0>
};

/// Splits on the last wire. Empty branches are flagged, not divided by zero.
ProbeMeasurement measure_probe(const StateVector& sv);

/// Label distribution from reading party 0 of the success state in the
/// computational basis, restricted to the n labels and normalized.
std::vector<double> identify_measure(const MachineCircuit& mc, const StateVector& success_state);

struct SimOutcome {
  double success_probability = 0.0;
  StateVector success_state;
  StateVector failure_state;
  double clone_fidelity = 0.0;               // cloning only
  std::vector<double> identify_distribution;  // identification only
  double failure_target_leak = 0.0;  // failure mass with a non-blank target
};

/// Runs input i through the machine.
SimOutcome simulate(const MachineCircuit& mc, const StateSet& set, int i);

}  // namespace qclone
