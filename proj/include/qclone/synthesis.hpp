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

#include "qclone/numerics.hpp"
#include "qclone/statesets.hpp"

namespace qclone {

/// Task performed by the machine: identify the state from M copies, or
/// produce N copies from M.
struct Mode {
  enum class Kind { Identify, Clone };

  Kind kind = Kind::Identify;
  int m = 1;
  int n = 0;  // output copies; unused for identification

  static Mode identify(int m);
  static Mode clone(int m, int n);

  bool is_clone() const noexcept { return kind == Kind::Clone; }
  std::string describe() const;
};

/// Mode plus per-state success probabilities. The probe is a single qubit
/// with |0> signalling failure and |1> success.
class MachineSpec {
 public:
  /// Throws DomainError when a gamma lies outside (0, 1], M < 1 or N <= M.
  MachineSpec(Mode mode, std::vector<double> gammas);

  const Mode& mode() const noexcept { return mode_; }
  const std::vector<double>& gammas() const noexcept { return gammas_; }

 private:
  Mode mode_;
  std::vector<double> gammas_;
};

struct Feasibility {
  bool feasible = false;
  double min_eigenvalue = 0.0;
};

/// Residual X^(M) - sqrt(G) X^(N) sqrt(G) (clone) or X^(M) - G (identify).
CMatrix residual(const StateSet& set, const MachineSpec& spec);

/// Feasible iff the residual's smallest eigenvalue is >= -1e-10.
Feasibility feasibility(const StateSet& set, const MachineSpec& spec);

/// Largest gamma for which gamma * I is feasible, by bisection to 1e-10.
double optimal_uniform_gamma(const StateSet& set, const Mode& mode);

/// Lower-triangular factor of the residual. Throws NotPSDError if infeasible.
CMatrix coefficients(const StateSet& set, const MachineSpec& spec);

/// Everything needed to realize the machine. Matrices are expressed in
/// n-dimensional coordinates: inputs in the frame where Z = V E V^dagger is
/// diagonalized, outputs in the success frame B (identity for
/// identification, the symmetric square root of X^(N) for cloning).
struct SynthesisResult {
  Mode mode;
  std::vector<double> gammas;
  CMatrix a;  // input coordinates, a^dagger a = X^(M)
  CMatrix b;  // success-branch coordinates of the target states
  CMatrix c;  // failure coefficients, c c^dagger = residual
  CMatrix v;  // unitary eigenbasis of W
  std::vector<double> m;       // eigenvalues of W, descending, in (0, 1]
  std::vector<double> thetas;  // e^{i theta} = sqrt(1 - m) + i sqrt(m)
  CMatrix u;  // 2n x 2n, failure block first: [[Y, -Z], [Z, Y]]
  CMatrix o;  // unitary diagonalizing u
  std::string note;
};

/// Throws InfeasibleError when the spec is infeasible for the set,
/// DimensionError on a gamma count mismatch, and InvariantError if the
/// assembled unitary fails its block identities.
SynthesisResult build_unitary(const StateSet& set, const MachineSpec& spec);

struct Diagonalization {
  CMatrix o;
  std::vector<double> phases;  // theta_1, -theta_1, theta_2, -theta_2, ...
};

/// u = o diag(e^{i phases}) o^dagger.
Diagonalization diagonalize(const SynthesisResult& res);

struct HamiltonianSpec {
  CMatrix h;
  double hbar = 1.0;
  double dt = 1.0;
  std::vector<int> branch_integers;  // N_{+1}, N_{-1}, N_{+2}, ...
};

/// H with exp(-i H) = u. Empty `branch` means all zeros; otherwise it must
/// hold 2n integers.
HamiltonianSpec hamiltonian(const SynthesisResult& res, std::vector<int> branch = {});

/// Permutes a 2n x 2n matrix from failure/success block order to the
/// interleaved order (state index major, probe minor).
CMatrix block_to_interleaved(const CMatrix& u);

}  // namespace qclone
