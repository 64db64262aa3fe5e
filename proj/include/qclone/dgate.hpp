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

#include <vector>

#include "qclone/circuit.hpp"
#include "qclone/numerics.hpp"

namespace qclone {

/// |psi_+-(t)> = cos t |0> +- sin t |1>.
CVector symmetric_state(double theta, int sign);

/// Two-party compression gate. The first party is the more significant
/// tensor factor; after compression the second party is blank.
struct DGateSpec {
  enum class Kind { SingleQubit, Multipartite };

  Kind kind = Kind::SingleQubit;
  int qubits = 1;  // per party

  // SingleQubit: D |psi(t1)>|psi(t2)> = |psi(t3)>|0>.
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;

  // Multipartite: columns are upper-triangular state coordinates.
  CMatrix source;   // first party states
  CMatrix source2;  // second party states
  CMatrix result;   // compressed states on the first party
  CMatrix g;        // inverse of D, built from the compressed frame

  CMatrix unitary;  // D
};

/// Hermitian involution taking |psi_+-(t1)>|psi_+-(t2)> to
/// |psi_+-(t3)>|0> with cos 2t3 = cos 2t1 cos 2t2. Angles in [0, pi/4].
DGateSpec d_single(double theta1, double theta2);

/// Multipartite compression of |psi_i(src)>|psi_i(src2)>, both given as
/// n x n upper-triangular coordinate matrices on k qubits. Throws RankError
/// when the combined Gram matrix is singular.
DGateSpec d_multi(const CMatrix& src, const CMatrix& src2, int qubits);

struct DStage {
  int party;  // D acts on parties (party, party + 1), 0-based
  DGateSpec gate;
};

/// Compression of K copies into party 0, in application order: parties
/// (K-2, K-1) first, (0, 1) last.
struct DChain {
  std::vector<DStage> stages;
  double theta_final = 0.0;  // SingleQubit chains
  CMatrix compressed;        // coordinates of the K-copy states on party 0
};

/// Chain for the symmetric single-qubit pair. K >= 1 (K = 1 is empty).
DChain d_chain(double theta1, int copies);

/// Chain for states with upper-triangular coordinates `ttilde` on k qubits.
DChain d_chain_multi(const CMatrix& ttilde, int qubits, int copies);

/// Circuit applying the chain (or its inverse) on `parties` consecutive
/// k-qubit registers starting at wire `first_wire`, conditioned on
/// `controls`.
Circuit chain_circuit(const DChain& chain, int qubits, int first_wire, int total_wires,
                      const std::vector<ControlSpec>& controls, bool inverse);

/// D on `data_wires` active when `probe_wire` holds `active_value`.
Circuit controlled_d(const DGateSpec& spec, const std::vector<int>& data_wires, int total_wires,
                     int probe_wire, int active_value);

}  // namespace qclone
