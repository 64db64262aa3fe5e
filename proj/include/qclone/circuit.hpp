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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qclone/numerics.hpp"

namespace qclone {

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Mat2 = std::array<cplx, 4>;

Mat2 mat2_identity();
Mat2 mat2_pauli_x();
Mat2 mat2_mul(const Mat2& a, const Mat2& b);
Mat2 mat2_adjoint(const Mat2& a);
Mat2 mat2_from(const CMatrix& m);
CMatrix mat2_to_matrix(const Mat2& a);
double mat2_distance(const Mat2& a, const Mat2& b);

struct SingleGate {
  int wire;
  Mat2 u;
};

struct CNotGate {
  int control;
  int target;
};

/// Applies u to `target` when every control wire holds 1.
struct MultiControlledGate {
  std::vector<int> controls;
  int target;
  Mat2 u;
};

struct PauliXGate {
  int wire;
};

using Gate = std::variant<SingleGate, CNotGate, MultiControlledGate, PauliXGate>;

/// Ordered gate list on `wires` qubits. Wire 0 is the most significant bit
/// of the basis index. The first gate acts first.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int wires);

  int wires() const noexcept { return wires_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  /// Unit-modulus factor multiplying the whole circuit.
  cplx global_phase() const noexcept { return phase_; }
  void multiply_phase(cplx p) { phase_ *= p; }
  void set_phase(cplx p) { phase_ = p; }

  /// Validates wire indices (DimensionError) and payload unitarity
  /// (UnitarityError).
  void add(Gate g);
  void append(const Circuit& other);

  /// Inverse circuit: reversed order, adjoint payloads, conjugate phase.
  Circuit adjoint() const;

 private:
  int wires_ = 0;
  std::vector<Gate> gates_;
  cplx phase_{1.0, 0.0};
};

/// Wire list referenced by a gate, controls first and target last.
std::vector<int> gate_wires(const Gate& g);

/// Dense unitary of the circuit, including the global phase. Capped at 12
/// wires (SizeError).
CMatrix matrix(const Circuit& c);

/// Two-level factor acting as u on the ordered pair (e_t, e_l).
struct TwoLevel {
  std::size_t t;
  std::size_t l;
  Mat2 u;
};

/// Diagonal factor multiplying basis vector e_k by e^{i alpha}.
struct PhaseFactor {
  std::size_t k;
  double alpha;
};

using Factor = std::variant<TwoLevel, PhaseFactor>;

/// u = F_1 F_2 ... F_r: two-level factors first, then phases. At most
/// n(n-1)/2 two-level and n phase factors; near-identity factors dropped.
/// Throws UnitarityError when u is not unitary within 1e-8.
std::vector<Factor> two_level_decompose(const CMatrix& u);

/// Dense product of factors, for checking.
CMatrix factor_product(const std::vector<Factor>& factors, std::size_t dim);

/// CNOT/X conjugator Q taking |i> to |1...1> and |j> to the all-ones string
/// with bit `pivot` cleared. When `i` has a 0 at the first differing bit the
/// roles of i and j are exchanged first and `swapped` is set; then Q takes
/// |j> to all ones instead.
struct Conjugator {
  Circuit circuit;
  int pivot;
  bool swapped;
};

Conjugator permutation_to_cnots(std::size_t i, std::size_t j, int wires);

/// Realizes the factor list on `wires` qubits with CNOT, X and
/// multi-controlled gates. Throws ShapeError unless the factor dimension is
/// 2^wires.
Circuit lift_two_level(const std::vector<Factor>& factors, int wires);

/// lift_two_level for a factor list of dimension `dim`; ShapeError unless
/// dim is a power of two >= 2.
Circuit lift_factors(const std::vector<Factor>& factors, std::size_t dim);

/// A control condition: gate fires when `wire` holds `value`.
struct ControlSpec {
  int wire;
  int value;
};

/// Circuit on `total_wires` implementing u on `targets` (first listed is the
/// most significant), conditioned on every control.
Circuit compile_unitary(const CMatrix& u, const std::vector<int>& targets, int total_wires,
                        const std::vector<ControlSpec>& controls = {});

/// Rewrites every gate into single-qubit gates and CNOTs with the same
/// matrix (no phase is dropped). Toffolis use the exact six-CNOT form,
/// Lambda_1 uses the two-CNOT form, and larger controls use square-root
/// recursion up to `recursion_limit` controls and Gray-code sequences
/// beyond.
Circuit lower_multicontrolled(const Circuit& c, int recursion_limit = 4);

/// Principal square root of a 2x2 unitary, eigenphases halved into (-pi/2, pi/2].
Mat2 mat2_sqrt(const Mat2& u);

struct GateStats {
  std::size_t single = 0;
  std::size_t cnot = 0;
  std::size_t multi = 0;
  std::size_t pauli_x = 0;
  std::size_t depth = 0;
  std::size_t total() const noexcept { return single + cnot + multi + pauli_x; }
};

GateStats gate_stats(const Circuit& c);

/// Line-oriented text form, 17 significant digits.
void write_circuit(std::ostream& os, const Circuit& c);
std::string circuit_to_string(const Circuit& c);
/// Throws ParseError with a "line N" locator.
Circuit read_circuit(std::istream& is);
Circuit circuit_from_string(const std::string& text);

}  // namespace qclone
