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

#include <optional>
#include <string>
#include <vector>

#include "qclone/numerics.hpp"

namespace qclone {

/// A set of n linearly independent pure states on k qubits.
///
/// Each state is rephased at construction so that its first nonzero
/// coefficient is real and positive. Global phases are unobservable, and
/// the convention makes the leading entry of the triangular form equal 1.
class StateSet {
 public:
  /// Validates unit norm (within 1e-12), n <= 2^k and linear independence
  /// (smallest Gram eigenvalue >= 1e-10). Throws DomainError / RankError.
  static StateSet from_vectors(int qubits, std::vector<CVector> states,
                               std::vector<std::string> labels = {});

  /// {cos t|0> + sin t|1>, cos t|0> - sin t|1>} for t in (0, pi/4].
  static StateSet symmetric_pair(double theta);

  int qubits() const noexcept { return qubits_; }
  int size() const noexcept { return static_cast<int>(states_.size()); }
  std::size_t dim() const noexcept { return std::size_t{1} << qubits_; }
  const std::vector<CVector>& states() const noexcept { return states_; }
  const CVector& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// The angle t when the set is the symmetric single-qubit pair.
  std::optional<double> symmetric_angle() const noexcept { return symmetric_angle_; }

  /// dim x n matrix whose columns are the states.
  CMatrix coefficient_matrix() const;

 private:
  StateSet() = default;

  int qubits_ = 0;
  std::vector<CVector> states_;
  std::vector<std::string> labels_;
  std::optional<double> symmetric_angle_;
};

/// Gram matrix of the m-copy states: entries <psi_i|psi_j>^m.
CMatrix gram(const StateSet& set, int copies);

/// Unitary rotation of the set into upper-triangular coordinates:
/// u0 * [psi_1 ... psi_n] = [e_1 ... e_dim] * [ttilde; 0].
struct TriangularForm {
  CMatrix u0;      // dim x dim unitary
  CMatrix ttilde;  // n x n upper triangular, real positive diagonal
};

TriangularForm triangularize(const StateSet& set);

/// Hyperspherical parameters of a triangular coefficient matrix. For column
/// i >= 1, walking up from the diagonal, theta[i][s] is the angle of row
/// i - s: entry = e^{i mu} * (prod of earlier cosines) * sin theta[i][s],
/// with row 0 taking the full remaining cosine product. mu[i][r] is the
/// phase of row i - 1 - r. Column 0 is fixed to e_0.
struct TriangularAngles {
  std::vector<std::vector<double>> theta;
  std::vector<std::vector<double>> mu;
};

TriangularAngles triangular_angles(const CMatrix& ttilde);
CMatrix ttilde_from_angles(const TriangularAngles& angles);

}  // namespace qclone
