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

#include "qclone/statesets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qclone {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kIndependenceTol = 1e-10;

void canonicalize_phase(CVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > 1e-12) {
      const cplx rephase = std::conj(v[i]) / mag;
      for (auto& z : v.entries()) z *= rephase;
      v[i] = mag;
      return;
    }
  }
}

}  // namespace

StateSet StateSet::from_vectors(int qubits, std::vector<CVector> states,
                                std::vector<std::string> labels) {
  if (qubits < 1 || qubits > 10) throw DomainError("StateSet: qubit count must be in [1, 10]");
  const std::size_t dim = std::size_t{1} << qubits;
  if (states.empty()) throw DomainError("StateSet: empty state set");
  if (states.size() > dim) {
    std::ostringstream os;
    os << "StateSet: " << states.size() << " states cannot be independent in dimension "
       << dim;
    throw RankError(os.str());
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != dim) {
      std::ostringstream os;
      os << "StateSet: state " << i << " has dimension " << states[i].dim() << ", expected "
         << dim;
      throw DomainError(os.str());
    }
    if (!states[i].all_finite()) throw DomainError("StateSet: non-finite amplitude");
    if (std::abs(states[i].norm() - 1.0) > kNormTol) {
      std::ostringstream os;
      os << "StateSet: state " << i << " is not normalized (norm " << states[i].norm() << ")";
      throw DomainError(os.str());
    }
    canonicalize_phase(states[i]);
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < states.size(); ++i) labels.push_back("psi" + std::to_string(i + 1));
  }
  if (labels.size() != states.size()) throw DomainError("StateSet: label count mismatch");

  StateSet set;
  set.qubits_ = qubits;
  set.states_ = std::move(states);
  set.labels_ = std::move(labels);
  const Eigensystem eig = hermitian_eigen(gram(set, 1));
  if (eig.values.front() < kIndependenceTol) {
    std::ostringstream os;
    os << "StateSet: states are linearly dependent (smallest Gram eigenvalue "
       << eig.values.front() << ")";
    throw RankError(os.str());
  }
  return set;
}

StateSet StateSet::symmetric_pair(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4 + 1e-15))
    throw DomainError("symmetric_pair: theta must lie in [0, pi/4]");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  StateSet set = from_vectors(1, {CVector{c, s}, CVector{c, -s}}, {"psi+", "psi-"});
  set.symmetric_angle_ = theta;
  return set;
}

CMatrix StateSet::coefficient_matrix() const { return CMatrix::from_columns(states_); }

CMatrix gram(const StateSet& set, int copies) {
  if (copies < 1) throw DomainError("gram: copy count must be >= 1");
  const auto n = static_cast<std::size_t>(set.size());
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = std::pow(inner(set.states()[i], set.states()[j]), copies);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

TriangularForm triangularize(const StateSet& set) {
  const std::size_t dim = set.dim();
  const auto n = static_cast<std::size_t>(set.size());
  std::vector<CVector> q;
  CMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    CVector v = set.states()[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < q.size(); ++p) {
        const cplx proj = inner(q[p], v);
        r(p, i) += proj;
        for (std::size_t k = 0; k < dim; ++k) v[k] -= proj * q[p][k];
      }
    }
    const double nv = v.norm();
    if (nv < 1e-10) throw RankError("triangularize: state set is linearly dependent");
    for (auto& z : v.entries()) z /= nv;
    r(i, i) = nv;
    q.push_back(std::move(v));
  }
  const CMatrix qm = CMatrix::from_columns(q);
  const CMatrix rest = orthonormal_complement(qm);
  CMatrix frame(dim, dim);
  frame.set_block(0, 0, qm);
  frame.set_block(0, n, rest);
  return {adjoint(frame), r};
}

TriangularAngles triangular_angles(const CMatrix& ttilde) {
  const std::size_t n = ttilde.rows();
  TriangularAngles out;
  out.theta.resize(n);
  out.mu.resize(n);
  for (std::size_t i = 1; i < n; ++i) {
    double remaining = 1.0;
    for (std::size_t step = 0; step < i; ++step) {
      const std::size_t row = i - step;
      const double mag = std::abs(ttilde(row, i));
      const double ratio = remaining > 0.0 ? std::min(1.0, mag / remaining) : 0.0;
      const double th = std::asin(ratio);
      out.theta[i].push_back(th);
      remaining *= std::cos(th);
    }
    for (std::size_t row = i; row-- > 0;) out.mu[i].push_back(std::arg(ttilde(row, i)));
  }
  return out;
}

CMatrix ttilde_from_angles(const TriangularAngles& angles) {
  const std::size_t n = angles.theta.size();
  CMatrix t(n, n);
  t(0, 0) = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double remaining = 1.0;
    for (std::size_t step = 0; step < i; ++step) {
      const std::size_t row = i - step;
      const double th = angles.theta[i][step];
      const cplx phase = step == 0 ? cplx{1.0, 0.0} : std::polar(1.0, angles.mu[i][step - 1]);
      t(row, i) = phase * remaining * std::sin(th);
      remaining *= std::cos(th);
    }
    t(0, i) = std::polar(remaining, angles.mu[i][i - 1]);
  }
  return t;
}

}  // namespace qclone
