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

#include "qclone/dgate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qclone/statesets.hpp"
#include "test_util.hpp"

using namespace qclone;
using qclone::testing::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

CVector zero_state(std::size_t dim) { return CVector::basis(dim, 0); }

CVector kron_all(const std::vector<CVector>& parts) {
  CVector acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = kron(acc, parts[i]);
  return acc;
}

// Dense I (x) D (x) I on `parties` registers of `qubits` qubits.
CMatrix lift_stage(const CMatrix& d, int party, int parties, int qubits) {
  const std::size_t reg = std::size_t{1} << qubits;
  CMatrix left = CMatrix::identity(1);
  for (int p = 0; p < party; ++p) left = kron(left, CMatrix::identity(reg));
  CMatrix right = CMatrix::identity(1);
  for (int p = party + 2; p < parties; ++p) right = kron(right, CMatrix::identity(reg));
  return kron(kron(left, d), right);
}

CVector run_chain_dense(const DChain& chain, CVector v, int parties, int qubits) {
  for (const auto& s : chain.stages) v = lift_stage(s.gate.unitary, s.party, parties, qubits) * v;
  return v;
}

StateSet random_set(int qubits, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CVector> states;
  for (int i = 0; i < n; ++i) states.push_back(random_state(std::size_t{1} << qubits, rng));
  return StateSet::from_vectors(qubits, std::move(states));
}

CVector column_state(const CMatrix& t, std::size_t i, std::size_t dim) {
  CVector v(dim);
  for (std::size_t r = 0; r < t.rows(); ++r) v[r] = t(r, i);
  return v;
}

}  // namespace

TEST(dgate, single_theta2_zero_is_identity_on_states) {
  const double t1 = 0.37;
  const DGateSpec d = d_single(t1, 0.0);
  EXPECT_NEAR(d.theta3, t1, 1e-15);
  for (int s : {1, -1}) {
    const CVector in = kron(symmetric_state(t1, s), zero_state(2));
    EXPECT_LT(max_abs_diff(d.unitary * in, in), 1e-15);
  }
}

TEST(dgate, single_orthogonal_stays_orthogonal) {
  const DGateSpec d = d_single(kPi / 4, kPi / 4);
  EXPECT_NEAR(d.theta3, kPi / 4, 1e-15);
}

TEST(dgate, single_pi_over_six) {
  const DGateSpec d = d_single(kPi / 6, kPi / 6);
  EXPECT_NEAR(std::cos(2 * d.theta3), 0.25, 1e-15);
  EXPECT_NEAR(d.theta3, 0.5 * std::acos(0.25), 1e-15);
  for (int s : {1, -1}) {
    const CVector in = kron(symmetric_state(kPi / 6, s), symmetric_state(kPi / 6, s));
    const CVector out = kron(symmetric_state(d.theta3, s), zero_state(2));
    EXPECT_LT(max_abs_diff(d.unitary * in, out), 1e-12);
  }
}

TEST(dgate, single_laws_on_grid) {
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      const double t1 = kPi / 4 * i / 8, t2 = kPi / 4 * j / 8;
      const DGateSpec d = d_single(t1, t2);
      EXPECT_LT(hermitian_defect(d.unitary), 1e-10);
      EXPECT_LT(max_abs_diff(d.unitary * d.unitary, CMatrix::identity(4)), 1e-10);
      EXPECT_LT(unitary_residual(d.unitary), 1e-10);
      EXPECT_NEAR(std::cos(2 * d.theta3), std::cos(2 * t1) * std::cos(2 * t2), 1e-12);
      EXPECT_GE(d.theta3, 0.0);
      EXPECT_LE(d.theta3, kPi / 4 + 1e-15);
      for (int s : {1, -1}) {
        const CVector in = kron(symmetric_state(t1, s), symmetric_state(t2, s));
        const CVector out = kron(symmetric_state(d.theta3, s), zero_state(2));
        EXPECT_LT(max_abs_diff(d.unitary * in, out), 1e-12);
      }
    }
}

TEST(dgate, single_rejects_bad_angles) {
  EXPECT_THROW(d_single(-0.1, 0.2), DomainError);
  EXPECT_THROW(d_single(0.2, 1.0), DomainError);
}

TEST(dgate, chain_base_and_recursion) {
  const double t1 = 0.3;
  const DChain two = d_chain(t1, 2);
  ASSERT_EQ(two.stages.size(), 1u);
  EXPECT_NEAR(std::cos(2 * two.theta_final), std::pow(std::cos(2 * t1), 2), 1e-12);
  for (int k = 1; k <= 5; ++k) {
    const DChain c = d_chain(t1, k);
    EXPECT_EQ(c.stages.size(), std::size_t(k - 1));
    EXPECT_NEAR(std::cos(2 * c.theta_final), std::pow(std::cos(2 * t1), k), 1e-12);
    EXPECT_NEAR(d_chain(kPi / 4, k).theta_final, kPi / 4, 1e-15);
  }
}

TEST(dgate, chain_state_vector_pi_over_six) {
  const DChain c = d_chain(kPi / 6, 3);
  EXPECT_NEAR(std::cos(2 * c.theta_final), 0.125, 1e-12);
  for (int s : {1, -1}) {
    const CVector psi = symmetric_state(kPi / 6, s);
    const CVector in = kron_all({psi, psi, psi});
    const CVector expect = kron_all({symmetric_state(c.theta_final, s), zero_state(2), zero_state(2)});
    EXPECT_LT(max_abs_diff(run_chain_dense(c, in, 3, 1), expect), 1e-10);
    const CVector via_circuit = matrix(chain_circuit(c, 1, 0, 3, {}, false)) * in;
    EXPECT_LT(max_abs_diff(via_circuit, expect), 1e-10);
    const CVector back = matrix(chain_circuit(c, 1, 0, 3, {}, true)) * expect;
    EXPECT_LT(max_abs_diff(back, in), 1e-10);
  }
}

TEST(dgate, chain_compressed_coordinates) {
  const DChain c = d_chain(0.2, 4);
  const double ck = std::cos(c.theta_final), sk = std::sin(c.theta_final);
  EXPECT_LT(max_abs_diff(c.compressed, CMatrix{{ck, ck}, {sk, -sk}}), 1e-15);
}

TEST(dgate, multi_orthonormal_inputs) {
  const CMatrix id = CMatrix::identity(4);
  const DGateSpec d = d_multi(id, id, 2);
  EXPECT_LT(max_abs_diff(d.result, id), 1e-12);
  EXPECT_LT(unitary_residual(d.unitary), 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    const CVector in = kron(CVector::basis(4, i), CVector::basis(4, i));
    EXPECT_LT(max_abs_diff(d.unitary * in, CVector::basis(16, i * 4)), 1e-12);
  }
}

TEST(dgate, multi_tensor_square_of_pair) {
  const double th = 0.33;
  std::vector<CVector> sq;
  for (int s : {1, -1}) sq.push_back(kron(symmetric_state(th, s), symmetric_state(th, s)));
  const StateSet set = StateSet::from_vectors(2, sq);
  const CMatrix pair_gram = gram(StateSet::symmetric_pair(th), 1);
  const CMatrix g1 = gram(set, 1);
  EXPECT_NEAR(g1(0, 1).real(), std::pow(pair_gram(0, 1).real(), 2), 1e-14);
  const TriangularForm tf = triangularize(set);
  const DGateSpec d = d_multi(tf.ttilde, tf.ttilde, 2);
  const CMatrix eta_gram = adjoint(d.result) * d.result;
  EXPECT_LT(max_abs_diff(eta_gram, gram(set, 2)), 1e-12);
  // Compressing two copies of the square equals compressing four copies of
  // the pair: overlap cos^4(2 theta).
  const DChain four = d_chain(th, 4);
  EXPECT_NEAR(eta_gram(0, 1).real(), std::cos(2 * four.theta_final), 1e-12);
}

TEST(dgate, multi_random_sets) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const StateSet set = random_set(2, 2 + int(seed % 3), 900 + seed);
    const TriangularForm tf = triangularize(set);
    const StateSet other = random_set(2, set.size(), 1900 + seed);
    const TriangularForm tf2 = triangularize(other);
    const DGateSpec d = d_multi(tf.ttilde, tf2.ttilde, 2);
    const std::size_t n = std::size_t(set.size());
    CMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        x(i, j) = inner(set.state(int(i)), set.state(int(j))) *
                  inner(other.state(int(i)), other.state(int(j)));
    EXPECT_LT(max_abs_diff(adjoint(d.result) * d.result, x), 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(d.result(i, i).real(), 0.0);
      for (std::size_t r = i + 1; r < n; ++r) EXPECT_EQ(d.result(r, i), cplx(0.0));
    }
    EXPECT_LT(unitary_residual(d.unitary), 1e-9);
    EXPECT_LT(max_abs_diff(d.g * d.unitary, CMatrix::identity(16)), 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      const CVector in = kron(column_state(tf.ttilde, i, 4), column_state(tf2.ttilde, i, 4));
      const CVector out = kron(column_state(d.result, i, 4), zero_state(4));
      EXPECT_LT(max_abs_diff(d.unitary * in, out), 1e-9);
      EXPECT_LT(max_abs_diff(adjoint(d.unitary) * out, in), 1e-9);
    }
  }
}

TEST(dgate, multi_chain_three_copies) {
  const StateSet set = random_set(2, 3, 77);
  const TriangularForm tf = triangularize(set);
  const DChain c = d_chain_multi(tf.ttilde, 2, 3);
  ASSERT_EQ(c.stages.size(), 2u);
  EXPECT_LT(max_abs_diff(adjoint(c.compressed) * c.compressed, gram(set, 3)), 1e-9);
  for (std::size_t i = 0; i < 3; ++i) {
    const CVector psi = column_state(tf.ttilde, i, 4);
    const CVector in = kron_all({psi, psi, psi});
    const CVector expect = kron_all({column_state(c.compressed, i, 4), zero_state(4), zero_state(4)});
    EXPECT_LT(max_abs_diff(run_chain_dense(c, in, 3, 2), expect), 1e-9);
  }
}

TEST(dgate, controlled_d_blocks) {
  const DGateSpec d = d_single(0.4, 0.25);
  const Circuit on1 = controlled_d(d, {0, 1}, 3, 2, 1);
  const CMatrix m = matrix(on1);
  // Probe is the last (least significant) wire.
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      EXPECT_LT(std::abs(m(2 * a, 2 * b) - (a == b ? 1.0 : 0.0)), 1e-8);
      EXPECT_LT(std::abs(m(2 * a + 1, 2 * b + 1) - d.unitary(a, b)), 1e-8);
      EXPECT_LT(std::abs(m(2 * a + 1, 2 * b)), 1e-12);
    }
  const Circuit on0 = controlled_d(d, {0, 1}, 3, 2, 0);
  const CMatrix m0 = matrix(on0);
  EXPECT_LT(std::abs(m0(0, 0) - d.unitary(0, 0)), 1e-8);
  EXPECT_LT(std::abs(m0(1, 1) - 1.0), 1e-8);
  DGateSpec inv = d;
  inv.unitary = adjoint(d.unitary);
  Circuit both = on1;
  both.append(controlled_d(inv, {0, 1}, 3, 2, 1));
  EXPECT_LT(max_abs_diff(matrix(both), CMatrix::identity(8)), 1e-9);
}
