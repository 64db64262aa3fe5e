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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qclone {

namespace {

constexpr double kAngleSlack = 1e-15;

void check_angle(double t, const char* name) {
  if (!(t >= 0.0 && t <= std::numbers::pi / 4 + kAngleSlack)) {
    std::ostringstream os;
    os << "d_single: " << name << " = " << t << " is outside [0, pi/4]";
    throw DomainError(os.str());
  }
}

double next_angle(double t1, double t2) {
  const double c = std::clamp(std::cos(2 * t1) * std::cos(2 * t2), -1.0, 1.0);
  return 0.5 * std::acos(c);
}

// Columns of the upper-triangular coordinates as 2^k vectors.
std::vector<CVector> states_of(const CMatrix& t, int qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  std::vector<CVector> out;
  for (std::size_t i = 0; i < t.cols(); ++i) {
    CVector v(dim);
    for (std::size_t r = 0; r < t.rows(); ++r) v[r] = t(r, i);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<int> register_wires(int first, int qubits) {
  std::vector<int> w;
  for (int q = 0; q < qubits; ++q) w.push_back(first + q);
  return w;
}

}  // namespace

CVector symmetric_state(double theta, int sign) {
  return CVector{std::cos(theta), sign * std::sin(theta)};
}

DGateSpec d_single(double theta1, double theta2) {
  check_angle(theta1, "theta1");
  check_angle(theta2, "theta2");
  DGateSpec spec;
  spec.kind = DGateSpec::Kind::SingleQubit;
  spec.theta1 = theta1;
  spec.theta2 = theta2;
  spec.theta3 = next_angle(theta1, theta2);

  // Reflection through span{x_+ - y_+, x_- - y_-} swaps each x with its y.
  std::vector<CVector> frame;
  for (int sign : {1, -1}) {
    const CVector x = kron(symmetric_state(theta1, sign), symmetric_state(theta2, sign));
    const CVector y = kron(symmetric_state(spec.theta3, sign), CVector{1.0, 0.0});
    CVector w(4);
    for (std::size_t k = 0; k < 4; ++k) w[k] = x[k] - y[k];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& f : frame) {
        const cplx p = inner(f, w);
        for (std::size_t k = 0; k < 4; ++k) w[k] -= p * f[k];
      }
    const double nw = w.norm();
    if (nw < 1e-12) continue;
    for (auto& z : w.entries()) z /= nw;
    frame.push_back(std::move(w));
  }
  spec.unitary = CMatrix::identity(4);
  for (const auto& f : frame)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) spec.unitary(r, c) -= 2.0 * f[r] * std::conj(f[c]);
  return spec;
}

DGateSpec d_multi(const CMatrix& src, const CMatrix& src2, int qubits) {
  const std::size_t n = src.cols();
  const std::size_t dim = std::size_t{1} << qubits;
  if (src2.cols() != n || src.rows() != n || src2.rows() != n || n > dim)
    throw DimensionError("d_multi: source forms must be n x n with n <= 2^k");
  DGateSpec spec;
  spec.kind = DGateSpec::Kind::Multipartite;
  spec.qubits = qubits;
  spec.source = src;
  spec.source2 = src2;

  const std::vector<CVector> a = states_of(src, qubits);
  const std::vector<CVector> b = states_of(src2, qubits);
  std::vector<CVector> products;
  for (std::size_t i = 0; i < n; ++i) products.push_back(kron(a[i], b[i]));
  const CMatrix gmat = CMatrix::from_columns(products);
  const CMatrix x = adjoint(gmat) * gmat;
  if (hermitian_eigen(x).values.front() < 1e-10)
    throw RankError("d_multi: combined states are linearly dependent");
  // Upper-triangular eta with eta^dagger eta = X, positive diagonal.
  spec.result = adjoint(cholesky_psd(x));
  const CMatrix frame = gmat * inverse(spec.result);

  const std::size_t full = dim * dim;
  CMatrix ginv(full, full);
  std::vector<bool> used(full, false);
  for (std::size_t m = 0; m < n; ++m) {
    ginv.set_column(m * dim, frame.column(m));
    used[m * dim] = true;
  }
  const CMatrix rest = orthonormal_complement(frame);
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < full; ++pos)
    if (!used[pos]) ginv.set_column(pos, rest.column(next++));
  spec.g = ginv;
  spec.unitary = adjoint(ginv);
  return spec;
}

DChain d_chain(double theta1, int copies) {
  if (copies < 1) throw DomainError("d_chain: copy count must be >= 1");
  check_angle(theta1, "theta1");
  DChain chain;
  double current = theta1;
  for (int party = copies - 2; party >= 0; --party) {
    DGateSpec g = d_single(theta1, current);
    current = g.theta3;
    chain.stages.push_back({party, std::move(g)});
  }
  chain.theta_final = current;
  chain.compressed = CMatrix{{std::cos(current), std::cos(current)},
                             {std::sin(current), -std::sin(current)}};
  return chain;
}

DChain d_chain_multi(const CMatrix& ttilde, int qubits, int copies) {
  if (copies < 1) throw DomainError("d_chain_multi: copy count must be >= 1");
  DChain chain;
  CMatrix current = ttilde;
  for (int party = copies - 2; party >= 0; --party) {
    DGateSpec g = d_multi(ttilde, current, qubits);
    current = g.result;
    chain.stages.push_back({party, std::move(g)});
  }
  chain.compressed = current;
  return chain;
}

Circuit chain_circuit(const DChain& chain, int qubits, int first_wire, int total_wires,
                      const std::vector<ControlSpec>& controls, bool inverse) {
  Circuit out(total_wires);
  auto stage = [&](const DStage& s) {
    std::vector<int> wires = register_wires(first_wire + s.party * qubits, qubits);
    const std::vector<int> second = register_wires(first_wire + (s.party + 1) * qubits, qubits);
    wires.insert(wires.end(), second.begin(), second.end());
    const CMatrix u = inverse ? adjoint(s.gate.unitary) : s.gate.unitary;
    out.append(compile_unitary(u, wires, total_wires, controls));
  };
  if (inverse)
    for (auto it = chain.stages.rbegin(); it != chain.stages.rend(); ++it) stage(*it);
  else
    for (const auto& s : chain.stages) stage(s);
  return out;
}

Circuit controlled_d(const DGateSpec& spec, const std::vector<int>& data_wires, int total_wires,
                     int probe_wire, int active_value) {
  return compile_unitary(spec.unitary, data_wires, total_wires, {{probe_wire, active_value}});
}

}  // namespace qclone
