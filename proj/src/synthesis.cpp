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

#include "qclone/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qclone {

namespace {

constexpr double kFeasibleTol = 1e-10;
constexpr double kBlockTol = 1e-8;
// Eigenvalues of W this close to 1 are boundary values carrying rounding.
constexpr double kUnitSnap = 1e-13;

CMatrix sqrt_gamma(const std::vector<double>& gammas) {
  std::vector<double> d(gammas.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::sqrt(gammas[i]);
  return CMatrix::diagonal(std::span<const double>(d));
}

void check_dimensions(const StateSet& set, const MachineSpec& spec) {
  if (spec.gammas().size() != static_cast<std::size_t>(set.size())) {
    std::ostringstream os;
    os << "machine has " << spec.gammas().size() << " success probabilities for "
       << set.size() << " states";
    throw DimensionError(os.str());
  }
}

double min_eigenvalue(const CMatrix& r) { return hermitian_eigen(r).values.front(); }

// Column 2j is failure index j, column 2j+1 is success index j.
CMatrix interleave_permutation(std::size_t n) {
  CMatrix t(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    t(j, 2 * j) = 1.0;
    t(n + j, 2 * j + 1) = 1.0;
  }
  return t;
}

}  // namespace

Mode Mode::identify(int m) { return Mode{Kind::Identify, m, 0}; }
Mode Mode::clone(int m, int n) { return Mode{Kind::Clone, m, n}; }

std::string Mode::describe() const {
  std::ostringstream os;
  if (is_clone())
    os << "clone " << m << "->" << n;
  else
    os << "identify from " << m;
  return os.str();
}

MachineSpec::MachineSpec(Mode mode, std::vector<double> gammas)
    : mode_(mode), gammas_(std::move(gammas)) {
  if (mode_.m < 1) throw DomainError("machine: input copy count must be >= 1");
  if (mode_.is_clone() && mode_.n <= mode_.m)
    throw DomainError("machine: clone mode requires N > M");
  if (gammas_.empty()) throw DomainError("machine: no success probabilities");
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (!(gammas_[i] > 0.0 && gammas_[i] <= 1.0)) {
      std::ostringstream os;
      os << "machine: gamma[" << i << "] = " << gammas_[i] << " is outside (0, 1]";
      throw DomainError(os.str());
    }
  }
}

CMatrix residual(const StateSet& set, const MachineSpec& spec) {
  check_dimensions(set, spec);
  const CMatrix xm = gram(set, spec.mode().m);
  if (spec.mode().is_clone()) {
    const CMatrix sg = sqrt_gamma(spec.gammas());
    return xm - sg * gram(set, spec.mode().n) * sg;
  }
  return xm - CMatrix::diagonal(std::span<const double>(spec.gammas()));
}

Feasibility feasibility(const StateSet& set, const MachineSpec& spec) {
  const double lo = min_eigenvalue(residual(set, spec));
  return {lo >= -kFeasibleTol, lo};
}

double optimal_uniform_gamma(const StateSet& set, const Mode& mode) {
  const auto n = static_cast<std::size_t>(set.size());
  auto min_eig = [&](double g) {
    return min_eigenvalue(residual(set, MachineSpec(mode, std::vector<double>(n, g))));
  };
  if (min_eig(1.0) >= -kFeasibleTol) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (min_eig(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // Regula falsi polish: the minimum eigenvalue is nearly linear at the bound.
  double flo = min_eig(lo);
  double fhi = min_eig(hi);
  for (int it = 0; it < 8 && flo > 0.0 && fhi < flo; ++it) {
    const double g = lo + flo * (hi - lo) / (flo - fhi);
    if (!(g > lo && g < hi)) break;
    const double fg = min_eig(g);
    if (fg >= 0.0) {
      lo = g;
      flo = fg;
    } else {
      hi = g;
      fhi = fg;
    }
  }
  return lo;
}

CMatrix coefficients(const StateSet& set, const MachineSpec& spec) {
  return cholesky_psd(residual(set, spec), kFeasibleTol);
}

SynthesisResult build_unitary(const StateSet& set, const MachineSpec& spec) {
  const Feasibility f = feasibility(set, spec);
  if (!f.feasible) {
    std::ostringstream os;
    os << "success probabilities are infeasible for this state set (minimum residual "
          "eigenvalue "
       << f.min_eigenvalue << ")";
    throw InfeasibleError(os.str(), f.min_eigenvalue);
  }
  const auto n = static_cast<std::size_t>(set.size());
  const Mode& mode = spec.mode();

  SynthesisResult res;
  res.mode = mode;
  res.gammas = spec.gammas();
  const CMatrix xm = gram(set, mode.m);
  res.b = mode.is_clone() ? sqrt_psd(gram(set, mode.n)) : CMatrix::identity(n);
  res.note = mode.is_clone() ? "clone: success states in symmetric square-root coordinates"
                             : "identify: success states on orthonormal labels";

  const CMatrix bs = res.b * sqrt_gamma(res.gammas);
  CMatrix z2 = bs * inverse(xm) * adjoint(bs);
  const Eigensystem eig = hermitian_eigen(z2);

  res.v = CMatrix(n, n);
  res.m.resize(n);
  std::vector<double> e(n), fdiag(n), einv(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = n - 1 - j;
    res.v.set_column(j, eig.vectors.column(src));
    double mj = std::clamp(eig.values[src], 0.0, 1.0);
    if (1.0 - mj <= kUnitSnap) mj = 1.0;
    if (mj <= 0.0) throw InvariantError("build_unitary: vanishing success eigenvalue");
    res.m[j] = mj;
    e[j] = std::sqrt(mj);
    fdiag[j] = std::sqrt(1.0 - mj);
    einv[j] = 1.0 / e[j];
    res.thetas.push_back(std::atan2(e[j], fdiag[j]));
  }
  const CMatrix vd = adjoint(res.v);
  const CMatrix zmat = res.v * CMatrix::diagonal(std::span<const double>(e)) * vd;
  const CMatrix ymat = res.v * CMatrix::diagonal(std::span<const double>(fdiag)) * vd;
  const CMatrix zinv = res.v * CMatrix::diagonal(std::span<const double>(einv)) * vd;

  res.a = zinv * bs;
  res.c = adjoint(res.a) * ymat;

  res.u = CMatrix(2 * n, 2 * n);
  res.u.set_block(0, 0, ymat);
  res.u.set_block(0, n, -1.0 * zmat);
  res.u.set_block(n, 0, zmat);
  res.u.set_block(n, n, ymat);

  const CMatrix ainv = inverse(res.a);
  const double top = max_abs_diff(res.u.block(0, 0, n, n), adjoint(res.c) * ainv);
  const double bottom = max_abs_diff(res.u.block(n, 0, n, n) * res.a, bs);
  const double gram_err = max_abs_diff(adjoint(res.a) * res.a, xm);
  const double res_err = max_abs_diff(res.c * adjoint(res.c), residual(set, spec));
  if (top > kBlockTol || bottom > kBlockTol || gram_err > kBlockTol || res_err > kBlockTol ||
      unitary_residual(res.u) > 1e-9) {
    std::ostringstream os;
    os << "build_unitary: block identities violated (top " << top << ", bottom " << bottom
       << ", gram " << gram_err << ", residual " << res_err << ")";
    throw InvariantError(os.str());
  }
  res.o = diagonalize(res).o;
  return res;
}

Diagonalization diagonalize(const SynthesisResult& res) {
  const std::size_t n = res.v.rows();
  CMatrix vt(2 * n, 2 * n);
  vt.set_block(0, 0, res.v);
  vt.set_block(n, n, res.v);
  const cplx mi{0.0, -1.0};
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix l(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    l(2 * j, 2 * j) = r;
    l(2 * j, 2 * j + 1) = mi * r;
    l(2 * j + 1, 2 * j) = mi * r;
    l(2 * j + 1, 2 * j + 1) = r;
  }
  Diagonalization d;
  d.o = vt * interleave_permutation(n) * l;
  for (double th : res.thetas) {
    d.phases.push_back(th);
    d.phases.push_back(-th);
  }
  return d;
}

HamiltonianSpec hamiltonian(const SynthesisResult& res, std::vector<int> branch) {
  const Diagonalization d = diagonalize(res);
  if (branch.empty()) branch.assign(d.phases.size(), 0);
  if (branch.size() != d.phases.size())
    throw DimensionError("hamiltonian: expected one branch integer per eigenvalue");
  std::vector<double> energies(d.phases.size());
  for (std::size_t k = 0; k < energies.size(); ++k)
    energies[k] = -d.phases[k] + 2.0 * std::numbers::pi * branch[k];
  HamiltonianSpec h;
  h.h = d.o * CMatrix::diagonal(std::span<const double>(energies)) * adjoint(d.o);
  h.h = 0.5 * (h.h + adjoint(h.h));
  h.branch_integers = std::move(branch);
  return h;
}

CMatrix block_to_interleaved(const CMatrix& u) {
  if (!u.is_square() || u.rows() % 2 != 0) throw ShapeError("block_to_interleaved: need 2n x 2n");
  const CMatrix t = interleave_permutation(u.rows() / 2);
  return adjoint(t) * u * t;
}

}  // namespace qclone
