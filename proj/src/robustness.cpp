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

#include "qclone/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace qclone {

namespace {

constexpr double kWeightTol = 1e-9;

void check_rate(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("error model: rate must lie in [0, 1]");
}

struct Run {
  StateVector final_state;
  std::vector<double> cdf;
  std::map<std::size_t, double> recycle;  // target outcome -> fidelity
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

ErrorModel ErrorModel::decoherence(double delta1, std::vector<double> weights, int qubits) {
  check_rate(delta1);
  const std::size_t others = (std::size_t{1} << qubits) - 1;
  if (weights.empty()) weights.assign(others, 1.0 / static_cast<double>(others));
  if (weights.size() != others) throw DomainError("error model: need 2^k - 1 weights");
  double sum = 0.0;
  for (double w : weights) sum += std::abs(w);
  if (std::abs(sum - 1.0) > kWeightTol) throw DomainError("error model: sum |eps| must be 1");
  ErrorModel e;
  e.kind = Kind::Decoherence;
  e.rate = delta1;
  e.weights = std::move(weights);
  return e;
}

ErrorModel ErrorModel::preparation(double delta2, std::vector<cplx> amplitudes, int qubits) {
  check_rate(delta2);
  const std::size_t others = (std::size_t{1} << qubits) - 1;
  if (amplitudes.empty())
    amplitudes.assign(others, cplx{1.0 / std::sqrt(static_cast<double>(others)), 0.0});
  if (amplitudes.size() != others) throw DomainError("error model: need 2^k - 1 amplitudes");
  double sum = 0.0;
  for (const cplx& t : amplitudes) sum += std::norm(t);
  if (std::abs(sum - 1.0) > kWeightTol) throw DomainError("error model: sum |tau|^2 must be 1");
  ErrorModel e;
  e.kind = Kind::Preparation;
  e.rate = delta2;
  e.amplitudes = std::move(amplitudes);
  return e;
}

double ErrorModel::model_rate(int targets) const {
  const double clean = kind == Kind::Decoherence ? 1.0 - rate : 1.0 - rate * rate;
  return 1.0 - std::pow(clean, targets);
}

RobustnessReport robustness_run(const StateSet& set, const MachineCircuit& mc,
                                const ErrorModel& err, std::size_t trials, std::uint64_t seed) {
  if (!mc.mode.is_clone()) throw ModeError("robustness runs require a cloning machine");
  const int k = mc.qubits;
  const int m = mc.mode.m;
  const int targets = mc.parties - m;
  const std::size_t reg = std::size_t{1} << k;
  const int target_bits = k * targets;
  const std::size_t target_mask = (std::size_t{1} << target_bits) - 1;

  CVector prepared(reg);
  if (err.kind == ErrorModel::Kind::Preparation) {
    prepared[0] = std::sqrt(1.0 - err.rate * err.rate);
    for (std::size_t j = 1; j < reg; ++j) prepared[j] = err.rate * err.amplitudes[j - 1];
  }

  std::map<std::pair<int, std::vector<std::size_t>>, Run> cache;
  auto run_for = [&](int input, const std::vector<std::size_t>& config) -> Run& {
    auto key = std::make_pair(input, config);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<CVector> parts(static_cast<std::size_t>(m), set.state(input));
    for (int t = 0; t < targets; ++t)
      parts.push_back(err.kind == ErrorModel::Kind::Preparation
                          ? prepared
                          : CVector::basis(reg, config[static_cast<std::size_t>(t)]));
    Run r{apply(machine_input(mc, parts), mc.circuit), {}, {}};
    double acc = 0.0;
    for (const cplx& a : r.final_state.amplitudes().entries()) {
      acc += std::norm(a);
      r.cdf.push_back(acc);
    }
    return cache.emplace(key, std::move(r)).first->second;
  };

  auto recycle_fidelity = [&](Run& r, int input, std::size_t outcome) {
    auto it = r.recycle.find(outcome);
    if (it != r.recycle.end()) return it->second;
    CVector ref{1.0};
    for (int p = 0; p < m; ++p) ref = kron(ref, set.state(input));
    CVector phi(ref.dim());
    for (std::size_t a = 0; a < ref.dim(); ++a)
      phi[a] = r.final_state.amplitudes()[(((a << target_bits) | outcome) << 1)];
    const double nrm = phi.norm();
    const double f = nrm > 0.0 ? std::norm(inner(ref, phi)) / (nrm * nrm) : 0.0;
    r.recycle.emplace(outcome, f);
    return f;
  };

  RobustnessReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.model_rate = targets > 0 ? err.model_rate(targets) : 0.0;

  std::vector<double> fault_cdf;
  double acc = 0.0;
  for (double w : err.weights) fault_cdf.push_back(acc += std::abs(w));

  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int input = static_cast<int>(rng() % static_cast<std::uint64_t>(set.size()));
    std::vector<std::size_t> config(static_cast<std::size_t>(targets), 0);
    bool faulty = false;
    if (err.kind == ErrorModel::Kind::Decoherence) {
      for (auto& c : config) {
        if (unit(rng) < err.rate) {
          const double u = unit(rng) * fault_cdf.back();
          c = 1 + static_cast<std::size_t>(std::lower_bound(fault_cdf.begin(), fault_cdf.end(), u) -
                                          fault_cdf.begin());
          c = std::min(c, reg - 1);
          faulty = true;
        }
      }
    }
    Run& r = run_for(input, config);
    const double u = unit(rng) * r.cdf.back();
    const std::size_t idx = std::min<std::size_t>(
        static_cast<std::size_t>(std::lower_bound(r.cdf.begin(), r.cdf.end(), u) - r.cdf.begin()),
        r.cdf.size() - 1);
    if (idx & 1u) {
      if (faulty) ++rep.undetected_faults;
      continue;
    }
    ++rep.probe_failures;
    const std::size_t outcome = (idx >> 1) & target_mask;
    if (outcome == 0) {
      if (faulty) ++rep.undetected_faults;
      continue;
    }
    ++rep.detected;
    rep.min_recycle_fidelity = std::min(rep.min_recycle_fidelity, recycle_fidelity(r, input, outcome));
  }

  const double t = static_cast<double>(std::max<std::size_t>(trials, 1));
  rep.probe_failure_rate = static_cast<double>(rep.probe_failures) / t;
  rep.detected_rate = static_cast<double>(rep.detected) / t;
  rep.sigma = std::sqrt(rep.model_rate * (1.0 - rep.model_rate) / t);
  rep.z_score = rep.sigma > 0.0 ? (rep.detected_rate - rep.model_rate) / rep.sigma
                                : (rep.detected_rate == rep.model_rate ? 0.0 : INFINITY);

  // Exact detection probability for the preparation model (pure input).
  if (err.kind == ErrorModel::Kind::Preparation) {
    double sum = 0.0;
    for (int i = 0; i < set.size(); ++i) {
      const Run& r = run_for(i, std::vector<std::size_t>(static_cast<std::size_t>(targets), 0));
      const CVector& a = r.final_state.amplitudes();
      for (std::size_t idx = 0; idx < a.dim(); ++idx)
        if (!(idx & 1u) && ((idx >> 1) & target_mask)) sum += std::norm(a[idx]);
    }
    rep.exact_detect_probability = sum / set.size();
  } else {
    rep.exact_detect_probability = rep.model_rate;
  }
  return rep;
}

}  // namespace qclone
