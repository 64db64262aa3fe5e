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

#include "qclone/sim.hpp"

#include <cmath>
#include <sstream>

namespace qclone {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t wire_bit(int wire, int wires) { return std::size_t{1} << (wires - 1 - wire); }

void apply_kernel(CVector& a, int wires, std::size_t cmask, int target, const Mat2& u) {
  const std::size_t tbit = wire_bit(target, wires);
  const std::size_t dim = a.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & tbit) || (i & cmask) != cmask) continue;
    const std::size_t j = i | tbit;
    const cplx x = a[i];
    const cplx y = a[j];
    a[i] = u[0] * x + u[1] * y;
    a[j] = u[2] * x + u[3] * y;
  }
}

void swap_kernel(CVector& a, int wires, std::size_t cmask, int target) {
  const std::size_t tbit = wire_bit(target, wires);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(i & tbit) && (i & cmask) == cmask) std::swap(a[i], a[i | tbit]);
}

std::vector<int> party_wires(int party, int qubits) {
  std::vector<int> w;
  for (int q = 0; q < qubits; ++q) w.push_back(party * qubits + q);
  return w;
}

std::vector<ControlSpec> blank_controls(int from_party, int to_party, int qubits) {
  std::vector<ControlSpec> c;
  for (int p = from_party; p < to_party; ++p)
    for (int w : party_wires(p, qubits)) c.push_back({w, 0});
  return c;
}

std::vector<ControlSpec> with(std::vector<ControlSpec> c, ControlSpec extra) {
  c.push_back(extra);
  return c;
}

// n x n block in the top-left of a dim x dim identity.
CMatrix embed(const CMatrix& block, std::size_t dim) {
  CMatrix out = CMatrix::identity(dim);
  out.set_block(0, 0, block);
  return out;
}

}  // namespace

StateVector::StateVector(int wires, CVector amplitudes) : wires_(wires), amps_(std::move(amplitudes)) {
  if (wires < 1 || amps_.dim() != (std::size_t{1} << wires))
    throw DimensionError("state vector: amplitude count must be 2^wires");
}

StateVector StateVector::basis(int wires, std::size_t index) {
  return StateVector(wires, CVector::basis(std::size_t{1} << wires, index));
}

void apply_in_place(StateVector& sv, const Circuit& c) {
  if (sv.wires() != c.wires()) {
    std::ostringstream os;
    os << "apply: circuit has " << c.wires() << " wires, state has " << sv.wires();
    throw DimensionError(os.str());
  }
  const int n = sv.wires();
  CVector& a = sv.amplitudes();
  for (const Gate& g : c.gates()) {
    std::visit(Overloaded{
                   [&](const SingleGate& s) { apply_kernel(a, n, 0, s.wire, s.u); },
                   [&](const CNotGate& x) { swap_kernel(a, n, wire_bit(x.control, n), x.target); },
                   [&](const MultiControlledGate& m) {
                     std::size_t mask = 0;
                     for (int w : m.controls) mask |= wire_bit(w, n);
                     apply_kernel(a, n, mask, m.target, m.u);
                   },
                   [&](const PauliXGate& x) { swap_kernel(a, n, 0, x.wire); },
               },
               g);
  }
  if (c.global_phase() != cplx{1.0, 0.0})
    for (auto& z : a.entries()) z *= c.global_phase();
}

StateVector apply(const StateVector& sv, const Circuit& c) {
  StateVector out = sv;
  apply_in_place(out, c);
  return out;
}

MachineCircuit assemble(const StateSet& set, const MachineSpec& spec, const SynthesisResult& res) {
  const Mode& mode = spec.mode();
  if (set.size() != static_cast<int>(res.v.rows()) || res.mode.kind != mode.kind ||
      res.mode.m != mode.m || res.mode.n != mode.n)
    throw DimensionError("assemble: synthesis result does not match the machine");

  MachineCircuit mc;
  mc.mode = mode;
  mc.qubits = set.qubits();
  mc.states = set.size();
  mc.parties = mode.is_clone() ? mode.n : mode.m;
  mc.wires = mc.qubits * mc.parties + 1;
  mc.probe = mc.wires - 1;
  const int k = mc.qubits;
  const int total = mc.wires;
  const int probe = mc.probe;
  mc.circuit = Circuit(total);
  const std::size_t dim = std::size_t{1} << k;
  const auto n = static_cast<std::size_t>(set.size());
  mc.symmetric = set.symmetric_angle().has_value();

  CMatrix u0;
  DChain chain_in, chain_out;
  if (mc.symmetric) {
    const double th = *set.symmetric_angle();
    chain_in = d_chain(th, mode.m);
    if (mode.is_clone()) chain_out = d_chain(th, mode.n);
  } else {
    const TriangularForm tf = triangularize(set);
    u0 = tf.u0;
    chain_in = d_chain_multi(tf.ttilde, k, mode.m);
    if (mode.is_clone()) chain_out = d_chain_multi(tf.ttilde, k, mode.n);
  }
  mc.compressed_in = chain_in.compressed;
  if (mode.is_clone()) mc.compressed_out = chain_out.compressed;

  auto add_stage = [&](std::string name, Circuit c) {
    mc.circuit.append(c);
    mc.stages.push_back({std::move(name), std::move(c)});
  };
  auto on_parties = [&](const CMatrix& u, int from, int to, std::vector<ControlSpec> ctl) {
    Circuit c(total);
    for (int p = from; p < to; ++p) c.append(compile_unitary(u, party_wires(p, k), total, ctl));
    return c;
  };

  const std::vector<ControlSpec> rest_blank = blank_controls(1, mc.parties, k);
  const ControlSpec p0{probe, 0};
  const ControlSpec p1{probe, 1};

  if (!mc.symmetric) add_stage("rotate", on_parties(u0, 0, mode.m, {}));
  add_stage("compress", chain_circuit(chain_in, k, 0, total, {p0}, false));

  const CMatrix w_in = nearest_unitary(res.a * inverse(chain_in.compressed));
  add_stage("frame_in",
            compile_unitary(embed(w_in, dim), party_wires(0, k), total, with(rest_blank, p0)));

  // Core: V^dagger, the probe rotations K_j, then V, all on party 0.
  const CMatrix v = embed(res.v, dim);
  Circuit core(total);
  core.append(compile_unitary(adjoint(v), party_wires(0, k), total, rest_blank));
  for (std::size_t j = 0; j < n; ++j) {
    const double e = std::sqrt(res.m[j]);
    const double f = std::sqrt(1.0 - res.m[j]);
    std::vector<ControlSpec> ctl = rest_blank;
    for (int q = 0; q < k; ++q)
      ctl.push_back({q, static_cast<int>((j >> (k - 1 - q)) & 1u)});
    core.append(compile_unitary(CMatrix{{f, -e}, {e, f}}, {probe}, total, ctl));
  }
  core.append(compile_unitary(v, party_wires(0, k), total, rest_blank));
  add_stage("core", std::move(core));

  Circuit out(total);
  if (mode.is_clone()) {
    const CMatrix w_out = nearest_unitary(chain_out.compressed * inverse(res.b));
    out.append(
        compile_unitary(embed(w_out, dim), party_wires(0, k), total, with(rest_blank, p1)));
  }
  out.append(
      compile_unitary(embed(adjoint(w_in), dim), party_wires(0, k), total, with(rest_blank, p0)));
  add_stage("frame_out", std::move(out));

  Circuit dec(total);
  if (mode.is_clone()) dec.append(chain_circuit(chain_out, k, 0, total, {p1}, true));
  dec.append(chain_circuit(chain_in, k, 0, total, {p0}, true));
  add_stage("decompress", std::move(dec));

  if (!mc.symmetric) {
    const CMatrix u0d = adjoint(u0);
    if (mode.is_clone()) {
      Circuit back = on_parties(u0d, 0, mode.m, {});
      back.append(on_parties(u0d, mode.m, mode.n, {p1}));
      add_stage("unrotate", std::move(back));
    } else {
      add_stage("unrotate", on_parties(u0d, 0, mode.m, {p0}));
    }
  }
  return mc;
}

StateVector machine_input(const MachineCircuit& mc, const std::vector<CVector>& party_states) {
  if (static_cast<int>(party_states.size()) > mc.parties)
    throw DimensionError("machine_input: more party states than parties");
  const std::size_t dim = std::size_t{1} << mc.qubits;
  CVector acc{1.0};
  for (int p = 0; p < mc.parties; ++p) {
    const CVector part = p < static_cast<int>(party_states.size())
                             ? party_states[static_cast<std::size_t>(p)]
                             : CVector::basis(dim, 0);
    if (part.dim() != dim) throw DimensionError("machine_input: party state has wrong dimension");
    acc = kron(acc, part);
  }
  return StateVector(mc.wires, kron(acc, CVector{1.0, 0.0}));
}

StateVector machine_input(const MachineCircuit& mc, const StateSet& set, int i) {
  return machine_input(mc, std::vector<CVector>(static_cast<std::size_t>(mc.mode.m), set.state(i)));
}

ProbeMeasurement measure_probe(const StateVector& sv) {
  ProbeMeasurement pm;
  CVector s(sv.dim()), f(sv.dim());
  double ps = 0.0, pf = 0.0;
  for (std::size_t i = 0; i < sv.dim(); ++i) {
    const cplx a = sv.amplitudes()[i];
    if (i & 1u) {
      s[i] = a;
      ps += std::norm(a);
    } else {
      f[i] = a;
      pf += std::norm(a);
    }
  }
  const double total = ps + pf;
  pm.p_success = total > 0.0 ? ps / total : 0.0;
  pm.p_failure = total > 0.0 ? pf / total : 0.0;
  pm.success_empty = ps <= 1e-300;
  pm.failure_empty = pf <= 1e-300;
  if (!pm.success_empty)
    for (auto& z : s.entries()) z /= std::sqrt(ps);
  if (!pm.failure_empty)
    for (auto& z : f.entries()) z /= std::sqrt(pf);
  pm.success_state = StateVector(sv.wires(), std::move(s));
  pm.failure_state = StateVector(sv.wires(), std::move(f));
  return pm;
}

std::vector<double> identify_measure(const MachineCircuit& mc, const StateVector& success_state) {
  const int shift = mc.wires - mc.qubits;
  std::vector<double> dist(static_cast<std::size_t>(mc.states), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < success_state.dim(); ++i) {
    const double p = std::norm(success_state.amplitudes()[i]);
    const std::size_t label = i >> shift;
    if (label < dist.size()) dist[label] += p;
    total += p;
  }
  if (total > 0.0)
    for (auto& d : dist) d /= total;
  return dist;
}

SimOutcome simulate(const MachineCircuit& mc, const StateSet& set, int i) {
  const StateVector out = apply(machine_input(mc, set, i), mc.circuit);
  const ProbeMeasurement pm = measure_probe(out);
  SimOutcome so;
  so.success_probability = pm.p_success;
  so.success_state = pm.success_state;
  so.failure_state = pm.failure_state;
  if (mc.mode.is_clone()) {
    CVector target{1.0};
    for (int p = 0; p < mc.parties; ++p) target = kron(target, set.state(i));
    target = kron(target, CVector{0.0, 1.0});
    if (!pm.success_empty) so.clone_fidelity = std::norm(inner(target, pm.success_state.amplitudes()));
    // Targets occupy the wires after the first M parties, before the probe.
    const int target_bits = mc.qubits * (mc.parties - mc.mode.m);
    const std::size_t mask = ((std::size_t{1} << target_bits) - 1) << 1;
    if (!pm.failure_empty)
      for (std::size_t idx = 0; idx < out.dim(); ++idx)
        if (idx & mask) so.failure_target_leak += std::norm(pm.failure_state.amplitudes()[idx]);
  } else if (!pm.success_empty) {
    so.identify_distribution = identify_measure(mc, pm.success_state);
  }
  return so;
}

}  // namespace qclone
