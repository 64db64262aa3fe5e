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

#include "qclone/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qclone {

namespace {

constexpr double kPayloadTol = 1e-10;
constexpr double kDropTol = 1e-12;
constexpr int kMatrixWireCap = 12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double mat2_unitary_residual(const Mat2& u) {
  return mat2_distance(mat2_mul(mat2_adjoint(u), u), mat2_identity());
}

int bit_of(std::size_t index, int wire, int wires) {
  return static_cast<int>((index >> (wires - 1 - wire)) & 1u);
}

std::size_t flip(std::size_t index, int wire, int wires) {
  return index ^ (std::size_t{1} << (wires - 1 - wire));
}

Mat2 phase_mat(double alpha) { return {1.0, 0.0, 0.0, std::polar(1.0, alpha)}; }

Mat2 rz(double t) { return {std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2)}; }

Mat2 ry(double t) {
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  return {c, -s, s, c};
}

}  // namespace

Mat2 mat2_identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 mat2_pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat2_adjoint(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat2 mat2_from(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("mat2_from: expected a 2x2 matrix");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

CMatrix mat2_to_matrix(const Mat2& a) { return CMatrix{{a[0], a[1]}, {a[2], a[3]}}; }

double mat2_distance(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Mat2 mat2_sqrt(const Mat2& u) {
  const cplx tr = u[0] + u[3];
  const cplx det = u[0] * u[3] - u[1] * u[2];
  const cplx disc = std::sqrt(tr * tr / 4.0 - det);
  const cplx mu1 = std::sqrt(tr / 2.0 + disc);
  const cplx mu2 = std::sqrt(tr / 2.0 - disc);
  const cplx s = mu1 * mu2;
  const cplx t = mu1 + mu2;
  return {(u[0] + s) / t, u[1] / t, u[2] / t, (u[3] + s) / t};
}

// ---------------------------------------------------------------- Circuit

Circuit::Circuit(int wires) : wires_(wires) {
  if (wires < 1) throw DimensionError("circuit: wire count must be >= 1");
}

std::vector<int> gate_wires(const Gate& g) {
  return std::visit(Overloaded{
                        [](const SingleGate& s) { return std::vector<int>{s.wire}; },
                        [](const CNotGate& c) { return std::vector<int>{c.control, c.target}; },
                        [](const MultiControlledGate& m) {
                          std::vector<int> w = m.controls;
                          w.push_back(m.target);
                          return w;
                        },
                        [](const PauliXGate& x) { return std::vector<int>{x.wire}; },
                    },
                    g);
}

void Circuit::add(Gate g) {
  std::vector<int> w = gate_wires(g);
  for (int x : w)
    if (x < 0 || x >= wires_) {
      std::ostringstream os;
      os << "circuit: wire " << x << " out of range for " << wires_ << " wires";
      throw DimensionError(os.str());
    }
  std::sort(w.begin(), w.end());
  if (std::adjacent_find(w.begin(), w.end()) != w.end())
    throw DimensionError("circuit: gate uses the same wire twice");
  const Mat2* payload = nullptr;
  if (auto* s = std::get_if<SingleGate>(&g)) payload = &s->u;
  if (auto* m = std::get_if<MultiControlledGate>(&g)) payload = &m->u;
  if (payload && mat2_unitary_residual(*payload) > kPayloadTol)
    throw UnitarityError("circuit: gate payload is not unitary");
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.wires_ > wires_) throw DimensionError("circuit: appended circuit is wider");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  phase_ *= other.phase_;
}

Circuit Circuit::adjoint() const {
  Circuit out(wires_);
  out.phase_ = std::conj(phase_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    out.gates_.push_back(std::visit(
        Overloaded{
            [](const SingleGate& s) -> Gate { return SingleGate{s.wire, mat2_adjoint(s.u)}; },
            [](const CNotGate& c) -> Gate { return c; },
            [](const MultiControlledGate& m) -> Gate {
              return MultiControlledGate{m.controls, m.target, mat2_adjoint(m.u)};
            },
            [](const PauliXGate& x) -> Gate { return x; },
        },
        *it));
  }
  return out;
}

// ---------------------------------------------------------------- matrix

CMatrix matrix(const Circuit& c) {
  const int n = c.wires();
  if (n > kMatrixWireCap) {
    std::ostringstream os;
    os << "matrix: " << n << " wires exceed the dense evaluation cap of " << kMatrixWireCap;
    throw SizeError(os.str());
  }
  const std::size_t dim = std::size_t{1} << n;
  CMatrix acc = CMatrix::identity(dim);
  for (const Gate& g : c.gates()) {
    // Generic form: controls must read 1, payload acts on target.
    std::vector<int> controls;
    int target = 0;
    Mat2 u = mat2_pauli_x();
    std::visit(Overloaded{
                   [&](const SingleGate& s) { target = s.wire, u = s.u; },
                   [&](const CNotGate& x) { controls = {x.control}, target = x.target; },
                   [&](const MultiControlledGate& m) {
                     controls = m.controls, target = m.target, u = m.u;
                   },
                   [&](const PauliXGate& x) { target = x.wire; },
               },
               g);
    // Sparse gate matrix: each basis column maps to at most two rows.
    CMatrix next(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      bool active = true;
      for (int w : controls) active = active && bit_of(col, w, n) == 1;
      std::vector<std::pair<std::size_t, cplx>> image;
      if (!active) {
        image.push_back({col, 1.0});
      } else {
        const int b = bit_of(col, target, n);
        const std::size_t r0 = b == 0 ? col : flip(col, target, n);
        const std::size_t r1 = flip(r0, target, n);
        image.push_back({r0, u[0 + b]});
        image.push_back({r1, u[2 + b]});
      }
      for (const auto& [row, amp] : image) {
        if (amp == cplx{0.0, 0.0}) continue;
        for (std::size_t k = 0; k < dim; ++k) next(row, k) += amp * acc(col, k);
      }
    }
    acc = std::move(next);
  }
  acc *= c.global_phase();
  return acc;
}

// ---------------------------------------------------------------- two-level

std::vector<Factor> two_level_decompose(const CMatrix& u) {
  if (!u.is_square()) throw ShapeError("two_level_decompose: matrix must be square");
  if (unitary_residual(u) > 1e-8) throw UnitarityError("two_level_decompose: input not unitary");
  const std::size_t n = u.rows();
  CMatrix w = u;
  std::vector<Factor> out;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx a = w(c, c);
      const cplx b = w(r, c);
      if (std::abs(b) <= 1e-15) continue;
      const double rho = std::hypot(std::abs(a), std::abs(b));
      const Mat2 g{std::conj(a) / rho, std::conj(b) / rho, -b / rho, a / rho};
      for (std::size_t k = 0; k < n; ++k) {
        const cplx x = w(c, k);
        const cplx y = w(r, k);
        w(c, k) = g[0] * x + g[1] * y;
        w(r, k) = g[2] * x + g[3] * y;
      }
      const Mat2 gd = mat2_adjoint(g);
      if (mat2_distance(gd, mat2_identity()) > kDropTol) out.push_back(TwoLevel{c, r, gd});
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = std::arg(w(k, k));
    if (std::abs(alpha) > kDropTol) out.push_back(PhaseFactor{k, alpha});
  }
  return out;
}

CMatrix factor_product(const std::vector<Factor>& factors, std::size_t dim) {
  CMatrix acc = CMatrix::identity(dim);
  for (const Factor& f : factors) {
    CMatrix m = CMatrix::identity(dim);
    if (const auto* t = std::get_if<TwoLevel>(&f)) {
      m(t->t, t->t) = t->u[0];
      m(t->t, t->l) = t->u[1];
      m(t->l, t->t) = t->u[2];
      m(t->l, t->l) = t->u[3];
    } else {
      const auto& p = std::get<PhaseFactor>(f);
      m(p.k, p.k) = std::polar(1.0, p.alpha);
    }
    acc = acc * m;
  }
  return acc;
}

Conjugator permutation_to_cnots(std::size_t i, std::size_t j, int wires) {
  if (i == j) throw DegenerateError("permutation_to_cnots: indices must differ");
  const std::size_t dim = std::size_t{1} << wires;
  if (i >= dim || j >= dim) throw DimensionError("permutation_to_cnots: index out of range");
  int k0 = 0;
  while (bit_of(i, k0, wires) == bit_of(j, k0, wires)) ++k0;
  bool swapped = false;
  if (bit_of(i, k0, wires) == 0) {
    std::swap(i, j);
    swapped = true;
  }
  Conjugator q{Circuit(wires), k0, swapped};
  for (int s = 0; s < wires; ++s)
    if (s != k0 && bit_of(i, s, wires) != bit_of(j, s, wires)) q.circuit.add(CNotGate{k0, s});
  // After the CNOTs both strings agree off the pivot and equal j there.
  for (int s = 0; s < wires; ++s)
    if (s != k0 && bit_of(j, s, wires) == 0) q.circuit.add(PauliXGate{s});
  return q;
}

namespace {

int log2_exact(std::size_t dim) {
  int w = 0;
  while ((std::size_t{1} << w) < dim) ++w;
  if ((std::size_t{1} << w) != dim || w == 0)
    throw ShapeError("factor dimension must be a power of two >= 2");
  return w;
}

void emit_controlled(Circuit& out, std::vector<int> controls, int target, const Mat2& u) {
  if (controls.empty())
    out.add(SingleGate{target, u});
  else
    out.add(MultiControlledGate{std::move(controls), target, u});
}

std::vector<int> all_but(int wires, int skip) {
  std::vector<int> w;
  for (int x = 0; x < wires; ++x)
    if (x != skip) w.push_back(x);
  return w;
}

}  // namespace

Circuit lift_two_level(const std::vector<Factor>& factors, int wires) {
  Circuit out(wires);
  // The rightmost factor acts first.
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Factor& f = *it;
    if (const auto* t = std::get_if<TwoLevel>(&f)) {
      if (t->t >= (std::size_t{1} << wires) || t->l >= (std::size_t{1} << wires))
        throw ShapeError("lift_two_level: factor index exceeds circuit dimension");
      // e_l goes to the all-ones string, e_t to the pivot-cleared one.
      const Conjugator q = permutation_to_cnots(t->l, t->t, wires);
      const Mat2 x = mat2_pauli_x();
      const Mat2 payload = q.swapped ? mat2_mul(x, mat2_mul(t->u, x)) : t->u;
      out.append(q.circuit);
      emit_controlled(out, all_but(wires, q.pivot), q.pivot, payload);
      out.append(q.circuit.adjoint());
    } else {
      const auto& p = std::get<PhaseFactor>(f);
      if (p.k >= (std::size_t{1} << wires))
        throw ShapeError("lift_two_level: factor index exceeds circuit dimension");
      Circuit flips(wires);
      for (int s = 0; s < wires; ++s)
        if (bit_of(p.k, s, wires) == 0) flips.add(PauliXGate{s});
      out.append(flips);
      emit_controlled(out, all_but(wires, wires - 1), wires - 1, phase_mat(p.alpha));
      out.append(flips);
    }
  }
  return out;
}

Circuit lift_factors(const std::vector<Factor>& factors, std::size_t dim) {
  return lift_two_level(factors, log2_exact(dim));
}

Circuit compile_unitary(const CMatrix& u, const std::vector<int>& targets, int total_wires,
                        const std::vector<ControlSpec>& controls) {
  const int local = static_cast<int>(targets.size());
  if (!u.is_square() || u.rows() != (std::size_t{1} << local))
    throw ShapeError("compile_unitary: matrix size does not match target count");
  std::vector<int> extra;
  Circuit flips(total_wires);
  for (const ControlSpec& c : controls) {
    extra.push_back(c.wire);
    if (c.value == 0) flips.add(PauliXGate{c.wire});
  }
  auto map = [&](int w) { return targets.at(static_cast<std::size_t>(w)); };
  Circuit out(total_wires);
  out.append(flips);
  if (local == 1) {
    const Mat2 m = mat2_from(u);
    if (mat2_distance(m, mat2_identity()) > kDropTol) emit_controlled(out, extra, targets[0], m);
    out.append(flips);
    return out;
  }
  const Circuit core = lift_factors(two_level_decompose(u), u.rows());
  for (const Gate& g : core.gates()) {
    std::visit(Overloaded{
                   [&](const SingleGate& s) { emit_controlled(out, extra, map(s.wire), s.u); },
                   [&](const CNotGate& c) { out.add(CNotGate{map(c.control), map(c.target)}); },
                   [&](const MultiControlledGate& m) {
                     std::vector<int> cs = extra;
                     for (int w : m.controls) cs.push_back(map(w));
                     out.add(MultiControlledGate{cs, map(m.target), m.u});
                   },
                   [&](const PauliXGate& x) { out.add(PauliXGate{map(x.wire)}); },
               },
               g);
  }
  out.append(flips);
  return out;
}

// ---------------------------------------------------------------- lowering

namespace {

struct Zyz {
  double alpha, beta, gamma, delta;
};

// u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
Zyz zyz(const Mat2& u) {
  const cplx det = u[0] * u[3] - u[1] * u[2];
  const double alpha = std::arg(det) / 2.0;
  const cplx ph = std::polar(1.0, -alpha);
  const cplx a = u[0] * ph;
  const cplx b = u[2] * ph;
  const double gamma = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 1e-300 ? -2.0 * std::arg(a) : 0.0;
  const double diff = std::abs(b) > 1e-300 ? 2.0 * std::arg(b) : 0.0;
  return {alpha, (sum + diff) / 2.0, gamma, (sum - diff) / 2.0};
}

bool is_pauli_x(const Mat2& u) { return mat2_distance(u, mat2_pauli_x()) <= kDropTol; }

void add_single(Circuit& out, int wire, const Mat2& u) {
  if (mat2_distance(u, mat2_identity()) > kDropTol) out.add(SingleGate{wire, u});
}

void lower_gate(Circuit& out, const std::vector<int>& controls, int target, const Mat2& u,
                int recursion_limit);

void lower_lambda1(Circuit& out, int control, int target, const Mat2& u) {
  if (is_pauli_x(u)) {
    out.add(CNotGate{control, target});
    return;
  }
  const Zyz z = zyz(u);
  const Mat2 a = mat2_mul(rz(z.beta), ry(z.gamma / 2));
  const Mat2 b = mat2_mul(ry(-z.gamma / 2), rz(-(z.delta + z.beta) / 2));
  const Mat2 c = rz((z.delta - z.beta) / 2);
  add_single(out, target, c);
  out.add(CNotGate{control, target});
  add_single(out, target, b);
  out.add(CNotGate{control, target});
  add_single(out, target, a);
  add_single(out, control, phase_mat(z.alpha));
}

void lower_toffoli(Circuit& out, int c1, int c2, int t) {
  const double r = 1.0 / std::sqrt(2.0);
  const Mat2 h{r, r, r, -r};
  const Mat2 tg = phase_mat(std::numbers::pi / 4);
  const Mat2 td = phase_mat(-std::numbers::pi / 4);
  out.add(SingleGate{t, h});
  out.add(CNotGate{c2, t});
  out.add(SingleGate{t, td});
  out.add(CNotGate{c1, t});
  out.add(SingleGate{t, tg});
  out.add(CNotGate{c2, t});
  out.add(SingleGate{t, td});
  out.add(CNotGate{c1, t});
  out.add(SingleGate{c2, tg});
  out.add(SingleGate{t, tg});
  out.add(SingleGate{t, h});
  out.add(CNotGate{c1, c2});
  out.add(SingleGate{c1, tg});
  out.add(SingleGate{c2, td});
  out.add(CNotGate{c1, c2});
}

// Square-root recursion: Lambda_m(u) from Lambda_1(v), Lambda_{m-1}(X) and
// Lambda_{m-1}(v) with v^2 = u.
void lower_recursive(Circuit& out, const std::vector<int>& controls, int target, const Mat2& u,
                     int recursion_limit) {
  const Mat2 v = mat2_sqrt(u);
  const int last = controls.back();
  const std::vector<int> rest(controls.begin(), controls.end() - 1);
  lower_lambda1(out, last, target, v);
  lower_gate(out, rest, last, mat2_pauli_x(), recursion_limit);
  lower_lambda1(out, last, target, mat2_adjoint(v));
  lower_gate(out, rest, last, mat2_pauli_x(), recursion_limit);
  lower_gate(out, rest, target, v, recursion_limit);
}

// Gray-code construction: with v^(2^(m-1)) = u, apply v^(+-1) controlled by
// the parity of every nonempty control subset, sign + for odd subsets.
void lower_gray(Circuit& out, const std::vector<int>& controls, int target, const Mat2& u) {
  const std::size_t m = controls.size();
  Mat2 v = u;
  for (std::size_t i = 0; i + 1 < m; ++i) v = mat2_sqrt(v);
  const Mat2 vd = mat2_adjoint(v);
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<int> members;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (std::size_t{1} << b)) members.push_back(controls[b]);
    const int pivot = members.back();
    for (std::size_t k = 0; k + 1 < members.size(); ++k) out.add(CNotGate{members[k], pivot});
    lower_lambda1(out, pivot, target, members.size() % 2 == 1 ? v : vd);
    for (std::size_t k = members.size() - 1; k-- > 0;) out.add(CNotGate{members[k], pivot});
  }
}

void lower_gate(Circuit& out, const std::vector<int>& controls, int target, const Mat2& u,
                int recursion_limit) {
  if (controls.empty()) {
    if (is_pauli_x(u))
      out.add(SingleGate{target, mat2_pauli_x()});
    else
      add_single(out, target, u);
  } else if (controls.size() == 1) {
    lower_lambda1(out, controls[0], target, u);
  } else if (controls.size() == 2 && is_pauli_x(u)) {
    lower_toffoli(out, controls[0], controls[1], target);
  } else if (static_cast<int>(controls.size()) <= recursion_limit) {
    lower_recursive(out, controls, target, u, recursion_limit);
  } else {
    lower_gray(out, controls, target, u);
  }
}

}  // namespace

Circuit lower_multicontrolled(const Circuit& c, int recursion_limit) {
  Circuit out(c.wires());
  out.set_phase(c.global_phase());
  for (const Gate& g : c.gates()) {
    std::visit(Overloaded{
                   [&](const SingleGate& s) { out.add(s); },
                   [&](const CNotGate& x) { out.add(x); },
                   [&](const MultiControlledGate& m) {
                     lower_gate(out, m.controls, m.target, m.u, recursion_limit);
                   },
                   [&](const PauliXGate& x) { out.add(SingleGate{x.wire, mat2_pauli_x()}); },
               },
               g);
  }
  return out;
}

GateStats gate_stats(const Circuit& c) {
  GateStats st;
  std::vector<std::size_t> level(static_cast<std::size_t>(c.wires()), 0);
  for (const Gate& g : c.gates()) {
    std::visit(Overloaded{
                   [&](const SingleGate&) { ++st.single; },
                   [&](const CNotGate&) { ++st.cnot; },
                   [&](const MultiControlledGate&) { ++st.multi; },
                   [&](const PauliXGate&) { ++st.pauli_x; },
               },
               g);
    const std::vector<int> w = gate_wires(g);
    std::size_t top = 0;
    for (int x : w) top = std::max(top, level[static_cast<std::size_t>(x)]);
    for (int x : w) level[static_cast<std::size_t>(x)] = top + 1;
    st.depth = std::max(st.depth, top + 1);
  }
  return st;
}

}  // namespace qclone
