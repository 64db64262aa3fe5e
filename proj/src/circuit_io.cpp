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

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qclone/circuit.hpp"

namespace qclone {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_mat(std::ostream& os, const Mat2& u) {
  for (const cplx& z : u) os << ' ' << num(z.real()) << ' ' << num(z.imag());
}

Mat2 read_mat(std::istringstream& in, const std::string& where) {
  Mat2 u;
  for (auto& z : u) {
    double re = 0.0, im = 0.0;
    if (!(in >> re >> im)) throw ParseError("expected 8 matrix reals", where);
    z = {re, im};
  }
  return u;
}

int read_wire(std::istringstream& in, const std::string& where) {
  int w = -1;
  if (!(in >> w)) throw ParseError("expected a wire index", where);
  return w;
}

}  // namespace

void write_circuit(std::ostream& os, const Circuit& c) {
  os << "wires " << c.wires() << '\n';
  os << "phase " << num(c.global_phase().real()) << ' ' << num(c.global_phase().imag()) << '\n';
  for (const Gate& g : c.gates()) {
    if (const auto* s = std::get_if<SingleGate>(&g)) {
      os << "U " << s->wire;
      write_mat(os, s->u);
    } else if (const auto* x = std::get_if<CNotGate>(&g)) {
      os << "CNOT " << x->control << ' ' << x->target;
    } else if (const auto* m = std::get_if<MultiControlledGate>(&g)) {
      os << "CU ";
      for (std::size_t i = 0; i < m->controls.size(); ++i)
        os << (i ? "," : "") << m->controls[i];
      os << ' ' << m->target;
      write_mat(os, m->u);
    } else {
      os << "X " << std::get<PauliXGate>(g).wire;
    }
    os << '\n';
  }
}

std::string circuit_to_string(const Circuit& c) {
  std::ostringstream os;
  write_circuit(os, c);
  return os.str();
}

Circuit read_circuit(std::istream& is) {
  std::string line;
  int lineno = 0;
  Circuit c;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    std::istringstream in(line);
    std::string op;
    if (!(in >> op) || op[0] == '#') continue;
    try {
      if (op == "wires") {
        if (have_header) throw ParseError("duplicate wires header", where);
        int n = 0;
        if (!(in >> n) || n < 1) throw ParseError("bad wire count", where);
        c = Circuit(n);
        have_header = true;
        continue;
      }
      if (!have_header) throw ParseError("missing 'wires N' header", where);
      if (op == "phase") {
        double re = 0.0, im = 0.0;
        if (!(in >> re >> im)) throw ParseError("expected two reals", where);
        c.set_phase({re, im});
      } else if (op == "X") {
        c.add(PauliXGate{read_wire(in, where)});
      } else if (op == "CNOT") {
        const int ctl = read_wire(in, where);
        c.add(CNotGate{ctl, read_wire(in, where)});
      } else if (op == "U") {
        const int w = read_wire(in, where);
        c.add(SingleGate{w, read_mat(in, where)});
      } else if (op == "CU") {
        std::string list;
        if (!(in >> list)) throw ParseError("expected a control list", where);
        std::vector<int> controls;
        std::istringstream ls(list);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
          std::size_t used = 0;
          int w = 0;
          try {
            w = std::stoi(tok, &used);
          } catch (const std::exception&) {
            throw ParseError("bad control wire '" + tok + "'", where);
          }
          if (used != tok.size()) throw ParseError("bad control wire '" + tok + "'", where);
          controls.push_back(w);
        }
        const int t = read_wire(in, where);
        c.add(MultiControlledGate{controls, t, read_mat(in, where)});
      } else {
        throw ParseError("unknown gate '" + op + "'", where);
      }
      std::string extra;
      if (in >> extra) throw ParseError("trailing token '" + extra + "'", where);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), where);
    }
  }
  if (!have_header) throw ParseError("missing 'wires N' header", "line " + std::to_string(lineno));
  return c;
}

Circuit circuit_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_circuit(is);
}

}  // namespace qclone
