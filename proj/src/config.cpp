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

#include "qclone/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qclone {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const Json& require(const Json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) throw ParseError("expected an object", loc);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + key + "'", at(loc, key));
  return *it;
}

double number(const Json& v, const std::string& loc) {
  if (!v.is_number()) throw ParseError("expected a number", loc);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError("expected a finite number", loc);
  return x;
}

int integer(const Json& v, const std::string& loc) {
  if (!v.is_number_integer()) throw ParseError("expected an integer", loc);
  return v.get<int>();
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& loc) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError("unknown field '" + it.key() + "'", at(loc, it.key()));
  }
}

StateSet parse_states(const Json& s, const std::string& loc) {
  if (!s.is_object()) throw ParseError("expected an object", loc);
  if (s.contains("theta")) {
    reject_unknown(s, {"theta"}, loc);
    const Json& t = s["theta"];
    const std::string tl = at(loc, "theta");
    const double theta = t.is_string() ? parse_angle(t.get<std::string>(), tl) : number(t, tl);
    try {
      return StateSet::symmetric_pair(theta);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), tl);
    }
  }
  reject_unknown(s, {"k", "vectors", "labels"}, loc);
  const int k = integer(require(s, "k", loc), at(loc, "k"));
  if (k < 1 || k > 6) throw ParseError("k must lie in [1, 6]", at(loc, "k"));
  const std::size_t dim = std::size_t{1} << k;
  const Json& vs = require(s, "vectors", loc);
  const std::string vl = at(loc, "vectors");
  if (!vs.is_array() || vs.empty()) throw ParseError("expected a nonempty array", vl);
  std::vector<CVector> states;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string il = at(vl, i);
    if (!vs[i].is_array() || vs[i].size() != dim)
      throw ParseError("expected " + std::to_string(dim) + " amplitudes", il);
    CVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const std::string jl = at(il, j);
      const Json& z = vs[i][j];
      if (z.is_number()) {
        v[j] = number(z, jl);
      } else if (z.is_array() && z.size() == 2) {
        v[j] = {number(z[0], at(jl, 0)), number(z[1], at(jl, 1))};
      } else {
        throw ParseError("expected a number or a [re, im] pair", jl);
      }
    }
    if (v.norm() < 1e-12) throw ParseError("zero vector", il);
    states.push_back(normalized(v));
  }
  std::vector<std::string> labels;
  if (s.contains("labels")) {
    const Json& ls = s["labels"];
    const std::string ll = at(loc, "labels");
    if (!ls.is_array() || ls.size() != vs.size())
      throw ParseError("expected one label per vector", ll);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (!ls[i].is_string()) throw ParseError("expected a string", at(ll, i));
      labels.push_back(ls[i].get<std::string>());
    }
  }
  try {
    return StateSet::from_vectors(k, std::move(states), std::move(labels));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), vl);
  }
}

Mode parse_mode(const Json& m, const std::string& loc) {
  if (!m.is_object() || m.size() != 1)
    throw ParseError("expected {\"identify\": {...}} or {\"clone\": {...}}", loc);
  if (m.contains("identify")) {
    const std::string il = at(loc, "identify");
    reject_unknown(m["identify"], {"M"}, il);
    const int copies = integer(require(m["identify"], "M", il), at(il, "M"));
    if (copies < 1) throw ParseError("M must be >= 1", at(il, "M"));
    return Mode::identify(copies);
  }
  if (m.contains("clone")) {
    const std::string cl = at(loc, "clone");
    reject_unknown(m["clone"], {"M", "N"}, cl);
    const int in = integer(require(m["clone"], "M", cl), at(cl, "M"));
    const int out = integer(require(m["clone"], "N", cl), at(cl, "N"));
    if (in < 1) throw ParseError("M must be >= 1", at(cl, "M"));
    if (out <= in) throw ParseError("N must exceed M", at(cl, "N"));
    return Mode::clone(in, out);
  }
  throw ParseError("unknown mode '" + m.begin().key() + "'", at(loc, m.begin().key()));
}

}  // namespace

double parse_angle(const std::string& text, const std::string& locator) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  auto to_num = [&](const std::string& part) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError("cannot parse angle '" + text + "'", locator);
    }
    if (used != part.size()) throw ParseError("cannot parse angle '" + text + "'", locator);
    return x;
  };
  const std::size_t p = s.find("pi");
  if (p == std::string::npos) return to_num(s);
  double factor = 1.0;
  std::string head = s.substr(0, p);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (!head.empty()) factor = to_num(head);
  std::string tail = s.substr(p + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw ParseError("cannot parse angle '" + text + "'", locator);
    divisor = to_num(tail.substr(1));
    if (divisor == 0.0) throw ParseError("division by zero in angle", locator);
  }
  return factor * std::numbers::pi / divisor;
}

MachineSpec ProblemConfig::machine() const {
  if (!optimal_uniform) return MachineSpec(mode, gammas);
  const double g = optimal_uniform_gamma(*set, mode);
  return MachineSpec(mode, std::vector<double>(static_cast<std::size_t>(set->size()), g));
}

ProblemConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::ostringstream os;
    os << "byte " << e.byte;
    throw ParseError("malformed JSON", os.str());
  }
  if (!doc.is_object()) throw ParseError("expected a JSON object", "/");
  reject_unknown(doc, {"states", "mode", "gammas", "tolerances", "seed"}, "");

  ProblemConfig cfg;
  cfg.echo = doc;
  cfg.set = parse_states(require(doc, "states", ""), "/states");
  cfg.mode = parse_mode(require(doc, "mode", ""), "/mode");

  if (doc.contains("gammas")) {
    const Json& g = doc["gammas"];
    if (g.is_string()) {
      if (g.get<std::string>() != "optimal-uniform")
        throw ParseError("expected \"optimal-uniform\" or a list", "/gammas");
    } else if (g.is_array()) {
      cfg.optimal_uniform = false;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = number(g[i], at("/gammas", i));
        if (!(x > 0.0 && x <= 1.0)) throw ParseError("gamma must lie in (0, 1]", at("/gammas", i));
        cfg.gammas.push_back(x);
      }
      if (static_cast<int>(cfg.gammas.size()) != cfg.set->size())
        throw ParseError("expected one gamma per state", "/gammas");
    } else {
      throw ParseError("expected \"optimal-uniform\" or a list", "/gammas");
    }
  }
  if (doc.contains("tolerances")) {
    const Json& t = doc["tolerances"];
    reject_unknown(t, {"invariant"}, "/tolerances");
    if (t.contains("invariant")) {
      cfg.invariant_tol = number(t["invariant"], "/tolerances/invariant");
      if (!(cfg.invariant_tol > 0.0))
        throw ParseError("tolerance must be positive", "/tolerances/invariant");
    }
  }
  if (doc.contains("seed")) {
    const Json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ParseError("expected a nonnegative integer", "/seed");
    cfg.seed = s.get<std::uint64_t>();
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qclone
