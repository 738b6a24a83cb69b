// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace {

const std::set<std::string> kSelfInverse = {"H", "X", "Y", "Z", "CNOT", "CX", "CZ", "CY", "SWAP"};
const std::set<std::string> kRotations = {"RX", "RY", "RZ", "PHASE", "CRX", "CRY", "CRZ", "CPHASE"};
const std::map<std::string, std::string> kAdjointPairs = {
    {"S", "SDAG"}, {"SDAG", "S"}, {"T", "TDAG"}, {"TDAG", "T"}};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::string join_indices(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, end);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

int Gate::max_qubit() const {
  int m = -1;
  for (int t : targets) m = std::max(m, t);
  for (int c : controls) m = std::max(m, c);
  return m;
}

double Gate::angle() const {
  if (const auto* v = std::get_if<double>(&parameter)) return *v;
  if (const auto* s = std::get_if<std::string>(&parameter))
    throw UnboundParameterError("gate " + name + " has unbound parameter '" + *s + "'");
  throw ValidationError("gate " + name + " has no parameter");
}

Gate make_gate(std::string_view name, std::vector<int> targets, std::vector<int> controls,
               Parameter parameter, bool is_variational) {
  if (targets.empty()) throw ValidationError("gate " + std::string(name) + " has no target");
  std::set<int> seen;
  for (const auto* list : {&targets, &controls}) {
    for (int q : *list) {
      if (q < 0) throw ValidationError("negative qubit index " + std::to_string(q));
      if (!seen.insert(q).second)
        throw ValidationError("qubit " + std::to_string(q) + " used twice in gate " +
                              std::string(name));
    }
  }
  return Gate{upper(name), std::move(targets), std::move(controls), std::move(parameter),
              is_variational};
}

std::string to_string(const Gate& g) {
  std::string s = g.name;
  if (s.size() < 10) s.resize(10, ' ');
  s += "target : " + join_indices(g.targets) + "   ";
  if (!g.controls.empty()) s += "control : " + join_indices(g.controls) + "   ";
  if (const auto* v = std::get_if<double>(&g.parameter)) {
    s += "parameter : " + format_real(*v);
  } else if (const auto* sym = std::get_if<std::string>(&g.parameter)) {
    s += "parameter : " + *sym;
  }
  if (g.is_variational) s += "\t (variational)";
  return s;
}

std::ostream& operator<<(std::ostream& os, const Gate& g) { return os << to_string(g); }

Gate inverse(const Gate& g) {
  Gate out = g;
  if (kSelfInverse.contains(g.name)) return out;
  if (auto it = kAdjointPairs.find(g.name); it != kAdjointPairs.end()) {
    out.name = it->second;
    return out;
  }
  if (kRotations.contains(g.name)) {
    if (is_symbolic(g.parameter))
      throw UnboundParameterError("cannot invert " + g.name + " with unbound parameter '" +
                                  std::get<std::string>(g.parameter) + "'");
    out.parameter = -g.angle();
    return out;
  }
  throw UnsupportedInverseError("no inverse rule for gate " + g.name);
}

Circuit::Circuit(std::vector<Gate> gates, std::optional<std::size_t> width)
    : declared_width_(width) {
  gates_.reserve(gates.size());
  for (auto& g : gates) add_gate(std::move(g));
}

void Circuit::add_gate(Gate g) {
  g = make_gate(g.name, std::move(g.targets), std::move(g.controls), std::move(g.parameter),
                g.is_variational);
  gates_.push_back(std::move(g));
}

std::size_t Circuit::width() const {
  std::size_t w = declared_width_.value_or(0);
  for (const auto& g : gates_) w = std::max(w, static_cast<std::size_t>(g.max_qubit() + 1));
  return w;
}

std::map<std::string, std::size_t> Circuit::counts() const {
  std::map<std::string, std::size_t> out;
  for (const auto& g : gates_) ++out[g.name];
  return out;
}

bool Circuit::is_variational() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_variational; });
}

std::size_t Circuit::n_multiqubit_gates() const {
  return std::count_if(gates_.begin(), gates_.end(),
                       [](const Gate& g) { return g.n_qubits() >= 2; });
}

std::set<int> Circuit::used_qubits() const {
  std::set<int> out;
  for (const auto& g : gates_) {
    out.insert(g.targets.begin(), g.targets.end());
    out.insert(g.controls.begin(), g.controls.end());
  }
  return out;
}

std::vector<std::reference_wrapper<Gate>> Circuit::variational_gates() {
  std::vector<std::reference_wrapper<Gate>> out;
  for (auto& g : gates_)
    if (g.is_variational) out.emplace_back(g);
  return out;
}

std::vector<std::reference_wrapper<const Gate>> Circuit::variational_gates() const {
  std::vector<std::reference_wrapper<const Gate>> out;
  for (const auto& g : gates_)
    if (g.is_variational) out.emplace_back(g);
  return out;
}

void Circuit::bind(const std::vector<double>& values) {
  auto vars = variational_gates();
  if (vars.size() != values.size())
    throw ValidationError("expected " + std::to_string(vars.size()) +
                          " variational parameters, got " + std::to_string(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) vars[i].get().parameter = values[i];
}

bool operator==(const Circuit& a, const Circuit& b) {
  return a.width() == b.width() && a.gates_ == b.gates_;
}

std::string to_string(const Circuit& c) {
  std::ostringstream os;
  os << "Circuit object. Size " << c.size() << " \n\n";
  for (const auto& g : c.gates()) os << to_string(g) << '\n';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Circuit& c) { return os << to_string(c); }

Circuit concat(const Circuit& a, const Circuit& b) {
  Circuit out = a;
  for (const auto& g : b.gates()) out.gates().push_back(g);
  out.set_declared_width(std::max(a.width(), b.width()));
  return out;
}

Circuit repeat(const Circuit& c, std::size_t n) {
  Circuit out;
  out.gates().reserve(c.size() * n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& g : c.gates()) out.gates().push_back(g);
  if (n > 0) out.set_declared_width(c.width());
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out;
  out.gates().reserve(c.size());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it)
    out.gates().push_back(inverse(*it));
  out.set_declared_width(c.width());
  return out;
}

Circuit remap_qubits(const Circuit& c, const std::function<int(int)>& map,
                     std::optional<std::size_t> width) {
  Circuit out;
  out.gates().reserve(c.size());
  for (const auto& g : c.gates()) {
    Gate h = g;
    for (auto& t : h.targets) t = map(t);
    for (auto& q : h.controls) q = map(q);
    out.add_gate(std::move(h));
  }
  out.set_declared_width(width);
  return out;
}

SplitResult split(const Circuit& c) {
  const auto used = c.used_qubits();
  const int n = static_cast<int>(c.width());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : c.gates()) {
    const int first = g.targets.front();
    for (int q : g.targets) parent[find(q)] = find(first);
    for (int q : g.controls) parent[find(q)] = find(first);
  }

  // Components in ascending order of their smallest member; `used` is sorted.
  std::map<int, std::size_t> root_to_part;
  SplitResult result;
  std::vector<int> part_sizes;
  for (int q : used) {
    const int r = find(q);
    auto [it, inserted] = root_to_part.emplace(r, result.parts.size());
    if (inserted) {
      result.parts.emplace_back();
      part_sizes.push_back(0);
    }
    result.qubit_map[q] = {it->second, part_sizes[it->second]++};
  }
  for (const auto& g : c.gates()) {
    const auto part = result.qubit_map.at(g.targets.front()).first;
    Gate h = g;
    for (auto& t : h.targets) t = result.qubit_map.at(t).second;
    for (auto& q : h.controls) q = result.qubit_map.at(q).second;
    result.parts[part].gates().push_back(std::move(h));
  }
  for (std::size_t i = 0; i < result.parts.size(); ++i)
    result.parts[i].set_declared_width(static_cast<std::size_t>(part_sizes[i]));
  return result;
}

Circuit stack(const std::vector<Circuit>& circuits) {
  Circuit out;
  int offset = 0;
  for (const auto& c : circuits) {
    for (const auto& g : c.gates()) {
      Gate h = g;
      for (auto& t : h.targets) t += offset;
      for (auto& q : h.controls) q += offset;
      out.gates().push_back(std::move(h));
    }
    offset += static_cast<int>(c.width());
  }
  out.set_declared_width(static_cast<std::size_t>(offset));
  return out;
}

const std::map<std::string, std::set<std::string>>& supported_gates() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"native",
       {"H", "X", "Y", "Z", "S", "SDAG", "T", "TDAG", "RX", "RY", "RZ", "PHASE", "CNOT", "CZ",
        "CRZ", "SWAP", "MEASURE"}},
      {"qasm",
       {"H", "X", "Y", "Z", "S", "SDAG", "T", "TDAG", "RX", "RY", "RZ", "CNOT", "CZ", "SWAP",
        "MEASURE"}},
  };
  return table;
}

}  // namespace fermiforge
