// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace {

const std::map<std::string, std::string>& native_to_qasm() {
  static const std::map<std::string, std::string> m = {
      {"H", "h"},     {"X", "x"},     {"Y", "y"},   {"Z", "z"},   {"S", "s"},
      {"SDAG", "sdg"}, {"T", "t"},    {"TDAG", "tdg"}, {"RX", "rx"}, {"RY", "ry"},
      {"RZ", "rz"},   {"CNOT", "cx"}, {"CZ", "cz"}, {"SWAP", "swap"}};
  return m;
}

std::string format_angle(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string qubit(int q) { return "q[" + std::to_string(q) + "]"; }

}  // namespace

std::string to_qasm(const Circuit& c) {
  bool measures = false;
  for (const auto& g : c.gates()) {
    if (g.name == "MEASURE") {
      measures = true;
      continue;
    }
    if (!native_to_qasm().count(g.name)) throw UnsupportedGateError("gate " + g.name + " has no QASM translation");
    if (is_symbolic(g.parameter))
      throw UnboundParameterError("gate " + g.name + " has unbound parameter '" + std::get<std::string>(g.parameter) + "'");
  }
  std::ostringstream os;
  const auto width = std::max<std::size_t>(c.width(), 1);
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << width << "];\n";
  if (measures) os << "creg c[" << width << "];\n";
  for (const auto& g : c.gates()) {
    if (g.name == "MEASURE") {
      for (int t : g.targets) os << "measure " << qubit(t) << " -> c[" << t << "];\n";
      continue;
    }
    const auto& name = native_to_qasm().at(g.name);
    const bool two_qubit = g.name == "CNOT" || g.name == "CZ" || g.name == "SWAP";
    if (two_qubit) {
      std::vector<int> args = g.controls;
      args.insert(args.end(), g.targets.begin(), g.targets.end());
      if (args.size() != 2 || (g.name == "SWAP" && !g.controls.empty()))
        throw UnsupportedGateError("gate " + g.name + " with " + std::to_string(args.size()) +
                                   " qubits has no QASM translation");
      os << name << ' ' << qubit(args[0]) << ',' << qubit(args[1]) << ";\n";
      continue;
    }
    if (!g.controls.empty()) throw UnsupportedGateError("controlled " + g.name + " has no QASM translation");
    const bool rotation = g.name == "RX" || g.name == "RY" || g.name == "RZ";
    for (int t : g.targets) {
      os << name;
      if (rotation) os << '(' << format_angle(g.angle()) << ')';
      os << ' ' << qubit(t) << ";\n";
    }
  }
  return os.str();
}

namespace {

struct Statement {
  std::string text;
  std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::vector<Statement> statements(std::string_view text) {
  std::vector<Statement> out;
  std::string current;
  std::size_t line = 1, start_line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) ++line;
      continue;
    }
    if (ch == '\n') ++line;
    if (ch == ';') {
      out.push_back({current, start_line});
      current.clear();
      continue;
    }
    if (current.find_first_not_of(" \t\r\n") == std::string::npos && !std::isspace(static_cast<unsigned char>(ch))) {
      current.clear();
      start_line = line;
    }
    current += ch;
  }
  if (current.find_first_not_of(" \t\r\n") != std::string::npos) fail(start_line, "missing ';'");
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail(line_, "unexpected '" + std::string(s_.substr(pos_)) + "' in angle");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const double d = unary();
        if (d == 0.0) fail(line_, "division by zero in angle");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail(line_, "missing ')' in angle");
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                               ((s_[end] == 'e' || s_[end] == 'E')) ||
                               ((s_[end] == '-' || s_[end] == '+') && end > pos_ &&
                                (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
      ++end;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + end, v);
    if (end == pos_ || ec != std::errc() || ptr != s_.data() + end)
      fail(line_, "invalid angle expression '" + std::string(s_) + "'");
    pos_ = end;
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

struct Register {
  std::string name;
  int size = 0;
};

// "name[idx]" -> idx, checked against the register.
int register_index(const std::string& arg, const Register& reg, std::size_t line) {
  const auto open = arg.find('[');
  const auto close = arg.find(']');
  if (open == std::string::npos || close != arg.size() - 1) fail(line, "expected " + reg.name + "[index], got '" + arg + "'");
  if (trim(arg.substr(0, open)) != reg.name) fail(line, "unknown register in '" + arg + "'");
  const auto digits = trim(arg.substr(open + 1, close - open - 1));
  int idx = -1;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || idx < 0)
    fail(line, "invalid index in '" + arg + "'");
  if (idx >= reg.size) fail(line, "index " + std::to_string(idx) + " out of range for " + reg.name);
  return idx;
}

std::optional<Register> parse_register(const std::string& body, std::size_t line) {
  const auto open = body.find('[');
  const auto close = body.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open) fail(line, "malformed register declaration");
  Register r;
  r.name = trim(body.substr(0, open));
  const auto digits = trim(body.substr(open + 1, close - open - 1));
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), r.size);
  if (r.name.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || r.size <= 0)
    fail(line, "malformed register declaration");
  return r;
}

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

Circuit from_qasm(std::string_view text) {
  static const std::map<std::string, std::pair<std::string, int>> gates = {
      {"h", {"H", 1}},   {"x", {"X", 1}},       {"y", {"Y", 1}},     {"z", {"Z", 1}},
      {"s", {"S", 1}},   {"sdg", {"SDAG", 1}},  {"t", {"T", 1}},     {"tdg", {"TDAG", 1}},
      {"rx", {"RX", 1}}, {"ry", {"RY", 1}},     {"rz", {"RZ", 1}},   {"cx", {"CNOT", 2}},
      {"cz", {"CZ", 2}}, {"swap", {"SWAP", 2}}};

  const auto stmts = statements(text);
  if (stmts.empty()) throw ValidationError("line 1: empty QASM document");
  const auto header = trim(stmts[0].text);
  if (header.rfind("OPENQASM", 0) != 0) fail(stmts[0].line, "expected 'OPENQASM 2.0' header");
  const auto version = trim(header.substr(8));
  if (version.rfind("3", 0) == 0) fail(stmts[0].line, "OpenQASM 3 is not supported; use OpenQASM 2.0");
  if (version != "2.0") fail(stmts[0].line, "unsupported OpenQASM version '" + version + "'");

  std::optional<Register> qreg, creg;
  Circuit c;
  for (std::size_t k = 1; k < stmts.size(); ++k) {
    const auto line = stmts[k].line;
    const auto s = trim(stmts[k].text);
    if (s.empty()) continue;
    std::size_t word_end = 0;
    while (word_end < s.size() && (std::isalnum(static_cast<unsigned char>(s[word_end])) || s[word_end] == '_'))
      ++word_end;
    const std::string word = s.substr(0, word_end);
    const std::string rest = trim(s.substr(word_end));

    if (word == "include") {
      if (rest != "\"qelib1.inc\"") fail(line, "only qelib1.inc may be included");
      continue;
    }
    if (word == "qreg") {
      if (qreg) fail(line, "only one qreg is supported");
      qreg = parse_register(rest, line);
      continue;
    }
    if (word == "creg") {
      if (creg) fail(line, "only one creg is supported");
      creg = parse_register(rest, line);
      continue;
    }
    if (word == "barrier") continue;
    if (!qreg) fail(line, "statement before qreg declaration");

    if (word == "measure") {
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) fail(line, "measure needs '->'");
      if (!creg) fail(line, "measure without creg declaration");
      const int q = register_index(trim(rest.substr(0, arrow)), *qreg, line);
      register_index(trim(rest.substr(arrow + 2)), *creg, line);
      c.add_gate(make_gate("MEASURE", {q}));
      continue;
    }

    const auto it = gates.find(word);
    if (it == gates.end()) fail(line, "unsupported statement '" + word + "'");
    const auto& [name, arity] = it->second;
    const bool rotation = name == "RX" || name == "RY" || name == "RZ";
    std::string args = rest;
    Parameter p;
    if (!args.empty() && args.front() == '(') {
      int depth = 0;
      std::size_t close = std::string::npos;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == '(') ++depth;
        if (args[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == std::string::npos) fail(line, "missing ')'");
      if (!rotation) fail(line, "gate '" + word + "' takes no parameter");
      p = ExprParser(args.substr(1, close - 1), line).parse();
      args = trim(args.substr(close + 1));
    } else if (rotation) {
      fail(line, "gate '" + word + "' needs an angle");
    }
    const auto list = split_args(args);
    if (static_cast<int>(list.size()) != arity)
      fail(line, "gate '" + word + "' takes " + std::to_string(arity) + " qubit argument(s)");
    std::vector<int> idx;
    for (const auto& a : list) idx.push_back(register_index(a, *qreg, line));
    try {
      if (name == "SWAP")
        c.add_gate(make_gate(name, {idx[0], idx[1]}));
      else if (arity == 2)
        c.add_gate(make_gate(name, {idx[1]}, {idx[0]}));
      else
        c.add_gate(make_gate(name, {idx[0]}, {}, p));
    } catch (const ValidationError& e) {
      fail(line, e.what());
    }
  }
  if (!qreg) throw ValidationError("line " + std::to_string(stmts.back().line) + ": missing qreg declaration");
  c.set_declared_width(static_cast<std::size_t>(qreg->size));
  return c;
}

}  // namespace fermiforge
