// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "fermiforge/circuit.hpp"
#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace {

// Single-qubit product table: a*b = phase * axis, axis 'I' for the identity.
std::pair<Complex, char> multiply_axes(Axis a, Axis b) {
  constexpr Complex i{0.0, 1.0};
  if (a == b) return {1.0, 'I'};
  switch (a) {
    case Axis::X: return b == Axis::Y ? std::pair{i, 'Z'} : std::pair{-i, 'Y'};
    case Axis::Y: return b == Axis::Z ? std::pair{i, 'X'} : std::pair{-i, 'Z'};
    case Axis::Z: return b == Axis::X ? std::pair{i, 'Y'} : std::pair{-i, 'X'};
  }
  return {1.0, 'I'};
}

Axis parse_axis(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw ValidationError(std::string("unknown Pauli axis '") + c + "'");
  }
}

}  // namespace

PauliWord::PauliWord(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].first < 0)
      throw ValidationError("negative qubit index in Pauli word");
    if (i && factors_[i].first == factors_[i - 1].first)
      throw ValidationError("qubit " + std::to_string(factors_[i].first) +
                            " appears twice in Pauli word");
  }
}

PauliWord PauliWord::parse(std::string_view text) {
  std::vector<Factor> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    const char ax = text[pos++];
    if ((ax == 'I' || ax == 'i') &&
        (pos >= text.size() || std::isspace(static_cast<unsigned char>(text[pos]))))
      continue;
    int q = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), q);
    if (ec != std::errc{})
      throw ValidationError("malformed Pauli word '" + std::string(text) + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    out.emplace_back(q, parse_axis(ax));
  }
  return PauliWord(std::move(out));
}

char PauliWord::axis_on(int q) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{q, Axis::X},
                             [](const Factor& a, const Factor& b) { return a.first < b.first; });
  return (it != factors_.end() && it->first == q) ? static_cast<char>(it->second) : 'I';
}

std::size_t PauliWord::count(Axis a) const {
  return std::count_if(factors_.begin(), factors_.end(),
                       [a](const Factor& f) { return f.second == a; });
}

std::vector<int> PauliWord::support() const {
  std::vector<int> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.first);
  return out;
}

std::string PauliWord::to_string() const {
  std::string s;
  for (const auto& [q, a] : factors_) {
    if (!s.empty()) s += ' ';
    s += static_cast<char>(a);
    s += std::to_string(q);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const PauliWord& w) { return os << w.to_string(); }

std::pair<Complex, PauliWord> multiply(const PauliWord& a, const PauliWord& b) {
  Complex phase = 1.0;
  std::vector<PauliWord::Factor> out;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
      out.push_back(fa[i++]);
    } else if (i == fa.size() || fb[j].first < fa[i].first) {
      out.push_back(fb[j++]);
    } else {
      auto [ph, ax] = multiply_axes(fa[i].second, fb[j].second);
      phase *= ph;
      if (ax != 'I') out.emplace_back(fa[i].first, static_cast<Axis>(ax));
      ++i;
      ++j;
    }
  }
  PauliWord w;
  w = PauliWord(std::move(out));
  return {phase, std::move(w)};
}

bool qwc_compatible(const PauliWord& a, const PauliWord& b) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first < fb[j].first) {
      ++i;
    } else if (fb[j].first < fa[i].first) {
      ++j;
    } else {
      if (fa[i].second != fb[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

PauliWord qwc_union(const PauliWord& a, const PauliWord& b) {
  std::vector<PauliWord::Factor> out = a.factors();
  for (const auto& f : b.factors())
    if (a.axis_on(f.first) == 'I') out.push_back(f);
  return PauliWord(std::move(out));
}

PauliMasks masks(const PauliWord& w) {
  PauliMasks m;
  for (const auto& [q, a] : w.factors()) {
    if (q >= 64) throw ValidationError("qubit index " + std::to_string(q) + " exceeds 63");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (a != Axis::Z) m.x |= bit;
    if (a != Axis::X) m.z |= bit;
    if (a == Axis::Y) ++m.n_y;
  }
  return m;
}

int QubitOperator::n_qubits() const {
  int n = 0;
  for (const auto& [w, c] : terms_) n = std::max(n, w.span());
  return n;
}

Complex QubitOperator::coefficient(const PauliWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Complex{} : it->second;
}

void QubitOperator::add_term(const PauliWord& w, Complex c) {
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Complex s) {
  if (s == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      auto [phase, w] = multiply(wa, wb);
      out.add_term(w, phase * ca * cb);
    }
  }
  return out;
}

QubitOperator& QubitOperator::operator*=(const QubitOperator& o) { return *this = *this * o; }

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out = *this;
  for (auto& [w, c] : out.terms_) c = std::conj(c);
  return out;
}

bool QubitOperator::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

QubitOperator multiply(const QubitOperator& a, const QubitOperator& b) { return a * b; }

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  return a * b - b * a;
}

QubitOperator compress(const QubitOperator& op, double eps) {
  QubitOperator out;
  for (const auto& [w, c] : op.terms()) {
    if (std::abs(c) < eps) continue;
    Complex d = c;
    if (std::abs(d.real()) < eps) d.real(0.0);
    if (std::abs(d.imag()) < eps) d.imag(0.0);
    out.add_term(w, d);
  }
  return out;
}

QubitOperator relabel_qubits(const QubitOperator& op, const std::vector<int>& map) {
  QubitOperator out;
  for (const auto& [w, c] : op.terms()) {
    std::vector<PauliWord::Factor> f;
    f.reserve(w.weight());
    for (const auto& [q, a] : w.factors()) f.emplace_back(map.at(q), a);
    out.add_term(PauliWord(std::move(f)), c);
  }
  return out;
}

std::string to_string(const QubitOperator& op) {
  std::ostringstream os;
  for (const auto& [w, c] : op.terms())
    os << '(' << format_real(c.real()) << ',' << format_real(c.imag()) << ") [" << w.to_string()
       << "]\n";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QubitOperator& op) {
  return os << to_string(op);
}

}  // namespace fermiforge
