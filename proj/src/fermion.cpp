// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/fermion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "fermiforge/circuit.hpp"
#include "fermiforge/errors.hpp"

namespace fermiforge {

LadderSequence FermionOperator::parse_sequence(std::string_view text) {
  LadderSequence seq;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    int idx = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), idx);
    if (ec != std::errc{} || idx < 0)
      throw ValidationError("malformed ladder sequence '" + std::string(text) + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    bool creation = false;
    if (pos < text.size() && text[pos] == '^') {
      creation = true;
      ++pos;
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      throw ValidationError("malformed ladder sequence '" + std::string(text) + "'");
    seq.push_back({idx, creation});
  }
  return seq;
}

int FermionOperator::n_modes() const {
  int n = 0;
  for (const auto& [seq, c] : terms_)
    for (const auto& l : seq) n = std::max(n, l.index + 1);
  return n;
}

void FermionOperator::add_term(LadderSequence seq, std::complex<double> c) {
  for (const auto& l : seq)
    if (l.index < 0) throw ValidationError("negative spin-orbital index");
  auto [it, inserted] = terms_.try_emplace(std::move(seq), c);
  if (!inserted) it->second += c;
  if (it->second == std::complex<double>{}) terms_.erase(it);
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  for (const auto& [seq, c] : o.terms_) add_term(seq, c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(std::complex<double> s) {
  for (auto& [seq, c] : terms_) c *= s;
  return *this;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [seq, c] : terms_) {
    LadderSequence rev(seq.rbegin(), seq.rend());
    for (auto& l : rev) l.creation = !l.creation;
    out.add_term(std::move(rev), std::conj(c));
  }
  return out;
}

std::string to_string(const LadderSequence& seq) {
  std::string s;
  for (const auto& l : seq) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l.index);
    if (l.creation) s += '^';
  }
  return s;
}

std::string to_string(const FermionOperator& f) {
  std::ostringstream os;
  for (const auto& [seq, c] : f.terms())
    os << '(' << format_real(c.real()) << ',' << format_real(c.imag()) << ") ["
       << to_string(seq) << "]\n";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FermionOperator& f) { return os << to_string(f); }

}  // namespace fermiforge
