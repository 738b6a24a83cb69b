// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fermiforge {

/// One ladder operator: spin-orbital index and whether it creates.
struct Ladder {
  int index = 0;
  bool creation = false;
  friend auto operator<=>(const Ladder&, const Ladder&) = default;
};

using LadderSequence = std::vector<Ladder>;

/**
 * Linear combination of ladder-operator products. Sequences are stored as
 * given: no normal ordering is applied, so `0^ 1` and `1 0^` are distinct
 * keys. The empty sequence is the constant term.
 */
class FermionOperator {
 public:
  using Terms = std::map<LadderSequence, std::complex<double>>;

  FermionOperator() = default;
  FermionOperator(LadderSequence seq, std::complex<double> c = 1.0) { add_term(std::move(seq), c); }

  /// Parses a term body such as "0^ 1" or "2^ 3^ 1 0".
  static LadderSequence parse_sequence(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// 1 + largest index used.
  int n_modes() const;

  void add_term(LadderSequence seq, std::complex<double> c);
  FermionOperator& operator+=(const FermionOperator& o);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  FermionOperator& operator*=(std::complex<double> s);

  /// Hermitian conjugate: reversed sequences with creation flags toggled.
  FermionOperator adjoint() const;

 private:
  Terms terms_;
};

std::string to_string(const LadderSequence& seq);
std::string to_string(const FermionOperator& f);
std::ostream& operator<<(std::ostream& os, const FermionOperator& f);

}  // namespace fermiforge
