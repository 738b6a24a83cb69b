// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fermiforge {

using Complex = std::complex<double>;

enum class Axis : char { X = 'X', Y = 'Y', Z = 'Z' };

/**
 * Tensor product of single-qubit Paulis, stored as (qubit, axis) pairs with
 * strictly increasing qubit indices. The empty word is the identity.
 *
 * Ordering is lexicographic on the pair list, which gives the canonical
 * iteration order of QubitOperator and the tie-breaking order used by the
 * measurement and QCC code.
 */
class PauliWord {
 public:
  using Factor = std::pair<int, Axis>;

  PauliWord() = default;
  /// Sorts the factors; throws ValidationError on duplicate or negative qubits.
  PauliWord(std::vector<Factor> factors);
  PauliWord(std::initializer_list<Factor> factors)
      : PauliWord(std::vector<Factor>(factors)) {}

  /// Parses "X0 Z1" (whitespace separated, any order); "" or "I" is identity.
  static PauliWord parse(std::string_view text);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }
  std::size_t weight() const { return factors_.size(); }
  /// Axis on qubit q, or 'I'.
  char axis_on(int q) const;
  /// 1 + largest qubit index (0 for identity).
  int span() const { return factors_.empty() ? 0 : factors_.back().first + 1; }
  std::size_t count(Axis a) const;
  std::vector<int> support() const;

  /// Canonical text, "X0 Z1"; identity renders as "".
  std::string to_string() const;

  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;
  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::vector<Factor> factors_;
};

std::ostream& operator<<(std::ostream& os, const PauliWord& w);

/// Product of two words: returns (phase, word) with a*b = phase * word.
std::pair<Complex, PauliWord> multiply(const PauliWord& a, const PauliWord& b);

/// True iff on every shared qubit the two words carry the same axis.
bool qwc_compatible(const PauliWord& a, const PauliWord& b);

/// Qubit-wise union of two compatible words.
PauliWord qwc_union(const PauliWord& a, const PauliWord& b);

/// Bitmasks (x, z) of a word; qubits must be < 64. Y sets both bits.
struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int n_y = 0;
};
PauliMasks masks(const PauliWord& w);

/**
 * Sparse linear combination of Pauli words with complex coefficients.
 *
 * Arithmetic keeps exact zeros out (terms cancelling to 0 are erased) but
 * never drops small coefficients implicitly; call compress() for that.
 */
class QubitOperator {
 public:
  using Terms = std::map<PauliWord, Complex>;

  QubitOperator() = default;
  QubitOperator(const PauliWord& w, Complex c = 1.0) { add_term(w, c); }
  /// Scalar multiple of the identity.
  static QubitOperator constant(Complex c) { return QubitOperator(PauliWord{}, c); }

  const Terms& terms() const { return terms_; }
  std::size_t n_terms() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// 1 + largest qubit index appearing in any term.
  int n_qubits() const;

  Complex coefficient(const PauliWord& w) const;
  void add_term(const PauliWord& w, Complex c);

  QubitOperator& operator+=(const QubitOperator& o);
  QubitOperator& operator-=(const QubitOperator& o);
  QubitOperator& operator*=(Complex s);
  QubitOperator& operator*=(const QubitOperator& o);

  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

  /// Adjoint: conjugated coefficients (Pauli words are Hermitian).
  QubitOperator adjoint() const;
  /// True when every coefficient has |imag| <= tol.
  bool is_hermitian(double tol = 1e-10) const;

  friend bool operator==(const QubitOperator&, const QubitOperator&) = default;

 private:
  Terms terms_;
};

QubitOperator multiply(const QubitOperator& a, const QubitOperator& b);
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// Drops terms with |c| < eps and zeroes real/imaginary parts below eps.
QubitOperator compress(const QubitOperator& op, double eps = 1e-8);

/// Copy with every qubit index q replaced by map[q] (map must be injective).
QubitOperator relabel_qubits(const QubitOperator& op, const std::vector<int>& map);

/// One term per line: "(re,im) [X0 Z1]".
std::string to_string(const QubitOperator& op);
std::ostream& operator<<(std::ostream& os, const QubitOperator& op);

}  // namespace fermiforge
