// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace {

std::vector<std::vector<bool>> bk_matrix(int n) {
  int size = 1;
  while (size < n) size *= 2;
  std::vector<std::vector<bool>> m(size, std::vector<bool>(size, false));
  m[0][0] = true;
  for (int half = 1; half < size; half *= 2) {
    for (int i = 0; i < half; ++i)
      for (int j = 0; j < half; ++j) m[half + i][half + j] = m[i][j];
    // The top node of the new block stores the parity of the whole range.
    for (int j = 0; j < half; ++j) m[2 * half - 1][j] = true;
  }
  m.resize(n);
  for (auto& row : m) row.resize(n);
  return m;
}

// Inverse of a unit lower-triangular matrix over GF(2).
std::vector<std::vector<bool>> gf2_inverse(const std::vector<std::vector<bool>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<bool>> inv(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    if (!a[i][i]) throw ValidationError("encoding matrix is not unit lower-triangular");
    inv[i][i] = true;
    for (int j = 0; j < i; ++j) {
      bool acc = false;
      for (int k = j; k < i; ++k) acc ^= (a[i][k] && inv[k][j]);
      inv[i][j] = acc;
    }
  }
  return inv;
}

QubitOperator z_string(const std::vector<int>& qubits) {
  std::vector<PauliWord::Factor> f;
  for (int q : qubits) f.emplace_back(q, Axis::Z);
  return QubitOperator(PauliWord(std::move(f)));
}

void check_indices(const FermionOperator& f, int n) {
  if (n <= 0) throw ValidationError("n_spinorbitals must be positive");
  for (const auto& [seq, c] : f.terms())
    for (const auto& l : seq)
      if (l.index >= n)
        throw ValidationError("spin-orbital index " + std::to_string(l.index) +
                              " out of range for " + std::to_string(n) + " spin-orbitals");
}

}  // namespace

MappingKind parse_mapping(std::string_view name) {
  std::string s(name);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "jw" || s == "jordan-wigner") return MappingKind::JW;
  if (s == "bk" || s == "bravyi-kitaev") return MappingKind::BK;
  if (s == "scbk") return MappingKind::SCBK;
  throw ValidationError("unknown qubit mapping '" + std::string(name) + "'");
}

std::string to_string(MappingKind m) {
  switch (m) {
    case MappingKind::JW: return "JW";
    case MappingKind::BK: return "BK";
    case MappingKind::SCBK: return "scBK";
  }
  return "?";
}

BinaryEncoding::BinaryEncoding(std::vector<std::vector<bool>> rows)
    : rows_(std::move(rows)), inverse_(gf2_inverse(rows_)) {}

BinaryEncoding BinaryEncoding::jordan_wigner(int n) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) m[i][i] = true;
  return BinaryEncoding(std::move(m));
}

BinaryEncoding BinaryEncoding::bravyi_kitaev(int n) { return BinaryEncoding(bk_matrix(n)); }

BinaryEncoding BinaryEncoding::parity(int n) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m[i][j] = true;
  return BinaryEncoding(std::move(m));
}

std::vector<bool> BinaryEncoding::encode(const std::vector<bool>& occupation) const {
  const int n = size();
  std::vector<bool> b(n, false);
  for (int i = 0; i < n; ++i) {
    bool acc = false;
    for (int j = 0; j <= i; ++j) acc ^= (rows_[i][j] && occupation.at(j));
    b[i] = acc;
  }
  return b;
}

// a_j^dagger = X_F Z_P (1 + Z_S)/2 and a_j = X_F Z_P (1 - Z_S)/2, where
//   F: qubits whose state depends on n_j        (column j of A)
//   P: qubits whose parity gives sum_{k<j} n_k   (rows k<j of A^-1, summed)
//   S: qubits whose parity gives n_j             (row j of A^-1)
QubitOperator BinaryEncoding::ladder(int j, bool creation) const {
  const int n = size();
  std::vector<PauliWord::Factor> flip;
  std::vector<int> parity_set, occ_set;
  for (int i = 0; i < n; ++i) {
    if (rows_[i][j]) flip.emplace_back(i, Axis::X);
    bool p = false;
    for (int k = 0; k < j; ++k) p ^= inverse_[k][i];
    if (p) parity_set.push_back(i);
    if (inverse_[j][i]) occ_set.push_back(i);
  }
  QubitOperator projector = QubitOperator::constant(0.5);
  projector += z_string(occ_set) * Complex(creation ? 0.5 : -0.5);
  return QubitOperator(PauliWord(std::move(flip))) * z_string(parity_set) * projector;
}

QubitOperator map_fermion_operator(const FermionOperator& f, const BinaryEncoding& enc) {
  check_indices(f, enc.size());
  std::map<std::pair<int, bool>, QubitOperator> cache;
  auto image = [&](const Ladder& l) -> const QubitOperator& {
    auto key = std::pair{l.index, l.creation};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enc.ladder(l.index, l.creation)).first;
    return it->second;
  };
  QubitOperator out;
  for (const auto& [seq, c] : f.terms()) {
    QubitOperator term = QubitOperator::constant(c);
    for (const auto& l : seq) term = term * image(l);
    out += term;
  }
  return compress(out, 1e-14);
}

QubitOperator jordan_wigner(const FermionOperator& f, int n_spinorbitals) {
  check_indices(f, n_spinorbitals);
  return map_fermion_operator(f, BinaryEncoding::jordan_wigner(n_spinorbitals));
}

QubitOperator bravyi_kitaev(const FermionOperator& f, int n_spinorbitals) {
  check_indices(f, n_spinorbitals);
  return map_fermion_operator(f, BinaryEncoding::bravyi_kitaev(n_spinorbitals));
}

QubitOperator scbk(const FermionOperator& f, const MappingConfig& cfg) {
  const int n = cfg.n_spinorbitals;
  if (n < 4 || n % 2)
    throw ValidationError("scBK needs an even number of spin-orbitals >= 4, got " +
                          std::to_string(n));
  if (!cfg.up_then_down) throw ValidationError("scBK requires up_then_down ordering");
  if ((cfg.n_electrons + cfg.spin) % 2 || cfg.n_electrons < 0)
    throw ValidationError("inconsistent n_electrons / spin for scBK");
  const int n_alpha = (cfg.n_electrons + cfg.spin) / 2;
  const int alpha_qubit = n / 2 - 1;
  const int total_qubit = n - 1;
  const double alpha_sign = (n_alpha % 2) ? -1.0 : 1.0;
  const double total_sign = (cfg.n_electrons % 2) ? -1.0 : 1.0;

  const QubitOperator parity_image = map_fermion_operator(f, BinaryEncoding::parity(n));
  QubitOperator out;
  for (const auto& [w, c] : parity_image.terms()) {
    Complex coeff = c;
    std::vector<PauliWord::Factor> kept;
    for (const auto& [q, a] : w.factors()) {
      if (q == alpha_qubit || q == total_qubit) {
        if (a != Axis::Z)
          throw SymmetryError("operator does not conserve particle number and spin: term " +
                              w.to_string() + " acts off-diagonally on a tapered qubit");
        coeff *= (q == alpha_qubit) ? alpha_sign : total_sign;
        continue;
      }
      kept.emplace_back(q > alpha_qubit ? q - 1 : q, a);
    }
    out.add_term(PauliWord(std::move(kept)), coeff);
  }
  return compress(out, 1e-14);
}

int up_then_down_index(int p, int n_spinorbitals) {
  if (n_spinorbitals % 2) throw ValidationError("up_then_down needs an even spin-orbital count");
  return (p % 2 == 0) ? p / 2 : n_spinorbitals / 2 + p / 2;
}

FermionOperator reorder_up_then_down(const FermionOperator& f, int n_spinorbitals) {
  check_indices(f, n_spinorbitals);
  FermionOperator out;
  for (const auto& [seq, c] : f.terms()) {
    LadderSequence s = seq;
    for (auto& l : s) l.index = up_then_down_index(l.index, n_spinorbitals);
    out.add_term(std::move(s), c);
  }
  return out;
}

QubitOperator fermion_to_qubit_mapping(const FermionOperator& f, const MappingConfig& cfg) {
  const FermionOperator g =
      cfg.up_then_down ? reorder_up_then_down(f, cfg.n_spinorbitals) : f;
  switch (cfg.mapping) {
    case MappingKind::JW: return jordan_wigner(g, cfg.n_spinorbitals);
    case MappingKind::BK: return bravyi_kitaev(g, cfg.n_spinorbitals);
    case MappingKind::SCBK: return scbk(g, cfg);
  }
  throw ValidationError("unknown qubit mapping");
}

int mapped_qubit_count(const MappingConfig& cfg) {
  return cfg.mapping == MappingKind::SCBK ? cfg.n_spinorbitals - 2 : cfg.n_spinorbitals;
}

std::string hartree_fock_bitstring(const MappingConfig& cfg) {
  const int n = cfg.n_spinorbitals;
  if ((cfg.n_electrons + cfg.spin) % 2 || cfg.n_electrons < 0)
    throw ValidationError("inconsistent n_electrons / spin");
  const int n_alpha = (cfg.n_electrons + cfg.spin) / 2;
  const int n_beta = cfg.n_electrons - n_alpha;
  if (n_alpha < 0 || n_beta < 0 || 2 * std::max(n_alpha, n_beta) > n)
    throw ValidationError("electron count does not fit in the spin-orbital space");

  std::vector<bool> occ(n, false);
  for (int k = 0; k < n_alpha; ++k) occ[2 * k] = true;
  for (int k = 0; k < n_beta; ++k) occ[2 * k + 1] = true;
  if (cfg.up_then_down || cfg.mapping == MappingKind::SCBK) {
    std::vector<bool> reordered(n, false);
    for (int p = 0; p < n; ++p) reordered[up_then_down_index(p, n)] = occ[p];
    occ = reordered;
  }

  std::vector<bool> bits;
  switch (cfg.mapping) {
    case MappingKind::JW: bits = occ; break;
    case MappingKind::BK: bits = BinaryEncoding::bravyi_kitaev(n).encode(occ); break;
    case MappingKind::SCBK: {
      const auto full = BinaryEncoding::parity(n).encode(occ);
      for (int q = 0; q < n; ++q)
        if (q != n / 2 - 1 && q != n - 1) bits.push_back(full[q]);
      break;
    }
  }
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

}  // namespace fermiforge
