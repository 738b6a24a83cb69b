// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fermiforge/fermion.hpp"
#include "fermiforge/pauli.hpp"

namespace fermiforge {

enum class MappingKind { JW, BK, SCBK };

MappingKind parse_mapping(std::string_view name);
std::string to_string(MappingKind m);

struct MappingConfig {
  MappingKind mapping = MappingKind::JW;
  int n_spinorbitals = 0;
  /// Used by scBK (taper signs) and by hartree_fock_bitstring.
  int n_electrons = 0;
  /// 2*Sz, i.e. N_alpha - N_beta.
  int spin = 0;
  /// Input indices are interleaved (2k alpha, 2k+1 beta); when set they are
  /// relabelled so all alpha spin-orbitals come first.
  bool up_then_down = false;
};

/**
 * Binary encoding b = A n (mod 2) of occupations n into qubit states b.
 * JW, BK and parity are all lower-triangular instances with unit diagonal.
 */
class BinaryEncoding {
 public:
  static BinaryEncoding jordan_wigner(int n);
  static BinaryEncoding bravyi_kitaev(int n);
  static BinaryEncoding parity(int n);

  int size() const { return static_cast<int>(rows_.size()); }
  bool at(int i, int j) const { return rows_[i][j]; }

  /// Qubit state for an occupation vector.
  std::vector<bool> encode(const std::vector<bool>& occupation) const;

  /// Qubit image of a_j^dagger (creation) or a_j.
  QubitOperator ladder(int j, bool creation) const;

 private:
  explicit BinaryEncoding(std::vector<std::vector<bool>> rows);
  std::vector<std::vector<bool>> rows_;
  std::vector<std::vector<bool>> inverse_;
};

/// Maps every term with the given encoding; n_modes is the encoding size.
QubitOperator map_fermion_operator(const FermionOperator& f, const BinaryEncoding& enc);

/// a_p^dagger -> (X_p - iY_p)/2 with Z on every qubit below p.
QubitOperator jordan_wigner(const FermionOperator& f, int n_spinorbitals);
/// Fenwick-tree (update/parity/flip set) encoding.
QubitOperator bravyi_kitaev(const FermionOperator& f, int n_spinorbitals);

/**
 * Symmetry-conserving Bravyi-Kitaev: parity encoding of an operator already
 * in alpha-first ordering, followed by removal of the alpha-parity qubit
 * (n/2 - 1) and the total-parity qubit (n - 1). Output acts on n - 2 qubits.
 *
 * Throws SymmetryError if the input does not conserve particle number and
 * Sz, ValidationError if n_spinorbitals < 4, odd, or !up_then_down.
 */
QubitOperator scbk(const FermionOperator& f, const MappingConfig& cfg);

/// Index of interleaved spin-orbital p in alpha-first ordering.
int up_then_down_index(int p, int n_spinorbitals);
FermionOperator reorder_up_then_down(const FermionOperator& f, int n_spinorbitals);

/// Dispatches on cfg.mapping, applying the alpha-first relabelling first
/// when cfg.up_then_down is set.
QubitOperator fermion_to_qubit_mapping(const FermionOperator& f, const MappingConfig& cfg);

/// Number of qubits produced by the mapping.
int mapped_qubit_count(const MappingConfig& cfg);

/// Qubit bitstring (character i = qubit i) of the Hartree-Fock determinant:
/// the lowest N_alpha alpha and N_beta beta spin-orbitals occupied.
std::string hartree_fock_bitstring(const MappingConfig& cfg);

}  // namespace fermiforge
