#!/usr/bin/env python3
# Copyright 2026 The fermiforge Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the H2/STO-3G fixtures in this directory.

Requires pyscf and numpy. The qubit operator is obtained by projecting the
dense Jordan-Wigner Hamiltonian onto the Pauli basis, so it does not share
any code path with the C++ mappings it is used to check.

Outputs:
  h2_sto3g_fermion.txt   second-quantized Hamiltonian, interleaved spin-orbitals
                         (2k = alpha of spatial orbital k, 2k+1 = beta)
  h2_sto3g_jw.txt        Jordan-Wigner qubit Hamiltonian
  h2_sto3g.json          reference energies
"""

import itertools
import json
import os

import numpy as np
from pyscf import ao2mo, fci, gto, scf

HERE = os.path.dirname(os.path.abspath(__file__))
BOND = 0.7414


def fermion_terms(h1, eri, e_nuc):
    n = h1.shape[0]
    terms = [((), e_nuc)]
    for p, q in itertools.product(range(n), repeat=2):
        for s in range(2):
            if abs(h1[p, q]) > 1e-12:
                terms.append((((2 * p + s, 1), (2 * q + s, 0)), h1[p, q]))
    for p, q, r, s in itertools.product(range(n), repeat=4):
        v = 0.5 * eri[p, q, r, s]
        if abs(v) < 1e-12:
            continue
        for a, b in itertools.product(range(2), repeat=2):
            P, Q, R, S = 2 * p + a, 2 * q + a, 2 * r + b, 2 * s + b
            if P == R or Q == S:
                continue
            terms.append((((P, 1), (R, 1), (S, 0), (Q, 0)), v))
    return terms


def jw_ladder(n):
    """Dense annihilators; basis index bit k is the occupation of mode k."""
    dim = 2**n
    ops = []
    for j in range(n):
        a = np.zeros((dim, dim))
        for b in range(dim):
            if (b >> j) & 1:
                sign = (-1) ** bin(b & ((1 << j) - 1)).count("1")
                a[b ^ (1 << j), b] = sign
        ops.append(a)
    return ops


def dense_hamiltonian(terms, n):
    ann = jw_ladder(n)
    dim = 2**n
    h = np.zeros((dim, dim))
    for ladder, c in terms:
        m = np.eye(dim)
        for idx, dag in ladder:
            m = m @ (ann[idx].T if dag else ann[idx])
        h += c * m
    return h


def pauli_decompose(h, n):
    mats = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]),
    }
    out = []
    for axes in itertools.product("IXYZ", repeat=n):
        m = np.array([[1.0]])
        for k in reversed(range(n)):  # qubit 0 is the least significant bit
            m = np.kron(m, mats[axes[k]])
        c = np.trace(m @ h) / 2**n
        if abs(c) > 1e-12:
            word = " ".join(f"{a}{k}" for k, a in enumerate(axes) if a != "I")
            out.append((c, word))
    return out


def main():
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {BOND}", basis="sto-3g", unit="Angstrom")
    mf = scf.RHF(mol).run(verbose=0)
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), c.shape[1])
    e_fci = fci.FCI(mf).kernel()[0]

    terms = fermion_terms(h1, eri, mol.energy_nuc())
    with open(os.path.join(HERE, "h2_sto3g_fermion.txt"), "w") as f:
        f.write(f"# H2 STO-3G, R = {BOND} A, RHF molecular orbitals\n")
        f.write("# interleaved spin-orbitals: 2k alpha, 2k+1 beta\n")
        for ladder, v in terms:
            body = " ".join(f"{i}^" if d else f"{i}" for i, d in ladder)
            f.write(f"({v:.17g},0) [{body}]\n")

    n_so = 2 * h1.shape[0]
    h = dense_hamiltonian(terms, n_so)
    with open(os.path.join(HERE, "h2_sto3g_jw.txt"), "w") as f:
        f.write(f"# H2 STO-3G, R = {BOND} A, Jordan-Wigner, interleaved spin-orbitals\n")
        for coeff, word in pauli_decompose(h, n_so):
            f.write(f"({coeff.real:.17g},{coeff.imag:.17g}) [{word}]\n")

    meta = {
        "bond_length_angstrom": BOND,
        "basis": "sto-3g",
        "n_spinorbitals": n_so,
        "n_electrons": 2,
        "hf_energy": mf.e_tot,
        "fci_energy": e_fci,
        "dense_ground_energy": float(np.linalg.eigvalsh(h)[0]),
        "generator": "data/generate_fixtures.py",
    }
    with open(os.path.join(HERE, "h2_sto3g.json"), "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
