// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

// Dense-matrix reference implementations used to check the library.
// Everything here is built from Kronecker products of explicit 2x2 blocks;
// basis index bit k is qubit k, so the full operator is
// kron(M_{n-1}, ..., M_1, M_0).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/fermion.hpp"
#include "fermiforge/pauli.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
inline const cd I{0.0, 1.0};

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat m2(cd a, cd b, cd c, cd d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat id2() { return Mat::Identity(2, 2); }
inline Mat pauli(char axis) {
  switch (axis) {
    case 'X': return m2(0, 1, 1, 0);
    case 'Y': return m2(0, -I, I, 0);
    case 'Z': return m2(1, 0, 0, -1);
    default: return id2();
  }
}
inline Mat proj0() { return m2(1, 0, 0, 0); }
inline Mat proj1() { return m2(0, 0, 0, 1); }

/// Full-register operator from one 2x2 block per qubit (missing = identity).
inline Mat embed(const std::map<int, Mat>& blocks, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    auto it = blocks.find(q);
    out = kron(out, it == blocks.end() ? id2() : it->second);
  }
  return out;
}

inline Mat pauli_word(const fermiforge::PauliWord& w, int n) {
  std::map<int, Mat> blocks;
  for (const auto& [q, a] : w.factors()) blocks[q] = pauli(static_cast<char>(a));
  return embed(blocks, n);
}

inline Mat qubit_operator(const fermiforge::QubitOperator& op, int n) {
  const auto dim = Eigen::Index{1} << n;
  Mat out = Mat::Zero(dim, dim);
  for (const auto& [w, c] : op.terms()) out += c * pauli_word(w, n);
  return out;
}

/// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P for a Pauli block P.
inline Mat rotation(char axis, double theta) {
  return std::cos(theta / 2) * id2() - I * std::sin(theta / 2) * pauli(axis);
}

inline Mat gate_block(const std::string& name, double theta) {
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "H") return m2(s, s, s, -s);
  if (name == "X" || name == "CNOT") return pauli('X');
  if (name == "Y") return pauli('Y');
  if (name == "Z" || name == "CZ") return pauli('Z');
  if (name == "S") return m2(1, 0, 0, I);
  if (name == "SDAG") return m2(1, 0, 0, -I);
  if (name == "T") return m2(1, 0, 0, std::exp(I * (std::numbers::pi / 4)));
  if (name == "TDAG") return m2(1, 0, 0, std::exp(-I * (std::numbers::pi / 4)));
  if (name == "RX") return rotation('X', theta);
  if (name == "RY") return rotation('Y', theta);
  if (name == "RZ" || name == "CRZ") return rotation('Z', theta);
  if (name == "PHASE") return m2(1, 0, 0, std::exp(I * theta));
  throw std::runtime_error("oracle: no matrix for " + name);
}

inline Mat gate(const fermiforge::Gate& g, int n) {
  const double theta = std::holds_alternative<double>(g.parameter) ? std::get<double>(g.parameter) : 0.0;
  if (g.name == "SWAP") {
    const int a = g.targets[0], b = g.targets[1];
    Mat out = embed({}, n);
    for (char ax : {'X', 'Y', 'Z'}) out += embed({{a, pauli(ax)}, {b, pauli(ax)}}, n);
    return 0.5 * out;
  }
  const Mat u = gate_block(g.name, theta);
  const int t = g.targets[0];
  if (g.controls.empty()) return embed({{t, u}}, n);
  // Sum over control patterns; only all-ones applies u.
  const auto dim = Eigen::Index{1} << n;
  Mat out = Mat::Zero(dim, dim);
  const std::size_t k = g.controls.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::map<int, Mat> blocks;
    for (std::size_t i = 0; i < k; ++i) blocks[g.controls[i]] = (mask >> i & 1) ? proj1() : proj0();
    if (mask + 1 == (std::size_t{1} << k)) blocks[t] = u;
    out += embed(blocks, n);
  }
  return out;
}

inline Mat unitary(const fermiforge::Circuit& c, int n) {
  Mat u = embed({}, n);
  for (const auto& g : c.gates()) u = gate(g, n) * u;
  return u;
}

inline Vec zero_state(int n) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v[0] = 1.0;
  return v;
}

inline Vec run(const fermiforge::Circuit& c, int n) { return unitary(c, n) * zero_state(n); }

/// Jordan-Wigner annihilator a_p = Z_0 ... Z_{p-1} |0><1|_p.
inline Mat annihilator(int p, int n) {
  std::map<int, Mat> blocks;
  for (int q = 0; q < p; ++q) blocks[q] = pauli('Z');
  blocks[p] = m2(0, 1, 0, 0);
  return embed(blocks, n);
}

inline Mat fermion_operator(const fermiforge::FermionOperator& f, int n) {
  const auto dim = Eigen::Index{1} << n;
  Mat out = Mat::Zero(dim, dim);
  for (const auto& [seq, c] : f.terms()) {
    Mat term = Mat::Identity(dim, dim);
    for (const auto& l : seq) {
      const Mat a = annihilator(l.index, n);
      term = term * (l.creation ? Mat(a.adjoint()) : a);
    }
    out += c * term;
  }
  return out;
}

/// Number and Sz operators in the interleaved convention (even = up).
inline Mat number_operator(int n) {
  const auto dim = Eigen::Index{1} << n;
  Mat out = Mat::Zero(dim, dim);
  for (int p = 0; p < n; ++p) out += annihilator(p, n).adjoint() * annihilator(p, n);
  return out;
}

/// Lowest eigenvalue of h restricted to occupation-basis states with the
/// given particle number and (n_up - n_down).
inline double sector_minimum(const Mat& h, int n, int n_electrons, int two_sz) {
  std::vector<Eigen::Index> basis;
  for (Eigen::Index b = 0; b < (Eigen::Index{1} << n); ++b) {
    int up = 0, down = 0;
    for (int q = 0; q < n; ++q)
      if (b >> q & 1) (q % 2 == 0 ? up : down)++;
    if (up + down == n_electrons && up - down == two_sz) basis.push_back(b);
  }
  Mat sub(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) sub(i, j) = h(basis[i], basis[j]);
  Eigen::SelfAdjointEigenSolver<Mat> es(sub);
  return es.eigenvalues().minCoeff();
}

inline Eigen::VectorXd sorted_eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return es.eigenvalues();
}

/// One-qubit density matrix after gate u and a depolarizing channel
/// rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
inline Mat depolarize(const Mat& rho, double p) {
  Mat out = (1 - p) * rho;
  for (char a : {'X', 'Y', 'Z'}) out += p / 3 * pauli(a) * rho * pauli(a);
  return out;
}

/// Random circuit over the simulator's unitary gate set.
template <typename Rng>
fermiforge::Circuit random_circuit(int n, int n_gates, Rng& rng) {
  static const std::vector<std::string> one = {"H", "X", "Y", "Z", "S", "SDAG", "T", "TDAG", "RX", "RY", "RZ", "PHASE"};
  static const std::vector<std::string> two = {"CNOT", "CZ", "CRZ", "SWAP"};
  std::uniform_int_distribution<int> qd(0, n - 1);
  std::uniform_real_distribution<double> ad(-std::numbers::pi, std::numbers::pi);
  std::bernoulli_distribution pick_two(n > 1 ? 0.35 : 0.0);
  fermiforge::Circuit c({}, static_cast<std::size_t>(n));
  for (int i = 0; i < n_gates; ++i) {
    if (pick_two(rng)) {
      const auto& name = two[std::uniform_int_distribution<std::size_t>(0, two.size() - 1)(rng)];
      int a = qd(rng), b = qd(rng);
      while (b == a) b = qd(rng);
      if (name == "SWAP")
        c.add_gate(fermiforge::make_gate("SWAP", {a, b}));
      else if (name == "CRZ")
        c.add_gate(fermiforge::make_gate(name, {a}, {b}, ad(rng)));
      else
        c.add_gate(fermiforge::make_gate(name, {a}, {b}));
    } else {
      const auto& name = one[std::uniform_int_distribution<std::size_t>(0, one.size() - 1)(rng)];
      const bool rot = name == "RX" || name == "RY" || name == "RZ" || name == "PHASE";
      c.add_gate(rot ? fermiforge::make_gate(name, {qd(rng)}, {}, ad(rng))
                     : fermiforge::make_gate(name, {qd(rng)}));
    }
  }
  return c;
}

/// Random operator with Hermitian-symmetrized coefficients.
template <typename Rng>
fermiforge::QubitOperator random_hermitian(int n, int n_terms, Rng& rng) {
  std::uniform_int_distribution<int> ad(0, 3);
  std::normal_distribution<double> cd_(0.0, 1.0);
  fermiforge::QubitOperator op;
  for (int t = 0; t < n_terms; ++t) {
    std::vector<fermiforge::PauliWord::Factor> f;
    for (int q = 0; q < n; ++q) {
      const int a = ad(rng);
      if (a) f.emplace_back(q, a == 1 ? fermiforge::Axis::X : a == 2 ? fermiforge::Axis::Y : fermiforge::Axis::Z);
    }
    op.add_term(fermiforge::PauliWord(f), cd_(rng));
  }
  return op;
}

/// Random Hermitian fermionic operator: h_pq a^p a_q + h.c. plus
/// two-body a^p a^q a_r a_s + h.c. terms.
template <typename Rng>
fermiforge::FermionOperator random_hermitian_fermion(int n, Rng& rng) {
  using fermiforge::Ladder;
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_int_distribution<int> id(0, n - 1);
  fermiforge::FermionOperator f;
  f.add_term({}, nd(rng));
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      const cd c = p == q ? cd(nd(rng)) : cd(nd(rng), nd(rng));
      f.add_term({Ladder{p, true}, Ladder{q, false}}, c);
      if (p != q) f.add_term({Ladder{q, true}, Ladder{p, false}}, std::conj(c));
    }
  for (int t = 0; t < 4; ++t) {
    const int p = id(rng), q = id(rng), r = id(rng), s = id(rng);
    const cd c(nd(rng), nd(rng));
    f.add_term({Ladder{p, true}, Ladder{q, true}, Ladder{r, false}, Ladder{s, false}}, c);
    f.add_term({Ladder{s, true}, Ladder{r, true}, Ladder{q, false}, Ladder{p, false}}, std::conj(c));
  }
  return f;
}

}  // namespace oracle
