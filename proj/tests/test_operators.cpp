// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "fermiforge/dense.hpp"
#include "fermiforge/errors.hpp"
#include "fermiforge/io.hpp"
#include "fermiforge/mapping.hpp"
#include "fermiforge/pauli.hpp"
#include "oracle.hpp"

using namespace fermiforge;

namespace {

const std::string kData = FERMIFORGE_DATA_DIR;

PauliWord W(std::string_view s) { return PauliWord::parse(s); }

double max_abs(const oracle::Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Signed basis permutation taking interleaved occupations to up-then-down ones.
oracle::Mat reorder_matrix(int n) {
  const auto dim = Eigen::Index{1} << n;
  oracle::Mat p = oracle::Mat::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    std::vector<int> occ;
    for (int q = 0; q < n; ++q)
      if (b >> q & 1) occ.push_back(up_then_down_index(q, n));
    int swaps = 0;
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j)
        if (occ[i] > occ[j]) ++swaps;
    Eigen::Index target = 0;
    for (int q : occ) target |= Eigen::Index{1} << q;
    p(target, b) = swaps % 2 ? -1.0 : 1.0;
  }
  return p;
}

}  // namespace

TEST_CASE("Pauli word parsing and ordering") {
  const auto w = W("Z3 X0 Y1");
  CHECK(w.to_string() == "X0 Y1 Z3");
  CHECK(w.weight() == 3);
  CHECK(w.span() == 4);
  CHECK(w.axis_on(2) == 'I');
  CHECK(W("").is_identity());
  CHECK_THROWS_AS(W("X0 Z0"), ValidationError);
  CHECK_THROWS_AS(W("Q1"), ValidationError);
}

TEST_CASE("Pauli products track phases") {
  auto [c, w] = multiply(W("X0"), W("X0"));
  CHECK(w.is_identity());
  CHECK(c == Complex(1, 0));
  std::tie(c, w) = multiply(W("X0"), W("Y0"));
  CHECK(w == W("Z0"));
  CHECK(c == Complex(0, 1));
  CHECK(commutator(QubitOperator(W("Z0")), QubitOperator(W("Z1"))).empty());
  const auto xz = commutator(QubitOperator(W("X0")), QubitOperator(W("Z0")));
  CHECK(xz == QubitOperator(W("Y0"), Complex(0, -2)));
}

TEST_CASE("operator algebra matches dense matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_hermitian(3, 6, rng);
    const auto b = oracle::random_hermitian(3, 6, rng) * Complex(0.3, -0.8);
    const auto c = oracle::random_hermitian(3, 4, rng);
    const auto da = oracle::qubit_operator(a, 3), db = oracle::qubit_operator(b, 3);
    CHECK(max_abs(oracle::qubit_operator(a * b, 3) - da * db) < 1e-12);
    CHECK(max_abs(oracle::qubit_operator(commutator(a, b), 3) - (da * db - db * da)) < 1e-12);
    CHECK(max_abs(to_dense(a, 3) - da) < 1e-12);
    const auto left = (a * b) * c, right = a * (b * c);
    for (const auto& [w, coeff] : left.terms()) CHECK(std::abs(coeff - right.coefficient(w)) < 1e-12);
    CHECK(a.is_hermitian());
    CHECK(a.adjoint() == a);
  }
}

TEST_CASE("compress drops small terms") {
  CHECK(compress(QubitOperator::constant(1e-12), 1e-8).empty());
  QubitOperator op(W("X0"), Complex(0.5, 1e-13));
  op.add_term(W("Z1"), 1e-3);
  op.add_term(W("Y0 Y1"), 2e-9);
  const auto once = compress(op, 1e-8);
  CHECK(once.n_terms() == 2);
  CHECK(once.coefficient(W("X0")).imag() == 0.0);
  CHECK(compress(once, 1e-8) == once);

  const auto loose = compress(op, 1e-2);
  const auto ev_full = eigenvalues(op.adjoint() * 0.5 + op * 0.5, 2);
  const auto ev_comp = eigenvalues(loose, 2);
  CHECK((ev_full - ev_comp).cwiseAbs().maxCoeff() <= 1e-3 + 2e-9 + 1e-12);
}

TEST_CASE("qubit-wise compatibility") {
  CHECK(qwc_compatible(W("X0 X1"), W("X0")));
  CHECK_FALSE(qwc_compatible(W("X0"), W("Z0")));
  CHECK(qwc_compatible(W("X0"), W("Z1")));
  CHECK(qwc_compatible(W("Y0 Z2"), W("Y0 Z2")));
  CHECK(qwc_compatible(W("Z1"), W("X0 Z1")) == qwc_compatible(W("X0 Z1"), W("Z1")));
  CHECK(qwc_union(W("X0"), W("Z1")) == W("X0 Z1"));
}

TEST_CASE("Jordan-Wigner images") {
  const FermionOperator n0({{0, true}, {0, false}});
  CHECK(jordan_wigner(n0, 1) == QubitOperator::constant(0.5) + QubitOperator(W("Z0"), -0.5));
  FermionOperator hop({{1, true}, {0, false}});
  hop += FermionOperator({{0, true}, {1, false}});
  const auto img = compress(jordan_wigner(hop, 2), 1e-14);
  CHECK(img == QubitOperator(W("X0 X1"), 0.5) + QubitOperator(W("Y0 Y1"), 0.5));
  CHECK_THROWS_AS(jordan_wigner(n0 + FermionOperator({{4, false}}), 4), ValidationError);
}

TEST_CASE("mapped ladder operators obey anticommutation") {
  for (auto kind : {MappingKind::JW, MappingKind::BK}) {
    const int n = 4;
    std::vector<oracle::Mat> a, ad;
    for (int p = 0; p < n; ++p) {
      MappingConfig cfg{kind, n};
      a.push_back(oracle::qubit_operator(fermion_to_qubit_mapping(FermionOperator({{p, false}}), cfg), n));
      ad.push_back(oracle::qubit_operator(fermion_to_qubit_mapping(FermionOperator({{p, true}}), cfg), n));
    }
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const oracle::Mat anti = a[p] * ad[q] + ad[q] * a[p];
        const oracle::Mat expect = (p == q ? 1.0 : 0.0) * oracle::Mat::Identity(16, 16);
        CHECK(max_abs(anti - expect) < 1e-12);
        CHECK(max_abs(a[p] * a[q] + a[q] * a[p]) < 1e-12);
      }
  }
}

TEST_CASE("Jordan-Wigner matches the Kronecker ladder construction") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_hermitian_fermion(4, rng);
    CHECK(max_abs(oracle::qubit_operator(jordan_wigner(f, 4), 4) - oracle::fermion_operator(f, 4)) < 1e-12);
  }
}

TEST_CASE("Bravyi-Kitaev basics") {
  const FermionOperator n0({{0, true}, {0, false}});
  CHECK(compress(bravyi_kitaev(n0, 4), 1e-14) == QubitOperator::constant(0.5) + QubitOperator(W("Z0"), -0.5));
  const FermionOperator a0({{0, false}});
  CHECK(bravyi_kitaev(a0, 1) == jordan_wigner(a0, 1));
  MappingConfig bk{MappingKind::BK, 4};
  std::mt19937_64 rng(1);
  const auto f = oracle::random_hermitian_fermion(4, rng);
  CHECK(fermion_to_qubit_mapping(f, bk) == bravyi_kitaev(f, 4));
  CHECK(BinaryEncoding::bravyi_kitaev(4).encode({true, true, false, false}) ==
        std::vector<bool>{true, false, false, false});
}

TEST_CASE("mapped images of Hermitian operators are Hermitian with real coefficients") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_hermitian_fermion(4, rng);
    for (const auto& img : {jordan_wigner(f, 4), bravyi_kitaev(f, 4)}) {
      const auto compressed = compress(img, 1e-12);
      for (const auto& [w, c] : compressed.terms()) CHECK(std::abs(c.imag()) < 1e-12);
      CHECK(img.is_hermitian());
    }
  }
}

TEST_CASE("up-then-down reordering is a signed basis permutation") {
  std::mt19937_64 rng(4);
  const auto p = reorder_matrix(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = oracle::random_hermitian_fermion(4, rng);
    const auto utd = fermion_to_qubit_mapping(f, {MappingKind::JW, 4, 0, 0, true});
    CHECK(utd == jordan_wigner(reorder_up_then_down(f, 4), 4));
    const oracle::Mat conj = p * oracle::fermion_operator(f, 4) * p.adjoint();
    CHECK(max_abs(oracle::qubit_operator(utd, 4) - conj) < 1e-12);
  }
  CHECK(up_then_down_index(0, 4) == 0);
  CHECK(up_then_down_index(1, 4) == 2);
  CHECK(up_then_down_index(2, 4) == 1);
}

TEST_CASE("scBK on the H2 fixture") {
  const auto f = read_fermion_operator(kData + "/h2_sto3g_fermion.txt");
  MappingConfig cfg{MappingKind::SCBK, 4, 2, 0, true};
  const auto q = fermion_to_qubit_mapping(f, cfg);
  CHECK(q.n_qubits() == 2);
  CHECK(mapped_qubit_count(cfg) == 2);
  const double e_jw = oracle::sector_minimum(oracle::fermion_operator(f, 4), 4, 2, 0);
  CHECK(exact_ground_energy(q) == doctest::Approx(e_jw).epsilon(1e-10));
  CHECK(std::abs(exact_ground_energy(q) - e_jw) < 1e-10);
  CHECK(hartree_fock_bitstring(cfg) == "10");

  CHECK_THROWS_AS(scbk(f, {MappingKind::SCBK, 2, 2, 0, true}), ValidationError);
  CHECK_THROWS_AS(scbk(f, {MappingKind::SCBK, 4, 2, 0, false}), ValidationError);
  CHECK_THROWS_AS(fermion_to_qubit_mapping(FermionOperator({{0, true}, {1, false}}), cfg), SymmetryError);
  CHECK_THROWS_AS(fermion_to_qubit_mapping(FermionOperator({{0, true}}), cfg), SymmetryError);
}

TEST_CASE("scBK fixes the electron-number and alpha-count parities") {
  const auto f = read_fermion_operator(kData + "/h2_sto3g_fermion.txt");
  const auto dense = oracle::fermion_operator(f, 4);
  for (int n_el = 0; n_el <= 4; ++n_el) {
    for (int spin = -2; spin <= 2; ++spin) {
      const int n_alpha = (n_el + spin) / 2, n_beta = n_el - n_alpha;
      if ((n_el + spin) % 2 || n_alpha < 0 || n_beta < 0 || n_alpha > 2 || n_beta > 2) continue;
      // Lowest energy over every (N, Sz) sector sharing both parities.
      double expected = 1e300;
      for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
          if ((a - n_alpha) % 2 == 0 && (a + b - n_el) % 2 == 0)
            expected = std::min(expected, oracle::sector_minimum(dense, 4, a + b, a - b));
      MappingConfig cfg{MappingKind::SCBK, 4, n_el, spin, true};
      CHECK(std::abs(exact_ground_energy(fermion_to_qubit_mapping(f, cfg)) - expected) < 1e-10);
    }
  }
}

TEST_CASE("exact ground energy") {
  CHECK(exact_ground_energy(QubitOperator(W("Z0"))) == doctest::Approx(-1.0));
  const auto op = QubitOperator(W("X0"), 0.5) + QubitOperator(W("Z0"), 0.5);
  CHECK(exact_ground_energy(op) == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK_THROWS_AS(exact_ground_energy(QubitOperator(W("X0"), Complex(0, 1))), ValidationError);
  CHECK_THROWS_AS(exact_ground_energy(QubitOperator(W("Z13"))), WidthCapError);

  const auto h = read_qubit_operator(kData + "/h2_sto3g_jw.txt");
  const auto fixture = read_json(kData + "/h2_sto3g.json");
  CHECK(std::abs(exact_ground_energy(h) - fixture["fci_energy"].get<double>()) < 1e-8);
  const auto f = read_fermion_operator(kData + "/h2_sto3g_fermion.txt");
  CHECK(max_abs(oracle::qubit_operator(jordan_wigner(f, 4), 4) - oracle::qubit_operator(h, 4)) < 1e-10);
}
