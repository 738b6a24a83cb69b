// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "fermiforge/io.hpp"
#include "fermiforge/measurement.hpp"
#include "fermiforge/postprocessing.hpp"
#include "fermiforge/simulator.hpp"
#include "oracle.hpp"

using namespace fermiforge;

namespace {

PauliWord W(std::string_view s) { return PauliWord::parse(s); }

const std::string kData = FERMIFORGE_DATA_DIR;

QubitOperator rdm_operator() { return read_qubit_operator(kData + "/rdm_operator_2q.txt"); }

// Smallest number of QWC cliques covering all words, by exhaustive search.
std::size_t min_clique_cover(const std::vector<PauliWord>& words) {
  const std::size_t n = words.size();
  std::vector<int> color(n, -1);
  std::size_t best = n;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t used) {
    if (used >= best) return;
    if (i == n) {
      best = used;
      return;
    }
    for (std::size_t c = 0; c <= used && c < best; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (color[j] == static_cast<int>(c) && !qwc_compatible(words[i], words[j])) ok = false;
      if (!ok) continue;
      color[i] = static_cast<int>(c);
      go(i + 1, std::max(used, c + 1));
      color[i] = -1;
    }
  };
  go(0, 0);
  return best;
}

}  // namespace

TEST_CASE("two-qubit RDM operator groups into five bases") {
  const auto op = rdm_operator();
  REQUIRE(op.n_terms() == 9);
  const auto m = group_qwc(op, 0);
  CHECK(m.size() == 5);
  const auto& xz = m.at(W("X0 Z1"));
  CHECK(xz.n_terms() == 3);
  for (const auto* w : {"X0", "X0 Z1", "Z1"}) CHECK(xz.coefficient(W(w)) == Complex(0.25));
  CHECK(m.at(W("Y0 Y1")) == QubitOperator(W("Y0 Y1"), -0.25));
  CHECK(m.at(W("Z0 Z1")) == QubitOperator(W("Z0 Z1"), 0.25));
  CHECK(m.at(W("Z0 X1")).coefficient(W("Z0 X1")) == Complex(0.25));
  CHECK(m.at(W("Z0 X1")).coefficient(W("Z0")) == Complex(0.25));
  CHECK(m.at(W("X0 X1")).n_terms() + m.at(W("Z0 X1")).n_terms() == 4);
}

TEST_CASE("grouping invariants across seeds") {
  const auto op = rdm_operator();
  std::vector<PauliWord> words;
  for (const auto& [w, c] : op.terms()) words.push_back(w);
  const auto best = min_clique_cover(words);
  CHECK(best == 5);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = group_qwc(op, seed);
    CHECK(m.size() == best);
    std::size_t covered = 0;
    for (const auto& [parent, members] : m) {
      for (const auto& [w, c] : members.terms()) {
        CHECK(qwc_compatible(parent, w));
        CHECK(op.coefficient(w) == c);
        ++covered;
      }
    }
    CHECK(covered == op.n_terms());
    CHECK(group_qwc(op, seed) == m);
  }
}

TEST_CASE("grouping edge cases") {
  const auto m = group_qwc(QubitOperator(W("X0")) + QubitOperator(W("Y0")) + QubitOperator(W("Z0")), 3);
  CHECK(m.size() == 3);
  CHECK(group_qwc(QubitOperator(), 0).empty());
  CHECK(group_qwc(QubitOperator::constant(2.0), 0).empty());
  const auto with_identity = group_qwc(QubitOperator::constant(1.0) + QubitOperator(W("Z0")), 0);
  REQUIRE(with_identity.size() == 1);
  CHECK(with_identity.begin()->second == QubitOperator(W("Z0")));
}

TEST_CASE("random operators group into valid covers") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto op = oracle::random_hermitian(4, 10, rng);
    const auto m = group_qwc(op, trial);
    std::size_t covered = 0;
    for (const auto& [parent, members] : m) {
      for (const auto& [w, c] : members.terms()) {
        CHECK(qwc_compatible(parent, w));
        ++covered;
      }
    }
    CHECK(covered == op.n_terms() - (op.coefficient(PauliWord{}) != 0.0 ? 1 : 0));
    CHECK(m.size() <= covered);
  }
}

TEST_CASE("shot estimates") {
  const auto est = get_measurement_estimate(QubitOperator(W("X0"), 0.25), 2);
  CHECK(est.at(W("X0")) == 62500);
  CHECK(get_measurement_estimate(QubitOperator(W("X0"), 0.0), 3).count(W("X0")) == 0);
  CHECK(get_measurement_estimate(QubitOperator(W("X0"), Complex(0.0, 1.0)), 3).at(W("X0")) == 0);
  CHECK(get_measurement_estimate(QubitOperator(W("Z0"), 1.0), 1).at(W("Z0")) == 10000);
  CHECK(get_measurement_estimate(QubitOperator(W("Z0"), Complex(0.25, 3.0)), 2).at(W("Z0")) == 62500);
  CHECK(get_measurement_estimate(QubitOperator(W("Z0"), 1e-9), 0).at(W("Z0")) == 1);
  CHECK(get_measurement_estimate(QubitOperator::constant(5.0), 2).at(PauliWord{}) == 0);
}

TEST_CASE("10000 shots of Z0 give a standard error of 1e-2") {
  const Circuit c({make_gate("RY", {0}, {}, 1.0)});
  std::vector<double> vals;
  for (std::uint64_t r = 0; r < 100; ++r) {
    BackendConfig b;
    b.n_shots = 10000;
    b.seed = r;
    vals.push_back(expectation_from_frequencies_oneterm(W("Z0"), simulate(c, b).frequencies));
  }
  CHECK(series_stats(vals).stdev <= 1e-2);
}

TEST_CASE("measurement plans") {
  const auto plan = plan_measurements(rdm_operator(), 0, 2);
  CHECK(plan.size() == 5);
  std::size_t terms = 0;
  for (const auto& [parent, entries] : plan)
    for (const auto& [w, n] : entries) {
      CHECK(n == 62500);
      ++terms;
    }
  CHECK(terms == 9);
  CHECK(total_shots(plan) == 5 * 62500);
  CHECK(plan.at(W("X0 Z1")).size() == 3);

  const auto single = plan_measurements(QubitOperator(W("Y2"), 0.5), 0, 1);
  CHECK(single.size() == 1);
  CHECK(single.begin()->second.size() == 1);
}

TEST_CASE("grouped plans never need more circuits than per-term plans") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto op = oracle::random_hermitian(4, 12, rng);
    const auto plan = plan_measurements(op, trial, 2);
    // A grouped basis runs max(member shots); ungrouped runs every term.
    std::uint64_t grouped = 0, ungrouped = 0;
    for (const auto& [parent, entries] : plan) {
      std::uint64_t mx = 0;
      for (const auto& [w, n] : entries) {
        mx = std::max(mx, n);
        ungrouped += n;
      }
      grouped += mx;
    }
    CHECK(grouped <= ungrouped);
    CHECK(total_shots(plan) == grouped);
  }
}

TEST_CASE("compatible parents and pooled estimates") {
  const auto m = group_qwc(rdm_operator(), 0);
  const auto parents = compatible_parents(m, W("Z1"));
  CHECK(parents.size() == 2);
  CHECK(measurable_in(W("Z1"), W("X0 Z1")));
  CHECK_FALSE(measurable_in(W("X1"), W("X0 Z1")));

  // Pooled estimator variance is no larger than the single-source one.
  const Circuit c({make_gate("RY", {0}, {}, 0.7), make_gate("RY", {1}, {}, 1.1), make_gate("CNOT", {1}, {0})});
  std::vector<double> single, pooled;
  for (std::uint64_t r = 0; r < 200; ++r) {
    BackendConfig b;
    b.n_shots = 500;
    b.seed = 2 * r;
    const auto h1 = simulate(append_measurement_basis(c, W("X0 Z1")), b).frequencies;
    b.seed = 2 * r + 1;
    const auto h2 = simulate(append_measurement_basis(c, W("Z0 Z1")), b).frequencies;
    single.push_back(expectation_from_frequencies_oneterm(W("Z1"), h1));
    pooled.push_back(pooled_expectation(W("Z1"), {{h1, 500}, {h2, 500}}));
  }
  CHECK(series_stats(pooled).stdev <= series_stats(single).stdev);
  CHECK_THROWS_AS(pooled_expectation(W("Z1"), {}), ValidationError);
}
