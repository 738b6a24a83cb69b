// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/measurement.hpp"

#include <cmath>

#include "fermiforge/errors.hpp"
#include "fermiforge/random.hpp"

namespace fermiforge {

MeasurementMap group_qwc(const QubitOperator& op, std::uint64_t seed) {
  std::vector<std::pair<PauliWord, Complex>> terms;
  for (const auto& [w, c] : op.terms())
    if (!w.is_identity()) terms.emplace_back(w, c);

  Xoshiro256 rng(derive_seed(seed, "group_qwc"));
  for (std::size_t i = 0; i + 1 < terms.size(); ++i)
    std::swap(terms[i], terms[i + rng.below(terms.size() - i)]);

  struct Group {
    PauliWord parent;
    QubitOperator members;
  };
  std::vector<Group> groups;
  for (const auto& [w, c] : terms) {
    bool placed = false;
    for (auto& g : groups) {
      if (!qwc_compatible(g.parent, w)) continue;
      g.parent = qwc_union(g.parent, w);
      g.members.add_term(w, c);
      placed = true;
      break;
    }
    if (!placed) groups.push_back({w, QubitOperator(w, c)});
  }

  MeasurementMap out;
  for (auto& g : groups) out.emplace(std::move(g.parent), std::move(g.members));
  return out;
}

std::map<PauliWord, std::uint64_t> get_measurement_estimate(const QubitOperator& op, int digits) {
  if (digits < 0) throw ValidationError("digits must be non-negative");
  const double scale = std::pow(10.0, digits + 1);
  std::map<PauliWord, std::uint64_t> out;
  for (const auto& [w, c] : op.terms()) {
    const double weight = std::abs(c.real());
    if (w.is_identity() || weight == 0.0) {
      out[w] = 0;
      continue;
    }
    const double x = weight * scale;
    // Absorb representation error so that e.g. 0.25 * 10^3 squared is 62500.
    const double shots = std::ceil(x * x * (1.0 - 1e-12));
    out[w] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(shots));
  }
  return out;
}

ShotPlan plan_measurements(const QubitOperator& op, std::uint64_t seed, int digits) {
  ShotPlan plan;
  for (const auto& [parent, members] : group_qwc(op, seed))
    plan.emplace(parent, get_measurement_estimate(members, digits));
  return plan;
}

std::uint64_t total_shots(const ShotPlan& plan) {
  std::uint64_t total = 0;
  for (const auto& [parent, terms] : plan) {
    std::uint64_t m = 0;
    for (const auto& [w, n] : terms) m = std::max(m, n);
    total += m;
  }
  return total;
}

bool measurable_in(const PauliWord& term, const PauliWord& basis) {
  for (const auto& [q, a] : term.factors())
    if (basis.axis_on(q) != static_cast<char>(a)) return false;
  return true;
}

std::vector<PauliWord> compatible_parents(const MeasurementMap& map, const PauliWord& term) {
  std::vector<PauliWord> out;
  for (const auto& [parent, members] : map)
    if (measurable_in(term, parent)) out.push_back(parent);
  return out;
}

}  // namespace fermiforge
