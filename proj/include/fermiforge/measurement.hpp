// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fermiforge/pauli.hpp"

namespace fermiforge {

/// Parent measurement basis -> terms whose expectation that basis determines.
using MeasurementMap = std::map<PauliWord, QubitOperator>;

/// Parent basis -> (term -> shot count).
using ShotPlan = std::map<PauliWord, std::map<PauliWord, std::uint64_t>>;

/**
 * Greedy minimum clique cover of the qubit-wise commutativity graph.
 *
 * Non-identity terms are visited in a seed-shuffled order; each joins the
 * earliest-created group whose parent is QWC-compatible with it, and the
 * parent grows to the qubit-wise union. The identity term is not grouped.
 */
MeasurementMap group_qwc(const QubitOperator& op, std::uint64_t seed = 0);

/**
 * Shots for each term so its weighted standard error is 10^-(digits+1):
 * ceil((|Re c| * 10^(digits+1))^2), at least 1 for nonzero c. Identity and
 * zero-real-part terms get 0.
 */
std::map<PauliWord, std::uint64_t> get_measurement_estimate(const QubitOperator& op, int digits);

/// group_qwc followed by get_measurement_estimate on every group.
ShotPlan plan_measurements(const QubitOperator& op, std::uint64_t seed, int digits);

/// Shots needed to execute the plan: per group, the largest member count.
std::uint64_t total_shots(const ShotPlan& plan);

/// True when measuring in `basis` determines <term>: the basis carries the
/// term's axis on every qubit of the term's support.
bool measurable_in(const PauliWord& term, const PauliWord& basis);

/// Every parent in `map` that can estimate `term`.
std::vector<PauliWord> compatible_parents(const MeasurementMap& map, const PauliWord& term);

}  // namespace fermiforge
