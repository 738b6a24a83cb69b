// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fermiforge/vqe.hpp"

namespace fermiforge {

struct Atom {
  std::string element;
  /// Angstrom.
  std::array<double, 3> position{};

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Geometry {
  std::vector<Atom> atoms;
  int charge = 0;
  int spin = 0;

  std::size_t size() const { return atoms.size(); }
};

/// True for the symbols H through Og.
bool is_element_symbol(std::string_view symbol);

/**
 * Parses XYZ text: an optional header (atom count line and comment line)
 * followed by `El x y z` rows. Blank trailing lines are ignored. Throws
 * ValidationError on malformed rows, unknown elements, non-finite
 * coordinates, or a header count that disagrees with the rows.
 */
Geometry parse_xyz(std::string_view text);
std::string to_xyz(const Geometry& g, std::string_view comment = "");

struct Link {
  std::size_t staying = 0;
  std::size_t leaving = 0;
  double factor = 1.0;
  std::string cap_element = "H";
};

struct FragmentSpec {
  /// Empty selects the whole system.
  std::vector<std::size_t> selected_atoms;
  std::vector<Link> broken_links;
  int charge = 0;
  int spin = 0;
  std::string solver_low;
  nlohmann::json options_low = nlohmann::json::object();
  std::optional<std::string> solver_high;
  nlohmann::json options_high = nlohmann::json::object();

  bool is_whole_system() const { return selected_atoms.empty(); }
};

/// r_stay + factor (r_leave - r_stay).
std::array<double, 3> link_cap_position(const Geometry& g, const Link& link);

/**
 * Selected atoms in the given order, then one cap atom per link at
 * link_cap_position. Charge and spin come from the spec. Throws
 * ValidationError when an index is out of range, a staying atom is not
 * selected, a leaving atom is selected, or a factor is outside (0, 1].
 */
Geometry build_capped_fragment(const Geometry& g, const FragmentSpec& f);

/// The rest of the system, capped from the other side: the unselected atoms
/// plus a cap at r_leave + factor (r_stay - r_leave) per link.
Geometry build_capped_complement(const Geometry& g, const FragmentSpec& f);

/// e_all_low + sum_i (e_high_i - e_low_i).
double oniom_energy(double e_all_low, const std::vector<std::pair<double, double>>& fragment_pairs);

struct SolverOutput {
  double energy = 0.0;
  std::optional<ResourceReport> resources;
};

/// Energy provider: (capped geometry, options) -> energy.
using FragmentSolver = std::function<SolverOutput(const Geometry&, const nlohmann::json&)>;

/**
 * Named solvers. with_builtins() registers:
 *  - "stub": options {"energy": E} or {"atomic_energies": {"H": e, ...}},
 *    the latter summed over the atoms of the geometry;
 *  - "exact_diag": options {"operator_file": path}, lowest eigenvalue of a
 *    qubit operator in text format;
 *  - "vqe": options {"config_file": path} or {"config": {...}}, a VQE run
 *    whose ResourceReport is kept.
 * Relative paths resolve against base_dir.
 */
class SolverRegistry {
 public:
  static SolverRegistry with_builtins(std::string base_dir = ".");

  void add(std::string name, FragmentSolver solver);
  bool contains(std::string_view name) const;
  /// Throws ValidationError for unregistered names.
  const FragmentSolver& get(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, FragmentSolver, std::less<>> solvers_;
};

struct FragmentResult {
  std::size_t index = 0;
  double e_low = 0.0;
  std::optional<double> e_high;
  std::optional<ResourceReport> resources;
};

struct OniomResult {
  double energy = 0.0;
  double e_all_low = 0.0;
  std::vector<FragmentResult> fragments;
  /// Reports of the fragments solved by a quantum (VQE) solver.
  std::vector<ResourceReport> resources;
};

/**
 * Solves the whole system with its low solver and every model fragment
 * (capped) with both its low and high solvers, then combines them with
 * oniom_energy. Model fragments without a high solver contribute nothing.
 * Throws ValidationError unless exactly one fragment is the whole system.
 */
OniomResult run_oniom(const Geometry& g, const std::vector<FragmentSpec>& fragments,
                      const SolverRegistry& registry);

/// Orbital-index subset, sorted ascending.
using Subset = std::vector<int>;

/// "(1,3)" <-> {1, 3}.
std::string subset_key(const Subset& s);
Subset parse_subset_key(std::string_view key);

struct IncrementTable {
  /// Correlation energy E_c(S) per subset.
  std::map<Subset, double> energies;

  /// Largest subset size present.
  std::size_t order() const;
};

/**
 * Many-body increments eps(S) = E_c(S) - sum over proper nonempty subsets T
 * of eps(T), in order of increasing |S|. Throws ValidationError naming the
 * first missing subset when the table is not closed under taking subsets.
 */
std::map<Subset, double> mi_increments(const IncrementTable& table);

struct Recombination {
  double energy = 0.0;
  /// Sum of the increments of order above k.
  double truncation_error = 0.0;
  std::size_t order = 0;
};

/// sum_{|S| <= k} eps(S); k = 0 selects the largest order present.
Recombination mi_recombine(const std::map<Subset, double>& increments, std::size_t k = 0);

}  // namespace fermiforge
