// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fermiforge/circuit.hpp"
#include "fermiforge/fermion.hpp"
#include "fermiforge/fragmentation.hpp"
#include "fermiforge/measurement.hpp"
#include "fermiforge/pauli.hpp"
#include "fermiforge/postprocessing.hpp"
#include "fermiforge/simulator.hpp"
#include "fermiforge/vqe.hpp"

namespace fermiforge {

using json = nlohmann::json;

/// Whole file as text; throws ValidationError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);
json read_json(const std::filesystem::path& path);

/**
 * Line-oriented operator text. Each line is a coefficient followed by a
 * bracketed term: `(re,im) [X0 Z1]`, `-0.5 [Z0]`, or `[X1]` (coefficient 1).
 * `[]` is the identity. Text after `#` is a comment. Repeated terms add.
 */
QubitOperator parse_qubit_operator(std::string_view text);
/// Same layout with ladder terms: `(re,im) [2^ 3^ 1 0]`.
FermionOperator parse_fermion_operator(std::string_view text);
QubitOperator read_qubit_operator(const std::filesystem::path& path);
FermionOperator read_fermion_operator(const std::filesystem::path& path);

/**
 * Circuit JSON: {"width": n, "gates": [{"name": "CNOT", "targets": [1],
 * "controls": [0], "parameter": 0.5 | "theta" | null, "variational": false}]}.
 * "width", "controls", "parameter" and "variational" are optional; "targets"
 * and "controls" also accept a bare integer.
 */
json to_json(const Gate& g);
Gate gate_from_json(const json& j);
json to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

/// {"bitstring": frequency, ...}; validated on read.
json to_json(const Histogram& h);
Histogram histogram_from_json(const json& j);

/// {"CNOT": {"depol": 0.01}, ...}.
NoiseModel noise_model_from_json(const json& j);
json to_json(const NoiseModel& n);

/// Coefficients render as numbers when real, else [re, im].
json coefficient_to_json(Complex c);
Complex coefficient_from_json(const json& j);

/// {"X0 Z1": {"X0": 0.25, "X0 Z1": 0.25, "Z1": 0.25}, ...}; the identity word
/// is keyed "I".
json to_json(const MeasurementMap& m);
json to_json(const ShotPlan& p);
std::string word_key(const PauliWord& w);

/// The six report keys, verbatim.
json to_json(const ResourceReport& r);
ResourceReport resource_report_from_json(const json& j);

/**
 * VQE configuration. Relative file names resolve against base_dir.
 *
 *   {"hamiltonian": {"qubit_operator_file": "h.txt"}
 *                 | {"fermion_operator_file": "f.txt", "mapping": "jw",
 *                    "n_spinorbitals": 4, "n_electrons": 2, "spin": 0,
 *                    "up_then_down": false},
 *    "reference": "1100",
 *    "ansatz": {"kind": "QCC", "tau_guess": 0.01, "threshold": 1e-3,
 *               "max_generators": 1, "bloch_layer": false,
 *               "layers": 1, "rotations": ["RY"], "entangler": "linear",
 *               "circuit": {...} | "circuit_file": "c.json"},
 *    "initial_parameters": "zeros" | "random" | [0.1, ...],
 *    "optimizer": {"method": "nelder-mead", "tolerance": 1e-7,
 *                  "max_evaluations": 5000, "initial_step": 0.1,
 *                  "max_restarts": 20},
 *    "backend": {"n_shots": 1000, "noise": {...} | "noise_file": "n.json"},
 *    "seed": 0}
 */
VQEConfig vqe_config_from_json(const json& j, const std::filesystem::path& base_dir = ".");

/// {"(0,)": e, "(0,1)": e, ...}; keys are sorted index tuples.
IncrementTable increment_table_from_json(const json& j);
json to_json(const IncrementTable& t);
json increments_to_json(const std::map<Subset, double>& increments);

/// {"staying": 0, "leaving": 1, "factor": 0.709, "cap": "H"}.
Link link_from_json(const json& j);
/// {"selected_atoms": [...], "broken_links": [...], "charge": 0, "spin": 0,
///  "solver_low": "stub", "options_low": {...},
///  "solver_high": "vqe", "options_high": {...}}.
FragmentSpec fragment_spec_from_json(const json& j);

json to_json(const BootstrapReport& r);

/**
 * RDM tensor files: one JSON header line {"shape": [...], "dtype":
 * "float64", "order": "row-major", "convention": "..."} followed by the
 * little-endian float64 values. A 2-RDM matrix in the RDMPair layout is
 * written as shape [n, n, n, n].
 */
void write_rdm_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      std::string_view convention, bool as_four_index);
Eigen::MatrixXd read_rdm_binary(const std::filesystem::path& path, json* header = nullptr);

}  // namespace fermiforge
