// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/fermion.hpp"
#include "fermiforge/mapping.hpp"
#include "fermiforge/optimizer.hpp"
#include "fermiforge/pauli.hpp"
#include "fermiforge/simulator.hpp"

namespace fermiforge {

enum class AnsatzKind { HEA, QCC, CUSTOM };

AnsatzKind parse_ansatz_kind(std::string_view name);
std::string to_string(AnsatzKind k);

struct HEAOptions {
  int layers = 1;
  /// Rotation gates applied to every qubit in each rotation layer, in order.
  std::vector<std::string> rotations{"RY"};
  /// "linear" (CNOT chain), "circular" (chain closed back to qubit 0) or "none".
  std::string entangler = "linear";
};

struct QCCOptions {
  /// Screening threshold on |dE/dtau| (Hartree/radian).
  double threshold = 1e-3;
  std::optional<std::size_t> max_generators;
  /// Variational RY/RZ mean-field layer in place of the X reference layer.
  bool bloch_layer = false;
};

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::QCC;
  /// Half-width of the "random" initial parameter range.
  double tau_guess = 1e-2;
  HEAOptions hea;
  QCCOptions qcc;
  /// CUSTOM: gates tagged variational are the parameters.
  Circuit custom;
};

enum class InitPolicy { Zeros, Random, Explicit };

InitPolicy parse_init_policy(std::string_view name);
std::string to_string(InitPolicy p);

struct VQEConfig {
  /// Exactly one of the two Hamiltonians must be set; a fermionic one is
  /// mapped with `mapping`.
  std::optional<QubitOperator> qubit_hamiltonian;
  std::optional<FermionOperator> fermion_hamiltonian;
  MappingConfig mapping;
  AnsatzSpec ansatz;
  /// Occupation bitstring of the reference state. Defaults to the
  /// Hartree-Fock determinant when mapping.n_spinorbitals is set, else all
  /// zeros.
  std::optional<std::string> reference;
  InitPolicy init = InitPolicy::Zeros;
  std::vector<double> initial_parameters;
  OptimizerOptions optimizer;
  BackendConfig backend;
  /// Root of the initial-parameter, optimizer and (unless backend.seed is
  /// set) backend streams; overrides optimizer.seed.
  std::uint64_t seed = 0;
};

/// The six quantities reported by VQESolver::get_resources.
struct ResourceReport {
  std::size_t qubit_hamiltonian_terms = 0;
  std::size_t circuit_width = 0;
  std::size_t circuit_gates = 0;
  std::size_t circuit_2qubit_gates = 0;
  std::size_t circuit_var_gates = 0;
  std::size_t vqe_variational_parameters = 0;

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

struct QCCGeneratorSet {
  std::vector<PauliWord> generators;
  /// dE/dtau at tau = 0, one per generator.
  std::vector<double> gradients;

  std::size_t size() const { return generators.size(); }
};

/// dE/dtau = (i/2) <ref|[P, H]|ref> for the factor exp(-i tau P / 2).
double qcc_gradient(const QubitOperator& h, const Statevector& reference, const PauliWord& p);

/**
 * Gradient screening of QCC generators.
 *
 * Candidates are the Pauli words with an odd number of Y factors whose
 * support equals the support of some non-identity term of H. Candidates
 * whose |gradient| agree within 1e-10 form one candidate set, represented by
 * its lexicographically smallest word. Representatives with
 * |gradient| >= threshold are kept in decreasing |gradient| order (ties by
 * word), truncated to max_generators when given.
 */
QCCGeneratorSet qcc_screen_generators(const QubitOperator& h, const Statevector& reference,
                                      double threshold,
                                      std::optional<std::size_t> max_generators = {});

/// exp(-i tau P / 2) as basis rotations, a CNOT ladder and RZ(tau); the RZ
/// is tagged variational.
Circuit pauli_exponential(const PauliWord& p, double tau, bool variational = true);

/**
 * QCC circuit: reference layer (X on occupied qubits, or RY(theta) RZ(phi)
 * per qubit with theta = pi on occupied qubits when bloch_layer is set),
 * then one exponential per generator in list order, starting at tau = 0.
 */
Circuit qcc_build_circuit(const QCCGeneratorSet& gens, std::string_view reference,
                          bool bloch_layer = false);

/// Rotation layer, then `layers` times (entangler, rotation layer).
Circuit hea_circuit(int n_qubits, const HEAOptions& opts);

/// X on every qubit whose character is '1'.
Circuit reference_circuit(std::string_view bits);

/**
 * Variational quantum eigensolver with a build / simulate / get_resources
 * lifecycle. build() prepares the qubit Hamiltonian, reference and ansatz
 * without simulating; simulate() runs the classical optimizer.
 */
class VQESolver {
 public:
  explicit VQESolver(VQEConfig cfg);

  void build();
  /// Minimizes the energy; returns the lowest energy found. When the
  /// optimizer stops on its evaluation budget, converged() is false.
  double simulate();
  /// Energy for the given parameters; throws ValidationError on a length
  /// mismatch and LifecycleError before build().
  double energy_estimation(const std::vector<double>& params) const;
  ResourceReport get_resources() const;

  bool built() const { return built_; }
  bool converged() const { return converged_; }
  const VQEConfig& config() const { return cfg_; }
  const QubitOperator& qubit_hamiltonian() const;
  /// Ansatz including the reference layer, bound to the current parameters.
  const Circuit& circuit() const;
  const std::vector<double>& parameters() const { return params_; }
  const std::string& reference() const { return reference_; }
  const std::optional<QCCGeneratorSet>& qcc_generators() const { return qcc_; }
  const OptimizerResult& optimizer_result() const { return opt_result_; }
  std::optional<double> optimal_energy() const { return energy_; }

 private:
  void require_built() const;

  VQEConfig cfg_;
  bool built_ = false;
  bool converged_ = false;
  QubitOperator hamiltonian_;
  std::string reference_;
  Circuit circuit_;
  std::vector<double> params_;
  std::optional<QCCGeneratorSet> qcc_;
  OptimizerResult opt_result_;
  std::optional<double> energy_;
};

}  // namespace fermiforge
