// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/pauli.hpp"
#include "fermiforge/random.hpp"

namespace fermiforge {

/// Basis-state index bit k holds qubit k ("least-significant qubit first").
inline constexpr std::string_view kStatevectorOrdering = "lsq_first";

/// Normalized amplitude vector of length 2^n in kStatevectorOrdering.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0> on n qubits.
  explicit Statevector(int n_qubits);
  /// Takes amplitudes as given; throws ValidationError if the length is not a
  /// power of two or the norm differs from 1 by more than 1e-10.
  explicit Statevector(Eigen::VectorXcd amplitudes);
  /// Computational basis state; character i of `bits` is qubit i.
  static Statevector basis_state(std::string_view bits);

  int n_qubits() const { return n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  std::complex<double> operator[](std::uint64_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  /// Applies one gate in place. MEASURE is rejected here (see simulate()).
  void apply(const Gate& g);
  void apply(const Circuit& c);

  /// Applies a Pauli word in place.
  void apply(const PauliWord& w);

  std::complex<double> expectation(const PauliWord& w) const;
  std::complex<double> expectation(const QubitOperator& op) const;

  /// Collapses qubit q given a uniform draw u in [0,1); returns the outcome.
  int measure(int q, double u);

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

/// Sparse bitstring -> frequency map; character i of a key is qubit i.
using Histogram = std::map<std::string, double>;

/// Throws ValidationError unless keys share one length, values lie in [0,1]
/// and sum to 1 within tol.
void validate_histogram(const Histogram& h, double tol = 1e-9);

/// Bitstring of basis index `index` on n qubits, qubit 0 first.
std::string bitstring(std::uint64_t index, int n_qubits);

enum class ChannelKind { Depolarizing };

struct NoiseChannel {
  ChannelKind kind = ChannelKind::Depolarizing;
  double probability = 0.0;
};

/**
 * Per-gate-name noise. A depolarizing channel of probability p on a k-qubit
 * gate appends, with probability p, one of the 4^k - 1 non-identity Pauli
 * words on the gate's qubits, uniformly. On one qubit this scales <Z> by
 * (1 - 4p/3).
 */
class NoiseModel {
 public:
  /// kind must be "depol"; p in [0, 1].
  void add_quantum_error(std::string_view gate_name, std::string_view kind, double probability);
  const std::map<std::string, std::vector<NoiseChannel>>& channels() const { return channels_; }
  bool empty() const { return channels_.empty(); }

 private:
  std::map<std::string, std::vector<NoiseChannel>> channels_;
};

struct BackendConfig {
  std::string target = "native";
  /// Unset = exact (|amplitude|^2) frequencies.
  std::optional<std::uint64_t> n_shots;
  std::optional<NoiseModel> noise_model;
  std::optional<std::uint64_t> seed;
  int max_exact_qubits = 24;
  int max_trajectory_qubits = 20;
};

struct SimulationResult {
  Histogram frequencies;
  std::optional<Statevector> statevector;
};

struct BackendInfo {
  std::string ordering{kStatevectorOrdering};
  int max_exact_qubits = 24;
  int max_trajectory_qubits = 20;
  std::set<std::string> supported_gates;
  std::set<std::string> noise_channels;
};

BackendInfo backend_info(const BackendConfig& cfg = {});

/**
 * Runs a circuit.
 *
 * Exact mode (no n_shots) returns |amplitude|^2 with outcomes below 1e-10
 * dropped. Shot mode samples n_shots outcomes by inverse CDF over the
 * nonzero-probability support. A noise model, or a MEASURE that is not
 * trailing, switches to per-shot trajectories. The statevector is only
 * available noiselessly. Trailing MEASURE gates are read-out and ignored.
 *
 * Throws UnboundParameterError, UnsupportedGateError, WidthCapError and
 * ValidationError (statevector under noise, noise without shots).
 */
SimulationResult simulate(const Circuit& c, const BackendConfig& cfg,
                          const Statevector* initial_state = nullptr,
                          bool return_statevector = false);

/// The gate followed by the stochastic Pauli insertions drawn for it.
std::vector<Gate> apply_noise_trajectory(const Gate& g, const NoiseModel& noise, Xoshiro256& rng);

/// sum_b f(b) * (-1)^(number of '1' in b at the term's qubits).
double expectation_from_frequencies_oneterm(const PauliWord& term, const Histogram& freqs);

/// Appends H on X qubits and RX(pi/2) on Y qubits; Z qubits are untouched.
Circuit append_measurement_basis(const Circuit& c, const PauliWord& basis);

/**
 * <psi|op|psi> for the state prepared by `c`. Exact mode evaluates the
 * statevector directly; shot mode measures each QWC group's parent basis
 * with n_shots and combines per-term frequency estimates.
 */
double get_expectation_value(const QubitOperator& op, const Circuit& c, const BackendConfig& cfg,
                             const Statevector* initial_state = nullptr);

}  // namespace fermiforge
