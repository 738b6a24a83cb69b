// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "fermiforge/circuit.hpp"
#include "fermiforge/errors.hpp"
#include "fermiforge/fermion.hpp"
#include "fermiforge/mapping.hpp"
#include "fermiforge/pauli.hpp"
#include "fermiforge/random.hpp"
#include "fermiforge/simulator.hpp"

namespace fermiforge {

/**
 * One- and two-particle reduced density matrices over n spin-orbitals.
 *
 * one_rdm(p, q) = <a+_p a_q>. two_rdm is the n^2 x n^2 matricization with
 * two_rdm(p*n + q, r*n + s) = <a+_p a+_q a_s a_r>, so that for a two-electron
 * pure state two_rdm / 2 is a rank-one projector.
 */
struct RDMPair {
  Eigen::MatrixXd one_rdm;
  Eigen::MatrixXd two_rdm;
  int n_electrons = 0;

  int n_orbitals() const { return static_cast<int>(one_rdm.rows()); }
  double& two(int p, int q, int r, int s) {
    const int n = n_orbitals();
    return two_rdm(p * n + q, r * n + s);
  }
  double two(int p, int q, int r, int s) const {
    const int n = n_orbitals();
    return two_rdm(p * n + q, r * n + s);
  }
};

/// Every one-body term `p^ q` and two-body term `p^ q^ r s` (p != q, r != s)
/// on n interleaved spin-orbitals that conserves the alpha and beta counts.
FermionOperator rdm_terms(int n_spinorbitals);

/**
 * Fills RDM elements from Pauli-word expectations. Each one-body `p^ q` and
 * two-body `p^ q^ r s` sequence in `terms` (coefficients ignored) is mapped
 * with `mapping`; the element is the sum of Re(c) <P> over its image, the
 * identity counting 1. Constant terms are skipped; elements not covered stay
 * zero. Throws ValidationError naming the first missing word, or on
 * sequences of any other shape.
 */
RDMPair rdms_from_expectations(const FermionOperator& terms, const MappingConfig& mapping,
                               const std::map<PauliWord, double>& expectations);

/// Pauli words (non-identity, real coefficient) needed by
/// rdms_from_expectations, accumulated as an operator with their
/// coefficients.
QubitOperator rdm_measurement_operator(const FermionOperator& terms, const MappingConfig& mapping);

/// Exact RDMs of a statevector expressed in the mapping's qubit encoding.
RDMPair rdms_from_statevector(const FermionOperator& terms, const MappingConfig& mapping,
                              const Statevector& psi);

/// Energy of a fermionic Hamiltonian of constant, `p^ q` and `p^ q^ r s`
/// terms: const + sum h_pq gamma_pq + sum g_pqrs Gamma_pqsr (real parts).
double energy_from_rdms(const FermionOperator& hamiltonian, const RDMPair& rdms);

/// Convergence record of a McWeeny purification.
template <typename Scalar>
struct McWeenyResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
  int iterations = 0;
  std::vector<double> residuals;
};

/**
 * McWeeny iteration D <- 3 D^2 - 2 D^3 until max|D^2 - D| < conv. An input
 * already within tolerance is returned unchanged after zero iterations.
 * Throws ConvergenceError carrying the last residual after max_iterations.
 */
template <typename Derived>
McWeenyResult<typename Derived::Scalar> mcweeny_purify(const Eigen::MatrixBase<Derived>& d0,
                                                       double conv, int max_iterations = 100) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (d0.rows() != d0.cols()) throw ValidationError("McWeeny purification needs a square matrix");
  if (!(conv > 0.0)) throw ValidationError("convergence threshold must be positive");
  McWeenyResult<Scalar> out;
  out.matrix = d0;
  for (;;) {
    const Matrix d2 = out.matrix * out.matrix;
    const double residual = static_cast<double>((d2 - out.matrix).cwiseAbs().maxCoeff());
    out.residuals.push_back(residual);
    if (residual < conv) return out;
    if (out.iterations == max_iterations)
      throw ConvergenceError("McWeeny purification did not converge in " +
                                 std::to_string(max_iterations) + " iterations",
                             residual);
    out.matrix = Scalar(3) * d2 - Scalar(2) * d2 * out.matrix;
    ++out.iterations;
  }
}

/**
 * Purifies a two-electron 2-RDM: two_rdm / 2 is driven to idempotency, scaled
 * back, and the 1-RDM is contracted as gamma_pr = sum_q Gamma_pqrq / (N - 1).
 * Throws ValidationError unless n_electrons == 2.
 */
RDMPair mcweeny_purify_2rdm(const Eigen::MatrixXd& two_rdm, int n_electrons, double conv,
                            int max_iterations = 100);

/// n_shots i.i.d. draws from freqs, as an empirical histogram.
Histogram resample_frequencies(const Histogram& freqs, std::uint64_t n_shots, Xoshiro256& rng);

struct SeriesStats {
  double mean = 0.0;
  /// Sample standard deviation (denominator N - 1).
  double stdev = 0.0;
};

/// Throws ValidationError for fewer than two values.
SeriesStats series_stats(const std::vector<double>& series);

/// Shot-weighted combination of one term's estimates from several parent
/// bases: sum_k n_k <P>_k / sum_k n_k.
double pooled_expectation(const PauliWord& term,
                          const std::vector<std::pair<Histogram, std::uint64_t>>& sources);

/// Value at zero of the polynomial through (scale_i, value_i) (Lagrange form).
double richardson_extrapolate(const std::vector<double>& scales, const std::vector<double>& values);

/// Noise scaling by unitary folding: each gate G becomes G (G+ G)^k with
/// scale = 2k + 1. MEASURE gates are kept once. Throws for even scales.
Circuit fold_gates(const Circuit& c, int scale);

/// Inputs of the bootstrap energy pipeline.
struct BootstrapSpec {
  FermionOperator hamiltonian;
  MappingConfig mapping;
  /// Measured histogram per measurement basis.
  std::map<PauliWord, Histogram> histograms;
  std::uint64_t n_shots = 0;
  std::size_t n_resamples = 100;
  bool purify = true;
  double conv = 1e-2;
  std::uint64_t seed = 0;
};

struct BootstrapReport {
  double mean = 0.0;
  double stdev = 0.0;
  std::size_t n_resamples = 0;
  std::uint64_t seed = 0;
  std::vector<double> energies;
};

/// Expectation of every word in `words` from the first basis in `histograms`
/// that measures it. Throws ValidationError naming an unmeasurable word.
std::map<PauliWord, double> expectations_from_histograms(const QubitOperator& words,
                                                         const std::map<PauliWord, Histogram>& histograms);

/// Energy of one set of histograms: expectations -> RDMs -> (McWeeny) ->
/// energy.
double energy_from_histograms(const BootstrapSpec& spec, const std::map<PauliWord, Histogram>& histograms);

/**
 * Resample -> expectation -> RDM -> McWeeny -> energy, repeated n_resamples
 * times. Resample i draws every basis from the stream
 * derive_seed(seed, "bootstrap", i), bases in key order.
 */
BootstrapReport bootstrap_energy(const BootstrapSpec& spec);

}  // namespace fermiforge
