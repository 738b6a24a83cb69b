// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "fermiforge/pauli.hpp"

namespace fermiforge {

/// Default cap on dense-matrix conversions (2^12 x 2^12 complex).
inline constexpr int kMaxDenseQubits = 12;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/**
 * Dense 2^n x 2^n matrix of a qubit operator. Basis index bit k is the state
 * of qubit k. Scalar must be a std::complex type.
 */
template <typename Scalar = std::complex<double>>
MatrixX<Scalar> to_dense(const QubitOperator& op, int n_qubits) {
  using Real = typename Scalar::value_type;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(dim, dim);
  for (const auto& [word, coeff] : op.terms()) {
    const auto pm = masks(word);
    // P|b> = i^{n_y} (-1)^{popcount(b & z)} |b ^ x>
    Scalar base(1);
    for (int k = 0; k < pm.n_y % 4; ++k) base *= Scalar(0, 1);
    const Scalar c = base * Scalar(static_cast<Real>(coeff.real()), static_cast<Real>(coeff.imag()));
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool odd = __builtin_parityll(b & pm.z);
      m(static_cast<Eigen::Index>(b ^ pm.x), static_cast<Eigen::Index>(b)) += odd ? -c : c;
    }
  }
  return m;
}

/// Sorted eigenvalues of a Hermitian operator on n_qubits (<= 12).
Eigen::VectorXd eigenvalues(const QubitOperator& op, int n_qubits);

/**
 * Lowest eigenvalue of a Hermitian qubit operator. n_qubits defaults to the
 * operator's span. Throws ValidationError when the dense matrix is not
 * Hermitian within 1e-10 and WidthCapError above 12 qubits.
 */
double exact_ground_energy(const QubitOperator& op, int n_qubits = -1);

/// Ground state vector of the same dense matrix.
Eigen::VectorXcd exact_ground_state(const QubitOperator& op, int n_qubits = -1);

}  // namespace fermiforge
