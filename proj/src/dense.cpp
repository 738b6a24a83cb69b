// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/dense.hpp"

#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace {

Eigen::MatrixXcd checked_dense(const QubitOperator& op, int& n_qubits) {
  if (n_qubits < 0) n_qubits = std::max(op.n_qubits(), 1);
  if (n_qubits < op.n_qubits())
    throw ValidationError("operator acts on " + std::to_string(op.n_qubits()) +
                          " qubits, more than the requested " + std::to_string(n_qubits));
  if (n_qubits > kMaxDenseQubits)
    throw WidthCapError("exact diagonalization is capped at " + std::to_string(kMaxDenseQubits) +
                        " qubits, got " + std::to_string(n_qubits));
  Eigen::MatrixXcd m = to_dense(op, n_qubits);
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw ValidationError("operator is not Hermitian (max |H - H^dagger| = " +
                          std::to_string(asym) + ")");
  return m;
}

}  // namespace

Eigen::VectorXd eigenvalues(const QubitOperator& op, int n_qubits) {
  const Eigen::MatrixXcd m = checked_dense(op, n_qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double exact_ground_energy(const QubitOperator& op, int n_qubits) {
  return eigenvalues(op, n_qubits)(0);
}

Eigen::VectorXcd exact_ground_state(const QubitOperator& op, int n_qubits) {
  const Eigen::MatrixXcd m = checked_dense(op, n_qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  return solver.eigenvectors().col(0);
}

}  // namespace fermiforge
