// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fermiforge {

enum class OptimizerMethod { NelderMead, SPSA };

OptimizerMethod parse_optimizer_method(std::string_view name);
std::string to_string(OptimizerMethod m);

struct OptimizerOptions {
  OptimizerMethod method = OptimizerMethod::NelderMead;
  /// Nelder-Mead: stop when the simplex's function values span less than this.
  double tolerance = 1e-7;
  std::size_t max_evaluations = 5000;
  std::uint64_t seed = 0;
  /// Edge length of the initial simplex.
  double initial_step = 0.1;
  /// Nelder-Mead restarts from the best point until two consecutive restarts
  /// improve it by no more than `tolerance`.
  int max_restarts = 20;
  /// Nelder-Mead expansion/contraction/shrink coefficients scaled with the
  /// dimension; off gives the classic (2, 1/2, 1/2).
  bool adaptive = true;
  // SPSA gain sequences a_k = a / (k + 1 + A)^alpha, c_k = c / (k + 1)^gamma.
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
};

struct OptimizerResult {
  std::vector<double> x;
  double fun = 0.0;
  std::size_t n_evaluations = 0;
  bool converged = false;
  /// Best objective value seen after each evaluation; non-increasing.
  std::vector<double> trace;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Downhill simplex; restarts from the best point while that helps.
OptimizerResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);

/// Simultaneous-perturbation stochastic approximation; suited to noisy
/// (shot-based) objectives. Perturbation signs come from opts.seed.
OptimizerResult spsa(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);

/// Dispatches on opts.method.
OptimizerResult minimize(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts);

}  // namespace fermiforge
