// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "fermiforge/errors.hpp"
#include "fermiforge/random.hpp"

namespace fermiforge {

OptimizerMethod parse_optimizer_method(std::string_view name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "nelder-mead" || s == "nelder_mead" || s == "simplex") return OptimizerMethod::NelderMead;
  if (s == "spsa") return OptimizerMethod::SPSA;
  throw ValidationError("unknown optimizer method: " + std::string(name));
}

std::string to_string(OptimizerMethod m) {
  return m == OptimizerMethod::SPSA ? "spsa" : "nelder-mead";
}

namespace {

class Tracker {
 public:
  Tracker(const Objective& f, OptimizerResult& r) : f_(f), r_(r) {}

  double operator()(const std::vector<double>& x) {
    const double v = f_(x);
    ++r_.n_evaluations;
    if (r_.trace.empty() || v < r_.fun) {
      r_.fun = v;
      r_.x = x;
    }
    r_.trace.push_back(r_.fun);
    return v;
  }

 private:
  const Objective& f_;
  OptimizerResult& r_;
};

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

// One Nelder-Mead descent from x0; returns true when the value spread fell
// below tolerance before the evaluation budget ran out.
bool descend(Tracker& eval, const OptimizerResult& r, const std::vector<double>& x0,
             const OptimizerOptions& opts) {
  const std::size_t n = x0.size();
  Simplex s;
  s.points.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = x0;
    p[i] += opts.initial_step;
    s.points.push_back(std::move(p));
  }
  for (const auto& p : s.points) {
    if (r.n_evaluations >= opts.max_evaluations) return false;
    s.values.push_back(eval(p));
  }

  // Dimension-adaptive coefficients (Gao and Han, 2012).
  const double dn = static_cast<double>(n);
  const double expand = opts.adaptive ? 1.0 + 2.0 / dn : 2.0;
  const double contract = opts.adaptive ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
  const double shrink = opts.adaptive ? 1.0 - 1.0 / dn : 0.5;

  std::vector<std::size_t> order(n + 1);
  auto point_at = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
    return out;
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (s.values[worst] - s.values[best] < opts.tolerance) return true;
    if (r.n_evaluations >= opts.max_evaluations) return false;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s.points[i][k] / static_cast<double>(n);
    }

    auto xr = point_at(centroid, s.points[worst], -1.0);
    const double fr = eval(xr);
    if (fr < s.values[best]) {
      auto xe = point_at(centroid, s.points[worst], -expand);
      const double fe = eval(xe);
      if (fe < fr) {
        s.points[worst] = std::move(xe);
        s.values[worst] = fe;
      } else {
        s.points[worst] = std::move(xr);
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second]) {
      s.points[worst] = std::move(xr);
      s.values[worst] = fr;
      continue;
    }
    const bool outside = fr < s.values[worst];
    auto xc = outside ? point_at(centroid, xr, contract) : point_at(centroid, s.points[worst], contract);
    const double fc = eval(xc);
    if (fc < (outside ? fr : s.values[worst])) {
      s.points[worst] = std::move(xc);
      s.values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      s.points[i] = point_at(s.points[best], s.points[i], shrink);
      if (r.n_evaluations >= opts.max_evaluations) return false;
      s.values[i] = eval(s.points[i]);
    }
  }
}

}  // namespace

OptimizerResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  if (opts.tolerance <= 0.0) throw ValidationError("optimizer tolerance must be positive");
  if (opts.max_evaluations == 0) throw ValidationError("optimizer needs at least one evaluation");
  OptimizerResult r;
  Tracker eval(f, r);
  if (x0.empty()) {
    eval(x0);
    r.converged = true;
    return r;
  }
  r.converged = descend(eval, r, x0, opts);
  int stalls = 0;
  for (int restart = 0; restart < opts.max_restarts && r.converged && stalls < 2; ++restart) {
    const double before = r.fun;
    r.converged = descend(eval, r, r.x, opts);
    stalls = before - r.fun <= opts.tolerance ? stalls + 1 : 0;
  }
  return r;
}

OptimizerResult spsa(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  if (opts.max_evaluations < 3) throw ValidationError("SPSA needs at least three evaluations");
  OptimizerResult r;
  Tracker eval(f, r);
  Xoshiro256 rng(derive_seed(opts.seed, "spsa"));
  const std::size_t n = x0.size();
  const std::size_t iterations = (opts.max_evaluations - 1) / 2;
  const double big_a = 0.1 * static_cast<double>(iterations);
  std::vector<double> x = std::move(x0);
  std::vector<double> delta(n), plus(n), minus(n);
  for (std::size_t k = 0; k < iterations && n > 0; ++k) {
    const double ak = opts.spsa_a / std::pow(static_cast<double>(k) + 1.0 + big_a, opts.spsa_alpha);
    const double ck = opts.spsa_c / std::pow(static_cast<double>(k) + 1.0, opts.spsa_gamma);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = (rng() >> 63) ? 1.0 : -1.0;
      plus[i] = x[i] + ck * delta[i];
      minus[i] = x[i] - ck * delta[i];
    }
    const double diff = eval(plus) - eval(minus);
    for (std::size_t i = 0; i < n; ++i) x[i] -= ak * diff / (2.0 * ck * delta[i]);
  }
  eval(x);
  r.converged = true;
  return r;
}

OptimizerResult minimize(const Objective& f, std::vector<double> x0, const OptimizerOptions& opts) {
  return opts.method == OptimizerMethod::SPSA ? spsa(f, std::move(x0), opts)
                                              : nelder_mead(f, std::move(x0), opts);
}

}  // namespace fermiforge
