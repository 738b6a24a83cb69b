// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/vqe.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>

#include "fermiforge/errors.hpp"
#include "fermiforge/random.hpp"

namespace fermiforge {

namespace {

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Eigen::VectorXcd apply_operator(const QubitOperator& op, const Statevector& psi) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amplitudes().size());
  for (const auto& [w, c] : op.terms()) {
    Statevector t = psi;
    t.apply(w);
    out += c * t.amplitudes();
  }
  return out;
}

double gradient_from(const Eigen::VectorXcd& h_psi, const Statevector& psi, const PauliWord& p) {
  Statevector t = psi;
  t.apply(p);
  // (i/2)(<P H> - <H P>) = -Im <psi|P H|psi>
  return -t.amplitudes().dot(h_psi).imag();
}

void check_reference(std::string_view bits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw ValidationError("reference must be a bitstring of 0 and 1");
}

}  // namespace

AnsatzKind parse_ansatz_kind(std::string_view name) {
  const auto s = lower(name);
  if (s == "hea") return AnsatzKind::HEA;
  if (s == "qcc") return AnsatzKind::QCC;
  if (s == "custom") return AnsatzKind::CUSTOM;
  throw ValidationError("unknown ansatz: " + std::string(name));
}

std::string to_string(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::HEA: return "HEA";
    case AnsatzKind::QCC: return "QCC";
    case AnsatzKind::CUSTOM: return "CUSTOM";
  }
  return {};
}

InitPolicy parse_init_policy(std::string_view name) {
  const auto s = lower(name);
  if (s == "zeros") return InitPolicy::Zeros;
  if (s == "random") return InitPolicy::Random;
  if (s == "explicit") return InitPolicy::Explicit;
  throw ValidationError("unknown initial parameter policy: " + std::string(name));
}

std::string to_string(InitPolicy p) {
  switch (p) {
    case InitPolicy::Zeros: return "zeros";
    case InitPolicy::Random: return "random";
    case InitPolicy::Explicit: return "explicit";
  }
  return {};
}

double qcc_gradient(const QubitOperator& h, const Statevector& reference, const PauliWord& p) {
  return gradient_from(apply_operator(h, reference), reference, p);
}

QCCGeneratorSet qcc_screen_generators(const QubitOperator& h, const Statevector& reference,
                                      double threshold, std::optional<std::size_t> max_generators) {
  if (!(threshold > 0.0)) throw ValidationError("QCC threshold must be positive");
  if (!h.is_hermitian()) throw ValidationError("QCC screening needs a Hermitian operator");
  if (h.n_qubits() > reference.n_qubits())
    throw ValidationError("reference state is narrower than the Hamiltonian");

  std::set<std::vector<int>> supports;
  for (const auto& [w, c] : h.terms())
    if (!w.is_identity()) supports.insert(w.support());

  std::set<PauliWord> candidates;
  constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};
  for (const auto& support : supports) {
    const std::size_t k = support.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<PauliWord::Factor> f;
      std::size_t rest = code, n_y = 0;
      for (std::size_t i = 0; i < k; ++i, rest /= 3) {
        const Axis a = kAxes[rest % 3];
        n_y += a == Axis::Y;
        f.emplace_back(support[i], a);
      }
      if (n_y % 2 == 1) candidates.emplace(std::move(f));
    }
  }

  const Eigen::VectorXcd h_psi = apply_operator(h, reference);
  std::vector<std::pair<PauliWord, double>> scored;
  for (const auto& p : candidates) scored.emplace_back(p, gradient_from(h_psi, reference, p));
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return std::abs(a.second) > std::abs(b.second);
  });

  std::vector<std::pair<PauliWord, double>> reps;
  for (std::size_t i = 0; i < scored.size();) {
    const double head = std::abs(scored[i].second);
    std::size_t j = i, best = i;
    for (; j < scored.size() && head - std::abs(scored[j].second) <= 1e-10; ++j)
      if (scored[j].first < scored[best].first) best = j;
    reps.push_back(scored[best]);
    i = j;
  }

  QCCGeneratorSet out;
  for (const auto& [p, g] : reps) {
    if (std::abs(g) < threshold) break;
    if (max_generators && out.size() >= *max_generators) break;
    out.generators.push_back(p);
    out.gradients.push_back(g);
  }
  return out;
}

Circuit pauli_exponential(const PauliWord& p, double tau, bool variational) {
  if (p.is_identity()) throw ValidationError("cannot exponentiate the identity word");
  constexpr double half_pi = std::numbers::pi / 2;
  Circuit c;
  const auto& f = p.factors();
  for (const auto& [q, a] : f) {
    if (a == Axis::X) c.add_gate(make_gate("H", {q}));
    if (a == Axis::Y) c.add_gate(make_gate("RX", {q}, {}, half_pi));
  }
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    c.add_gate(make_gate("CNOT", {f[i + 1].first}, {f[i].first}));
  c.add_gate(make_gate("RZ", {f.back().first}, {}, tau, variational));
  for (std::size_t i = f.size() - 1; i > 0; --i)
    c.add_gate(make_gate("CNOT", {f[i].first}, {f[i - 1].first}));
  for (const auto& [q, a] : f) {
    if (a == Axis::X) c.add_gate(make_gate("H", {q}));
    if (a == Axis::Y) c.add_gate(make_gate("RX", {q}, {}, -half_pi));
  }
  return c;
}

Circuit reference_circuit(std::string_view bits) {
  check_reference(bits);
  Circuit c({}, bits.size());
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q] == '1') c.add_gate(make_gate("X", {static_cast<int>(q)}));
  return c;
}

Circuit qcc_build_circuit(const QCCGeneratorSet& gens, std::string_view reference, bool bloch_layer) {
  if (gens.generators.empty()) throw ValidationError("empty generator set");
  check_reference(reference);
  Circuit c({}, reference.size());
  if (bloch_layer) {
    for (std::size_t q = 0; q < reference.size(); ++q) {
      const int qi = static_cast<int>(q);
      c.add_gate(make_gate("RY", {qi}, {}, reference[q] == '1' ? std::numbers::pi : 0.0, true));
      c.add_gate(make_gate("RZ", {qi}, {}, 0.0, true));
    }
  } else {
    c = reference_circuit(reference);
  }
  for (const auto& p : gens.generators) {
    if (p.span() > static_cast<int>(reference.size()))
      throw ValidationError("generator " + p.to_string() + " exceeds the reference width");
    c = c + pauli_exponential(p, 0.0);
  }
  return c;
}

Circuit hea_circuit(int n_qubits, const HEAOptions& opts) {
  if (n_qubits < 1) throw ValidationError("HEA needs at least one qubit");
  if (opts.layers < 1) throw ValidationError("HEA needs at least one layer");
  if (opts.rotations.empty()) throw ValidationError("HEA needs at least one rotation axis");
  std::vector<std::string> rotations;
  for (const auto& r : opts.rotations) {
    std::string u;
    for (char ch : r) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (u != "RX" && u != "RY" && u != "RZ") throw ValidationError("HEA rotation must be RX, RY or RZ: " + r);
    rotations.push_back(u);
  }
  const auto entangler = lower(opts.entangler);
  if (entangler != "linear" && entangler != "circular" && entangler != "none")
    throw ValidationError("unknown HEA entangler: " + opts.entangler);

  Circuit c({}, static_cast<std::size_t>(n_qubits));
  auto rotation_layer = [&] {
    for (int q = 0; q < n_qubits; ++q)
      for (const auto& r : rotations) c.add_gate(make_gate(r, {q}, {}, 0.0, true));
  };
  rotation_layer();
  for (int l = 0; l < opts.layers; ++l) {
    if (entangler != "none") {
      for (int q = 0; q + 1 < n_qubits; ++q) c.add_gate(make_gate("CNOT", {q + 1}, {q}));
      if (entangler == "circular" && n_qubits > 2) c.add_gate(make_gate("CNOT", {0}, {n_qubits - 1}));
    }
    rotation_layer();
  }
  return c;
}

VQESolver::VQESolver(VQEConfig cfg) : cfg_(std::move(cfg)) {}

void VQESolver::build() {
  if (cfg_.qubit_hamiltonian.has_value() == cfg_.fermion_hamiltonian.has_value())
    throw ValidationError("exactly one of qubit_hamiltonian and fermion_hamiltonian must be given");
  if (cfg_.fermion_hamiltonian) {
    if (cfg_.mapping.n_spinorbitals <= 0) cfg_.mapping.n_spinorbitals = cfg_.fermion_hamiltonian->n_modes();
    hamiltonian_ = fermion_to_qubit_mapping(*cfg_.fermion_hamiltonian, cfg_.mapping);
  } else {
    hamiltonian_ = *cfg_.qubit_hamiltonian;
  }
  if (hamiltonian_.empty()) throw ValidationError("empty Hamiltonian");
  if (!hamiltonian_.is_hermitian()) throw ValidationError("Hamiltonian is not Hermitian");

  const int n_op = hamiltonian_.n_qubits();
  if (cfg_.reference) {
    reference_ = *cfg_.reference;
  } else if (cfg_.mapping.n_spinorbitals > 0) {
    reference_ = hartree_fock_bitstring(cfg_.mapping);
  } else {
    int width = std::max(n_op, 1);
    if (cfg_.ansatz.kind == AnsatzKind::CUSTOM)
      width = std::max(width, static_cast<int>(cfg_.ansatz.custom.width()));
    reference_ = std::string(static_cast<std::size_t>(width), '0');
  }
  check_reference(reference_);
  const int n = static_cast<int>(reference_.size());
  if (n < n_op)
    throw ValidationError("reference has " + std::to_string(n) + " qubits but the Hamiltonian acts on " +
                          std::to_string(n_op));
  if (cfg_.fermion_hamiltonian && n != mapped_qubit_count(cfg_.mapping))
    throw ValidationError("reference length differs from the mapped qubit count");

  qcc_.reset();
  switch (cfg_.ansatz.kind) {
    case AnsatzKind::HEA:
      circuit_ = reference_circuit(reference_) + hea_circuit(n, cfg_.ansatz.hea);
      break;
    case AnsatzKind::QCC: {
      const auto& q = cfg_.ansatz.qcc;
      qcc_ = qcc_screen_generators(hamiltonian_, Statevector::basis_state(reference_), q.threshold,
                                   q.max_generators);
      circuit_ = qcc_build_circuit(*qcc_, reference_, q.bloch_layer);
      break;
    }
    case AnsatzKind::CUSTOM:
      if (static_cast<int>(cfg_.ansatz.custom.width()) > n)
        throw ValidationError("custom ansatz is wider than the reference");
      circuit_ = reference_circuit(reference_) + cfg_.ansatz.custom;
      break;
  }
  circuit_.set_declared_width(std::max<std::size_t>(circuit_.width(), static_cast<std::size_t>(n)));

  std::vector<double> current;
  for (const Gate& g : circuit_.variational_gates()) {
    if (is_symbolic(g.parameter) || !has_value(g.parameter))
      current.push_back(0.0);
    else
      current.push_back(g.angle());
  }
  const std::size_t n_params = current.size();
  switch (cfg_.init) {
    case InitPolicy::Zeros:
      if (cfg_.ansatz.kind == AnsatzKind::QCC && cfg_.ansatz.qcc.bloch_layer) {
        params_ = current;
        std::fill(params_.begin() + static_cast<std::ptrdiff_t>(2 * n), params_.end(), 0.0);
      } else {
        params_.assign(n_params, 0.0);
      }
      break;
    case InitPolicy::Random: {
      Xoshiro256 rng(derive_seed(cfg_.seed, "vqe_init"));
      const double a = cfg_.ansatz.tau_guess;
      const bool bloch = cfg_.ansatz.kind == AnsatzKind::QCC && cfg_.ansatz.qcc.bloch_layer;
      params_ = current;
      for (std::size_t i = bloch ? 2 * static_cast<std::size_t>(n) : 0; i < n_params; ++i)
        params_[i] = -a + 2.0 * a * rng.uniform01();
      break;
    }
    case InitPolicy::Explicit:
      if (cfg_.initial_parameters.size() != n_params)
        throw ValidationError("expected " + std::to_string(n_params) + " initial parameters, got " +
                              std::to_string(cfg_.initial_parameters.size()));
      params_ = cfg_.initial_parameters;
      break;
  }
  circuit_.bind(params_);
  if (!cfg_.backend.seed) cfg_.backend.seed = derive_seed(cfg_.seed, "backend");
  cfg_.optimizer.seed = derive_seed(cfg_.seed, "optimizer");
  energy_.reset();
  converged_ = false;
  opt_result_ = {};
  built_ = true;
}

void VQESolver::require_built() const {
  if (!built_) throw LifecycleError("VQESolver::build() has not been called");
}

const QubitOperator& VQESolver::qubit_hamiltonian() const {
  require_built();
  return hamiltonian_;
}

const Circuit& VQESolver::circuit() const {
  require_built();
  return circuit_;
}

double VQESolver::energy_estimation(const std::vector<double>& params) const {
  require_built();
  if (params.size() != params_.size())
    throw ValidationError("expected " + std::to_string(params_.size()) + " parameters, got " +
                          std::to_string(params.size()));
  Circuit c = circuit_;
  c.bind(params);
  return get_expectation_value(hamiltonian_, c, cfg_.backend);
}

double VQESolver::simulate() {
  require_built();
  opt_result_ = minimize([this](const std::vector<double>& p) { return energy_estimation(p); },
                         params_, cfg_.optimizer);
  params_ = opt_result_.x;
  circuit_.bind(params_);
  converged_ = opt_result_.converged;
  energy_ = opt_result_.fun;
  return *energy_;
}

ResourceReport VQESolver::get_resources() const {
  require_built();
  ResourceReport r;
  r.qubit_hamiltonian_terms = hamiltonian_.n_terms();
  r.circuit_width = circuit_.width();
  r.circuit_gates = circuit_.size();
  r.circuit_2qubit_gates = circuit_.n_multiqubit_gates();
  r.circuit_var_gates = circuit_.variational_gates().size();
  r.vqe_variational_parameters = params_.size();
  return r;
}

}  // namespace fermiforge
