// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "fermiforge/errors.hpp"
#include "fermiforge/measurement.hpp"

namespace fermiforge {

namespace {

using Mat2 = Eigen::Matrix2cd;
constexpr std::complex<double> kI{0.0, 1.0};

const std::set<std::string> kSingleQubit = {"H", "X", "Y", "Z", "S", "SDAG", "T",
                                            "TDAG", "RX", "RY", "RZ", "PHASE"};

Mat2 single_qubit_matrix(const std::string& name, const Gate& g) {
  Mat2 m;
  if (name == "H") {
    m << 1, 1, 1, -1;
    return m / std::numbers::sqrt2;
  }
  if (name == "X") return (m << 0, 1, 1, 0).finished();
  if (name == "Y") return (m << 0, -kI, kI, 0).finished();
  if (name == "Z") return (m << 1, 0, 0, -1).finished();
  if (name == "S") return (m << 1, 0, 0, kI).finished();
  if (name == "SDAG") return (m << 1, 0, 0, -kI).finished();
  if (name == "T") return (m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4)).finished();
  if (name == "TDAG") return (m << 1, 0, 0, std::polar(1.0, -std::numbers::pi / 4)).finished();
  const double theta = g.angle();
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  if (name == "RX") return (m << c, -kI * s, -kI * s, c).finished();
  if (name == "RY") return (m << c, -s, s, c).finished();
  if (name == "RZ")
    return (m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2)).finished();
  if (name == "PHASE") return (m << 1, 0, 0, std::polar(1.0, theta)).finished();
  throw UnsupportedGateError("unsupported gate " + g.name);
}

// Resolves a gate into (base single-qubit name, required controls) or SWAP.
std::string base_name(const Gate& g) {
  if (g.name == "SWAP") {
    if (g.targets.size() != 2) throw ValidationError("SWAP needs two targets");
    return "SWAP";
  }
  std::string base;
  if (g.name == "CNOT") base = "X";
  else if (g.name == "CZ") base = "Z";
  else if (g.name == "CRZ") base = "RZ";
  else if (kSingleQubit.contains(g.name)) base = g.name;
  else throw UnsupportedGateError("unsupported gate " + g.name);
  if (base != g.name && g.controls.empty())
    throw ValidationError("gate " + g.name + " needs a control qubit");
  if (g.targets.size() != 1) throw ValidationError("gate " + g.name + " takes a single target");
  return base;
}

void check_gate(const Gate& g) {
  if (g.name == "MEASURE") return;
  const auto base = base_name(g);
  if (base == "RX" || base == "RY" || base == "RZ" || base == "PHASE") (void)g.angle();
}

void apply_matrix(Eigen::VectorXcd& psi, const Mat2& u, int target, std::uint64_t ctrl_mask) {
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tbit) || (i & ctrl_mask) != ctrl_mask) continue;
    const auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | tbit);
    const auto a = psi[i0], b = psi[i1];
    psi[i0] = u(0, 0) * a + u(0, 1) * b;
    psi[i1] = u(1, 0) * a + u(1, 1) * b;
  }
}

std::uint64_t control_mask(const Gate& g) {
  std::uint64_t m = 0;
  for (int q : g.controls) m |= std::uint64_t{1} << q;
  return m;
}

struct PreparedCircuit {
  std::vector<Gate> gates;  // trailing MEASUREs removed
  bool mid_measure = false;
};

PreparedCircuit prepare(const Circuit& c) {
  PreparedCircuit p;
  p.gates = c.gates();
  while (!p.gates.empty() && p.gates.back().name == "MEASURE") p.gates.pop_back();
  for (const auto& g : p.gates) {
    check_gate(g);
    if (g.name == "MEASURE") p.mid_measure = true;
  }
  return p;
}

Histogram counts_to_frequencies(const std::map<std::uint64_t, std::uint64_t>& counts, int n,
                                std::uint64_t shots) {
  Histogram h;
  for (const auto& [idx, k] : counts)
    h[bitstring(idx, n)] = static_cast<double>(k) / static_cast<double>(shots);
  return h;
}

// Inverse-CDF sampler over the nonzero-probability support of a state.
class Sampler {
 public:
  explicit Sampler(const Eigen::VectorXcd& psi) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      const double p = std::norm(psi[i]);
      if (p == 0.0) continue;
      acc += p;
      support_.push_back(static_cast<std::uint64_t>(i));
      cdf_.push_back(acc);
    }
  }
  std::uint64_t draw(Xoshiro256& rng) const {
    const double u = rng.uniform01() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
  }

 private:
  std::vector<std::uint64_t> support_;
  std::vector<double> cdf_;
};

std::uint64_t resolve_seed(const BackendConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 62) throw ValidationError("invalid qubit count");
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

Statevector::Statevector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  const auto size = static_cast<std::uint64_t>(amps_.size());
  if (size == 0 || (size & (size - 1)))
    throw ValidationError("statevector length must be a power of two");
  n_qubits_ = std::countr_zero(size);
  if (std::abs(amps_.norm() - 1.0) > 1e-10)
    throw ValidationError("statevector is not normalized");
}

Statevector Statevector::basis_state(std::string_view bits) {
  Statevector s(static_cast<int>(bits.size()));
  std::uint64_t idx = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') idx |= std::uint64_t{1} << q;
    else if (bits[q] != '0') throw ValidationError("bitstring must contain only 0 and 1");
  }
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(idx)] = 1.0;
  return s;
}

void Statevector::apply(const Gate& g) {
  if (g.max_qubit() >= n_qubits_)
    throw ValidationError("gate " + g.name + " acts outside the " + std::to_string(n_qubits_) +
                          "-qubit register");
  if (g.name == "MEASURE") throw UnsupportedGateError("MEASURE cannot be applied unitarily");
  const auto base = base_name(g);
  if (base == "SWAP") {
    const std::uint64_t a = std::uint64_t{1} << g.targets[0];
    const std::uint64_t b = std::uint64_t{1} << g.targets[1];
    const std::uint64_t ctrl = control_mask(g);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i)
      if ((i & a) && !(i & b) && (i & ctrl) == ctrl)
        std::swap(amps_[static_cast<Eigen::Index>(i)],
                  amps_[static_cast<Eigen::Index>((i ^ a) | b)]);
    return;
  }
  apply_matrix(amps_, single_qubit_matrix(base, g), g.targets[0], control_mask(g));
}

void Statevector::apply(const Circuit& c) {
  for (const auto& g : c.gates()) apply(g);
}

void Statevector::apply(const PauliWord& w) {
  const auto pm = masks(w);
  if (w.span() > n_qubits_) throw ValidationError("Pauli word acts outside the register");
  std::complex<double> base = 1.0;
  for (int k = 0; k < pm.n_y % 4; ++k) base *= kI;
  Eigen::VectorXcd out(amps_.size());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amps_.size()); ++b) {
    const bool odd = __builtin_parityll(b & pm.z);
    out[static_cast<Eigen::Index>(b ^ pm.x)] =
        (odd ? -base : base) * amps_[static_cast<Eigen::Index>(b)];
  }
  amps_ = std::move(out);
}

std::complex<double> Statevector::expectation(const PauliWord& w) const {
  const auto pm = masks(w);
  if (w.span() > n_qubits_) throw ValidationError("Pauli word acts outside the register");
  std::complex<double> base = 1.0;
  for (int k = 0; k < pm.n_y % 4; ++k) base *= kI;
  std::complex<double> acc = 0.0;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amps_.size()); ++b) {
    const auto a = amps_[static_cast<Eigen::Index>(b)];
    if (a == 0.0) continue;
    const bool odd = __builtin_parityll(b & pm.z);
    const auto term = std::conj(amps_[static_cast<Eigen::Index>(b ^ pm.x)]) * a;
    acc += odd ? -term : term;
  }
  return base * acc;
}

std::complex<double> Statevector::expectation(const QubitOperator& op) const {
  std::complex<double> acc = 0.0;
  for (const auto& [w, c] : op.terms()) acc += c * expectation(w);
  return acc;
}

int Statevector::measure(int q, double u) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  double p1 = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i)
    if (i & bit) p1 += std::norm(amps_[static_cast<Eigen::Index>(i)]);
  const int outcome = u < p1 ? 1 : 0;
  const double norm = std::sqrt(outcome ? p1 : 1.0 - p1);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amps_.size()); ++i) {
    auto& a = amps_[static_cast<Eigen::Index>(i)];
    if (static_cast<bool>(i & bit) != static_cast<bool>(outcome)) a = 0.0;
    else a /= norm;
  }
  return outcome;
}

void validate_histogram(const Histogram& h, double tol) {
  double total = 0.0;
  std::size_t len = h.empty() ? 0 : h.begin()->first.size();
  for (const auto& [k, v] : h) {
    if (k.size() != len) throw ValidationError("histogram keys have different lengths");
    if (k.find_first_not_of("01") != std::string::npos)
      throw ValidationError("histogram key '" + k + "' is not a bitstring");
    if (v < 0.0 || v > 1.0 + tol) throw ValidationError("histogram frequency out of [0,1]");
    total += v;
  }
  if (std::abs(total - 1.0) > tol)
    throw ValidationError("histogram frequencies sum to " + std::to_string(total));
}

std::string bitstring(std::uint64_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q)
    if (index >> q & 1) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

void NoiseModel::add_quantum_error(std::string_view gate_name, std::string_view kind,
                                   double probability) {
  if (kind != "depol")
    throw ValidationError("unsupported noise channel '" + std::string(kind) + "'");
  if (!(probability >= 0.0 && probability <= 1.0))
    throw ValidationError("noise probability must lie in [0, 1]");
  std::string name(gate_name);
  for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  channels_[name].push_back({ChannelKind::Depolarizing, probability});
}

BackendInfo backend_info(const BackendConfig& cfg) {
  BackendInfo info;
  info.max_exact_qubits = cfg.max_exact_qubits;
  info.max_trajectory_qubits = cfg.max_trajectory_qubits;
  info.supported_gates = supported_gates().at("native");
  info.noise_channels = {"depol"};
  return info;
}

std::vector<Gate> apply_noise_trajectory(const Gate& g, const NoiseModel& noise, Xoshiro256& rng) {
  std::vector<Gate> out{g};
  auto it = noise.channels().find(g.name);
  if (it == noise.channels().end()) return out;
  std::vector<int> qubits = g.controls;
  qubits.insert(qubits.end(), g.targets.begin(), g.targets.end());
  const std::uint64_t n_words = (std::uint64_t{1} << (2 * qubits.size())) - 1;
  static constexpr const char* kAxes[] = {"X", "Y", "Z"};
  for (const auto& ch : it->second) {
    if (rng.uniform01() >= ch.probability) continue;
    std::uint64_t code = rng.below(n_words) + 1;
    for (int q : qubits) {
      const auto digit = code & 3;
      code >>= 2;
      if (digit) out.push_back(make_gate(kAxes[digit - 1], {q}));
    }
  }
  return out;
}

SimulationResult simulate(const Circuit& c, const BackendConfig& cfg,
                          const Statevector* initial_state, bool return_statevector) {
  const PreparedCircuit prep = prepare(c);
  int n = static_cast<int>(c.width());
  if (initial_state) {
    if (n > initial_state->n_qubits())
      throw ValidationError("circuit is wider than the initial state");
    n = initial_state->n_qubits();
  }
  const bool noisy = cfg.noise_model && !cfg.noise_model->empty();
  const bool trajectories = noisy || prep.mid_measure;
  if (cfg.noise_model && !cfg.n_shots)
    throw ValidationError("a noise model requires n_shots");
  if (trajectories && !cfg.n_shots)
    throw ValidationError("mid-circuit measurement requires n_shots");
  if (return_statevector && trajectories)
    throw ValidationError("statevector is unavailable with noise or mid-circuit measurement");
  if (cfg.n_shots && *cfg.n_shots == 0) throw ValidationError("n_shots must be positive");
  const int cap = trajectories ? cfg.max_trajectory_qubits : cfg.max_exact_qubits;
  if (n > cap)
    throw WidthCapError("circuit width " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(cap) + " qubits");

  const Statevector start = initial_state ? *initial_state : Statevector(n);
  SimulationResult result;

  if (!trajectories) {
    Statevector psi = start;
    for (const auto& g : prep.gates) psi.apply(g);
    if (!cfg.n_shots) {
      for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        const double p = std::norm(psi.amplitudes()[i]);
        if (p >= 1e-10) result.frequencies[bitstring(static_cast<std::uint64_t>(i), n)] = p;
      }
    } else {
      Xoshiro256 rng(derive_seed(resolve_seed(cfg), "simulate"));
      const Sampler sampler(psi.amplitudes());
      std::map<std::uint64_t, std::uint64_t> counts;
      for (std::uint64_t s = 0; s < *cfg.n_shots; ++s) ++counts[sampler.draw(rng)];
      result.frequencies = counts_to_frequencies(counts, n, *cfg.n_shots);
    }
    if (return_statevector) result.statevector = std::move(psi);
    return result;
  }

  // Per-shot trajectories. Without mid-circuit measurement, shots that draw
  // no Pauli insertion reuse the noiseless output distribution.
  Xoshiro256 rng(derive_seed(resolve_seed(cfg), "trajectory"));
  const NoiseModel empty_noise;
  const NoiseModel& noise = noisy ? *cfg.noise_model : empty_noise;
  std::optional<Sampler> clean;
  if (!prep.mid_measure) {
    Statevector psi = start;
    for (const auto& g : prep.gates) psi.apply(g);
    clean.emplace(psi.amplitudes());
  }
  std::map<std::uint64_t, std::uint64_t> counts;
  std::vector<std::vector<Gate>> drawn(prep.gates.size());
  for (std::uint64_t s = 0; s < *cfg.n_shots; ++s) {
    if (!prep.mid_measure) {
      bool any = false;
      for (std::size_t k = 0; k < prep.gates.size(); ++k) {
        drawn[k] = apply_noise_trajectory(prep.gates[k], noise, rng);
        any = any || drawn[k].size() > 1;
      }
      if (!any) {
        ++counts[clean->draw(rng)];
        continue;
      }
      Statevector psi = start;
      for (const auto& seq : drawn)
        for (const auto& g : seq) psi.apply(g);
      ++counts[Sampler(psi.amplitudes()).draw(rng)];
      continue;
    }
    Statevector psi = start;
    for (const auto& g : prep.gates) {
      if (g.name == "MEASURE") {
        for (int q : g.targets) psi.measure(q, rng.uniform01());
        continue;
      }
      for (const auto& h : apply_noise_trajectory(g, noise, rng)) psi.apply(h);
    }
    ++counts[Sampler(psi.amplitudes()).draw(rng)];
  }
  result.frequencies = counts_to_frequencies(counts, n, *cfg.n_shots);
  return result;
}

double expectation_from_frequencies_oneterm(const PauliWord& term, const Histogram& freqs) {
  const auto support = term.support();
  double acc = 0.0;
  for (const auto& [bits, f] : freqs) {
    if (static_cast<int>(bits.size()) < term.span())
      throw ValidationError("histogram key '" + bits + "' is shorter than term " +
                            term.to_string());
    bool odd = false;
    for (int q : support) odd ^= bits[static_cast<std::size_t>(q)] == '1';
    acc += odd ? -f : f;
  }
  return acc;
}

Circuit append_measurement_basis(const Circuit& c, const PauliWord& basis) {
  Circuit out = c;
  for (const auto& [q, a] : basis.factors()) {
    if (a == Axis::X) out.add_gate(make_gate("H", {q}));
    else if (a == Axis::Y) out.add_gate(make_gate("RX", {q}, {}, std::numbers::pi / 2));
  }
  out.set_declared_width(std::max<std::size_t>(c.width(), static_cast<std::size_t>(basis.span())));
  return out;
}

double get_expectation_value(const QubitOperator& op, const Circuit& c, const BackendConfig& cfg,
                             const Statevector* initial_state) {
  Circuit prepared = c;
  if (initial_state == nullptr)
    prepared.set_declared_width(
        std::max<std::size_t>(c.width(), static_cast<std::size_t>(op.n_qubits())));
  else if (op.n_qubits() > initial_state->n_qubits())
    throw ValidationError("operator acts on more qubits than the initial state");

  if (!cfg.n_shots) {
    const auto res = simulate(prepared, cfg, initial_state, true);
    const auto e = res.statevector->expectation(op);
    if (std::abs(e.imag()) > 1e-8)
      throw ValidationError("expectation value has an imaginary part; operator not Hermitian");
    return e.real();
  }

  const std::uint64_t seed = resolve_seed(cfg);
  double energy = op.coefficient(PauliWord{}).real();
  const auto groups = group_qwc(op, derive_seed(seed, "expval-grouping"));
  std::size_t index = 0;
  for (const auto& [basis, members] : groups) {
    BackendConfig run = cfg;
    run.seed = derive_seed(seed, "expval-basis", index++);
    const auto freqs =
        simulate(append_measurement_basis(prepared, basis), run, initial_state).frequencies;
    for (const auto& [w, coeff] : members.terms())
      energy += coeff.real() * expectation_from_frequencies_oneterm(w, freqs);
  }
  return energy;
}

}  // namespace fermiforge
