// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails or exceeds its time budget.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "fermiforge/circuit.hpp"
#include "fermiforge/dense.hpp"
#include "fermiforge/fragmentation.hpp"
#include "fermiforge/io.hpp"
#include "fermiforge/mapping.hpp"
#include "fermiforge/measurement.hpp"
#include "fermiforge/postprocessing.hpp"
#include "fermiforge/simulator.hpp"
#include "fermiforge/vqe.hpp"
#include "oracle.hpp"

using namespace fermiforge;

namespace {

const std::string kData = FERMIFORGE_DATA_DIR;

PauliWord W(std::string_view s) { return PauliWord::parse(s); }

/// Collects failed conditions with a short description each.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++n_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    if (ok()) return std::to_string(n_) + " checks";
    std::string s = std::to_string(failures_.size()) + "/" + std::to_string(n_) + " failed: " + failures_[0];
    if (failures_.size() > 1) s += " (+" + std::to_string(failures_.size() - 1) + " more)";
    return s;
  }
  std::vector<std::string> notes;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

std::size_t min_clique_cover(const std::vector<PauliWord>& words) {
  const std::size_t n = words.size();
  std::vector<int> color(n, -1);
  std::size_t best = n;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t used) {
    if (used >= best) return;
    if (i == n) {
      best = used;
      return;
    }
    for (std::size_t c = 0; c <= used && c < best; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (color[j] == static_cast<int>(c) && !qwc_compatible(words[i], words[j])) ok = false;
      if (!ok) continue;
      color[i] = static_cast<int>(c);
      go(i + 1, std::max(used, c + 1));
      color[i] = -1;
    }
  };
  go(0, 0);
  return best;
}

void criterion1(Check& c) {
  const auto op = read_qubit_operator(kData + "/rdm_operator_2q.txt");
  const auto m = group_qwc(op, 0);
  c.expect(m.size() == 5, "seed 0 gives 5 groups");
  const auto it = m.find(W("X0 Z1"));
  c.expect(it != m.end(), "group keyed X0 Z1 exists");
  if (it != m.end()) {
    const QubitOperator expected =
        QubitOperator(W("X0"), 0.25) + QubitOperator(W("X0 Z1"), 0.25) + QubitOperator(W("Z1"), 0.25);
    c.expect(it->second == expected, "X0 Z1 group is {X0, X0 Z1, Z1} at 0.25");
  }
  std::vector<PauliWord> words;
  for (const auto& [w, coeff] : op.terms()) words.push_back(w);
  const auto best = min_clique_cover(words);
  c.expect(best == 5, "brute-force minimum clique cover is 5");
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    c.expect(group_qwc(op, seed).size() == best, "seed " + std::to_string(seed) + " group count");
}

void criterion2(Check& c) {
  const auto op = read_qubit_operator(kData + "/rdm_operator_2q.txt");
  const auto est = get_measurement_estimate(op, 2);
  c.expect(est.size() == 9, "nine terms estimated");
  for (const auto& [w, n] : est) c.expect(n == 62500, w.to_string() + " needs 62500 shots");
  for (const auto& [basis, entries] : plan_measurements(op, 0, 2))
    for (const auto& [w, n] : entries) c.expect(n == 62500, "plan entry " + w.to_string());
}

void criterion3(Check& c) {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_hermitian_fermion(4, rng);
    const auto ej = eigenvalues(jordan_wigner(f, 4), 4);
    const auto eb = eigenvalues(bravyi_kitaev(f, 4), 4);
    const double d = (ej - eb).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
    c.expect(d < 1e-10, "JW/BK spectra agree for operator " + std::to_string(trial));
  }
  const auto h = read_fermion_operator(kData + "/h2_sto3g_fermion.txt");
  MappingConfig sc;
  sc.mapping = MappingKind::SCBK;
  sc.n_spinorbitals = 4;
  sc.n_electrons = 2;
  sc.up_then_down = true;
  const double e_scbk = exact_ground_energy(fermion_to_qubit_mapping(h, sc), 2);
  const double e_sector = oracle::sector_minimum(oracle::fermion_operator(h, 4), 4, 2, 0);
  c.expect(std::abs(e_scbk - e_sector) < 1e-10, "scBK minimum equals the (N=2, Sz=0) JW minimum");
  c.notes.push_back("max JW/BK eigenvalue gap " + fmt(worst) + ", scBK gap " + fmt(std::abs(e_scbk - e_sector)));
}

void criterion4(Check& c) {
  const auto h = read_qubit_operator(kData + "/h2_sto3g_jw.txt");
  const double exact = exact_ground_energy(h);

  const auto hea_cfg = vqe_config_from_json(read_json(kData + "/h2_vqe_hea.json"), kData);
  c.expect(hea_cfg.ansatz.hea.layers == 3 && hea_cfg.ansatz.tau_guess == 0.01, "HEA uses 3 layers and tau 0.01");
  VQESolver hea(hea_cfg);
  hea.build();
  const double e_hea = hea.simulate();
  c.expect(std::abs(e_hea - exact) < 1e-6, "HEA energy within 1e-6");

  VQEConfig qcc_cfg;
  qcc_cfg.qubit_hamiltonian = h;
  qcc_cfg.reference = "1100";
  qcc_cfg.ansatz.kind = AnsatzKind::QCC;
  qcc_cfg.optimizer.tolerance = 1e-10;
  VQESolver qcc(qcc_cfg);
  qcc.build();
  const double e_qcc = qcc.simulate();
  c.expect(std::abs(e_qcc - exact) < 1e-6, "QCC energy within 1e-6");

  const auto ref = Statevector::basis_state("1100");
  const auto gens = qcc_screen_generators(h, ref, 1e-12);
  c.expect(gens.size() > 0, "QCC screening finds generators");
  double worst = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto energy_at = [&](double tau) {
      Statevector psi = ref;
      psi.apply(pauli_exponential(gens.generators[i], tau));
      return psi.expectation(h).real();
    };
    const double fd = (energy_at(1e-5) - energy_at(-1e-5)) / 2e-5;
    worst = std::max(worst, std::abs(fd - gens.gradients[i]));
    c.expect(std::abs(fd - gens.gradients[i]) < 1e-6, "gradient of " + gens.generators[i].to_string());
  }

  const auto keys = to_json(qcc.get_resources());
  const std::vector<std::string> six = {"qubit_hamiltonian_terms", "circuit_width", "circuit_gates",
                                        "circuit_2qubit_gates", "circuit_var_gates", "vqe_variational_parameters"};
  c.expect(keys.size() == 6, "resource report has six keys");
  for (const auto& k : six) c.expect(keys.contains(k), "resource key " + k);
  c.notes.push_back("HEA error " + fmt(std::abs(e_hea - exact)) + ", QCC error " + fmt(std::abs(e_qcc - exact)) +
                    ", max gradient gap " + fmt(worst));
}

void criterion5(Check& c) {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 6;
    const auto circ = oracle::random_circuit(n, 30, rng);
    const auto res = simulate(circ, {}, nullptr, true);
    const oracle::Vec amps = oracle::run(circ, n);
    double d = (res.statevector->amplitudes() - amps).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      const auto it = res.frequencies.find(bitstring(static_cast<std::uint64_t>(i), n));
      d = std::max(d, std::abs((it == res.frequencies.end() ? 0.0 : it->second) - std::norm(amps[i])));
    }
    worst = std::max(worst, d);
    c.expect(d < 1e-12, "random circuit " + std::to_string(trial));
  }
  const auto x0 = simulate(Circuit({make_gate("X", {0})}, 3), {}).frequencies;
  c.expect(x0 == Histogram{{"100", 1.0}}, "X on qubit 0 reads 100");
  const auto x2 = simulate(Circuit({make_gate("X", {2})}, 3), {}).frequencies;
  c.expect(x2 == Histogram{{"001", 1.0}}, "X on qubit 2 reads 001");

  const double p = 0.3;
  BackendConfig cfg;
  cfg.n_shots = 200000;
  cfg.seed = 5;
  cfg.noise_model = NoiseModel();
  cfg.noise_model->add_quantum_error("X", "depol", p);
  const double z = expectation_from_frequencies_oneterm(W("Z0"), simulate(Circuit({make_gate("X", {0})}), cfg).frequencies);
  const oracle::Mat x = oracle::pauli('X');
  const oracle::Mat rho = oracle::depolarize(x * oracle::proj0() * x, p);
  const double z_oracle = (oracle::pauli('Z') * rho).trace().real();
  c.expect(std::abs(z - z_oracle) < 0.01, "depolarized <Z> within 0.01 of the density-matrix value");
  c.notes.push_back("max amplitude/probability gap " + fmt(worst) + ", <Z> " + fmt(z) + " vs " + fmt(z_oracle));
}

void criterion6(Check& c) {
  Eigen::Matrix2d d;
  d << 0.9, 0.0, 0.0, 0.1;
  const auto r = mcweeny_purify(d, 1e-12);
  c.expect((r.matrix - Eigen::Vector2d(1.0, 0.0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-6,
           "diag(0.9, 0.1) purifies to diag(1, 0)");

  const auto x = experiment::h2_noisy_experiment(kData);
  const auto raw = experiment::spec_for(x, false);
  const auto pur = experiment::spec_for(x, true);
  const double e_ref = energy_from_histograms(raw, x.exact);
  const double err_raw = std::abs(energy_from_histograms(raw, x.noisy) - e_ref);
  const double err_pur = std::abs(energy_from_histograms(pur, x.noisy) - e_ref);
  c.expect(err_pur < err_raw, "purified error below unpurified error");
  c.notes.push_back("noiseless " + fmt(e_ref) + ", unpurified error " + fmt(err_raw) + ", purified error " +
                    fmt(err_pur));
}

void criterion7(Check& c) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 0.01);
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      IncrementTable random, additive;
      std::vector<double> single(n);
      for (auto& e : single) e = nd(rng);
      for (int mask = 1; mask < (1 << n); ++mask) {
        Subset s;
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) {
            s.push_back(i);
            sum += single[i];
          }
        random.energies[s] = nd(rng);
        additive.energies[s] = sum;
      }
      Subset full(n);
      for (int i = 0; i < n; ++i) full[i] = i;
      const auto inc = mi_increments(random);
      double scale = 0.0;
      for (const auto& [sub, e] : inc) scale += std::abs(e);
      const double d = std::abs(mi_recombine(inc).energy - random.energies.at(full));
      worst = std::max(worst, d);
      c.expect(d <= 16 * std::numeric_limits<double>::epsilon() * scale, "full recombination, n=" + std::to_string(n));
      const auto one = mi_recombine(mi_increments(additive), 1);
      c.expect(std::abs(one.energy - additive.energies.at(full)) <= 1e-15, "order-1 on additive, n=" + std::to_string(n));
    }
  }
  c.notes.push_back("max recombination gap " + fmt(worst));
}

void criterion8(Check& c) {
  const auto g = parse_xyz(read_file(kData + "/acetic_acid_water.xyz"));
  const auto spec = read_json(kData + "/oniom_acetic_acid.json");
  auto whole = fragment_spec_from_json(spec["fragments"][0]);
  auto model = fragment_spec_from_json(spec["fragments"][1]);
  model.options_high = model.options_low;
  model.solver_high = model.solver_low;
  const auto r = run_oniom(g, {whole, model}, SolverRegistry::with_builtins(kData));
  c.expect(r.energy == r.e_all_low, "identical solvers give E_all_low bit-exactly");

  const auto two = parse_xyz("C 0 0 0\nC 0 0 1\n");
  const auto cap = link_cap_position(two, Link{0, 1, 0.709, "H"});
  c.expect(cap == std::array<double, 3>{0.0, 0.0, 0.709}, "cap at (0, 0, 0.709)");
}

void criterion9(Check& c) {
  std::mt19937_64 rng(9);
  double worst = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const auto circ = oracle::random_circuit(n, 25, rng);
    const auto res = simulate(circ + inverse(circ), {}, nullptr, true);
    const double fidelity = std::norm(res.statevector->amplitudes()[0]);
    worst = std::min(worst, fidelity);
    c.expect(fidelity >= 1 - 1e-10, "round trip " + std::to_string(trial));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto circ = oracle::random_circuit(6, 12, rng);
    const auto s = split(circ);
    const auto rebuilt = stack(s.parts);
    std::vector<int> offsets;
    int off = 0;
    for (const auto& p : s.parts) {
      offsets.push_back(off);
      off += static_cast<int>(p.width());
    }
    std::map<int, int> back;
    for (const auto& [q, loc] : s.qubit_map) back[offsets[loc.first] + loc.second] = q;
    auto sequences = [](const Circuit& cc) {
      std::map<int, std::vector<std::string>> out;
      for (const auto& gte : cc.gates()) {
        for (int q : gte.targets) out[q].push_back(to_string(gte));
        for (int q : gte.controls) out[q].push_back(to_string(gte));
      }
      return out;
    };
    c.expect(sequences(remap_qubits(rebuilt, [&](int q) { return back.at(q); })) == sequences(circ),
             "split/stack sequences " + std::to_string(trial));
  }
  const Circuit c3 = Circuit({make_gate("H", {2}), make_gate("CNOT", {1}, {0}), make_gate("CNOT", {2}, {1}),
                              make_gate("Y", {0}), make_gate("RX", {1}, {}, 2.0)}) +
                     Circuit({make_gate("RZ", {4}, {}, std::string("alpha"), true)});
  const std::map<std::string, std::size_t> counts{{"H", 1}, {"CNOT", 2}, {"Y", 1}, {"RX", 1}, {"RZ", 1}};
  c.expect(c3.size() == 6, "circuit3 size 6");
  c.expect(c3.width() == 5, "circuit3 width 5");
  c.expect(c3.counts() == counts, "circuit3 gate counts");
  c.notes.push_back("min round-trip fidelity 1-" + fmt(1 - worst));
}

void criterion10(Check& c) {
  const Histogram h{{"00", 0.4}, {"01", 0.1}, {"10", 0.2}, {"11", 0.3}};
  Xoshiro256 rng(10);
  for (std::uint64_t n : {1u, 13u, 1000u, 12345u}) {
    for (int k = 0; k < 20; ++k) {
      const auto r = resample_frequencies(h, n, rng);
      double total = 0.0;
      bool multiples = true;
      for (const auto& [key, v] : r) {
        total += v;
        multiples &= std::abs(v * n - std::round(v * n)) < 1e-9;
      }
      c.expect(std::abs(total - 1.0) < 1e-12, "resample sums to 1");
      c.expect(multiples, "resample values are multiples of 1/n");
    }
  }
  const auto s = series_stats({0.0, 2.0});
  c.expect(s.mean == 1.0 && s.stdev == std::sqrt(2.0), "series [0, 2] gives (1, sqrt 2)");
  const auto t = series_stats({1.0, 2.0, 3.0, 4.0, 5.0});
  c.expect(t.mean == 3.0 && t.stdev == std::sqrt(2.5), "series [1..5] gives (3, sqrt 2.5)");

  const auto j = read_json(kData + "/bootstrap_h2.json");
  BootstrapSpec spec;
  spec.hamiltonian = read_fermion_operator(kData + "/" + j["hamiltonian_file"].get<std::string>());
  spec.mapping.mapping = parse_mapping(j["mapping"]["mapping"].get<std::string>());
  spec.mapping.n_spinorbitals = j["mapping"]["n_spinorbitals"];
  spec.mapping.n_electrons = j["mapping"]["n_electrons"];
  spec.mapping.up_then_down = j["mapping"]["up_then_down"];
  for (const auto& [basis, hist] : j["histograms"].items())
    spec.histograms.emplace(PauliWord::parse(basis), histogram_from_json(hist));
  spec.n_shots = j["n_shots"];
  spec.n_resamples = j["n_resamples"];
  spec.conv = j["conv"];
  spec.seed = 2026;
  const auto a = bootstrap_energy(spec);
  const auto b = bootstrap_energy(spec);
  c.expect(a.energies == b.energies && a.mean == b.mean && a.stdev == b.stdev, "bootstrap is bit-exact");
  c.notes.push_back("bootstrap mean " + fmt(a.mean) + " +- " + fmt(a.stdev));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    void (*run)(Check&);
  };
  const std::vector<Criterion> criteria = {
      {1, "QWC grouping golden", 1.0, criterion1},
      {2, "shot estimation golden", 1.0, criterion2},
      {3, "mapping isospectrality", 30.0, criterion3},
      {4, "VQE convergence", 120.0, criterion4},
      {5, "simulator correctness", 120.0, criterion5},
      {6, "McWeeny purification", 60.0, criterion6},
      {7, "MI identity", 5.0, criterion7},
      {8, "ONIOM cancellation", 1.0, criterion8},
      {9, "circuit algebra", 30.0, criterion9},
      {10, "bootstrap statistics", 60.0, criterion10},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = error.empty() && check.ok() && dt < cr.budget_s;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " ("
              << (error.empty() ? check.summary() : "exception: " + error) << "; " << std::fixed
              << std::setprecision(3) << dt << " s of " << std::setprecision(0) << cr.budget_s << " s";
    std::cout.unsetf(std::ios::fixed);
    for (const auto& n : check.notes) std::cout << "; " << n;
    std::cout << ")\n";
  }
  return failed == 0 ? 0 : 1;
}
