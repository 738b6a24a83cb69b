// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "fermiforge/dense.hpp"
#include "fermiforge/errors.hpp"
#include "fermiforge/fragmentation.hpp"
#include "fermiforge/io.hpp"
#include "fermiforge/measurement.hpp"
#include "fermiforge/postprocessing.hpp"
#include "fermiforge/qasm.hpp"
#include "fermiforge/simulator.hpp"
#include "fermiforge/vqe.hpp"

namespace fermiforge {

namespace fs = std::filesystem;

Circuit read_circuit(const fs::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (path.extension() == ".qasm" || (first != std::string::npos && text.compare(first, 8, "OPENQASM") == 0)) {
    try {
      return from_qasm(text);
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ": " + e.what());
    }
  }
  try {
    return circuit_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots;
  std::string noise_file;
  std::string output;
  std::string format = "json";
};

std::uint64_t default_seed() {
  const char* env = std::getenv("FERMIFORGE_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(env, &pos);
    if (env[pos] != '\0') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("FERMIFORGE_SEED is not an unsigned integer: ") + env);
  }
}

BackendConfig backend_from(const Globals& g) {
  BackendConfig b;
  if (g.shots && *g.shots > 0) b.n_shots = *g.shots;
  if (!g.noise_file.empty()) b.noise_model = noise_model_from_json(read_json(g.noise_file));
  b.seed = derive_seed(g.seed, "backend");
  return b;
}

std::string render_histogram_text(const Histogram& h) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& [k, v] : h) os << k << ' ' << v << '\n';
  return os.str();
}

std::string render_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v << '\n';
  return os.str();
}

std::string render_plan_text(const ShotPlan& plan) {
  std::ostringstream os;
  for (const auto& [parent, terms] : plan) {
    os << word_key(parent) << ":\n";
    for (const auto& [w, n] : terms) os << "  " << word_key(w) << ' ' << n << '\n';
  }
  os << "total_shots " << total_shots(plan) << '\n';
  return os.str();
}

std::string render_map_text(const MeasurementMap& m) {
  std::ostringstream os;
  for (const auto& [parent, members] : m) {
    os << word_key(parent) << ":\n";
    std::istringstream lines(to_string(members));
    for (std::string line; std::getline(lines, line);) os << "  " << line << '\n';
  }
  return os.str();
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fermiforge: quantum chemistry workflow toolkit"};
  app.set_version_flag("--version", std::string(FERMIFORGE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Root seed (default: FERMIFORGE_SEED or 0)");
  app.add_option("--shots", g.shots, "Shots per circuit; 0 or absent selects exact mode");
  app.add_option("--noise", g.noise_file, "Noise model JSON file")->check(CLI::ExistingFile);
  app.add_option("--output", g.output, "Write the result to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string circuit_file, operator_file, config_file, spec_file, table_file, to_format = "qasm";
  std::vector<std::string> circuit_files;
  int digits = 2;
  std::size_t mi_order = 0;
  bool want_statevector = false;

  auto* simulate_cmd = app.add_subcommand("simulate", "Run a circuit and print its histogram");
  simulate_cmd->add_option("circuit", circuit_file, "Circuit JSON or QASM file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_flag("--statevector", want_statevector, "Include amplitudes (exact, noiseless mode)");

  auto* expval_cmd = app.add_subcommand("expval", "Expectation value of an operator");
  expval_cmd->add_option("circuit", circuit_file, "Circuit file")->required()->check(CLI::ExistingFile);
  expval_cmd->add_option("operator", operator_file, "Qubit operator text file")->required()->check(CLI::ExistingFile);

  auto* vqe_cmd = app.add_subcommand("vqe", "Run a VQE calculation");
  vqe_cmd->add_option("config", config_file, "VQE config JSON")->required()->check(CLI::ExistingFile);

  auto* group_cmd = app.add_subcommand("group", "Qubit-wise commuting measurement groups");
  group_cmd->add_option("operator", operator_file, "Qubit operator text file")->required()->check(CLI::ExistingFile);

  auto* shots_cmd = app.add_subcommand("estimate-shots", "Shots per term for a target precision");
  shots_cmd->add_option("operator", operator_file, "Qubit operator text file")->required()->check(CLI::ExistingFile);
  shots_cmd->add_option("--digits", digits, "Target decimal digits")->check(CLI::NonNegativeNumber);

  auto* translate_cmd = app.add_subcommand("translate", "Convert a circuit between QASM and JSON");
  translate_cmd->add_option("circuit", circuit_file, "Circuit file")->required()->check(CLI::ExistingFile);
  translate_cmd->add_option("--to", to_format, "Target format")->check(CLI::IsMember({"qasm", "json"}));

  auto* oniom_cmd = app.add_subcommand("oniom", "ONIOM fragment energy");
  oniom_cmd->add_option("spec", spec_file, "ONIOM spec JSON")->required()->check(CLI::ExistingFile);

  auto* mi_cmd = app.add_subcommand("mi", "Method-of-increments recombination");
  mi_cmd->add_option("table", table_file, "Increment table JSON")->required()->check(CLI::ExistingFile);
  mi_cmd->add_option("--order", mi_order, "Truncation order (default: table order)");

  auto* bootstrap_cmd = app.add_subcommand("bootstrap", "Bootstrap energy statistics from histograms");
  bootstrap_cmd->add_option("spec", spec_file, "Bootstrap pipeline JSON")->required()->check(CLI::ExistingFile);

  auto* split_cmd = app.add_subcommand("split", "Split a circuit into independent parts");
  split_cmd->add_option("circuit", circuit_file, "Circuit file")->required()->check(CLI::ExistingFile);

  auto* stack_cmd = app.add_subcommand("stack", "Place circuits side by side");
  stack_cmd->add_option("circuits", circuit_files, "Circuit files")->required()->check(CLI::ExistingFile);

  auto* inverse_cmd = app.add_subcommand("inverse", "Inverse of a circuit");
  inverse_cmd->add_option("circuit", circuit_file, "Circuit file")->required()->check(CLI::ExistingFile);

  auto* info_cmd = app.add_subcommand("backend-info", "Simulator capabilities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  const bool text = g.format == "text";
  try {
    g.seed = seed_flag ? *seed_flag : default_seed();
    std::string result;
    auto emit = [&](const json& j, const std::string& as_text) {
      result = text ? as_text : j.dump(2) + "\n";
    };
    auto emit_circuit = [&](const Circuit& c) { emit(to_json(c), to_string(c)); };

    if (*simulate_cmd) {
      const Circuit c = read_circuit(circuit_file);
      const auto r = simulate(c, backend_from(g), nullptr, want_statevector);
      json j = to_json(r.frequencies);
      if (want_statevector) {
        json amps = json::array();
        for (Eigen::Index i = 0; i < r.statevector->amplitudes().size(); ++i)
          amps.push_back({r.statevector->amplitudes()[i].real(), r.statevector->amplitudes()[i].imag()});
        j = json{{"frequencies", j}, {"statevector", amps}};
      }
      emit(j, render_histogram_text(r.frequencies));
    } else if (*expval_cmd) {
      const double v = get_expectation_value(read_qubit_operator(operator_file), read_circuit(circuit_file),
                                             backend_from(g));
      emit(json{{"expectation", v}}, render_number(v));
    } else if (*vqe_cmd) {
      auto cfg = vqe_config_from_json(read_json(config_file), fs::path(config_file).parent_path());
      if (seed_flag || std::getenv("FERMIFORGE_SEED")) cfg.seed = g.seed;
      if (g.shots) cfg.backend.n_shots = *g.shots > 0 ? std::optional(*g.shots) : std::nullopt;
      if (!g.noise_file.empty()) cfg.backend.noise_model = noise_model_from_json(read_json(g.noise_file));
      VQESolver solver(std::move(cfg));
      solver.build();
      const double e = solver.simulate();
      json j{{"energy", e},
             {"converged", solver.converged()},
             {"n_evaluations", solver.optimizer_result().n_evaluations},
             {"parameters", solver.parameters()},
             {"resources", to_json(solver.get_resources())}};
      if (solver.qcc_generators()) {
        json gens = json::array();
        for (std::size_t i = 0; i < solver.qcc_generators()->size(); ++i)
          gens.push_back({{"word", solver.qcc_generators()->generators[i].to_string()},
                          {"gradient", solver.qcc_generators()->gradients[i]}});
        j["qcc_generators"] = gens;
      }
      std::ostringstream os;
      os << std::setprecision(17) << "energy " << e << '\n';
      for (const auto& [k, v] : j["resources"].items()) os << k << ' ' << v << '\n';
      emit(j, os.str());
    } else if (*group_cmd) {
      const auto m = group_qwc(read_qubit_operator(operator_file), g.seed);
      emit(to_json(m), render_map_text(m));
    } else if (*shots_cmd) {
      const auto plan = plan_measurements(read_qubit_operator(operator_file), g.seed, digits);
      emit(json{{"plan", to_json(plan)}, {"total_shots", total_shots(plan)}, {"digits", digits}},
           render_plan_text(plan));
    } else if (*translate_cmd) {
      const Circuit c = read_circuit(circuit_file);
      if (to_format == "qasm")
        result = to_qasm(c);
      else
        result = to_json(c).dump(2) + "\n";
    } else if (*oniom_cmd) {
      const auto spec = read_json(spec_file);
      const auto base = fs::path(spec_file).parent_path();
      Geometry geom;
      if (spec.contains("geometry_file"))
        geom = parse_xyz(read_file(base / spec["geometry_file"].get<std::string>()));
      else if (spec.contains("geometry") && spec["geometry"].is_string())
        geom = parse_xyz(spec["geometry"].get<std::string>());
      else
        throw ValidationError("ONIOM spec needs 'geometry_file' or 'geometry'");
      if (!spec.contains("fragments") || !spec["fragments"].is_array())
        throw ValidationError("ONIOM spec needs a 'fragments' list");
      std::vector<FragmentSpec> frags;
      for (const auto& f : spec["fragments"]) frags.push_back(fragment_spec_from_json(f));
      const auto r = run_oniom(geom, frags, SolverRegistry::with_builtins(base.string()));
      json fr = json::array();
      for (const auto& f : r.fragments) {
        json x{{"index", f.index}, {"e_low", f.e_low}};
        if (f.e_high) x["e_high"] = *f.e_high;
        if (f.resources) x["resources"] = to_json(*f.resources);
        fr.push_back(x);
      }
      json res = json::array();
      for (const auto& rr : r.resources) res.push_back(to_json(rr));
      emit(json{{"energy", r.energy}, {"e_all_low", r.e_all_low}, {"fragments", fr}, {"resources", res}},
           render_number(r.energy));
    } else if (*mi_cmd) {
      const auto table = increment_table_from_json(read_json(table_file));
      const auto inc = mi_increments(table);
      const auto rec = mi_recombine(inc, mi_order);
      std::ostringstream os;
      os << std::setprecision(17) << "energy " << rec.energy << "\ntruncation_error " << rec.truncation_error
         << "\norder " << rec.order << '\n';
      emit(json{{"increments", increments_to_json(inc)},
                {"energy", rec.energy},
                {"truncation_error", rec.truncation_error},
                {"order", rec.order}},
           os.str());
    } else if (*bootstrap_cmd) {
      const auto spec_json = read_json(spec_file);
      const auto base = fs::path(spec_file).parent_path();
      BootstrapSpec spec;
      if (!spec_json.contains("hamiltonian_file")) throw ValidationError("bootstrap spec needs 'hamiltonian_file'");
      spec.hamiltonian = read_fermion_operator(base / spec_json["hamiltonian_file"].get<std::string>());
      const auto m = spec_json.value("mapping", json::object());
      spec.mapping.mapping = parse_mapping(m.value("mapping", std::string("jw")));
      spec.mapping.n_spinorbitals = m.value("n_spinorbitals", 0);
      spec.mapping.n_electrons = m.value("n_electrons", 0);
      spec.mapping.spin = m.value("spin", 0);
      spec.mapping.up_then_down = m.value("up_then_down", false);
      if (!spec_json.contains("histograms") || !spec_json["histograms"].is_object())
        throw ValidationError("bootstrap spec needs a 'histograms' object");
      for (const auto& [basis, h] : spec_json["histograms"].items()) {
        const json hj = h.is_string() ? read_json(base / h.get<std::string>()) : h;
        spec.histograms.emplace(basis == "I" ? PauliWord{} : PauliWord::parse(basis), histogram_from_json(hj));
      }
      spec.n_shots = spec_json.value("n_shots", std::uint64_t{0});
      if (g.shots && *g.shots > 0) spec.n_shots = *g.shots;
      spec.n_resamples = spec_json.value("n_resamples", std::size_t{100});
      spec.purify = spec_json.value("purify", true);
      spec.conv = spec_json.value("conv", 1e-2);
      spec.seed = g.seed;
      const auto r = bootstrap_energy(spec);
      std::ostringstream os;
      os << std::setprecision(17) << "mean " << r.mean << "\nstdev " << r.stdev << '\n';
      emit(to_json(r), os.str());
    } else if (*split_cmd) {
      const auto s = split(read_circuit(circuit_file));
      json parts = json::array();
      std::string t;
      for (const auto& p : s.parts) {
        parts.push_back(to_json(p));
        t += to_string(p);
      }
      json qmap = json::object();
      for (const auto& [q, v] : s.qubit_map) qmap[std::to_string(q)] = {v.first, v.second};
      emit(json{{"parts", parts}, {"qubit_map", qmap}}, t);
    } else if (*stack_cmd) {
      std::vector<Circuit> cs;
      for (const auto& f : circuit_files) cs.push_back(read_circuit(f));
      emit_circuit(stack(cs));
    } else if (*inverse_cmd) {
      emit_circuit(inverse(read_circuit(circuit_file)));
    } else if (*info_cmd) {
      const auto info = backend_info();
      std::ostringstream os;
      os << "ordering " << info.ordering << "\nmax_exact_qubits " << info.max_exact_qubits
         << "\nmax_trajectory_qubits " << info.max_trajectory_qubits << '\n';
      emit(json{{"ordering", info.ordering},
                {"max_exact_qubits", info.max_exact_qubits},
                {"max_trajectory_qubits", info.max_trajectory_qubits},
                {"supported_gates", info.supported_gates},
                {"noise_channels", info.noise_channels}},
           os.str());
    }

    if (g.output.empty()) {
      out << result;
    } else {
      write_file(g.output, result);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace fermiforge
