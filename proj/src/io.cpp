// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fermiforge/errors.hpp"

namespace fermiforge {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("invalid number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

struct TermLine {
  Complex coefficient;
  std::string_view body;
};

// Splits "coef [body]" lines; calls f(line_number, TermLine).
template <typename F>
void for_each_term_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no);
    const auto open = line.find('[');
    const auto close = line.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
        !trim(line.substr(close + 1)).empty())
      throw ValidationError(where + ": expected 'coefficient [term]'");
    const auto coef = trim(line.substr(0, open));
    Complex c = 1.0;
    try {
      if (coef.empty()) {
        c = 1.0;
      } else if (coef.front() == '(') {
        const auto comma = coef.find(',');
        if (coef.back() != ')' || comma == std::string_view::npos)
          throw ValidationError("malformed complex coefficient");
        c = Complex(parse_double(coef.substr(1, comma - 1), where),
                    parse_double(coef.substr(comma + 1, coef.size() - comma - 2), where));
      } else {
        c = parse_double(coef, where);
      }
      f(TermLine{c, line.substr(open + 1, close - open - 1)});
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw ValidationError(where + ": " + msg);
    }
  }
}

}  // namespace

QubitOperator parse_qubit_operator(std::string_view text) {
  QubitOperator op;
  for_each_term_line(text, [&](const TermLine& t) {
    op += QubitOperator(PauliWord::parse(t.body), t.coefficient);
  });
  return op;
}

FermionOperator parse_fermion_operator(std::string_view text) {
  FermionOperator op;
  for_each_term_line(text, [&](const TermLine& t) {
    op += FermionOperator(FermionOperator::parse_sequence(t.body), t.coefficient);
  });
  return op;
}

QubitOperator read_qubit_operator(const fs::path& path) {
  try {
    return parse_qubit_operator(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

FermionOperator read_fermion_operator(const fs::path& path) {
  try {
    return parse_fermion_operator(read_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

namespace {

std::vector<int> index_list(const json& j, std::string_view field) {
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) throw ValidationError("gate field '" + std::string(field) + "' must be an integer or a list");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ValidationError("gate field '" + std::string(field) + "' must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

template <typename T>
T get_or(const json& j, std::string_view key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw ValidationError("field '" + std::string(key) + "' has the wrong type");
  }
}

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
}

}  // namespace

json to_json(const Gate& g) {
  json j;
  j["name"] = g.name;
  j["targets"] = g.targets;
  j["controls"] = g.controls;
  if (std::holds_alternative<double>(g.parameter))
    j["parameter"] = std::get<double>(g.parameter);
  else if (std::holds_alternative<std::string>(g.parameter))
    j["parameter"] = std::get<std::string>(g.parameter);
  else
    j["parameter"] = nullptr;
  j["variational"] = g.is_variational;
  return j;
}

Gate gate_from_json(const json& j) {
  require_object(j, "gate");
  if (!j.contains("name") || !j["name"].is_string()) throw ValidationError("gate needs a string 'name'");
  if (!j.contains("targets")) throw ValidationError("gate needs 'targets'");
  const auto targets = index_list(j["targets"], "targets");
  const auto controls = j.contains("controls") ? index_list(j["controls"], "controls") : std::vector<int>{};
  Parameter p;
  if (const auto it = j.find("parameter"); it != j.end() && !it->is_null()) {
    if (it->is_number())
      p = it->get<double>();
    else if (it->is_string())
      p = it->get<std::string>();
    else
      throw ValidationError("gate parameter must be a number, a string or null");
  }
  return make_gate(j["name"].get<std::string>(), targets, controls, p, get_or(j, "variational", false));
}

json to_json(const Circuit& c) {
  json j;
  j["width"] = c.width();
  j["gates"] = json::array();
  for (const auto& g : c.gates()) j["gates"].push_back(to_json(g));
  return j;
}

Circuit circuit_from_json(const json& j) {
  require_object(j, "circuit");
  if (!j.contains("gates") || !j["gates"].is_array()) throw ValidationError("circuit needs a 'gates' list");
  std::vector<Gate> gates;
  std::size_t i = 0;
  for (const auto& g : j["gates"]) {
    try {
      gates.push_back(gate_from_json(g));
    } catch (const ValidationError& e) {
      throw ValidationError("gate " + std::to_string(i) + ": " + e.what());
    }
    ++i;
  }
  std::optional<std::size_t> width;
  if (const auto it = j.find("width"); it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
      throw ValidationError("circuit width must be a non-negative integer");
    width = it->get<std::size_t>();
  }
  return Circuit(std::move(gates), width);
}

json to_json(const Histogram& h) {
  json j = json::object();
  for (const auto& [k, v] : h) j[k] = v;
  return j;
}

Histogram histogram_from_json(const json& j) {
  require_object(j, "histogram");
  Histogram h;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ValidationError("histogram value for '" + k + "' must be a number");
    for (char c : k)
      if (c != '0' && c != '1') throw ValidationError("histogram key '" + k + "' is not a bitstring");
    h[k] = v.get<double>();
  }
  validate_histogram(h, 1e-6);
  return h;
}

NoiseModel noise_model_from_json(const json& j) {
  require_object(j, "noise model");
  NoiseModel n;
  for (const auto& [gate, channels] : j.items()) {
    require_object(channels, "noise entry for " + gate);
    for (const auto& [kind, p] : channels.items()) {
      if (!p.is_number()) throw ValidationError("noise probability for " + gate + " must be a number");
      n.add_quantum_error(gate, kind, p.get<double>());
    }
  }
  return n;
}

json to_json(const NoiseModel& n) {
  json j = json::object();
  for (const auto& [gate, channels] : n.channels())
    for (const auto& ch : channels) j[gate]["depol"] = ch.probability;
  return j;
}

json coefficient_to_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

Complex coefficient_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError("coefficient must be a number or [re, im]");
}

std::string word_key(const PauliWord& w) { return w.is_identity() ? "I" : w.to_string(); }

json to_json(const MeasurementMap& m) {
  json j = json::object();
  for (const auto& [parent, members] : m) {
    json g = json::object();
    for (const auto& [w, c] : members.terms()) g[word_key(w)] = coefficient_to_json(c);
    j[word_key(parent)] = g;
  }
  return j;
}

json to_json(const ShotPlan& p) {
  json j = json::object();
  for (const auto& [parent, terms] : p) {
    json g = json::object();
    for (const auto& [w, n] : terms) g[word_key(w)] = n;
    j[word_key(parent)] = g;
  }
  return j;
}

json to_json(const ResourceReport& r) {
  return json{{"qubit_hamiltonian_terms", r.qubit_hamiltonian_terms},
              {"circuit_width", r.circuit_width},
              {"circuit_gates", r.circuit_gates},
              {"circuit_2qubit_gates", r.circuit_2qubit_gates},
              {"circuit_var_gates", r.circuit_var_gates},
              {"vqe_variational_parameters", r.vqe_variational_parameters}};
}

ResourceReport resource_report_from_json(const json& j) {
  require_object(j, "resource report");
  auto field = [&](const char* k) {
    if (!j.contains(k) || !j[k].is_number_unsigned()) throw ValidationError(std::string("resource report needs '") + k + "'");
    return j[k].get<std::size_t>();
  };
  ResourceReport r;
  r.qubit_hamiltonian_terms = field("qubit_hamiltonian_terms");
  r.circuit_width = field("circuit_width");
  r.circuit_gates = field("circuit_gates");
  r.circuit_2qubit_gates = field("circuit_2qubit_gates");
  r.circuit_var_gates = field("circuit_var_gates");
  r.vqe_variational_parameters = field("vqe_variational_parameters");
  return r;
}

VQEConfig vqe_config_from_json(const json& j, const fs::path& base_dir) {
  require_object(j, "VQE config");
  auto resolve = [&](const json& v) {
    if (!v.is_string()) throw ValidationError("file names must be strings");
    fs::path p = v.get<std::string>();
    return p.is_absolute() ? p : base_dir / p;
  };
  VQEConfig cfg;

  if (!j.contains("hamiltonian")) throw ValidationError("VQE config needs a 'hamiltonian' block");
  const auto& h = j["hamiltonian"];
  require_object(h, "hamiltonian");
  if (h.contains("qubit_operator_file")) {
    cfg.qubit_hamiltonian = read_qubit_operator(resolve(h["qubit_operator_file"]));
  } else if (h.contains("fermion_operator_file")) {
    cfg.fermion_hamiltonian = read_fermion_operator(resolve(h["fermion_operator_file"]));
  } else {
    throw ValidationError("hamiltonian needs 'qubit_operator_file' or 'fermion_operator_file'");
  }
  cfg.mapping.mapping = parse_mapping(get_or<std::string>(h, "mapping", "jw"));
  cfg.mapping.n_spinorbitals = get_or(h, "n_spinorbitals", 0);
  cfg.mapping.n_electrons = get_or(h, "n_electrons", 0);
  cfg.mapping.spin = get_or(h, "spin", 0);
  cfg.mapping.up_then_down = get_or(h, "up_then_down", false);

  if (j.contains("reference") && !j["reference"].is_null()) {
    if (!j["reference"].is_string()) throw ValidationError("reference must be a bitstring");
    cfg.reference = j["reference"].get<std::string>();
  }

  if (j.contains("ansatz")) {
    const auto& a = j["ansatz"];
    require_object(a, "ansatz");
    cfg.ansatz.kind = parse_ansatz_kind(get_or<std::string>(a, "kind", "QCC"));
    cfg.ansatz.tau_guess = get_or(a, "tau_guess", cfg.ansatz.tau_guess);
    cfg.ansatz.qcc.threshold = get_or(a, "threshold", cfg.ansatz.qcc.threshold);
    if (a.contains("max_generators") && !a["max_generators"].is_null())
      cfg.ansatz.qcc.max_generators = get_or<std::size_t>(a, "max_generators", 0);
    cfg.ansatz.qcc.bloch_layer = get_or(a, "bloch_layer", false);
    cfg.ansatz.hea.layers = get_or(a, "layers", cfg.ansatz.hea.layers);
    cfg.ansatz.hea.rotations = get_or(a, "rotations", cfg.ansatz.hea.rotations);
    cfg.ansatz.hea.entangler = get_or(a, "entangler", cfg.ansatz.hea.entangler);
    if (a.contains("circuit"))
      cfg.ansatz.custom = circuit_from_json(a["circuit"]);
    else if (a.contains("circuit_file"))
      cfg.ansatz.custom = circuit_from_json(read_json(resolve(a["circuit_file"])));
    else if (cfg.ansatz.kind == AnsatzKind::CUSTOM)
      throw ValidationError("CUSTOM ansatz needs 'circuit' or 'circuit_file'");
  }

  if (j.contains("initial_parameters")) {
    const auto& p = j["initial_parameters"];
    if (p.is_string()) {
      cfg.init = parse_init_policy(p.get<std::string>());
      if (cfg.init == InitPolicy::Explicit) throw ValidationError("explicit initial parameters must be a list");
    } else if (p.is_array()) {
      cfg.init = InitPolicy::Explicit;
      for (const auto& x : p) {
        if (!x.is_number()) throw ValidationError("initial parameters must be numbers");
        cfg.initial_parameters.push_back(x.get<double>());
      }
    } else {
      throw ValidationError("initial_parameters must be 'zeros', 'random' or a list");
    }
  }

  if (j.contains("optimizer")) {
    const auto& o = j["optimizer"];
    require_object(o, "optimizer");
    cfg.optimizer.method = parse_optimizer_method(get_or<std::string>(o, "method", "nelder-mead"));
    cfg.optimizer.tolerance = get_or(o, "tolerance", cfg.optimizer.tolerance);
    cfg.optimizer.max_evaluations = get_or(o, "max_evaluations", cfg.optimizer.max_evaluations);
    cfg.optimizer.initial_step = get_or(o, "initial_step", cfg.optimizer.initial_step);
    cfg.optimizer.max_restarts = get_or(o, "max_restarts", cfg.optimizer.max_restarts);
  }

  if (j.contains("backend")) {
    const auto& b = j["backend"];
    require_object(b, "backend");
    if (b.contains("n_shots") && !b["n_shots"].is_null()) {
      const auto shots = get_or<std::uint64_t>(b, "n_shots", 0);
      if (shots > 0) cfg.backend.n_shots = shots;
    }
    if (b.contains("noise"))
      cfg.backend.noise_model = noise_model_from_json(b["noise"]);
    else if (b.contains("noise_file"))
      cfg.backend.noise_model = noise_model_from_json(read_json(resolve(b["noise_file"])));
  }

  cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
  return cfg;
}

IncrementTable increment_table_from_json(const json& j) {
  require_object(j, "increment table");
  IncrementTable t;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ValidationError("increment table value for '" + k + "' must be a number");
    const auto s = parse_subset_key(k);
    if (!t.energies.emplace(s, v.get<double>()).second)
      throw ValidationError("duplicate increment table key '" + k + "'");
  }
  return t;
}

json increments_to_json(const std::map<Subset, double>& increments) {
  json j = json::object();
  for (const auto& [s, e] : increments) j[subset_key(s)] = e;
  return j;
}

json to_json(const IncrementTable& t) { return increments_to_json(t.energies); }

Link link_from_json(const json& j) {
  require_object(j, "link");
  if (!j.contains("staying") || !j.contains("leaving")) throw ValidationError("link needs 'staying' and 'leaving'");
  Link l;
  l.staying = get_or<std::size_t>(j, "staying", 0);
  l.leaving = get_or<std::size_t>(j, "leaving", 0);
  l.factor = get_or(j, "factor", 1.0);
  l.cap_element = get_or<std::string>(j, "cap", "H");
  return l;
}

FragmentSpec fragment_spec_from_json(const json& j) {
  require_object(j, "fragment");
  FragmentSpec f;
  f.selected_atoms = get_or<std::vector<std::size_t>>(j, "selected_atoms", {});
  if (j.contains("broken_links")) {
    if (!j["broken_links"].is_array()) throw ValidationError("broken_links must be a list");
    for (const auto& l : j["broken_links"]) f.broken_links.push_back(link_from_json(l));
  }
  f.charge = get_or(j, "charge", 0);
  f.spin = get_or(j, "spin", 0);
  if (!j.contains("solver_low") || !j["solver_low"].is_string()) throw ValidationError("fragment needs 'solver_low'");
  f.solver_low = j["solver_low"].get<std::string>();
  if (j.contains("options_low")) f.options_low = j["options_low"];
  if (j.contains("solver_high") && !j["solver_high"].is_null()) {
    if (!j["solver_high"].is_string()) throw ValidationError("solver_high must be a string");
    f.solver_high = j["solver_high"].get<std::string>();
  }
  if (j.contains("options_high")) f.options_high = j["options_high"];
  return f;
}

json to_json(const BootstrapReport& r) {
  return json{{"mean", r.mean}, {"stdev", r.stdev}, {"n_resamples", r.n_resamples}, {"seed", r.seed}};
}

namespace {

void write_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

double read_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_rdm_binary(const fs::path& path, const Eigen::MatrixXd& m, std::string_view convention,
                      bool as_four_index) {
  json header{{"dtype", "float64"}, {"order", "row-major"}, {"convention", convention}};
  if (as_four_index) {
    const auto n = static_cast<long>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
    if (n * n != m.rows() || m.rows() != m.cols()) throw ValidationError("2-RDM must be n^2 x n^2");
    header["shape"] = {n, n, n, n};
  } else {
    header["shape"] = {m.rows(), m.cols()};
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << header.dump() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) write_le(out, m(r, c));
}

Eigen::MatrixXd read_rdm_binary(const fs::path& path, json* header_out) {
  const std::string data = read_file(path);
  const auto nl = data.find('\n');
  if (nl == std::string::npos) throw ValidationError(path.string() + ": missing RDM header line");
  json header;
  try {
    header = json::parse(data.substr(0, nl));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": bad RDM header: " + e.what());
  }
  if (header.value("dtype", "") != "float64" || !header.contains("shape") || !header["shape"].is_array())
    throw ValidationError(path.string() + ": RDM header needs float64 dtype and a shape");
  std::vector<long> shape;
  for (const auto& s : header["shape"]) shape.push_back(s.get<long>());
  long rows = 0, cols = 0;
  if (shape.size() == 2) {
    rows = shape[0];
    cols = shape[1];
  } else if (shape.size() == 4) {
    rows = shape[0] * shape[1];
    cols = shape[2] * shape[3];
  } else {
    throw ValidationError(path.string() + ": RDM shape must have 2 or 4 entries");
  }
  const std::size_t expected = static_cast<std::size_t>(rows * cols) * 8;
  if (data.size() - nl - 1 != expected) throw ValidationError(path.string() + ": RDM payload size mismatch");
  const auto* p = reinterpret_cast<const unsigned char*>(data.data() + nl + 1);
  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c, p += 8) m(r, c) = read_le(p);
  if (header_out) *header_out = header;
  return m;
}

}  // namespace fermiforge
