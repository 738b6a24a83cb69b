// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/fragmentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "fermiforge/dense.hpp"
#include "fermiforge/errors.hpp"
#include "fermiforge/io.hpp"

namespace fermiforge {

namespace {

constexpr std::string_view kElements[] = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",  "S",
    "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge",
    "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd",
    "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd",
    "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm",
    "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn",
    "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_number(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<Atom> parse_atom_row(const std::vector<std::string_view>& t) {
  if (t.size() != 4) return std::nullopt;
  Atom a;
  a.element = std::string(t[0]);
  for (int k = 0; k < 3; ++k)
    if (!parse_number(t[k + 1], a.position[k])) return std::nullopt;
  return a;
}

}  // namespace

bool is_element_symbol(std::string_view symbol) {
  return std::find(std::begin(kElements), std::end(kElements), symbol) != std::end(kElements);
}

Geometry parse_xyz(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  while (!lines.empty() && tokens(lines.back()).empty()) lines.pop_back();

  std::size_t first = 0;
  std::optional<std::size_t> declared;
  if (!lines.empty()) {
    const auto t = tokens(lines[0]);
    std::size_t count = 0;
    if (t.size() == 1) {
      const auto [ptr, ec] = std::from_chars(t[0].data(), t[0].data() + t[0].size(), count);
      if (ec == std::errc() && ptr == t[0].data() + t[0].size()) {
        declared = count;
        first = std::min<std::size_t>(2, lines.size());
      }
    }
  }

  Geometry g;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto t = tokens(lines[i]);
    const auto where = "xyz line " + std::to_string(i + 1);
    if (t.empty()) throw ValidationError(where + ": blank line inside the atom block");
    auto atom = parse_atom_row(t);
    if (!atom) throw ValidationError(where + ": expected 'Element x y z'");
    if (!is_element_symbol(atom->element)) throw ValidationError(where + ": unknown element '" + atom->element + "'");
    for (double x : atom->position)
      if (!std::isfinite(x)) throw ValidationError(where + ": coordinates must be finite");
    g.atoms.push_back(std::move(*atom));
  }
  if (declared && *declared != g.atoms.size())
    throw ValidationError("xyz header declares " + std::to_string(*declared) + " atoms but " +
                          std::to_string(g.atoms.size()) + " follow");
  return g;
}

std::string to_xyz(const Geometry& g, std::string_view comment) {
  std::ostringstream os;
  os << g.atoms.size() << '\n' << comment << '\n';
  for (const auto& a : g.atoms)
    os << a.element << ' ' << format_real(a.position[0]) << ' ' << format_real(a.position[1]) << ' '
       << format_real(a.position[2]) << '\n';
  return os.str();
}

std::array<double, 3> link_cap_position(const Geometry& g, const Link& link) {
  if (link.staying >= g.size() || link.leaving >= g.size())
    throw ValidationError("link atom index out of range");
  if (link.staying == link.leaving) throw ValidationError("link atoms must be distinct");
  if (!(link.factor > 0.0 && link.factor <= 1.0)) throw ValidationError("link factor must lie in (0, 1]");
  const auto& a = g.atoms[link.staying].position;
  const auto& b = g.atoms[link.leaving].position;
  return {a[0] + link.factor * (b[0] - a[0]), a[1] + link.factor * (b[1] - a[1]),
          a[2] + link.factor * (b[2] - a[2])};
}

namespace {

std::set<std::size_t> checked_selection(const Geometry& g, const FragmentSpec& f) {
  std::set<std::size_t> sel;
  for (auto i : f.selected_atoms) {
    if (i >= g.size()) throw ValidationError("selected atom " + std::to_string(i) + " out of range");
    if (!sel.insert(i).second) throw ValidationError("atom " + std::to_string(i) + " selected twice");
  }
  for (const auto& l : f.broken_links) {
    if (!is_element_symbol(l.cap_element)) throw ValidationError("unknown cap element '" + l.cap_element + "'");
    link_cap_position(g, l);
    if (!sel.count(l.staying))
      throw ValidationError("link staying atom " + std::to_string(l.staying) + " is not selected");
    if (sel.count(l.leaving))
      throw ValidationError("link leaving atom " + std::to_string(l.leaving) + " is selected");
  }
  return sel;
}

}  // namespace

Geometry build_capped_fragment(const Geometry& g, const FragmentSpec& f) {
  if (f.is_whole_system()) {
    Geometry whole = g;
    whole.charge = f.charge;
    whole.spin = f.spin;
    return whole;
  }
  checked_selection(g, f);
  Geometry out;
  out.charge = f.charge;
  out.spin = f.spin;
  for (auto i : f.selected_atoms) out.atoms.push_back(g.atoms[i]);
  for (const auto& l : f.broken_links) out.atoms.push_back({l.cap_element, link_cap_position(g, l)});
  return out;
}

Geometry build_capped_complement(const Geometry& g, const FragmentSpec& f) {
  const auto sel = checked_selection(g, f);
  Geometry out;
  out.charge = g.charge;
  out.spin = g.spin;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!sel.count(i)) out.atoms.push_back(g.atoms[i]);
  for (const auto& l : f.broken_links) {
    Link swapped{l.leaving, l.staying, l.factor, l.cap_element};
    out.atoms.push_back({l.cap_element, link_cap_position(g, swapped)});
  }
  return out;
}

double oniom_energy(double e_all_low, const std::vector<std::pair<double, double>>& fragment_pairs) {
  double e = e_all_low;
  for (const auto& [high, low] : fragment_pairs) e += high - low;
  return e;
}

void SolverRegistry::add(std::string name, FragmentSolver solver) {
  solvers_[std::move(name)] = std::move(solver);
}

bool SolverRegistry::contains(std::string_view name) const { return solvers_.find(name) != solvers_.end(); }

const FragmentSolver& SolverRegistry::get(std::string_view name) const {
  const auto it = solvers_.find(name);
  if (it == solvers_.end()) throw ValidationError("unregistered solver '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> SolverRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : solvers_) out.push_back(k);
  return out;
}

SolverRegistry SolverRegistry::with_builtins(std::string base_dir) {
  SolverRegistry r;
  const std::filesystem::path base = base_dir;
  auto resolve = [base](const json& v) {
    if (!v.is_string()) throw ValidationError("solver file option must be a string");
    std::filesystem::path p = v.get<std::string>();
    return p.is_absolute() ? p : base / p;
  };

  r.add("stub", [](const Geometry& g, const json& opts) {
    if (opts.contains("energy")) {
      if (!opts["energy"].is_number()) throw ValidationError("stub 'energy' must be a number");
      return SolverOutput{opts["energy"].get<double>(), std::nullopt};
    }
    if (opts.contains("atomic_energies")) {
      const auto& table = opts["atomic_energies"];
      if (!table.is_object()) throw ValidationError("stub 'atomic_energies' must be an object");
      double e = 0.0;
      for (const auto& a : g.atoms) {
        if (!table.contains(a.element) || !table[a.element].is_number())
          throw ValidationError("stub solver has no energy for element " + a.element);
        e += table[a.element].get<double>();
      }
      return SolverOutput{e, std::nullopt};
    }
    throw ValidationError("stub solver needs 'energy' or 'atomic_energies'");
  });

  r.add("exact_diag", [resolve](const Geometry&, const json& opts) {
    if (!opts.contains("operator_file")) throw ValidationError("exact_diag solver needs 'operator_file'");
    return SolverOutput{exact_ground_energy(read_qubit_operator(resolve(opts["operator_file"]))), std::nullopt};
  });

  r.add("vqe", [resolve, base](const Geometry&, const json& opts) {
    VQEConfig cfg;
    if (opts.contains("config_file")) {
      const auto path = resolve(opts["config_file"]);
      cfg = vqe_config_from_json(read_json(path), path.parent_path());
    } else if (opts.contains("config")) {
      cfg = vqe_config_from_json(opts["config"], base);
    } else {
      throw ValidationError("vqe solver needs 'config_file' or 'config'");
    }
    VQESolver solver(std::move(cfg));
    solver.build();
    const double e = solver.simulate();
    return SolverOutput{e, solver.get_resources()};
  });
  return r;
}

OniomResult run_oniom(const Geometry& g, const std::vector<FragmentSpec>& fragments,
                      const SolverRegistry& registry) {
  const auto whole = std::count_if(fragments.begin(), fragments.end(),
                                   [](const FragmentSpec& f) { return f.is_whole_system(); });
  if (whole != 1) throw ValidationError("ONIOM needs exactly one whole-system fragment, got " + std::to_string(whole));

  OniomResult out;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < fragments.size(); ++i) {
    const auto& f = fragments[i];
    const auto& low = registry.get(f.solver_low);
    const FragmentSolver* high = f.solver_high ? &registry.get(*f.solver_high) : nullptr;
    const Geometry geom = build_capped_fragment(g, f);

    FragmentResult fr;
    fr.index = i;
    const auto low_out = low(geom, f.options_low);
    fr.e_low = low_out.energy;
    if (f.is_whole_system()) {
      out.e_all_low = fr.e_low;
    } else if (high) {
      const auto high_out = (*high)(geom, f.options_high);
      fr.e_high = high_out.energy;
      fr.resources = high_out.resources;
      if (fr.resources) out.resources.push_back(*fr.resources);
      pairs.emplace_back(high_out.energy, fr.e_low);
    }
    out.fragments.push_back(std::move(fr));
  }
  out.energy = oniom_energy(out.e_all_low, pairs);
  return out;
}

std::string subset_key(const Subset& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  if (s.size() == 1) out += ',';
  return out + ")";
}

Subset parse_subset_key(std::string_view key) {
  const auto bad = [&] { return ValidationError("invalid subset key '" + std::string(key) + "'"); };
  if (key.size() < 2 || key.front() != '(' || key.back() != ')') throw bad();
  key = key.substr(1, key.size() - 2);
  Subset out;
  while (!key.empty()) {
    const auto comma = key.find(',');
    auto tok = key.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    key = comma == std::string_view::npos ? std::string_view{} : key.substr(comma + 1);
    if (tok.empty()) {
      if (key.empty() && !out.empty()) break;
      throw bad();
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0) throw bad();
    out.push_back(v);
  }
  if (out.empty()) throw bad();
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw bad();
  return out;
}

std::size_t IncrementTable::order() const {
  std::size_t k = 0;
  for (const auto& [s, e] : energies) k = std::max(k, s.size());
  return k;
}

std::map<Subset, double> mi_increments(const IncrementTable& table) {
  std::vector<Subset> subsets;
  for (const auto& [s, e] : table.energies) {
    if (s.empty()) throw ValidationError("increment table contains the empty subset");
    subsets.push_back(s);
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const Subset& a, const Subset& b) { return a.size() < b.size(); });

  std::map<Subset, double> eps;
  for (const auto& s : subsets) {
    const std::size_t k = s.size();
    double value = table.energies.at(s);
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      Subset t;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) t.push_back(s[i]);
      const auto it = eps.find(t);
      if (it == eps.end()) throw ValidationError("increment table is missing subset " + subset_key(t));
      value -= it->second;
    }
    eps[s] = value;
  }
  return eps;
}

Recombination mi_recombine(const std::map<Subset, double>& increments, std::size_t k) {
  std::size_t max_order = 0;
  for (const auto& [s, e] : increments) max_order = std::max(max_order, s.size());
  Recombination r;
  r.order = k == 0 ? max_order : k;
  for (const auto& [s, e] : increments) {
    if (s.size() <= r.order)
      r.energy += e;
    else
      r.truncation_error += e;
  }
  return r;
}

}  // namespace fermiforge
