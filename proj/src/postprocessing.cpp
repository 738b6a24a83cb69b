// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermiforge/postprocessing.hpp"

#include <algorithm>
#include <numeric>

#include "fermiforge/measurement.hpp"

namespace fermiforge {

namespace {

int spin_of(int p) { return p % 2; }

enum class Shape { Constant, OneBody, TwoBody };

Shape shape_of(const LadderSequence& seq) {
  if (seq.empty()) return Shape::Constant;
  if (seq.size() == 2 && seq[0].creation && !seq[1].creation) return Shape::OneBody;
  if (seq.size() == 4 && seq[0].creation && seq[1].creation && !seq[2].creation && !seq[3].creation)
    return Shape::TwoBody;
  throw ValidationError("RDM terms must have the form 'p^ q' or 'p^ q^ r s', got '" + to_string(seq) + "'");
}

MappingConfig resolved(const MappingConfig& mapping, const FermionOperator& terms) {
  MappingConfig m = mapping;
  if (m.n_spinorbitals <= 0) m.n_spinorbitals = terms.n_modes();
  return m;
}

}  // namespace

FermionOperator rdm_terms(int n) {
  if (n < 1) throw ValidationError("rdm_terms needs at least one spin-orbital");
  FermionOperator out;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (spin_of(p) == spin_of(q)) out.add_term({{p, true}, {q, false}}, 1.0);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (p == q || r == s) continue;
          if (spin_of(p) + spin_of(q) != spin_of(r) + spin_of(s)) continue;
          out.add_term({{p, true}, {q, true}, {r, false}, {s, false}}, 1.0);
        }
  return out;
}

QubitOperator rdm_measurement_operator(const FermionOperator& terms, const MappingConfig& mapping) {
  const auto m = resolved(mapping, terms);
  QubitOperator out;
  for (const auto& [seq, c] : terms.terms()) {
    if (shape_of(seq) == Shape::Constant) continue;
    const auto image = fermion_to_qubit_mapping(FermionOperator(seq, 1.0), m);
    for (const auto& [w, coeff] : image.terms())
      if (!w.is_identity() && coeff.real() != 0.0 && out.coefficient(w) == Complex(0.0))
        out.add_term(w, coeff);
  }
  return out;
}

RDMPair rdms_from_expectations(const FermionOperator& terms, const MappingConfig& mapping,
                               const std::map<PauliWord, double>& expectations) {
  const auto m = resolved(mapping, terms);
  const int n = m.n_spinorbitals;
  RDMPair out;
  out.one_rdm = Eigen::MatrixXd::Zero(n, n);
  out.two_rdm = Eigen::MatrixXd::Zero(n * n, n * n);
  out.n_electrons = m.n_electrons;
  for (const auto& [seq, c] : terms.terms()) {
    const Shape shape = shape_of(seq);
    if (shape == Shape::Constant) continue;
    for (const auto& l : seq)
      if (l.index >= n) throw ValidationError("RDM term '" + to_string(seq) + "' exceeds the orbital count");
    const auto image = fermion_to_qubit_mapping(FermionOperator(seq, 1.0), m);
    double value = 0.0;
    for (const auto& [w, coeff] : image.terms()) {
      if (coeff.real() == 0.0) continue;
      if (w.is_identity()) {
        value += coeff.real();
        continue;
      }
      const auto it = expectations.find(w);
      if (it == expectations.end())
        throw ValidationError("missing expectation value for Pauli word " + w.to_string());
      value += coeff.real() * it->second;
    }
    if (shape == Shape::OneBody)
      out.one_rdm(seq[0].index, seq[1].index) = value;
    else
      out.two(seq[0].index, seq[1].index, seq[3].index, seq[2].index) = value;
  }
  return out;
}

RDMPair rdms_from_statevector(const FermionOperator& terms, const MappingConfig& mapping,
                              const Statevector& psi) {
  std::map<PauliWord, double> ev;
  const auto words = rdm_measurement_operator(terms, mapping);
  for (const auto& [w, c] : words.terms())
    ev[w] = psi.expectation(w).real();
  return rdms_from_expectations(terms, mapping, ev);
}

double energy_from_rdms(const FermionOperator& hamiltonian, const RDMPair& rdms) {
  const int n = rdms.n_orbitals();
  double e = 0.0;
  for (const auto& [seq, c] : hamiltonian.terms()) {
    const Shape shape = shape_of(seq);
    for (const auto& l : seq)
      if (l.index >= n) throw ValidationError("Hamiltonian term '" + to_string(seq) + "' exceeds the RDM size");
    switch (shape) {
      case Shape::Constant: e += c.real(); break;
      case Shape::OneBody: e += c.real() * rdms.one_rdm(seq[0].index, seq[1].index); break;
      case Shape::TwoBody:
        e += c.real() * rdms.two(seq[0].index, seq[1].index, seq[3].index, seq[2].index);
        break;
    }
  }
  return e;
}

RDMPair mcweeny_purify_2rdm(const Eigen::MatrixXd& two_rdm, int n_electrons, double conv,
                            int max_iterations) {
  if (n_electrons != 2)
    throw ValidationError("McWeeny 2-RDM purification is limited to two electrons, got " +
                          std::to_string(n_electrons));
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(two_rdm.rows()))));
  if (two_rdm.rows() != two_rdm.cols() || n * n != two_rdm.rows())
    throw ValidationError("2-RDM must be an n^2 x n^2 matrix");
  const auto purified = mcweeny_purify(two_rdm / 2.0, conv, max_iterations);
  RDMPair out;
  out.n_electrons = n_electrons;
  out.two_rdm = 2.0 * purified.matrix;
  out.one_rdm = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < n; ++r) {
      double s = 0.0;
      for (int q = 0; q < n; ++q) s += out.two(p, q, r, q);
      out.one_rdm(p, r) = s / (n_electrons - 1);
    }
  return out;
}

Histogram resample_frequencies(const Histogram& freqs, std::uint64_t n_shots, Xoshiro256& rng) {
  if (n_shots == 0) throw ValidationError("n_shots must be at least 1");
  validate_histogram(freqs);
  std::vector<std::string> keys;
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& [k, v] : freqs) {
    if (v <= 0.0) continue;
    acc += v;
    keys.push_back(k);
    cdf.push_back(acc);
  }
  std::vector<std::uint64_t> counts(keys.size(), 0);
  for (std::uint64_t i = 0; i < n_shots; ++i) {
    const double u = rng.uniform01() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  Histogram out;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (counts[i]) out[keys[i]] = static_cast<double>(counts[i]) / static_cast<double>(n_shots);
  return out;
}

SeriesStats series_stats(const std::vector<double>& series) {
  if (series.size() < 2) throw ValidationError("standard deviation needs at least two values");
  const double n = static_cast<double>(series.size());
  SeriesStats s;
  s.mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : series) ss += (x - s.mean) * (x - s.mean);
  s.stdev = std::sqrt(ss / (n - 1.0));
  return s;
}

double pooled_expectation(const PauliWord& term,
                          const std::vector<std::pair<Histogram, std::uint64_t>>& sources) {
  double num = 0.0, den = 0.0;
  for (const auto& [hist, shots] : sources) {
    num += static_cast<double>(shots) * expectation_from_frequencies_oneterm(term, hist);
    den += static_cast<double>(shots);
  }
  if (den == 0.0) throw ValidationError("pooled expectation needs at least one shot");
  return num / den;
}

double richardson_extrapolate(const std::vector<double>& scales, const std::vector<double>& values) {
  if (scales.empty() || scales.size() != values.size())
    throw ValidationError("extrapolation needs matching, nonempty scale and value lists");
  double out = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < scales.size(); ++j) {
      if (i == j) continue;
      if (scales[i] == scales[j]) throw ValidationError("extrapolation scales must be distinct");
      w *= scales[j] / (scales[j] - scales[i]);
    }
    out += w * values[i];
  }
  return out;
}

Circuit fold_gates(const Circuit& c, int scale) {
  if (scale < 1 || scale % 2 == 0) throw ValidationError("fold scale must be a positive odd integer");
  Circuit out({}, c.declared_width());
  for (const Gate& g : c.gates()) {
    out.add_gate(g);
    if (g.name == "MEASURE") continue;
    const Gate inv = inverse(g);
    for (int k = 0; k < (scale - 1) / 2; ++k) {
      out.add_gate(inv);
      out.add_gate(g);
    }
  }
  return out;
}

std::map<PauliWord, double> expectations_from_histograms(const QubitOperator& words,
                                                         const std::map<PauliWord, Histogram>& histograms) {
  std::map<PauliWord, double> out;
  for (const auto& [w, c] : words.terms()) {
    if (w.is_identity()) continue;
    const auto it = std::find_if(histograms.begin(), histograms.end(),
                                 [&](const auto& kv) { return measurable_in(w, kv.first); });
    if (it == histograms.end())
      throw ValidationError("no measured basis determines Pauli word " + w.to_string());
    out[w] = expectation_from_frequencies_oneterm(w, it->second);
  }
  return out;
}

namespace {

struct PipelineTerms {
  FermionOperator terms;
  QubitOperator words;
};

PipelineTerms pipeline_terms(const BootstrapSpec& spec) {
  MappingConfig m = resolved(spec.mapping, spec.hamiltonian);
  PipelineTerms out;
  out.terms = rdm_terms(m.n_spinorbitals);
  out.words = rdm_measurement_operator(out.terms, m);
  return out;
}

double pipeline_energy(const BootstrapSpec& spec, const PipelineTerms& t,
                       const std::map<PauliWord, Histogram>& histograms) {
  MappingConfig m = resolved(spec.mapping, spec.hamiltonian);
  auto rdms = rdms_from_expectations(t.terms, m, expectations_from_histograms(t.words, histograms));
  if (spec.purify) rdms = mcweeny_purify_2rdm(rdms.two_rdm, m.n_electrons, spec.conv);
  return energy_from_rdms(spec.hamiltonian, rdms);
}

}  // namespace

double energy_from_histograms(const BootstrapSpec& spec, const std::map<PauliWord, Histogram>& histograms) {
  return pipeline_energy(spec, pipeline_terms(spec), histograms);
}

BootstrapReport bootstrap_energy(const BootstrapSpec& spec) {
  if (spec.n_shots == 0) throw ValidationError("bootstrap needs n_shots >= 1");
  if (spec.n_resamples < 2) throw ValidationError("bootstrap needs at least two resamples");
  if (spec.histograms.empty()) throw ValidationError("bootstrap needs at least one histogram");
  const auto t = pipeline_terms(spec);
  BootstrapReport report;
  report.n_resamples = spec.n_resamples;
  report.seed = spec.seed;
  for (std::size_t i = 0; i < spec.n_resamples; ++i) {
    Xoshiro256 rng(derive_seed(spec.seed, "bootstrap", i));
    std::map<PauliWord, Histogram> resampled;
    for (const auto& [basis, hist] : spec.histograms)
      resampled.emplace(basis, resample_frequencies(hist, spec.n_shots, rng));
    report.energies.push_back(pipeline_energy(spec, t, resampled));
  }
  const auto stats = series_stats(report.energies);
  report.mean = stats.mean;
  report.stdev = stats.stdev;
  return report;
}

}  // namespace fermiforge
