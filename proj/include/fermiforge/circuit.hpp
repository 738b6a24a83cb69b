// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fermiforge {

/// Gate parameter: absent, a numeric angle (radians), or a free symbol that
/// must be bound before simulation or translation.
using Parameter = std::variant<std::monostate, double, std::string>;

inline bool has_value(const Parameter& p) { return !std::holds_alternative<std::monostate>(p); }
inline bool is_symbolic(const Parameter& p) { return std::holds_alternative<std::string>(p); }

/// Shortest round-trip decimal, with a trailing ".0" on integral values
/// (777.0 rather than 777).
std::string format_real(double x);

/**
 * A single gate. Names are stored uppercase; any name is accepted here and
 * only rejected by the simulator or a translator that does not know it.
 *
 * Invariants (checked by make_gate): targets nonempty, all indices
 * non-negative, targets and controls pairwise disjoint.
 */
struct Gate {
  std::string name;
  std::vector<int> targets;
  std::vector<int> controls;
  Parameter parameter;
  bool is_variational = false;

  /// Largest qubit index touched, or -1 for a malformed gate.
  int max_qubit() const;
  std::size_t n_qubits() const { return targets.size() + controls.size(); }

  /// Numeric parameter; throws UnboundParameterError for symbols and
  /// ValidationError when absent.
  double angle() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Builds and validates a gate. Throws ValidationError on negative,
/// duplicated or overlapping indices.
Gate make_gate(std::string_view name, std::vector<int> targets,
               std::vector<int> controls = {}, Parameter parameter = {},
               bool is_variational = false);

/// Layout: `NAME      target : t   control : c   parameter : p\t (variational)`.
std::string to_string(const Gate& g);
std::ostream& operator<<(std::ostream& os, const Gate& g);

/// Inverse of one gate. Throws UnsupportedInverseError for gates without an
/// inverse rule (MEASURE, unknown names) and UnboundParameterError when a
/// rotation still carries a symbol.
Gate inverse(const Gate& g);

/**
 * Ordered list of gates with an optional declared width.
 *
 * width() = max(declared width, 1 + largest qubit index used). Equality is
 * syntactic: same gate list (exact parameter equality) and same width.
 */
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::vector<Gate> gates, std::optional<std::size_t> width = {});

  void add_gate(Gate g);

  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  std::optional<std::size_t> declared_width() const { return declared_width_; }
  void set_declared_width(std::optional<std::size_t> w) { declared_width_ = w; }

  std::size_t size() const { return gates_.size(); }
  std::size_t width() const;
  std::map<std::string, std::size_t> counts() const;
  bool is_variational() const;
  /// Number of gates acting on two or more qubits (targets plus controls).
  std::size_t n_multiqubit_gates() const;
  std::set<int> used_qubits() const;

  /// References to the variational gates, in circuit order. Writing through
  /// them edits this circuit.
  std::vector<std::reference_wrapper<Gate>> variational_gates();
  std::vector<std::reference_wrapper<const Gate>> variational_gates() const;

  /// Sets the variational gate parameters in order. Throws ValidationError
  /// when the count does not match.
  void bind(const std::vector<double>& values);

  friend bool operator==(const Circuit& a, const Circuit& b);

 private:
  std::vector<Gate> gates_;
  std::optional<std::size_t> declared_width_;
};

std::string to_string(const Circuit& c);
std::ostream& operator<<(std::ostream& os, const Circuit& c);

Circuit concat(const Circuit& a, const Circuit& b);
Circuit repeat(const Circuit& c, std::size_t n);
inline Circuit operator+(const Circuit& a, const Circuit& b) { return concat(a, b); }
inline Circuit operator*(const Circuit& c, std::size_t n) { return repeat(c, n); }

/// Reversed gate order with each gate inverted.
Circuit inverse(const Circuit& c);

/// Result of split(): one circuit per independent qubit component, and for
/// each original qubit index its (component, new index), if it is used.
struct SplitResult {
  std::vector<Circuit> parts;
  std::map<int, std::pair<std::size_t, int>> qubit_map;
};

/**
 * Breaks a circuit into non-entangled pieces. Qubits sharing any multi-qubit
 * gate fall in the same component; components are ordered by their smallest
 * original index and reindexed contiguously, preserving relative order.
 */
SplitResult split(const Circuit& c);

/// Side-by-side composition: circuit i is offset by the summed widths of
/// circuits 0..i-1.
Circuit stack(const std::vector<Circuit>& circuits);

/// Copy of `c` with every qubit index i replaced by map(i).
Circuit remap_qubits(const Circuit& c, const std::function<int(int)>& map,
                     std::optional<std::size_t> width = {});

/// Gate names understood by each backend.
const std::map<std::string, std::set<std::string>>& supported_gates();

}  // namespace fermiforge
