// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "fermiforge/circuit.hpp"

namespace fermiforge {

/**
 * OpenQASM 2.0 text with one register `q` sized to the circuit width, plus
 * `creg c` when the circuit measures. One statement per line; angles use 17
 * significant digits. Throws UnsupportedGateError for gates outside
 * supported_gates().at("qasm") and UnboundParameterError for symbols.
 */
std::string to_qasm(const Circuit& c);

/**
 * Parses the subset emitted by to_qasm: the OPENQASM 2.0 header, qelib1
 * include, one qreg, creg, the gates h x y z s sdg t tdg rx ry rz cx cz swap,
 * measure and barrier (ignored). Angles may be arithmetic in numbers and pi.
 * Errors are ValidationError messages prefixed with "line N:".
 */
Circuit from_qasm(std::string_view text);

}  // namespace fermiforge
