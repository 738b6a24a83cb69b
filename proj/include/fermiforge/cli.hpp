// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <ostream>

#include "fermiforge/circuit.hpp"

namespace fermiforge {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRuntime = 2 };

/// Circuit from a `.qasm` file (or any file starting with OPENQASM) or from
/// circuit JSON.
Circuit read_circuit(const std::filesystem::path& path);

/**
 * Entry point of the `fermiforge` tool. Results go to `out` (or to the
 * --output file), diagnostics to `err`. Returns kExitOk, kExitValidation
 * for bad input (including usage errors) or kExitRuntime otherwise.
 */
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fermiforge
