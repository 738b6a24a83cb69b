// Copyright 2026 The fermiforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "fermiforge/cli.hpp"

int main(int argc, char** argv) { return fermiforge::cli_main(argc, argv, std::cout, std::cerr); }
