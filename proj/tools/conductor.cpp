// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include <iostream>

#include "conductor/cli/cli.hpp"

int main(int argc, char** argv) { return conductor::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
