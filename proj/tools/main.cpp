// Copyright 2026 The brg Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "brg_cli.hpp"

int main(int argc, char** argv) { return brg::cli::run(argc, argv, std::cout, std::cerr); }
