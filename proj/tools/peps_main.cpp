// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "peps/cli.hpp"

int main(int argc, char** argv) { return peps::cli::run(argc, argv, std::cout, std::cerr); }
