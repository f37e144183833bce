// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "impslice/cli.hpp"
#include "impslice/stack.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return impslice::with_large_stack([&] { return impslice::run_cli(args, std::cout, std::cerr); });
}
