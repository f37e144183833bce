// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "impslice/error.hpp"

namespace impslice {

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int parse = 1;
inline constexpr int eval = 2;
inline constexpr int fuel = 3;
inline constexpr int mismatch = 4;
inline constexpr int size = 5;
/// `check` found a law that does not hold.
inline constexpr int law_violated = 6;
} // namespace exit_status

int exit_code(ErrorKind kind);

/// The `impslice` command line; `args[0]` is the program name. Engine work
/// runs on the caller's thread, so callers wrap it in `with_large_stack`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace impslice
