// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "impslice/ast.hpp"

namespace impslice {

// Concrete syntax. Holes are written `_`; `#` starts a line comment. All
// parsers throw ParseError (or Error(duplicate_variable) for states).

Command parse_command(std::string_view text);
PartialCommand parse_partial_command(std::string_view text);
ArithExpr parse_arith(std::string_view text);
PartialArith parse_partial_arith(std::string_view text);
BoolExpr parse_bool(std::string_view text);
PartialBool parse_partial_bool(std::string_view text);
State parse_state(std::string_view text);
PartialState parse_partial_state(std::string_view text);

/// Half-open character range into a rendered text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool operator==(const Span&) const = default;
};

// Single-line canonical rendering; parses back to the same term.
std::string render(const ArithExpr& a);
std::string render(const PartialArith& a);
std::string render(const BoolExpr& b);
std::string render(const PartialBool& b);
std::string render(const Command& c);
std::string render(const PartialCommand& c);
std::string render(const State& s);
std::string render(const PartialState& s);
std::string render(const PartialNat& v);

/// Indented multi-line rendering, one statement per line.
std::string render_pretty(const Command& c);
std::string render_pretty(const PartialCommand& c);

/// Pretty rendering of `c` plus the span of every syntax node, indexed in
/// preorder (command, then its children left to right, expressions included).
struct RenderedProgram {
    std::string text;
    std::vector<Span> node_spans;
};
RenderedProgram render_with_spans(const Command& c);

} // namespace impslice
