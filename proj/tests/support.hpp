// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "impslice/ast.hpp"
#include "impslice/encoding.hpp"
#include "impslice/lattice.hpp"
#include "impslice/syntax.hpp"
#include "impslice/trace.hpp"

namespace impslice::testing {

// Worked examples: a conditional, integer division and a single assignment.
namespace worked {

inline const char* const intro_text = "if (y = 1) then { y := x + 1 } else { y := y + 1 } ; z := z + 1";
inline const char* const intro_input_text = "x = 1, y = 0, z = 2";
inline const char* const division_text =
    "r := a;\n"
    "while (b <= r) do {\n"
    "  q := q + 1;\n"
    "  r := r - b\n"
    "};\n"
    "if (!(r = 0)) then { res := 0 } else { res := 1 }\n";
inline const char* const division_input_text = "q = 0, r = 0, res = 0, a = 4, b = 2";
inline const char* const division_slice_text =
    "r := a; while (b <= r) do { _ ; r := r - b }; if (!(r = 0)) then { _ } else { res := 1 }";
inline const char* const assignment_text = "z := x + y";
inline const char* const assignment_input_text = "w = 0, x = 1, y = 2, z = 42";

inline Derivation intro() { return eval_cmd(parse_state(intro_input_text), parse_command(intro_text)); }
inline Derivation division() { return eval_cmd(parse_state(division_input_text), parse_command(division_text)); }
inline Derivation assignment() { return eval_cmd(parse_state(assignment_input_text), parse_command(assignment_text)); }

} // namespace worked

/// Seeded generator of random terms over a fixed set of variable names.
class Generator {
  public:
    explicit Generator(std::uint64_t seed, std::vector<std::string> vars = {"x", "y", "z"})
        : rng_(seed), vars_(std::move(vars)) {}

    std::mt19937_64& rng() { return rng_; }

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    ArithExpr arith(int depth) {
        if (depth <= 1 || chance(0.3)) {
            return chance(0.5) ? ArithExpr::nat(below(10)) : ArithExpr::var(vars_[below(vars_.size())]);
        }
        const ArithOp op = std::array{ArithOp::add, ArithOp::sub, ArithOp::mul}[below(3)];
        auto lhs = arith(depth - 1);
        return ArithExpr::binary(op, std::move(lhs), arith(depth - 1));
    }

    BoolExpr boolean(int depth) {
        if (depth <= 1 || chance(0.2)) {
            return BoolExpr::literal(chance(0.5));
        }
        switch (below(4)) {
        case 0: {
            auto lhs = arith(depth - 1);
            return BoolExpr::compare(CmpOp::eq, std::move(lhs), arith(depth - 1));
        }
        case 1: {
            auto lhs = arith(depth - 1);
            return BoolExpr::compare(CmpOp::leq, std::move(lhs), arith(depth - 1));
        }
        case 2:
            return BoolExpr::negation(boolean(depth - 1));
        default: {
            auto lhs = boolean(depth - 1);
            return BoolExpr::conjunction(std::move(lhs), boolean(depth - 1));
        }
        }
    }

    /// Loops are bounded by construction (a counter variable `k` that only
    /// the loop touches) when `loops` is set.
    Command command(int depth, bool loops = false) {
        if (depth <= 1 || chance(0.25)) {
            return chance(0.2) ? Command::skip() : Command::assign(vars_[below(vars_.size())], arith(2));
        }
        switch (below(loops ? 4 : 3)) {
        case 0:
        case 1: {
            auto first = command(depth - 1, loops);
            return Command::seq(std::move(first), command(depth - 1, loops));
        }
        case 2: {
            auto cond = boolean(2);
            auto then_branch = command(depth - 1, loops);
            return Command::if_then_else(std::move(cond), std::move(then_branch), command(depth - 1, loops));
        }
        default: {
            // k := 0; while (k <= n) do { body; k := k + 1 }
            auto body = Command::seq(command(depth - 1, false),
                                     Command::assign("k", ArithExpr::binary(ArithOp::add, ArithExpr::var("k"), ArithExpr::nat(1))));
            auto loop = Command::while_do(BoolExpr::compare(CmpOp::leq, ArithExpr::var("k"), ArithExpr::nat(below(3))),
                                          std::move(body));
            return Command::seq(Command::assign("k", ArithExpr::nat(0)), std::move(loop));
        }
        }
    }

    // The `shallow_*` generators bound the height of the whole syntax tree,
    // expressions included: a term of height 1 is a single node.
    ArithExpr shallow_arith(int height) {
        if (height <= 1 || chance(0.3)) {
            return chance(0.5) ? ArithExpr::nat(below(10)) : ArithExpr::var(vars_[below(vars_.size())]);
        }
        const ArithOp op = std::array{ArithOp::add, ArithOp::sub, ArithOp::mul}[below(3)];
        auto lhs = shallow_arith(height - 1);
        return ArithExpr::binary(op, std::move(lhs), shallow_arith(height - 1));
    }

    BoolExpr shallow_bool(int height) {
        if (height <= 2 || chance(0.2)) {
            if (height >= 2 && chance(0.6)) {
                auto lhs = shallow_arith(height - 1);
                return BoolExpr::compare(chance(0.5) ? CmpOp::eq : CmpOp::leq, std::move(lhs), shallow_arith(height - 1));
            }
            return BoolExpr::literal(chance(0.5));
        }
        switch (below(3)) {
        case 0: {
            auto lhs = shallow_arith(height - 1);
            return BoolExpr::compare(chance(0.5) ? CmpOp::eq : CmpOp::leq, std::move(lhs), shallow_arith(height - 1));
        }
        case 1:
            return BoolExpr::negation(shallow_bool(height - 1));
        default: {
            auto lhs = shallow_bool(height - 1);
            return BoolExpr::conjunction(std::move(lhs), shallow_bool(height - 1));
        }
        }
    }

    Command shallow_command(int height) {
        if (height <= 1) {
            return Command::skip();
        }
        if (height == 2 || chance(0.25)) {
            return chance(0.2) ? Command::skip() : Command::assign(vars_[below(vars_.size())], shallow_arith(height - 1));
        }
        switch (below(4)) {
        case 0:
        case 1: {
            auto first = shallow_command(height - 1);
            return Command::seq(std::move(first), shallow_command(height - 1));
        }
        case 2: {
            auto cond = shallow_bool(height - 1);
            auto then_branch = shallow_command(height - 1);
            return Command::if_then_else(std::move(cond), std::move(then_branch), shallow_command(height - 1));
        }
        default: {
            auto cond = shallow_bool(height - 1);
            return Command::while_do(std::move(cond), shallow_command(height - 1));
        }
        }
    }

    State state() {
        std::vector<State::Entry> entries;
        for (const auto& v : vars_) {
            entries.push_back({v, below(5)});
        }
        return State::from_entries(std::move(entries));
    }

    /// Like `state` plus the loop counter `k`.
    State state_with_counter() {
        std::vector<State::Entry> entries;
        for (const auto& v : vars_) {
            entries.push_back({v, below(5)});
        }
        entries.push_back({"k", 0});
        return State::from_entries(std::move(entries));
    }

  private:
    std::mt19937_64 rng_;
    std::vector<std::string> vars_;
};

/// Cardinality of ↓top counted without the product recurrence or the
/// enumerator: tries every subset of syntax nodes and keeps the prefix-closed
/// ones. Only for programs of at most ~20 nodes.
inline std::uint64_t brute_force_downset_count(const Command& top) {
    const Layout layout(top, {});
    const std::size_t n = layout.program_nodes();
    std::uint64_t count = 0;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
        bool closed = true;
        for (std::size_t node = 0; node < n && closed; ++node) {
            if (((subset >> node) & 1U) == 0) {
                continue;
            }
            const auto parent = layout.parent(node);
            closed = !parent || ((subset >> *parent) & 1U) != 0;
        }
        count += closed ? 1 : 0;
    }
    return count;
}

} // namespace impslice::testing
