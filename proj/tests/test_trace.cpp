// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "impslice/error.hpp"
#include "impslice/stack.hpp"
#include "impslice/syntax.hpp"
#include "impslice/trace.hpp"
#include "support.hpp"

using namespace impslice;

namespace {

Nat value_of(const State& s, const std::string& name) {
    for (const auto& e : s.entries()) {
        if (e.name == name) {
            return e.value;
        }
    }
    FAIL("missing variable " << name);
    return 0;
}

ErrorKind failure(const char* program, const char* state, std::uint64_t fuel = default_fuel) {
    try {
        // Exhausting the default fuel recurses deeper than a default stack.
        with_large_stack([&] { (void)eval_cmd(parse_state(state), parse_command(program), fuel); });
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("evaluation succeeded");
    return ErrorKind::parse;
}

} // namespace

TEST_CASE("expressions") {
    const State s = parse_state("x = 3, y = 5");
    CHECK(eval_aexp(s, parse_arith("x + y * 2")).result() == 13);
    CHECK(eval_aexp(s, parse_arith("x - y")).result() == 0);
    CHECK(eval_aexp(s, parse_arith("y - x")).result() == 2);
    CHECK(eval_bexp(s, parse_bool("x <= y && !(x = y)")).result());
    CHECK(!eval_bexp(s, parse_bool("y <= x")).result());
    // Both conjuncts are evaluated and recorded.
    const BoolTrace t = eval_bexp(s, parse_bool("false && x = 3"));
    CHECK(!t.result());
    const auto& conj = std::get<ConjunctionTrace>(t.node());
    CHECK(conj.rhs.result());
    const ArithTrace read = eval_aexp(s, parse_arith("y"));
    CHECK(std::get<ArithVarTrace>(read.node()).value == 5);
}

TEST_CASE("intro example output and trace shape") {
    const Derivation d = testing::worked::intro();
    CHECK(d.output == parse_state("x = 1, y = 1, z = 3"));
    const auto& seq = std::get<SeqTrace>(d.trace.node());
    const auto& branch = std::get<IfTrace>(seq.first.node());
    CHECK(!branch.taken);
    CHECK(seq.first.state_out() == parse_state("x = 1, y = 1, z = 2"));
    const TraceStats stats = trace_stats(d);
    CHECK(stats.assignments == 2);
    CHECK(stats.branch_decisions == std::vector<bool>{false});
    CHECK(stats.loop_iterations == 0);
    CHECK(render_trace(d.trace) == "if_false (y(0) = 1) else {\n  y := y(0) + 1\n};\nz := z(2) + 1");
}

TEST_CASE("division example") {
    const Derivation d = testing::worked::division();
    CHECK(d.output == parse_state("q = 2, r = 0, res = 1, a = 4, b = 2"));
    const TraceStats stats = trace_stats(d);
    CHECK(stats.loop_iterations == 2);
    CHECK(stats.loop_condition_evaluations == 3);
    CHECK(stats.assignments == 6);
    CHECK(stats.branch_decisions == std::vector<bool>{false});
    CHECK(verify_derivation(d).empty());
}

TEST_CASE("errors") {
    CHECK(failure("x := y", "x = 0") == ErrorKind::unbound_variable);
    CHECK(failure("while (true) do { skip }", "x = 0") == ErrorKind::fuel_exhausted);
    CHECK(failure("x := 1; x := 2", "x = 0", 2) == ErrorKind::fuel_exhausted);
    CHECK(failure("x := 18446744073709551615 + 1", "x = 0") == ErrorKind::arithmetic_overflow);
    CHECK(failure("x := 4294967296 * 4294967296", "x = 0") == ErrorKind::arithmetic_overflow);
    CHECK_NOTHROW((void)eval_cmd(parse_state("x = 0"), parse_command("x := 1; x := 2"), 3));
    CHECK_NOTHROW((void)eval_cmd(parse_state("x = 0"), parse_command("x := 18446744073709551615 - 1")));
}

TEST_CASE("assigning a variable outside the state leaves the state unchanged") {
    const Derivation d = eval_cmd(parse_state("x = 0"), parse_command("y := 1; x := 2"));
    CHECK(d.output == parse_state("x = 2"));
}

TEST_CASE("loops run to completion") {
    const Derivation d = eval_cmd(parse_state("n = 0, k = 0"), parse_command("while (k <= 9) do { n := n + k; k := k + 1 }"));
    CHECK(value_of(d.output, "n") == 45);
    CHECK(value_of(d.output, "k") == 10);
    CHECK(trace_stats(d).loop_iterations == 10);
    CHECK(trace_stats(d).loop_condition_evaluations == 11);
}

TEST_CASE("random programs: determinism, domain preservation, coherent traces") {
    testing::Generator gen(2024);
    int ran = 0;
    for (int i = 0; i < 300; ++i) {
        const Command c = gen.command(5, true);
        const State s = gen.state_with_counter();
        try {
            const Derivation a = eval_cmd(s, c);
            const Derivation b = eval_cmd(s, c);
            ++ran;
            CHECK(a.output == b.output);
            CHECK(trace_stats(a) == trace_stats(b));
            CHECK(render_trace(a.trace) == render_trace(b.trace));
            CHECK(a.output.domain() == s.domain());
            CHECK(verify_derivation(a).empty());
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::arithmetic_overflow);
        }
    }
    CHECK(ran > 250);
}

TEST_CASE("verify_derivation rejects a foreign output") {
    Derivation d = testing::worked::intro();
    d.output = parse_state("x = 1, y = 9, z = 3");
    CHECK(!verify_derivation(d).empty());
}
