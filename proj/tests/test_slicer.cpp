// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "impslice/error.hpp"
#include "impslice/slicer.hpp"
#include "impslice/stack.hpp"
#include "impslice/syntax.hpp"
#include "support.hpp"

using namespace impslice;

namespace {

ErrorKind bwd_failure(const Derivation& d, const char* criterion) {
    try {
        (void)backward_slice(d, parse_partial_state(criterion));
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("slicing succeeded");
    return ErrorKind::parse;
}

} // namespace

TEST_CASE("intro example: backward slices") {
    const Derivation d = testing::worked::intro();
    const SliceOutcome on_y = backward_slice(d, parse_partial_state("x = _, y = 1, z = _"));
    CHECK(on_y.program_slice == parse_partial_command("if (y = 1) then { _ } else { y := y + 1 } ; _"));
    CHECK(on_y.input_slice == parse_partial_state("x = _, y = 0, z = _"));

    const SliceOutcome on_z = backward_slice(d, parse_partial_state("x = _, y = _, z = 3"));
    CHECK(on_z.program_slice == parse_partial_command("_ ; z := z + 1"));
    CHECK(on_z.input_slice == parse_partial_state("x = _, y = _, z = 2"));

    const SliceOutcome on_x = backward_slice(d, parse_partial_state("x = 1, y = _, z = _"));
    CHECK(on_x.program_slice == PartialCommand::hole());
    CHECK(on_x.input_slice == parse_partial_state("x = 1, y = _, z = _"));
}

TEST_CASE("intro example: forward slice of the backward slice") {
    const Derivation d = testing::worked::intro();
    const SliceOutcome input{parse_partial_state("x = _, y = 0, z = _"),
                             parse_partial_command("if (y = 1) then { _ } else { y := y + 1 } ; _")};
    CHECK(forward_slice(d, input) == parse_partial_state("x = _, y = 1, z = _"));
    // Holing the guard loses the branch's writes.
    const SliceOutcome guardless{parse_partial_state("x = 1, y = 0, z = 2"),
                                 parse_partial_command("if (_) then { _ } else { y := y + 1 } ; z := z + 1")};
    CHECK(forward_slice(d, guardless) == parse_partial_state("x = 1, y = _, z = 3"));
}

TEST_CASE("division example: slice on res") {
    const Derivation d = testing::worked::division();
    const SliceOutcome s = backward_slice(d, parse_partial_state("q = _, r = _, res = 1, a = _, b = _"));
    CHECK(s.program_slice == parse_partial_command(testing::worked::division_slice_text));
    CHECK(s.input_slice == parse_partial_state("q = _, r = _, res = _, a = 4, b = 2"));
    CHECK(forward_slice(d, s) == parse_partial_state("q = _, r = 0, res = 1, a = 4, b = 2"));

    const SliceOutcome on_q = backward_slice(d, parse_partial_state("q = 2, r = _, res = _, a = _, b = _"));
    CHECK(render(on_q.input_slice) == "q = 0, r = _, res = _, a = 4, b = 2");
}

TEST_CASE("assignment example") {
    const Derivation d = testing::worked::assignment();
    const SliceOutcome s = backward_slice(d, parse_partial_state("w = _, x = _, y = _, z = 3"));
    CHECK(s.program_slice == parse_partial_command("z := x + y"));
    CHECK(s.input_slice == parse_partial_state("w = _, x = 1, y = 2, z = _"));
    const SliceOutcome with_x = backward_slice(d, parse_partial_state("w = _, x = 1, y = _, z = 3"));
    CHECK(with_x.input_slice == parse_partial_state("w = _, x = 1, y = 2, z = _"));
    const SliceOutcome without_z = backward_slice(d, parse_partial_state("w = 0, x = _, y = 2, z = _"));
    CHECK(without_z.program_slice == PartialCommand::hole());
    CHECK(without_z.input_slice == parse_partial_state("w = 0, x = _, y = 2, z = _"));
}

TEST_CASE("expression rules") {
    const State s = parse_state("x = 3, y = 5");
    const StateDomain dom = s.domain();
    const ArithTrace sum = eval_aexp(s, parse_arith("x + y"));
    auto hole = bwd_aexp(sum, dom, std::nullopt);
    CHECK(hole.expr == PartialArith::hole());
    CHECK(hole.demand == blank_state(dom));
    auto full = bwd_aexp(sum, dom, Nat{8});
    CHECK(full.expr == parse_partial_arith("x + y"));
    CHECK(full.demand == parse_partial_state("x = 3, y = 5"));
    CHECK_THROWS_AS((void)bwd_aexp(sum, dom, Nat{9}), Error);

    const BoolTrace neg = eval_bexp(s, parse_bool("!(x = 3)"));
    auto b = bwd_bexp(neg, dom, false);
    CHECK(b.expr == parse_partial_bool("!(x = 3)"));
    CHECK(b.demand == parse_partial_state("x = 3, y = _"));
    CHECK(fwd_bexp(neg, b.demand, b.expr) == PartialTruth{false});
    CHECK(fwd_aexp(sum, parse_partial_state("x = 3, y = _"), parse_partial_arith("x + y")) == std::nullopt);
    CHECK(fwd_aexp(sum, parse_partial_state("x = 3, y = _"), parse_partial_arith("x + _")) == std::nullopt);
}

TEST_CASE("errors") {
    const Derivation d = testing::worked::intro();
    CHECK(bwd_failure(d, "x = _, y = 2, z = _") == ErrorKind::criterion_mismatch);
    CHECK(bwd_failure(d, "y = 1") == ErrorKind::lattice_mismatch);
    CHECK(bwd_failure(d, "z = _, y = 1, x = _") == ErrorKind::lattice_mismatch);
    CHECK_THROWS_AS((void)forward_slice(d, SliceOutcome{parse_partial_state("x = _, y = 0, z = _"), parse_partial_command("x := 1")}),
                    Error);
    CHECK_THROWS_AS((void)forward_slice(d, SliceOutcome{parse_partial_state("x = _, y = 7, z = _"), PartialCommand::hole()}),
                    Error);
    CHECK_THROWS_AS((void)fwd_cmd(d.trace, parse_partial_state("x = _"), PartialCommand::hole()), Error);
}

TEST_CASE("bottom maps to bottom and the complete slice embeds the run") {
    testing::Generator gen(77);
    for (int i = 0; i < 200; ++i) {
        const Command c = gen.command(5, true);
        const State s = gen.state_with_counter();
        std::optional<Derivation> run;
        try {
            run = eval_cmd(s, c);
        } catch (const Error&) {
            continue;
        }
        const Derivation& d = *run;
        const SliceOutcome bottom = backward_slice(d, blank_state(d.output));
        CHECK(bottom.program_slice == PartialCommand::hole());
        CHECK(bottom.input_slice == blank_state(s));
        CHECK(forward_slice(d, SliceOutcome{partialize(s), partialize(c)}) == partialize(d.output));
        CHECK(forward_slice(d, SliceOutcome{blank_state(s), PartialCommand::hole()}) == blank_state(d.output));
        // Inflation and deflation on the full criterion.
        const SliceOutcome full = backward_slice(d, partialize(d.output));
        CHECK(forward_slice(d, full) == partialize(d.output));
        CHECK(leq(full, SliceOutcome{partialize(s), partialize(c)}));
    }
}

TEST_CASE("criterion echo for expressions") {
    testing::Generator gen(3);
    for (int i = 0; i < 300; ++i) {
        const State s = gen.state();
        const ArithExpr a = gen.arith(5);
        ArithTrace t = eval_aexp(s, ArithExpr::nat(0));
        try {
            t = eval_aexp(s, a);
        } catch (const Error&) {
            continue;
        }
        const auto slice = bwd_aexp(t, s.domain(), t.result());
        CHECK(fwd_aexp(t, slice.demand, slice.expr) == PartialNat{t.result()});
        const BoolExpr b = gen.boolean(4);
        try {
            const BoolTrace bt = eval_bexp(s, b);
            const auto bs = bwd_bexp(bt, s.domain(), bt.result());
            CHECK(fwd_bexp(bt, bs.demand, bs.expr) == PartialTruth{bt.result()});
        } catch (const Error&) {
        }
    }
}

TEST_CASE("long runs slice on the large stack") {
    // Construction, slicing and destruction of the deep trace all happen on
    // the large stack.
    with_large_stack([] {
        const Derivation d =
            eval_cmd(parse_state("k = 0, n = 0"), parse_command("while (k <= 19999) do { n := n + 2; k := k + 1 }"));
        const SliceOutcome s = backward_slice(d, parse_partial_state("k = _, n = 40000"));
        CHECK(s.input_slice == parse_partial_state("k = 0, n = 0"));
        CHECK(s.program_slice == parse_partial_command("while (k <= 19999) do { n := n + 2; k := k + 1 }"));
        CHECK(forward_slice(d, s) == parse_partial_state("k = 20000, n = 40000"));
    });
}
