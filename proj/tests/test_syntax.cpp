// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "impslice/error.hpp"
#include "impslice/syntax.hpp"
#include "support.hpp"

using namespace impslice;

namespace {

ArithExpr add(ArithExpr a, ArithExpr b) { return ArithExpr::binary(ArithOp::add, std::move(a), std::move(b)); }
ArithExpr var(const char* x) { return ArithExpr::var(x); }
ArithExpr nat(Nat n) { return ArithExpr::nat(n); }

} // namespace

TEST_CASE("parse: atomic and worked programs") {
    CHECK(parse_command("skip") == Command::skip());

    const Command expected = Command::seq(
        Command::if_then_else(BoolExpr::compare(CmpOp::eq, var("y"), nat(1)), Command::assign("y", add(var("x"), nat(1))),
                              Command::assign("y", add(var("y"), nat(1)))),
        Command::assign("z", add(var("z"), nat(1))));
    CHECK(parse_command(testing::worked::intro_text) == expected);
}

TEST_CASE("parse: precedence and associativity") {
    CHECK(parse_arith("1 + 2 * 3") == add(nat(1), ArithExpr::binary(ArithOp::mul, nat(2), nat(3))));
    CHECK(parse_arith("1 - 2 - 3") ==
          ArithExpr::binary(ArithOp::sub, ArithExpr::binary(ArithOp::sub, nat(1), nat(2)), nat(3)));
    CHECK(parse_arith("1 - (2 - 3)") ==
          ArithExpr::binary(ArithOp::sub, nat(1), ArithExpr::binary(ArithOp::sub, nat(2), nat(3))));

    const Command c = parse_command("skip; skip; x := 1");
    const auto* outer = std::get_if<Seq<false>>(&c.node());
    REQUIRE(outer != nullptr);
    CHECK(outer->first == Command::skip());
    CHECK(std::holds_alternative<Seq<false>>(outer->second.node()));

    CHECK(parse_bool("!x = 1 && true") ==
          BoolExpr::conjunction(BoolExpr::negation(BoolExpr::compare(CmpOp::eq, var("x"), nat(1))), BoolExpr::literal(true)));
    CHECK(parse_bool("(x <= 1) && !(true)") ==
          BoolExpr::conjunction(BoolExpr::compare(CmpOp::leq, var("x"), nat(1)), BoolExpr::negation(BoolExpr::literal(true))));
}

TEST_CASE("parse: errors carry position and expected tokens") {
    try {
        (void)parse_command("x := ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(e.line() == 1);
        CHECK(e.column() == 6);
        CHECK(!e.expected().empty());
    }
    try {
        (void)parse_command("skip;\n  x := (1 + ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS((void)parse_command("_"), ParseError);
    CHECK_THROWS_AS((void)parse_command("if (true) then skip else skip"), ParseError);
    CHECK_THROWS_AS((void)parse_command("x := 99999999999999999999999"), ParseError);
    CHECK_THROWS_AS((void)parse_command("_x := 1"), ParseError);
}

TEST_CASE("parse: partial programs") {
    CHECK(parse_partial_command("_") == PartialCommand::hole());
    CHECK(parse_partial_command("while (_) do { skip }") == PartialCommand::while_do(PartialBool::hole(), PartialCommand::skip()));
    const PartialCommand slice = parse_partial_command("if (y = 1) then { _ } else { y := y + 1 } ; _");
    const PartialCommand expected = PartialCommand::seq(
        PartialCommand::if_then_else(
            PartialBool::compare(CmpOp::eq, PartialArith::var("y"), PartialArith::nat(1)), PartialCommand::hole(),
            PartialCommand::assign("y", PartialArith::binary(ArithOp::add, PartialArith::var("y"), PartialArith::nat(1)))),
        PartialCommand::hole());
    CHECK(slice == expected);
    CHECK(parse_partial_arith("_ + x") == PartialArith::binary(ArithOp::add, PartialArith::hole(), PartialArith::var("x")));
    CHECK(parse_partial_bool("_ && !_") == PartialBool::conjunction(PartialBool::hole(), PartialBool::negation(PartialBool::hole())));
}

TEST_CASE("parse: comments, blocks and case-sensitive identifiers") {
    const Command c = parse_command("# leading comment\nX := 1; # trailing\nx := X");
    CHECK(c == Command::seq(Command::assign("X", nat(1)), Command::assign("x", var("X"))));
    const Command left = parse_command("{ skip; skip }; skip");
    const auto* s = std::get_if<Seq<false>>(&left.node());
    REQUIRE(s != nullptr);
    CHECK(std::holds_alternative<Seq<false>>(s->first.node()));
}

TEST_CASE("states: parsing, duplicates, rendering") {
    const State s = parse_state(testing::worked::intro_input_text);
    REQUIRE(s.size() == 3);
    CHECK(s[0].name == "x");
    CHECK(s[1].value == 0);
    CHECK(s[2].value == 2);
    const PartialState crit = parse_partial_state("x = _, y = 1, z = _");
    CHECK(!crit[0].value);
    CHECK(crit[1].value == PartialNat{1});
    try {
        (void)parse_state("x = 1, x = 2");
        FAIL("expected a duplicate-variable error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::duplicate_variable);
    }
    CHECK(parse_state("").empty());
    CHECK_THROWS_AS((void)parse_state("x = _"), ParseError);
    CHECK(render(parse_partial_state("x=_,y=0,z=_")) == "x = _, y = 0, z = _");
}

TEST_CASE("partialize, blank_state, lookup and update") {
    CHECK(partialize(Command::skip()) == PartialCommand::skip());
    const Command intro = parse_command(testing::worked::intro_text);
    CHECK(!contains_hole(partialize(intro)));
    CHECK(node_count(partialize(intro)) == node_count(intro));
    CHECK(complete(partialize(intro)) == intro);
    CHECK(partialize(parse_state("x = 1")) == parse_partial_state("x = 1"));

    CHECK(blank_state(parse_state("x = 1, y = 2")) == parse_partial_state("x = _, y = _"));
    CHECK(blank_state(State{}).empty());
    CHECK(blank_state(parse_partial_state("x = _")) == parse_partial_state("x = _"));

    CHECK(state_lookup(parse_partial_state("x = 1"), "x") == PartialNat{1});
    CHECK(state_lookup(parse_partial_state("x = 1"), "y") == std::nullopt);
    CHECK(state_lookup(parse_partial_state("x = _"), "x") == std::nullopt);

    CHECK(state_update(parse_state("x = 1, y = 2"), "x", 9) == parse_state("x = 9, y = 2"));
    CHECK(state_update(parse_state("x = 1"), "y", 3) == parse_state("x = 1"));
    CHECK(state_update(parse_partial_state("x = 1"), "x", std::nullopt) == parse_partial_state("x = _"));
}

TEST_CASE("state update laws on random states") {
    testing::Generator gen(7);
    for (int i = 0; i < 200; ++i) {
        const PartialState s = partialize(gen.state());
        const std::string x = std::array{"x", "y", "z", "w"}[gen.below(4)];
        const PartialNat v = gen.chance(0.3) ? PartialNat{} : PartialNat{gen.below(100)};
        const PartialState updated = state_update(s, x, v);
        CHECK(updated.domain() == s.domain());
        if (s.index_of(x)) {
            CHECK(state_lookup(updated, x) == v);
        } else {
            CHECK(updated == s);
        }
    }
}

TEST_CASE("render: holes, slices, round trips") {
    CHECK(render(PartialCommand::hole()) == "_");
    CHECK(render(parse_partial_command("if (y = 1) then { _ } else { y := y + 1 } ; _")) ==
          "if (y = 1) then { _ } else { y := y + 1 } ; _");
    CHECK(render(parse_command("x := (1 + 2) * (3 - 4) - (5 - 6)")) == "x := (1 + 2) * (3 - 4) - (5 - 6)");
    CHECK(render(parse_bool("!(x = 1) && !!true && (true && false)")) == "!(x = 1) && !!true && (true && false)");
    CHECK(parse_command(render_pretty(parse_command(testing::worked::division_text))) ==
          parse_command(testing::worked::division_text));
}

TEST_CASE("render/parse round trip on generated programs up to depth 6") {
    testing::Generator gen(2024);
    for (int i = 0; i < 300; ++i) {
        const Command c = gen.command(1 + static_cast<int>(gen.below(6)), gen.chance(0.3));
        CHECK(parse_command(render(c)) == c);
        CHECK(parse_command(render_pretty(c)) == c);
        const PartialCommand p = partialize(c);
        CHECK(parse_partial_command(render(p)) == p);
    }
    for (int i = 0; i < 300; ++i) {
        const ArithExpr a = gen.arith(6);
        CHECK(parse_arith(render(a)) == a);
        const BoolExpr b = gen.boolean(6);
        CHECK(parse_bool(render(b)) == b);
    }
}

TEST_CASE("render_with_spans: spans cover each node's text") {
    const Command c = parse_command(testing::worked::intro_text);
    const RenderedProgram r = render_with_spans(c);
    CHECK(r.text == render_pretty(c));
    REQUIRE(r.node_spans.size() == node_count(c));
    CHECK(r.node_spans[0] == Span{0, r.text.size()});
    // Preorder: seq, if, cond, y, 1, then-assign, x + 1, x, 1, else-assign, ...
    const auto text_of = [&](std::size_t i) { return r.text.substr(r.node_spans[i].begin, r.node_spans[i].end - r.node_spans[i].begin); };
    CHECK(text_of(2) == "y = 1");
    CHECK(text_of(5) == "y := x + 1");
    CHECK(text_of(6) == "x + 1");
    CHECK(text_of(r.node_spans.size() - 4) == "z := z + 1");
}
