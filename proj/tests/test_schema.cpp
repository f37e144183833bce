// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "impslice/error.hpp"
#include "impslice/schema.hpp"
#include "impslice/slicer.hpp"
#include "impslice/syntax.hpp"
#include "support.hpp"

using namespace impslice;
using schema::Json;

TEST_CASE("term encodings") {
    CHECK(schema::to_json(PartialArith::hole()) == Json("_"));
    CHECK(schema::to_json(parse_arith("x + 2")) ==
          Json::parse(R"({"op":"+","lhs":{"var":"x"},"rhs":{"nat":2}})"));
    CHECK(schema::to_json(parse_partial_bool("!(_ <= 1)")) ==
          Json::parse(R"({"op":"!","arg":{"op":"<=","lhs":"_","rhs":{"nat":1}}})"));
    CHECK(schema::to_json(parse_bool("true && false")) ==
          Json::parse(R"({"op":"&&","lhs":{"bool":true},"rhs":{"bool":false}})"));
    CHECK(schema::to_json(parse_command("x := 1; skip")) ==
          Json::parse(R"({"cmd":"seq","first":{"cmd":"assign","var":"x","expr":{"nat":1}},"second":{"cmd":"skip"}})"));
    CHECK(schema::to_json(parse_partial_state("x = 1, y = _")) ==
          Json::parse(R"([{"name":"x","value":1},{"name":"y","value":null}])"));
}

TEST_CASE("round trips") {
    testing::Generator gen(8);
    for (int i = 0; i < 100; ++i) {
        const Command c = gen.command(5, true);
        CHECK(schema::command_from_json(schema::to_json(c)) == c);
        const PartialCommand p = partialize(c);
        CHECK(schema::partial_command_from_json(schema::to_json(p)) == p);
        const State s = gen.state();
        CHECK(schema::state_from_json(schema::to_json(s)) == s);
        const PartialArith a = partialize(gen.arith(4));
        CHECK(schema::partial_arith_from_json(schema::to_json(a)) == a);
        const PartialBool b = partialize(gen.boolean(4));
        CHECK(schema::partial_bool_from_json(schema::to_json(b)) == b);
    }
    const PartialCommand slice = parse_partial_command(testing::worked::division_slice_text);
    CHECK(schema::partial_command_from_json(Json::parse(schema::to_json(slice).dump())) == slice);
    const PartialState st = parse_partial_state("q = _, a = 4");
    CHECK(schema::partial_state_from_json(schema::to_json(st)) == st);
}

TEST_CASE("malformed documents are parse errors") {
    for (const char* text : {R"({"cmd":"loop"})", R"({"cmd":"assign","var":"x"})", R"(42)", R"("_")",
                             R"({"cmd":"assign","var":"","expr":{"nat":1}})"}) {
        CAPTURE(text);
        try {
            (void)schema::command_from_json(Json::parse(text));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse);
        }
    }
    CHECK_THROWS_AS((void)schema::state_from_json(Json::parse(R"([{"name":"x","value":null}])")), Error);
    CHECK_THROWS_AS((void)schema::state_from_json(Json::parse(R"([{"name":"x","value":-1}])")), Error);
    CHECK_THROWS_AS((void)schema::partial_state_from_json(Json::parse(R"([{"name":"x"},{"name":"x"}])")), Error);
    CHECK_THROWS_AS((void)schema::partial_arith_from_json(Json::parse(R"({"op":"/","lhs":"_","rhs":"_"})")), Error);
    CHECK_NOTHROW((void)schema::partial_command_from_json(Json("_")));
}

TEST_CASE("reports, traces and errors") {
    const Derivation d = testing::worked::intro();
    const Json stats = schema::to_json(trace_stats(d));
    CHECK(stats["assignments"] == 2);
    CHECK(stats["branch_decisions"] == Json::parse("[false]"));
    const Json trace = schema::to_json(d.trace);
    CHECK(trace["rule"] == "seq");
    CHECK(trace["state_in"] == schema::to_json(d.input));
    CHECK(trace["state_out"] == schema::to_json(d.output));

    const SliceOutcome s = backward_slice(d, parse_partial_state("x = _, y = _, z = 3"));
    const Json slice = schema::to_json(s);
    CHECK(slice["program_slice"]["first"] == "_");
    CHECK(slice["input_slice"][2]["value"] == 2);

    try {
        (void)parse_command("x := ");
        FAIL("parsed");
    } catch (const ParseError& e) {
        const Json err = schema::to_json(e);
        CHECK(err["error"] == "parse_error");
        CHECK(err["line"] == 1);
        CHECK(err.contains("column"));
        CHECK(err["expected"].is_array());
    }
    const Json size = schema::to_json(SizeExceeded(100, 10));
    CHECK(size["error"] == "size_exceeded");
    CHECK(size["cardinality"] == 100);
    CHECK(size["bound"] == 10);

    const Json doc = schema::versioned(Json{{"a", 1}});
    CHECK(doc["schema_version"] == schema::version);
    CHECK(doc["a"] == 1);
}
