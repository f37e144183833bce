// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "impslice/encoding.hpp"
#include "impslice/syntax.hpp"
#include "support.hpp"

using namespace impslice;

namespace {

bool subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) {
        if ((a[w] & ~b[w]) != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("row width") {
    CHECK(MaskMatrix(3, 1).words() == 1);
    CHECK(MaskMatrix(3, 64).words() == 1);
    CHECK(MaskMatrix(3, 65).words() == 4);
    CHECK(MaskMatrix(3, 256).words() == 4);
    CHECK(MaskMatrix(3, 257).words() == 8);
    MaskMatrix m(2, 130);
    m.set(1, 129);
    CHECK(m.test(1, 129));
    CHECK(!m.test(0, 129));
    CHECK(m.row(1)[2] == 2);
}

TEST_CASE("intro layout: preorder positions and parents") {
    const Layout layout(parse_command(testing::worked::intro_text), {"x", "y", "z"});
    CHECK(layout.program_nodes() == 17);
    CHECK(layout.bits() == 20);
    CHECK(!layout.parent(0));
    CHECK(layout.parent(1) == std::optional<std::size_t>{0});
    CHECK(layout.parent(2) == std::optional<std::size_t>{1});
    CHECK(layout.parent(5) == std::optional<std::size_t>{1});
    CHECK(layout.parent(13) == std::optional<std::size_t>{0});

    const auto slice = parse_partial_command("if (y = 1) then { _ } else { y := y + 1 } ; _");
    CHECK(layout.hole_roots(slice) == std::vector<std::size_t>{5, 13});
    CHECK(layout.hole_roots(PartialCommand::hole()) == std::vector<std::size_t>{0});
    CHECK(layout.hole_roots(partialize(parse_command(testing::worked::intro_text))).empty());

    std::uint64_t row = 0;
    layout.encode(SliceOutcome{parse_partial_state("x = _, y = 0, z = _"), slice}, &row);
    // Nodes 0-4 and 9-12, then y.
    std::uint64_t want = 0;
    for (const int bit : {0, 1, 2, 3, 4, 9, 10, 11, 12, 17 + 1}) {
        want |= std::uint64_t{1} << bit;
    }
    CHECK(row == want);
}

TEST_CASE("mask inclusion coincides with the prefix order") {
    testing::Generator gen(11);
    int checked = 0;
    for (int i = 0; i < 60 && checked < 15; ++i) {
        const Command c = gen.command(4, true);
        const State s = gen.state();
        if (downset_size(c, s) > 1500) {
            continue;
        }
        ++checked;
        const Layout layout(c, s.domain());
        const auto all = enumerate_downset(c, s);
        MaskMatrix m(all.size(), layout.bits());
        for (std::size_t r = 0; r < all.size(); ++r) {
            layout.encode(all[r], m.row(r));
        }
        for (std::size_t a = 0; a < all.size(); ++a) {
            for (std::size_t b = 0; b < all.size(); ++b) {
                CHECK(subset(m.row(a), m.row(b), m.words()) == leq(all[a], all[b]));
            }
        }
        MaskMatrix programs(1, layout.program_nodes());
        layout.encode(all.back().program_slice, programs.row(0));
        std::size_t kept = 0;
        for (std::size_t bit = 0; bit < layout.program_nodes(); ++bit) {
            kept += programs.test(0, bit) ? 1 : 0;
        }
        CHECK(kept == node_count(c));
    }
    CHECK(checked >= 10);
}
