// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/encoding.hpp"

#include "impslice/overloaded.hpp"

namespace impslice {

MaskMatrix::MaskMatrix(std::size_t rows, std::size_t bits)
    : rows_(rows), bits_(bits), words_(bits <= 64 ? 1 : ((bits + 255) / 256) * 4), data_(rows * words_, 0) {}

namespace {

constexpr std::size_t no_parent = static_cast<std::size_t>(-1);

// Preorder sizes of every subtree of the top program.
struct Sizer {
    std::vector<std::size_t>& sizes;
    std::vector<std::size_t>& parents;
    std::vector<std::size_t> open_nodes;

    // Children are visited in separate statements: preorder numbering depends
    // on the order of the calls.
    std::size_t arith(const ArithExpr& a) {
        const std::size_t id = open();
        std::size_t n = 1;
        if (const auto* b = std::get_if<ArithBinary<false>>(&a.node())) {
            n += arith(b->lhs);
            n += arith(b->rhs);
        }
        return close(id, n);
    }

    std::size_t boolean(const BoolExpr& b) {
        const std::size_t id = open();
        std::size_t n = 1;
        std::visit(overloaded{
                       [&](const Compare<false>& c) {
                           n += arith(c.lhs);
                           n += arith(c.rhs);
                       },
                       [&](const Negation<false>& x) { n += boolean(x.operand); },
                       [&](const Conjunction<false>& c) {
                           n += boolean(c.lhs);
                           n += boolean(c.rhs);
                       },
                       [](const auto&) {},
                   },
                   b.node());
        return close(id, n);
    }

    std::size_t command(const Command& c) {
        const std::size_t id = open();
        std::size_t n = 1;
        std::visit(overloaded{
                       [&](const Assign<false>& a) { n += arith(a.expr); },
                       [&](const Seq<false>& s) {
                           n += command(s.first);
                           n += command(s.second);
                       },
                       [&](const If<false>& i) {
                           n += boolean(i.cond);
                           n += command(i.then_branch);
                           n += command(i.else_branch);
                       },
                       [&](const While<false>& w) {
                           n += boolean(w.cond);
                           n += command(w.body);
                       },
                       [](const auto&) {},
                   },
                   c.node());
        return close(id, n);
    }

    std::size_t open() {
        sizes.push_back(0);
        parents.push_back(open_nodes.empty() ? no_parent : open_nodes.back());
        open_nodes.push_back(sizes.size() - 1);
        return sizes.size() - 1;
    }

    std::size_t close(std::size_t id, std::size_t n) {
        open_nodes.pop_back();
        return sizes[id] = n;
    }
};

// Walks a partial program in step with the top's preorder numbering.
struct Marker {
    const std::vector<std::size_t>& sizes;
    std::uint64_t* row = nullptr;
    std::vector<std::size_t>* holes = nullptr;
    std::size_t next = 0;

    template <class T> bool enter(const T& term) {
        if (term.is_hole()) {
            if (holes != nullptr) {
                holes->push_back(next);
            }
            next += sizes[next];
            return false;
        }
        if (row != nullptr) {
            row[next / 64] |= std::uint64_t{1} << (next % 64);
        }
        ++next;
        return true;
    }

    void arith(const PartialArith& a) {
        if (!enter(a)) {
            return;
        }
        if (const auto* b = std::get_if<ArithBinary<true>>(&a.node())) {
            arith(b->lhs);
            arith(b->rhs);
        }
    }

    void boolean(const PartialBool& b) {
        if (!enter(b)) {
            return;
        }
        std::visit(overloaded{
                       [&](const Compare<true>& c) {
                           arith(c.lhs);
                           arith(c.rhs);
                       },
                       [&](const Negation<true>& x) { boolean(x.operand); },
                       [&](const Conjunction<true>& c) {
                           boolean(c.lhs);
                           boolean(c.rhs);
                       },
                       [](const auto&) {},
                   },
                   b.node());
    }

    void command(const PartialCommand& c) {
        if (!enter(c)) {
            return;
        }
        std::visit(overloaded{
                       [&](const Assign<true>& a) { arith(a.expr); },
                       [&](const Seq<true>& s) {
                           command(s.first);
                           command(s.second);
                       },
                       [&](const If<true>& i) {
                           boolean(i.cond);
                           command(i.then_branch);
                           command(i.else_branch);
                       },
                       [&](const While<true>& w) {
                           boolean(w.cond);
                           command(w.body);
                       },
                       [](const auto&) {},
                   },
                   c.node());
    }
};

} // namespace

Layout::Layout(const Command& program, StateDomain domain) : program_(program), domain_(std::move(domain)) {
    Sizer{subtree_size_, parent_, {}}.command(program_);
}

std::optional<std::size_t> Layout::parent(std::size_t node) const {
    if (parent_[node] == no_parent) {
        return std::nullopt;
    }
    return parent_[node];
}

void Layout::encode(const PartialCommand& p, std::uint64_t* row) const {
    Marker marker{subtree_size_, row};
    marker.command(p);
}

void Layout::encode(const SliceOutcome& p, std::uint64_t* row) const {
    Marker marker{subtree_size_, row};
    marker.command(p.program_slice);
    const std::size_t base = program_nodes();
    for (std::size_t i = 0; i < p.input_slice.size(); ++i) {
        if (p.input_slice[i].value) {
            const std::size_t bit = base + i;
            row[bit / 64] |= std::uint64_t{1} << (bit % 64);
        }
    }
}

void Layout::encode(const PartialState& s, std::uint64_t* row) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].value) {
            row[i / 64] |= std::uint64_t{1} << (i % 64);
        }
    }
}

std::vector<std::size_t> Layout::hole_roots(const PartialCommand& p) const {
    std::vector<std::size_t> holes;
    Marker marker{subtree_size_, nullptr, &holes};
    marker.command(p);
    return holes;
}

} // namespace impslice
