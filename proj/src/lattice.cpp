// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/lattice.hpp"

#include <limits>
#include <optional>

#include "impslice/error.hpp"
#include "impslice/overloaded.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

// ---------------------------------------------------------------------------
// Order.

bool leq(const PartialArith& a, const PartialArith& b) {
    if (a.is_hole() || a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const NatLit& x, const NatLit& y) { return x.value == y.value; },
                          [](const VarRead& x, const VarRead& y) { return x.name == y.name; },
                          [](const ArithBinary<true>& x, const ArithBinary<true>& y) {
                              return x.op == y.op && leq(x.lhs, y.lhs) && leq(x.rhs, y.rhs);
                          },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

bool leq(const PartialBool& a, const PartialBool& b) {
    if (a.is_hole() || a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const BoolLit& x, const BoolLit& y) { return x.value == y.value; },
                          [](const Compare<true>& x, const Compare<true>& y) {
                              return x.op == y.op && leq(x.lhs, y.lhs) && leq(x.rhs, y.rhs);
                          },
                          [](const Negation<true>& x, const Negation<true>& y) { return leq(x.operand, y.operand); },
                          [](const Conjunction<true>& x, const Conjunction<true>& y) {
                              return leq(x.lhs, y.lhs) && leq(x.rhs, y.rhs);
                          },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

bool leq(const PartialCommand& a, const PartialCommand& b) {
    if (a.is_hole() || a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const Skip&, const Skip&) { return true; },
                          [](const Assign<true>& x, const Assign<true>& y) { return x.var == y.var && leq(x.expr, y.expr); },
                          [](const Seq<true>& x, const Seq<true>& y) { return leq(x.first, y.first) && leq(x.second, y.second); },
                          [](const If<true>& x, const If<true>& y) {
                              return leq(x.cond, y.cond) && leq(x.then_branch, y.then_branch) &&
                                     leq(x.else_branch, y.else_branch);
                          },
                          [](const While<true>& x, const While<true>& y) { return leq(x.cond, y.cond) && leq(x.body, y.body); },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

bool leq(const PartialNat& a, const PartialNat& b) { return !a || a == b; }

bool leq(const PartialState& a, const PartialState& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || !leq(a[i].value, b[i].value)) {
            return false;
        }
    }
    return true;
}

bool leq(const SliceOutcome& a, const SliceOutcome& b) {
    return leq(a.program_slice, b.program_slice) && leq(a.input_slice, b.input_slice);
}

// ---------------------------------------------------------------------------
// Join.

namespace {

[[noreturn]] void no_upper_bound(const std::string& lhs, const std::string& rhs) {
    throw Error(ErrorKind::join_error, "no common upper bound for '" + lhs + "' and '" + rhs + "'");
}

} // namespace

PartialArith join(const PartialArith& a, const PartialArith& b) {
    if (a.is_hole()) {
        return b;
    }
    if (b.is_hole() || a.same_node(b)) {
        return a;
    }
    return std::visit(overloaded{
                          [&](const NatLit& x, const NatLit& y) -> PartialArith {
                              if (x.value != y.value) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return a;
                          },
                          [&](const VarRead& x, const VarRead& y) -> PartialArith {
                              if (x.name != y.name) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return a;
                          },
                          [&](const ArithBinary<true>& x, const ArithBinary<true>& y) -> PartialArith {
                              if (x.op != y.op) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return PartialArith::binary(x.op, join(x.lhs, y.lhs), join(x.rhs, y.rhs));
                          },
                          [&](const auto&, const auto&) -> PartialArith { no_upper_bound(render(a), render(b)); },
                      },
                      a.node(), b.node());
}

PartialBool join(const PartialBool& a, const PartialBool& b) {
    if (a.is_hole()) {
        return b;
    }
    if (b.is_hole() || a.same_node(b)) {
        return a;
    }
    return std::visit(overloaded{
                          [&](const BoolLit& x, const BoolLit& y) -> PartialBool {
                              if (x.value != y.value) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return a;
                          },
                          [&](const Compare<true>& x, const Compare<true>& y) -> PartialBool {
                              if (x.op != y.op) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return PartialBool::compare(x.op, join(x.lhs, y.lhs), join(x.rhs, y.rhs));
                          },
                          [&](const Negation<true>& x, const Negation<true>& y) -> PartialBool {
                              return PartialBool::negation(join(x.operand, y.operand));
                          },
                          [&](const Conjunction<true>& x, const Conjunction<true>& y) -> PartialBool {
                              return PartialBool::conjunction(join(x.lhs, y.lhs), join(x.rhs, y.rhs));
                          },
                          [&](const auto&, const auto&) -> PartialBool { no_upper_bound(render(a), render(b)); },
                      },
                      a.node(), b.node());
}

PartialCommand join(const PartialCommand& a, const PartialCommand& b) {
    if (a.is_hole()) {
        return b;
    }
    if (b.is_hole() || a.same_node(b)) {
        return a;
    }
    return std::visit(overloaded{
                          [&](const Skip&, const Skip&) -> PartialCommand { return a; },
                          [&](const Assign<true>& x, const Assign<true>& y) -> PartialCommand {
                              if (x.var != y.var) {
                                  no_upper_bound(render(a), render(b));
                              }
                              return PartialCommand::assign(x.var, join(x.expr, y.expr));
                          },
                          [&](const Seq<true>& x, const Seq<true>& y) -> PartialCommand {
                              return PartialCommand::seq(join(x.first, y.first), join(x.second, y.second));
                          },
                          [&](const If<true>& x, const If<true>& y) -> PartialCommand {
                              return PartialCommand::if_then_else(join(x.cond, y.cond), join(x.then_branch, y.then_branch),
                                                                  join(x.else_branch, y.else_branch));
                          },
                          [&](const While<true>& x, const While<true>& y) -> PartialCommand {
                              return PartialCommand::while_do(join(x.cond, y.cond), join(x.body, y.body));
                          },
                          [&](const auto&, const auto&) -> PartialCommand { no_upper_bound(render(a), render(b)); },
                      },
                      a.node(), b.node());
}

PartialNat join(const PartialNat& a, const PartialNat& b) {
    if (!a) {
        return b;
    }
    if (b && *a != *b) {
        no_upper_bound(std::to_string(*a), std::to_string(*b));
    }
    return a;
}

PartialState join(const PartialState& a, const PartialState& b) {
    if (!a.same_domain(b)) {
        no_upper_bound(render(a), render(b));
    }
    std::vector<PartialState::Entry> entries;
    entries.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].value && b[i].value && *a[i].value != *b[i].value) {
            no_upper_bound(render(a), render(b));
        }
        entries.push_back({a[i].name, a[i].value ? a[i].value : b[i].value});
    }
    return PartialState::from_entries(std::move(entries));
}

SliceOutcome join(const SliceOutcome& a, const SliceOutcome& b) {
    return {join(a.input_slice, b.input_slice), join(a.program_slice, b.program_slice)};
}

// ---------------------------------------------------------------------------
// Prefix checks. Each helper returns the path of the first position where the
// element disagrees with the top, or nullopt when element ⊑ top.

namespace {

using Path = std::optional<std::string>;

Path sub(const std::string& step, Path inner) {
    if (!inner) {
        return std::nullopt;
    }
    return inner->empty() ? step : step + "." + *inner;
}

Path first_mismatch(const PartialArith& e, const ArithExpr& t) {
    if (e.is_hole()) {
        return std::nullopt;
    }
    return std::visit(overloaded{
                          [](const NatLit& x, const NatLit& y) -> Path { return x.value == y.value ? Path{} : Path{""}; },
                          [](const VarRead& x, const VarRead& y) -> Path { return x.name == y.name ? Path{} : Path{""}; },
                          [](const ArithBinary<true>& x, const ArithBinary<false>& y) -> Path {
                              if (x.op != y.op) {
                                  return "";
                              }
                              if (auto p = first_mismatch(x.lhs, y.lhs)) {
                                  return sub("lhs", p);
                              }
                              return sub("rhs", first_mismatch(x.rhs, y.rhs));
                          },
                          [](const auto&, const auto&) -> Path { return ""; },
                      },
                      e.node(), t.node());
}

Path first_mismatch(const PartialBool& e, const BoolExpr& t) {
    if (e.is_hole()) {
        return std::nullopt;
    }
    return std::visit(overloaded{
                          [](const BoolLit& x, const BoolLit& y) -> Path { return x.value == y.value ? Path{} : Path{""}; },
                          [](const Compare<true>& x, const Compare<false>& y) -> Path {
                              if (x.op != y.op) {
                                  return "";
                              }
                              if (auto p = first_mismatch(x.lhs, y.lhs)) {
                                  return sub("lhs", p);
                              }
                              return sub("rhs", first_mismatch(x.rhs, y.rhs));
                          },
                          [](const Negation<true>& x, const Negation<false>& y) -> Path {
                              return sub("operand", first_mismatch(x.operand, y.operand));
                          },
                          [](const Conjunction<true>& x, const Conjunction<false>& y) -> Path {
                              if (auto p = first_mismatch(x.lhs, y.lhs)) {
                                  return sub("lhs", p);
                              }
                              return sub("rhs", first_mismatch(x.rhs, y.rhs));
                          },
                          [](const auto&, const auto&) -> Path { return ""; },
                      },
                      e.node(), t.node());
}

Path first_mismatch(const PartialCommand& e, const Command& t) {
    if (e.is_hole()) {
        return std::nullopt;
    }
    return std::visit(overloaded{
                          [](const Skip&, const Skip&) -> Path { return std::nullopt; },
                          [](const Assign<true>& x, const Assign<false>& y) -> Path {
                              if (x.var != y.var) {
                                  return "";
                              }
                              return sub("expr", first_mismatch(x.expr, y.expr));
                          },
                          [](const Seq<true>& x, const Seq<false>& y) -> Path {
                              if (auto p = first_mismatch(x.first, y.first)) {
                                  return sub("first", p);
                              }
                              return sub("second", first_mismatch(x.second, y.second));
                          },
                          [](const If<true>& x, const If<false>& y) -> Path {
                              if (auto p = first_mismatch(x.cond, y.cond)) {
                                  return sub("cond", p);
                              }
                              if (auto p = first_mismatch(x.then_branch, y.then_branch)) {
                                  return sub("then", p);
                              }
                              return sub("else", first_mismatch(x.else_branch, y.else_branch));
                          },
                          [](const While<true>& x, const While<false>& y) -> Path {
                              if (auto p = first_mismatch(x.cond, y.cond)) {
                                  return sub("cond", p);
                              }
                              return sub("body", first_mismatch(x.body, y.body));
                          },
                          [](const auto&, const auto&) -> Path { return ""; },
                      },
                      e.node(), t.node());
}

[[noreturn]] void mismatch(const std::string& what, const std::string& element, const std::string& top, const std::string& path) {
    throw Error(ErrorKind::lattice_mismatch, what + " '" + element + "' is not a prefix of '" + top + "' (first difference at " +
                                                 (path.empty() ? std::string("root") : "root." + path) + ")");
}

} // namespace

PrefixWitness<PartialArith, ArithExpr> check_prefix(const PartialArith& element, const ArithExpr& top) {
    if (auto p = first_mismatch(element, top)) {
        mismatch("expression", render(element), render(top), *p);
    }
    return {element, top};
}

PrefixWitness<PartialBool, BoolExpr> check_prefix(const PartialBool& element, const BoolExpr& top) {
    if (auto p = first_mismatch(element, top)) {
        mismatch("condition", render(element), render(top), *p);
    }
    return {element, top};
}

PrefixWitness<PartialCommand, Command> check_prefix(const PartialCommand& element, const Command& top) {
    if (auto p = first_mismatch(element, top)) {
        mismatch("program", render(element), render(top), *p);
    }
    return {element, top};
}

PrefixWitness<PartialState, State> check_prefix(const PartialState& element, const State& top) {
    if (!element.same_domain(top)) {
        throw Error(ErrorKind::lattice_mismatch,
                    "state '" + render(element) + "' does not have the domain of '" + render(top) + "'");
    }
    for (std::size_t i = 0; i < element.size(); ++i) {
        if (element[i].value && *element[i].value != top[i].value) {
            mismatch("state", render(element), render(top), element[i].name);
        }
    }
    return {element, top};
}

// ---------------------------------------------------------------------------
// Cardinality.

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

namespace {

std::uint64_t saturating_inc(std::uint64_t a) { return a == std::numeric_limits<std::uint64_t>::max() ? a : a + 1; }

} // namespace

std::uint64_t downset_size(const ArithExpr& top) {
    if (const auto* b = std::get_if<ArithBinary<false>>(&top.node())) {
        return saturating_inc(saturating_mul(downset_size(b->lhs), downset_size(b->rhs)));
    }
    return 2;
}

std::uint64_t downset_size(const BoolExpr& top) {
    return std::visit(overloaded{
                          [](const Compare<false>& c) {
                              return saturating_inc(saturating_mul(downset_size(c.lhs), downset_size(c.rhs)));
                          },
                          [](const Negation<false>& n) { return saturating_inc(downset_size(n.operand)); },
                          [](const Conjunction<false>& c) {
                              return saturating_inc(saturating_mul(downset_size(c.lhs), downset_size(c.rhs)));
                          },
                          [](const auto&) -> std::uint64_t { return 2; },
                      },
                      top.node());
}

std::uint64_t downset_size(const Command& top) {
    return std::visit(overloaded{
                          [](const Assign<false>& a) { return saturating_inc(downset_size(a.expr)); },
                          [](const Seq<false>& s) {
                              return saturating_inc(saturating_mul(downset_size(s.first), downset_size(s.second)));
                          },
                          [](const If<false>& i) {
                              return saturating_inc(saturating_mul(
                                  downset_size(i.cond), saturating_mul(downset_size(i.then_branch), downset_size(i.else_branch))));
                          },
                          [](const While<false>& w) {
                              return saturating_inc(saturating_mul(downset_size(w.cond), downset_size(w.body)));
                          },
                          [](const auto&) -> std::uint64_t { return 2; },
                      },
                      top.node());
}

std::uint64_t downset_size(const State& top) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < top.size(); ++i) {
        n = saturating_mul(n, 2);
    }
    return n;
}

std::uint64_t downset_size(const Command& program, const State& input) {
    return saturating_mul(downset_size(program), downset_size(input));
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

template <class T, class A, class B, class F> void product(std::vector<T>& out, const std::vector<A>& as, const std::vector<B>& bs, F make) {
    for (const auto& a : as) {
        for (const auto& b : bs) {
            out.push_back(make(a, b));
        }
    }
}

std::vector<PartialArith> downset_of(const ArithExpr& top) {
    std::vector<PartialArith> out{PartialArith::hole()};
    std::visit(overloaded{
                   [&](const NatLit& n) { out.push_back(PartialArith::nat(n.value)); },
                   [&](const VarRead& v) { out.push_back(PartialArith::var(v.name)); },
                   [&](const ArithBinary<false>& b) {
                       product(out, downset_of(b.lhs), downset_of(b.rhs),
                               [&](const PartialArith& l, const PartialArith& r) { return PartialArith::binary(b.op, l, r); });
                   },
                   [](const Hole&) {},
               },
               top.node());
    return out;
}

std::vector<PartialBool> downset_of(const BoolExpr& top) {
    std::vector<PartialBool> out{PartialBool::hole()};
    std::visit(overloaded{
                   [&](const BoolLit& l) { out.push_back(PartialBool::literal(l.value)); },
                   [&](const Compare<false>& c) {
                       product(out, downset_of(c.lhs), downset_of(c.rhs),
                               [&](const PartialArith& l, const PartialArith& r) { return PartialBool::compare(c.op, l, r); });
                   },
                   [&](const Negation<false>& n) {
                       for (const auto& o : downset_of(n.operand)) {
                           out.push_back(PartialBool::negation(o));
                       }
                   },
                   [&](const Conjunction<false>& c) {
                       product(out, downset_of(c.lhs), downset_of(c.rhs),
                               [](const PartialBool& l, const PartialBool& r) { return PartialBool::conjunction(l, r); });
                   },
                   [](const Hole&) {},
               },
               top.node());
    return out;
}

std::vector<PartialCommand> downset_of(const Command& top) {
    std::vector<PartialCommand> out{PartialCommand::hole()};
    std::visit(overloaded{
                   [&](const Skip&) { out.push_back(PartialCommand::skip()); },
                   [&](const Assign<false>& a) {
                       for (const auto& e : downset_of(a.expr)) {
                           out.push_back(PartialCommand::assign(a.var, e));
                       }
                   },
                   [&](const Seq<false>& s) {
                       product(out, downset_of(s.first), downset_of(s.second),
                               [](const PartialCommand& f, const PartialCommand& g) { return PartialCommand::seq(f, g); });
                   },
                   [&](const If<false>& i) {
                       const auto conds = downset_of(i.cond);
                       const auto thens = downset_of(i.then_branch);
                       const auto elses = downset_of(i.else_branch);
                       for (const auto& b : conds) {
                           for (const auto& t : thens) {
                               for (const auto& e : elses) {
                                   out.push_back(PartialCommand::if_then_else(b, t, e));
                               }
                           }
                       }
                   },
                   [&](const While<false>& w) {
                       product(out, downset_of(w.cond), downset_of(w.body),
                               [](const PartialBool& b, const PartialCommand& c) { return PartialCommand::while_do(b, c); });
                   },
                   [](const Hole&) {},
               },
               top.node());
    return out;
}

void check_bound(std::uint64_t size, std::uint64_t bound) {
    if (size > bound) {
        throw SizeExceeded(size, bound);
    }
}

} // namespace

std::vector<PartialArith> enumerate_downset(const ArithExpr& top, std::uint64_t bound) {
    check_bound(downset_size(top), bound);
    return downset_of(top);
}

std::vector<PartialBool> enumerate_downset(const BoolExpr& top, std::uint64_t bound) {
    check_bound(downset_size(top), bound);
    return downset_of(top);
}

std::vector<PartialCommand> enumerate_downset(const Command& top, std::uint64_t bound) {
    check_bound(downset_size(top), bound);
    return downset_of(top);
}

std::vector<PartialState> enumerate_downset(const State& top, std::uint64_t bound) {
    check_bound(downset_size(top), bound);
    const std::size_t n = top.size();
    std::vector<PartialState> out;
    out.reserve(std::size_t{1} << n);
    // The first variable varies slowest; a clear bit means a hole.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<PartialState::Entry> entries;
        entries.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool present = (mask >> (n - 1 - i)) & 1U;
            entries.push_back({top[i].name, present ? PartialNat{top[i].value} : std::nullopt});
        }
        out.push_back(PartialState::from_entries(std::move(entries)));
    }
    return out;
}

std::vector<SliceOutcome> enumerate_downset(const Command& program, const State& input, std::uint64_t bound) {
    check_bound(downset_size(program, input), bound);
    const auto programs = downset_of(program);
    const auto states = enumerate_downset(input, bound);
    std::vector<SliceOutcome> out;
    out.reserve(programs.size() * states.size());
    for (const auto& p : programs) {
        for (const auto& s : states) {
            out.push_back({s, p});
        }
    }
    return out;
}

} // namespace impslice
