// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/ast.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "impslice/error.hpp"
#include "impslice/overloaded.hpp"

namespace impslice {

const char* to_string(ArithOp op) {
    switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
    }
    return "?";
}

const char* to_string(CmpOp op) {
    switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::leq: return "<=";
    }
    return "?";
}

Nat apply(ArithOp op, Nat lhs, Nat rhs) {
    switch (op) {
    case ArithOp::add:
        if (lhs > std::numeric_limits<Nat>::max() - rhs) {
            throw Error(ErrorKind::arithmetic_overflow, "natural overflow in " + std::to_string(lhs) + " + " + std::to_string(rhs));
        }
        return lhs + rhs;
    case ArithOp::sub: return lhs > rhs ? lhs - rhs : 0;
    case ArithOp::mul:
        if (lhs != 0 && rhs > std::numeric_limits<Nat>::max() / lhs) {
            throw Error(ErrorKind::arithmetic_overflow, "natural overflow in " + std::to_string(lhs) + " * " + std::to_string(rhs));
        }
        return lhs * rhs;
    }
    return 0;
}

bool apply(CmpOp op, Nat lhs, Nat rhs) { return op == CmpOp::eq ? lhs == rhs : lhs <= rhs; }

// ---------------------------------------------------------------------------
// Structural equality.

template <bool P> bool operator==(const BasicArith<P>& a, const BasicArith<P>& b) {
    if (a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const Hole&, const Hole&) { return true; },
                          [](const NatLit& x, const NatLit& y) { return x.value == y.value; },
                          [](const VarRead& x, const VarRead& y) { return x.name == y.name; },
                          [](const ArithBinary<P>& x, const ArithBinary<P>& y) {
                              return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
                          },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

template <bool P> bool operator==(const BasicBool<P>& a, const BasicBool<P>& b) {
    if (a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const Hole&, const Hole&) { return true; },
                          [](const BoolLit& x, const BoolLit& y) { return x.value == y.value; },
                          [](const Compare<P>& x, const Compare<P>& y) {
                              return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
                          },
                          [](const Negation<P>& x, const Negation<P>& y) { return x.operand == y.operand; },
                          [](const Conjunction<P>& x, const Conjunction<P>& y) { return x.lhs == y.lhs && x.rhs == y.rhs; },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

template <bool P> bool operator==(const BasicCommand<P>& a, const BasicCommand<P>& b) {
    if (a.same_node(b)) {
        return true;
    }
    return std::visit(overloaded{
                          [](const Hole&, const Hole&) { return true; },
                          [](const Skip&, const Skip&) { return true; },
                          [](const Assign<P>& x, const Assign<P>& y) { return x.var == y.var && x.expr == y.expr; },
                          [](const Seq<P>& x, const Seq<P>& y) { return x.first == y.first && x.second == y.second; },
                          [](const If<P>& x, const If<P>& y) {
                              return x.cond == y.cond && x.then_branch == y.then_branch && x.else_branch == y.else_branch;
                          },
                          [](const While<P>& x, const While<P>& y) { return x.cond == y.cond && x.body == y.body; },
                          [](const auto&, const auto&) { return false; },
                      },
                      a.node(), b.node());
}

template bool operator==(const BasicArith<false>&, const BasicArith<false>&);
template bool operator==(const BasicArith<true>&, const BasicArith<true>&);
template bool operator==(const BasicBool<false>&, const BasicBool<false>&);
template bool operator==(const BasicBool<true>&, const BasicBool<true>&);
template bool operator==(const BasicCommand<false>&, const BasicCommand<false>&);
template bool operator==(const BasicCommand<true>&, const BasicCommand<true>&);

// ---------------------------------------------------------------------------
// States.

template <bool P> BasicState<P> BasicState<P>::from_entries(std::vector<Entry> entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (entries[i].name == entries[j].name) {
                throw Error(ErrorKind::duplicate_variable, "variable '" + entries[i].name + "' is bound more than once");
            }
        }
    }
    return BasicState(std::move(entries));
}

template <bool P> std::optional<std::size_t> BasicState<P>::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

template <bool P> StateDomain BasicState<P>::domain() const {
    StateDomain names;
    names.reserve(entries_.size());
    for (const auto& e : entries_) {
        names.push_back(e.name);
    }
    return names;
}

template <bool P> bool BasicState<P>::same_domain(const BasicState<true>& other) const {
    return std::ranges::equal(entries_, other.entries(), [](const auto& a, const auto& b) { return a.name == b.name; });
}

template <bool P> bool BasicState<P>::same_domain(const BasicState<false>& other) const {
    return std::ranges::equal(entries_, other.entries(), [](const auto& a, const auto& b) { return a.name == b.name; });
}

template <bool P> BasicState<P> BasicState<P>::with_slot(std::size_t i, Slot value) const {
    auto copy = entries_;
    copy[i].value = std::move(value);
    return BasicState(std::move(copy));
}

template class BasicState<false>;
template class BasicState<true>;

std::optional<Nat> find_value(const State& state, std::string_view x) {
    if (auto i = state.index_of(x)) {
        return state[*i].value;
    }
    return std::nullopt;
}

PartialNat state_lookup(const PartialState& state, std::string_view x) {
    if (auto i = state.index_of(x)) {
        return state[*i].value;
    }
    return std::nullopt;
}

State state_update(const State& state, std::string_view x, Nat value) {
    if (auto i = state.index_of(x)) {
        return state.with_slot(*i, value);
    }
    return state;
}

PartialState state_update(const PartialState& state, std::string_view x, PartialNat value) {
    if (auto i = state.index_of(x)) {
        return state.with_slot(*i, value);
    }
    return state;
}

PartialState blank_state(const StateDomain& domain) {
    std::vector<PartialState::Entry> entries;
    entries.reserve(domain.size());
    for (const auto& name : domain) {
        entries.push_back({name, std::nullopt});
    }
    return PartialState::from_entries(std::move(entries));
}

PartialState blank_state(const State& state) { return blank_state(state.domain()); }
PartialState blank_state(const PartialState& state) { return blank_state(state.domain()); }

// ---------------------------------------------------------------------------
// Embeddings.

PartialArith partialize(const ArithExpr& a) {
    return std::visit(overloaded{
                          [](const Hole&) -> PartialArith { return PartialArith::hole(); },
                          [](const NatLit& n) { return PartialArith::nat(n.value); },
                          [](const VarRead& v) { return PartialArith::var(v.name); },
                          [](const ArithBinary<false>& b) {
                              return PartialArith::binary(b.op, partialize(b.lhs), partialize(b.rhs));
                          },
                      },
                      a.node());
}

PartialBool partialize(const BoolExpr& b) {
    return std::visit(overloaded{
                          [](const Hole&) -> PartialBool { return PartialBool::hole(); },
                          [](const BoolLit& l) { return PartialBool::literal(l.value); },
                          [](const Compare<false>& c) {
                              return PartialBool::compare(c.op, partialize(c.lhs), partialize(c.rhs));
                          },
                          [](const Negation<false>& n) { return PartialBool::negation(partialize(n.operand)); },
                          [](const Conjunction<false>& c) {
                              return PartialBool::conjunction(partialize(c.lhs), partialize(c.rhs));
                          },
                      },
                      b.node());
}

PartialCommand partialize(const Command& c) {
    return std::visit(overloaded{
                          [](const Hole&) -> PartialCommand { return PartialCommand::hole(); },
                          [](const Skip&) { return PartialCommand::skip(); },
                          [](const Assign<false>& a) { return PartialCommand::assign(a.var, partialize(a.expr)); },
                          [](const Seq<false>& s) { return PartialCommand::seq(partialize(s.first), partialize(s.second)); },
                          [](const If<false>& i) {
                              return PartialCommand::if_then_else(partialize(i.cond), partialize(i.then_branch),
                                                                  partialize(i.else_branch));
                          },
                          [](const While<false>& w) { return PartialCommand::while_do(partialize(w.cond), partialize(w.body)); },
                      },
                      c.node());
}

PartialState partialize(const State& s) {
    std::vector<PartialState::Entry> entries;
    entries.reserve(s.size());
    for (const auto& e : s.entries()) {
        entries.push_back({e.name, e.value});
    }
    return PartialState::from_entries(std::move(entries));
}

namespace {

std::optional<ArithExpr> complete_arith(const PartialArith& a) {
    return std::visit(overloaded{
                          [](const Hole&) -> std::optional<ArithExpr> { return std::nullopt; },
                          [](const NatLit& n) -> std::optional<ArithExpr> { return ArithExpr::nat(n.value); },
                          [](const VarRead& v) -> std::optional<ArithExpr> { return ArithExpr::var(v.name); },
                          [](const ArithBinary<true>& b) -> std::optional<ArithExpr> {
                              auto l = complete_arith(b.lhs);
                              auto r = complete_arith(b.rhs);
                              if (!l || !r) {
                                  return std::nullopt;
                              }
                              return ArithExpr::binary(b.op, *l, *r);
                          },
                      },
                      a.node());
}

std::optional<BoolExpr> complete_bool(const PartialBool& b) {
    return std::visit(overloaded{
                          [](const Hole&) -> std::optional<BoolExpr> { return std::nullopt; },
                          [](const BoolLit& l) -> std::optional<BoolExpr> { return BoolExpr::literal(l.value); },
                          [](const Compare<true>& c) -> std::optional<BoolExpr> {
                              auto l = complete_arith(c.lhs);
                              auto r = complete_arith(c.rhs);
                              if (!l || !r) {
                                  return std::nullopt;
                              }
                              return BoolExpr::compare(c.op, *l, *r);
                          },
                          [](const Negation<true>& n) -> std::optional<BoolExpr> {
                              auto o = complete_bool(n.operand);
                              if (!o) {
                                  return std::nullopt;
                              }
                              return BoolExpr::negation(*o);
                          },
                          [](const Conjunction<true>& c) -> std::optional<BoolExpr> {
                              auto l = complete_bool(c.lhs);
                              auto r = complete_bool(c.rhs);
                              if (!l || !r) {
                                  return std::nullopt;
                              }
                              return BoolExpr::conjunction(*l, *r);
                          },
                      },
                      b.node());
}

} // namespace

std::optional<Command> complete(const PartialCommand& c) {
    return std::visit(overloaded{
                          [](const Hole&) -> std::optional<Command> { return std::nullopt; },
                          [](const Skip&) -> std::optional<Command> { return Command::skip(); },
                          [](const Assign<true>& a) -> std::optional<Command> {
                              auto e = complete_arith(a.expr);
                              if (!e) {
                                  return std::nullopt;
                              }
                              return Command::assign(a.var, *e);
                          },
                          [](const Seq<true>& s) -> std::optional<Command> {
                              auto f = complete(s.first);
                              auto g = complete(s.second);
                              if (!f || !g) {
                                  return std::nullopt;
                              }
                              return Command::seq(*f, *g);
                          },
                          [](const If<true>& i) -> std::optional<Command> {
                              auto b = complete_bool(i.cond);
                              auto t = complete(i.then_branch);
                              auto e = complete(i.else_branch);
                              if (!b || !t || !e) {
                                  return std::nullopt;
                              }
                              return Command::if_then_else(*b, *t, *e);
                          },
                          [](const While<true>& w) -> std::optional<Command> {
                              auto b = complete_bool(w.cond);
                              auto body = complete(w.body);
                              if (!b || !body) {
                                  return std::nullopt;
                              }
                              return Command::while_do(*b, *body);
                          },
                      },
                      c.node());
}

std::optional<State> complete(const PartialState& s) {
    std::vector<State::Entry> entries;
    entries.reserve(s.size());
    for (const auto& e : s.entries()) {
        if (!e.value) {
            return std::nullopt;
        }
        entries.push_back({e.name, *e.value});
    }
    return State::from_entries(std::move(entries));
}

// ---------------------------------------------------------------------------

template <bool P> std::size_t node_count(const BasicArith<P>& a) {
    if (const auto* b = std::get_if<ArithBinary<P>>(&a.node())) {
        return 1 + node_count(b->lhs) + node_count(b->rhs);
    }
    return 1;
}

template <bool P> std::size_t node_count(const BasicBool<P>& b) {
    return std::visit(overloaded{
                          [](const Compare<P>& c) { return 1 + node_count(c.lhs) + node_count(c.rhs); },
                          [](const Negation<P>& n) { return 1 + node_count(n.operand); },
                          [](const Conjunction<P>& c) { return 1 + node_count(c.lhs) + node_count(c.rhs); },
                          [](const auto&) -> std::size_t { return 1; },
                      },
                      b.node());
}

template <bool P> std::size_t node_count(const BasicCommand<P>& c) {
    return std::visit(overloaded{
                          [](const Assign<P>& a) { return 1 + node_count(a.expr); },
                          [](const Seq<P>& s) { return 1 + node_count(s.first) + node_count(s.second); },
                          [](const If<P>& i) {
                              return 1 + node_count(i.cond) + node_count(i.then_branch) + node_count(i.else_branch);
                          },
                          [](const While<P>& w) { return 1 + node_count(w.cond) + node_count(w.body); },
                          [](const auto&) -> std::size_t { return 1; },
                      },
                      c.node());
}

template <bool P> bool contains_hole(const BasicCommand<P>& c) {
    if constexpr (!P) {
        return false;
    } else {
        return !complete(c).has_value();
    }
}

template std::size_t node_count(const BasicArith<false>&);
template std::size_t node_count(const BasicArith<true>&);
template std::size_t node_count(const BasicBool<false>&);
template std::size_t node_count(const BasicBool<true>&);
template std::size_t node_count(const BasicCommand<false>&);
template std::size_t node_count(const BasicCommand<true>&);
template bool contains_hole(const BasicCommand<false>&);
template bool contains_hole(const BasicCommand<true>&);

} // namespace impslice
