// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace impslice {

using Nat = std::uint64_t;

/// A natural number or a hole (std::nullopt).
using PartialNat = std::optional<Nat>;

enum class ArithOp : std::uint8_t { add, sub, mul };
enum class CmpOp : std::uint8_t { eq, leq };

const char* to_string(ArithOp op);
const char* to_string(CmpOp op);

/// Applies `op` to naturals. Subtraction truncates at zero; overflow throws
/// Error(arithmetic_overflow).
Nat apply(ArithOp op, Nat lhs, Nat rhs);
bool apply(CmpOp op, Nat lhs, Nat rhs);

/// Bottom of every partial lattice. Only admitted by the `Partial = true`
/// instantiations below.
struct Hole {
    bool operator==(const Hole&) const = default;
};

// ---------------------------------------------------------------------------
// Expressions and commands. `Partial` selects the hole-extended syntax.
// Nodes are immutable and shared; copying a term is O(1).

template <bool Partial> class BasicArith;
template <bool Partial> class BasicBool;
template <bool Partial> class BasicCommand;

struct NatLit {
    Nat value;
};
struct VarRead {
    std::string name;
};
template <bool Partial> struct ArithBinary;

template <bool Partial> using ArithNode = std::variant<Hole, NatLit, VarRead, ArithBinary<Partial>>;

template <bool Partial> class BasicArith {
  public:
    using Node = ArithNode<Partial>;

    static BasicArith nat(Nat n) { return BasicArith(Node{NatLit{n}}); }
    static BasicArith var(std::string name) { return BasicArith(Node{VarRead{std::move(name)}}); }
    static BasicArith binary(ArithOp op, BasicArith lhs, BasicArith rhs);
    static BasicArith hole()
        requires Partial
    {
        return BasicArith(Node{Hole{}});
    }

    [[nodiscard]] const Node& node() const { return *node_; }
    [[nodiscard]] bool is_hole() const { return std::holds_alternative<Hole>(*node_); }
    [[nodiscard]] bool same_node(const BasicArith& other) const { return node_ == other.node_; }

  private:
    explicit BasicArith(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
    std::shared_ptr<const Node> node_;
};

template <bool Partial> struct ArithBinary {
    ArithOp op;
    BasicArith<Partial> lhs;
    BasicArith<Partial> rhs;
};

template <bool Partial> BasicArith<Partial> BasicArith<Partial>::binary(ArithOp op, BasicArith lhs, BasicArith rhs) {
    return BasicArith(Node{ArithBinary<Partial>{op, std::move(lhs), std::move(rhs)}});
}

struct BoolLit {
    bool value;
};
template <bool Partial> struct Compare;
template <bool Partial> struct Negation;
template <bool Partial> struct Conjunction;

template <bool Partial>
using BoolNode = std::variant<Hole, BoolLit, Compare<Partial>, Negation<Partial>, Conjunction<Partial>>;

template <bool Partial> class BasicBool {
  public:
    using Node = BoolNode<Partial>;

    static BasicBool literal(bool value) { return BasicBool(Node{BoolLit{value}}); }
    static BasicBool compare(CmpOp op, BasicArith<Partial> lhs, BasicArith<Partial> rhs);
    static BasicBool negation(BasicBool operand);
    static BasicBool conjunction(BasicBool lhs, BasicBool rhs);
    static BasicBool hole()
        requires Partial
    {
        return BasicBool(Node{Hole{}});
    }

    [[nodiscard]] const Node& node() const { return *node_; }
    [[nodiscard]] bool is_hole() const { return std::holds_alternative<Hole>(*node_); }
    [[nodiscard]] bool same_node(const BasicBool& other) const { return node_ == other.node_; }

  private:
    explicit BasicBool(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
    std::shared_ptr<const Node> node_;
};

template <bool Partial> struct Compare {
    CmpOp op;
    BasicArith<Partial> lhs;
    BasicArith<Partial> rhs;
};
template <bool Partial> struct Negation {
    BasicBool<Partial> operand;
};
template <bool Partial> struct Conjunction {
    BasicBool<Partial> lhs;
    BasicBool<Partial> rhs;
};

template <bool Partial> BasicBool<Partial> BasicBool<Partial>::compare(CmpOp op, BasicArith<Partial> lhs, BasicArith<Partial> rhs) {
    return BasicBool(Node{Compare<Partial>{op, std::move(lhs), std::move(rhs)}});
}
template <bool Partial> BasicBool<Partial> BasicBool<Partial>::negation(BasicBool operand) {
    return BasicBool(Node{Negation<Partial>{std::move(operand)}});
}
template <bool Partial> BasicBool<Partial> BasicBool<Partial>::conjunction(BasicBool lhs, BasicBool rhs) {
    return BasicBool(Node{Conjunction<Partial>{std::move(lhs), std::move(rhs)}});
}

struct Skip {};
template <bool Partial> struct Assign;
template <bool Partial> struct Seq;
template <bool Partial> struct If;
template <bool Partial> struct While;

template <bool Partial>
using CommandNode = std::variant<Hole, Skip, Assign<Partial>, Seq<Partial>, If<Partial>, While<Partial>>;

template <bool Partial> class BasicCommand {
  public:
    using Node = CommandNode<Partial>;

    static BasicCommand skip() { return BasicCommand(Node{Skip{}}); }
    static BasicCommand assign(std::string var, BasicArith<Partial> expr);
    static BasicCommand seq(BasicCommand first, BasicCommand second);
    static BasicCommand if_then_else(BasicBool<Partial> cond, BasicCommand then_branch, BasicCommand else_branch);
    static BasicCommand while_do(BasicBool<Partial> cond, BasicCommand body);
    static BasicCommand hole()
        requires Partial
    {
        return BasicCommand(Node{Hole{}});
    }

    [[nodiscard]] const Node& node() const { return *node_; }
    [[nodiscard]] bool is_hole() const { return std::holds_alternative<Hole>(*node_); }
    [[nodiscard]] bool same_node(const BasicCommand& other) const { return node_ == other.node_; }

  private:
    explicit BasicCommand(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
    std::shared_ptr<const Node> node_;
};

template <bool Partial> struct Assign {
    std::string var;
    BasicArith<Partial> expr;
};
template <bool Partial> struct Seq {
    BasicCommand<Partial> first;
    BasicCommand<Partial> second;
};
template <bool Partial> struct If {
    BasicBool<Partial> cond;
    BasicCommand<Partial> then_branch;
    BasicCommand<Partial> else_branch;
};
template <bool Partial> struct While {
    BasicBool<Partial> cond;
    BasicCommand<Partial> body;
};

template <bool Partial> BasicCommand<Partial> BasicCommand<Partial>::assign(std::string var, BasicArith<Partial> expr) {
    return BasicCommand(Node{Assign<Partial>{std::move(var), std::move(expr)}});
}
template <bool Partial> BasicCommand<Partial> BasicCommand<Partial>::seq(BasicCommand first, BasicCommand second) {
    return BasicCommand(Node{Seq<Partial>{std::move(first), std::move(second)}});
}
template <bool Partial>
BasicCommand<Partial> BasicCommand<Partial>::if_then_else(BasicBool<Partial> cond, BasicCommand then_branch,
                                                          BasicCommand else_branch) {
    return BasicCommand(Node{If<Partial>{std::move(cond), std::move(then_branch), std::move(else_branch)}});
}
template <bool Partial> BasicCommand<Partial> BasicCommand<Partial>::while_do(BasicBool<Partial> cond, BasicCommand body) {
    return BasicCommand(Node{While<Partial>{std::move(cond), std::move(body)}});
}

using ArithExpr = BasicArith<false>;
using BoolExpr = BasicBool<false>;
using Command = BasicCommand<false>;
using PartialArith = BasicArith<true>;
using PartialBool = BasicBool<true>;
using PartialCommand = BasicCommand<true>;

template <bool P> bool operator==(const BasicArith<P>& a, const BasicArith<P>& b);
template <bool P> bool operator==(const BasicBool<P>& a, const BasicBool<P>& b);
template <bool P> bool operator==(const BasicCommand<P>& a, const BasicCommand<P>& b);

extern template bool operator==(const BasicArith<false>&, const BasicArith<false>&);
extern template bool operator==(const BasicArith<true>&, const BasicArith<true>&);
extern template bool operator==(const BasicBool<false>&, const BasicBool<false>&);
extern template bool operator==(const BasicBool<true>&, const BasicBool<true>&);
extern template bool operator==(const BasicCommand<false>&, const BasicCommand<false>&);
extern template bool operator==(const BasicCommand<true>&, const BasicCommand<true>&);

// ---------------------------------------------------------------------------
// States: ordered, duplicate-free variable bindings. The domain and its order
// never change once a state exists.

using StateDomain = std::vector<std::string>;

template <bool Partial> class BasicState {
  public:
    using Slot = std::conditional_t<Partial, PartialNat, Nat>;
    struct Entry {
        std::string name;
        Slot value;
        bool operator==(const Entry&) const = default;
    };

    BasicState() = default;

    /// Throws Error(duplicate_variable) when a name repeats.
    static BasicState from_entries(std::vector<Entry> entries);

    [[nodiscard]] std::span<const Entry> entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] StateDomain domain() const;
    [[nodiscard]] bool same_domain(const BasicState<true>& other) const;
    [[nodiscard]] bool same_domain(const BasicState<false>& other) const;

    /// Positional access; `i < size()`.
    [[nodiscard]] const Entry& operator[](std::size_t i) const { return entries_[i]; }

    /// Replaces the slot at `i`; the domain is unchanged.
    [[nodiscard]] BasicState with_slot(std::size_t i, Slot value) const;

    bool operator==(const BasicState&) const = default;

  private:
    explicit BasicState(std::vector<Entry> entries) : entries_(std::move(entries)) {}
    std::vector<Entry> entries_;
};

using State = BasicState<false>;
using PartialState = BasicState<true>;

extern template class BasicState<false>;
extern template class BasicState<true>;

/// Value of `x` in a total state, or nullopt when `x` is not bound.
std::optional<Nat> find_value(const State& state, std::string_view x);

/// Lookup in a partial state; unbound names read as a hole.
PartialNat state_lookup(const PartialState& state, std::string_view x);

/// Updates `x` in place when bound; otherwise returns the state unchanged.
State state_update(const State& state, std::string_view x, Nat value);
PartialState state_update(const PartialState& state, std::string_view x, PartialNat value);

/// Same domain and order, every variable mapped to a hole.
PartialState blank_state(const StateDomain& domain);
PartialState blank_state(const State& state);
PartialState blank_state(const PartialState& state);

// Hole-free embeddings of total terms into their partial counterparts.
PartialArith partialize(const ArithExpr& a);
PartialBool partialize(const BoolExpr& b);
PartialCommand partialize(const Command& c);
PartialState partialize(const State& s);

/// Inverse of `partialize` on hole-free terms; nullopt if any hole remains.
std::optional<Command> complete(const PartialCommand& c);
std::optional<State> complete(const PartialState& s);

/// Number of syntax nodes (commands and expressions), holes counting as one.
template <bool P> std::size_t node_count(const BasicArith<P>& a);
template <bool P> std::size_t node_count(const BasicBool<P>& b);
template <bool P> std::size_t node_count(const BasicCommand<P>& c);

template <bool P> bool contains_hole(const BasicCommand<P>& c);

} // namespace impslice
