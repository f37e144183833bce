// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "impslice/ast.hpp"

namespace impslice {

// Traces are value-annotated derivation trees of a terminated evaluation.
// Every node caches its result (and, for commands, the states around it) so
// slicing never re-evaluates.

struct ArithLitTrace;
struct ArithVarTrace;
struct ArithBinaryTrace;
using ArithTraceNode = std::variant<ArithLitTrace, ArithVarTrace, ArithBinaryTrace>;

class ArithTrace {
  public:
    ArithTrace(ArithTraceNode node, Nat result);
    [[nodiscard]] const ArithTraceNode& node() const;
    [[nodiscard]] Nat result() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct ArithLitTrace {
    Nat value;
};
/// Records the value read from the state at evaluation time.
struct ArithVarTrace {
    std::string name;
    Nat value;
};
struct ArithBinaryTrace {
    ArithOp op;
    ArithTrace lhs;
    ArithTrace rhs;
};

struct BoolLitTrace;
struct CompareTrace;
struct NegationTrace;
struct ConjunctionTrace;
using BoolTraceNode = std::variant<BoolLitTrace, CompareTrace, NegationTrace, ConjunctionTrace>;

class BoolTrace {
  public:
    BoolTrace(BoolTraceNode node, bool result);
    [[nodiscard]] const BoolTraceNode& node() const;
    [[nodiscard]] bool result() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct BoolLitTrace {
    bool value;
};
struct CompareTrace {
    CmpOp op;
    ArithTrace lhs;
    ArithTrace rhs;
};
struct NegationTrace {
    BoolTrace operand;
};
struct ConjunctionTrace {
    BoolTrace lhs;
    BoolTrace rhs;
};

struct SkipTrace;
struct AssignTrace;
struct SeqTrace;
struct IfTrace;
struct WhileFalseTrace;
struct WhileTrueTrace;
using CmdTraceNode = std::variant<SkipTrace, AssignTrace, SeqTrace, IfTrace, WhileFalseTrace, WhileTrueTrace>;

class CmdTrace {
  public:
    CmdTrace(CmdTraceNode node, std::shared_ptr<const State> state_in, std::shared_ptr<const State> state_out);
    [[nodiscard]] const CmdTraceNode& node() const;
    [[nodiscard]] const State& state_in() const;
    [[nodiscard]] const State& state_out() const;
    [[nodiscard]] const std::shared_ptr<const State>& shared_state_in() const;
    [[nodiscard]] const std::shared_ptr<const State>& shared_state_out() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct SkipTrace {};
struct AssignTrace {
    std::string var;
    ArithTrace expr;
};
struct SeqTrace {
    CmdTrace first;
    CmdTrace second;
};
/// `taken` is the guard's value: true for the then branch, false for else.
struct IfTrace {
    bool taken;
    BoolTrace cond;
    CmdTrace branch;
};
struct WhileFalseTrace {
    BoolTrace cond;
};
/// One iteration (`body`) followed by the trace of the remaining loop.
struct WhileTrueTrace {
    BoolTrace cond;
    CmdTrace body;
    CmdTrace rest;
};

struct Derivation {
    Command program;
    State input;
    State output;
    CmdTrace trace;
};

inline constexpr std::uint64_t default_fuel = 100000;

/// Throws Error(unbound_variable) on reads of variables outside the state.
ArithTrace eval_aexp(const State& state, const ArithExpr& a);
BoolTrace eval_bexp(const State& state, const BoolExpr& b);

/// Big-step evaluation; each command rule application consumes one unit of
/// fuel. Throws Error(fuel_exhausted) when `fuel` runs out.
Derivation eval_cmd(const State& state, const Command& c, std::uint64_t fuel = default_fuel);

struct TraceStats {
    std::uint64_t assignments = 0;
    std::uint64_t loop_iterations = 0;
    std::uint64_t loop_condition_evaluations = 0;
    std::vector<bool> branch_decisions;
    bool operator==(const TraceStats&) const = default;
};

TraceStats trace_stats(const Derivation& d);

/// Re-derives every cached value and state from the leaves and the input.
/// Returns an empty string when the trace is coherent, otherwise a
/// description of the first inconsistency.
std::string verify_derivation(const Derivation& d);

/// Indented listing with the values read at every variable.
std::string render_trace(const CmdTrace& t);
std::string render_trace(const ArithTrace& t);
std::string render_trace(const BoolTrace& t);

} // namespace impslice
