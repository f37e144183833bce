// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/slicer.hpp"

#include "impslice/error.hpp"
#include "impslice/overloaded.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

namespace {

[[noreturn]] void off_trace(const std::string& term) {
    throw Error(ErrorKind::lattice_mismatch, "'" + term + "' does not follow the recorded trace");
}

void require_domain(const CmdTrace& t, const PartialState& state) {
    if (!state.same_domain(t.state_in())) {
        throw Error(ErrorKind::lattice_mismatch,
                    "state '" + render(state) + "' does not have the trace's domain (" + render(t.state_in()) + ")");
    }
}

// ---------------------------------------------------------------------------
// Forward.

PartialNat fwd_arith(const ArithTrace& t, const PartialState& state, const PartialArith& a) {
    if (a.is_hole()) {
        return std::nullopt;
    }
    return std::visit(overloaded{
                          [&](const ArithLitTrace& tl, const NatLit& l) -> PartialNat {
                              if (tl.value != l.value) {
                                  off_trace(render(a));
                              }
                              return l.value;
                          },
                          [&](const ArithVarTrace& tv, const VarRead& v) -> PartialNat {
                              if (tv.name != v.name) {
                                  off_trace(render(a));
                              }
                              // The partial state decides, not the recorded value.
                              return state_lookup(state, v.name);
                          },
                          [&](const ArithBinaryTrace& tb, const ArithBinary<true>& b) -> PartialNat {
                              if (tb.op != b.op) {
                                  off_trace(render(a));
                              }
                              const PartialNat lhs = fwd_arith(tb.lhs, state, b.lhs);
                              const PartialNat rhs = fwd_arith(tb.rhs, state, b.rhs);
                              if (!lhs || !rhs) {
                                  return std::nullopt;
                              }
                              return apply(b.op, *lhs, *rhs);
                          },
                          [&](const auto&, const auto&) -> PartialNat { off_trace(render(a)); },
                      },
                      t.node(), a.node());
}

PartialTruth fwd_bool(const BoolTrace& t, const PartialState& state, const PartialBool& b) {
    if (b.is_hole()) {
        return std::nullopt;
    }
    return std::visit(overloaded{
                          [&](const BoolLitTrace& tl, const BoolLit& l) -> PartialTruth {
                              if (tl.value != l.value) {
                                  off_trace(render(b));
                              }
                              return l.value;
                          },
                          [&](const CompareTrace& tc, const Compare<true>& c) -> PartialTruth {
                              if (tc.op != c.op) {
                                  off_trace(render(b));
                              }
                              const PartialNat lhs = fwd_arith(tc.lhs, state, c.lhs);
                              const PartialNat rhs = fwd_arith(tc.rhs, state, c.rhs);
                              if (!lhs || !rhs) {
                                  return std::nullopt;
                              }
                              return apply(c.op, *lhs, *rhs);
                          },
                          [&](const NegationTrace& tn, const Negation<true>& n) -> PartialTruth {
                              const PartialTruth v = fwd_bool(tn.operand, state, n.operand);
                              if (!v) {
                                  return std::nullopt;
                              }
                              return !*v;
                          },
                          [&](const ConjunctionTrace& tc, const Conjunction<true>& c) -> PartialTruth {
                              const PartialTruth lhs = fwd_bool(tc.lhs, state, c.lhs);
                              const PartialTruth rhs = fwd_bool(tc.rhs, state, c.rhs);
                              if (!lhs || !rhs) {
                                  return std::nullopt;
                              }
                              return *lhs && *rhs;
                          },
                          [&](const auto&, const auto&) -> PartialTruth { off_trace(render(b)); },
                      },
                      t.node(), b.node());
}

/// Forward slice of a hole command: erases every variable written in `t`.
PartialState erase_writes(const CmdTrace& t, const PartialState& state) {
    return std::visit(overloaded{
                          [&](const SkipTrace&) { return state; },
                          [&](const AssignTrace& a) { return state_update(state, a.var, std::nullopt); },
                          [&](const SeqTrace& s) { return erase_writes(s.second, erase_writes(s.first, state)); },
                          [&](const IfTrace& i) { return erase_writes(i.branch, state); },
                          [&](const WhileFalseTrace&) { return state; },
                          [&](const WhileTrueTrace& w) { return erase_writes(w.rest, erase_writes(w.body, state)); },
                      },
                      t.node());
}

PartialState fwd_command(const CmdTrace& t, const PartialState& state, const PartialCommand& c) {
    if (c.is_hole()) {
        return erase_writes(t, state);
    }
    return std::visit(
        overloaded{
            [&](const SkipTrace&, const Skip&) { return state; },
            [&](const AssignTrace& ta, const Assign<true>& a) {
                if (ta.var != a.var) {
                    off_trace(render(c));
                }
                return state_update(state, a.var, fwd_arith(ta.expr, state, a.expr));
            },
            [&](const SeqTrace& ts, const Seq<true>& s) {
                return fwd_command(ts.second, fwd_command(ts.first, state, s.first), s.second);
            },
            [&](const IfTrace& ti, const If<true>& i) {
                const PartialTruth guard = fwd_bool(ti.cond, state, i.cond);
                if (!guard) {
                    return erase_writes(ti.branch, state);
                }
                if (*guard != ti.taken) {
                    off_trace(render(c));
                }
                return fwd_command(ti.branch, state, ti.taken ? i.then_branch : i.else_branch);
            },
            [&](const WhileFalseTrace& tw, const While<true>& w) {
                const PartialTruth guard = fwd_bool(tw.cond, state, w.cond);
                if (guard && *guard) {
                    off_trace(render(c));
                }
                return state;
            },
            [&](const WhileTrueTrace& tw, const While<true>& w) {
                const PartialTruth guard = fwd_bool(tw.cond, state, w.cond);
                if (!guard) {
                    return erase_writes(tw.rest, erase_writes(tw.body, state));
                }
                if (!*guard) {
                    off_trace(render(c));
                }
                return fwd_command(tw.rest, fwd_command(tw.body, state, w.body), c);
            },
            [&](const auto&, const auto&) -> PartialState { off_trace(render(c)); },
        },
        t.node(), c.node());
}

// ---------------------------------------------------------------------------
// Backward.

struct Backward {
    const PartialState& blank;

    ExprSlice<PartialArith> arith(const ArithTrace& t, const PartialNat& criterion) const {
        if (!criterion) {
            return {blank, PartialArith::hole()};
        }
        if (*criterion != t.result()) {
            throw Error(ErrorKind::criterion_mismatch, "criterion " + std::to_string(*criterion) + " for '" +
                                                           render_trace(t) + "', which evaluated to " +
                                                           std::to_string(t.result()));
        }
        return std::visit(overloaded{
                              [&](const ArithLitTrace& l) -> ExprSlice<PartialArith> { return {blank, PartialArith::nat(l.value)}; },
                              [&](const ArithVarTrace& v) -> ExprSlice<PartialArith> {
                                  return {state_update(blank, v.name, v.value), PartialArith::var(v.name)};
                              },
                              [&](const ArithBinaryTrace& b) -> ExprSlice<PartialArith> {
                                  auto lhs = arith(b.lhs, b.lhs.result());
                                  auto rhs = arith(b.rhs, b.rhs.result());
                                  return {join(lhs.demand, rhs.demand), PartialArith::binary(b.op, lhs.expr, rhs.expr)};
                              },
                          },
                          t.node());
    }

    ExprSlice<PartialBool> boolean(const BoolTrace& t, const PartialTruth& criterion) const {
        if (!criterion) {
            return {blank, PartialBool::hole()};
        }
        if (*criterion != t.result()) {
            throw Error(ErrorKind::criterion_mismatch, std::string("criterion ") + (*criterion ? "true" : "false") +
                                                           " for '" + render_trace(t) + "', which evaluated to " +
                                                           (t.result() ? "true" : "false"));
        }
        return std::visit(overloaded{
                              [&](const BoolLitTrace& l) -> ExprSlice<PartialBool> { return {blank, PartialBool::literal(l.value)}; },
                              [&](const CompareTrace& c) -> ExprSlice<PartialBool> {
                                  auto lhs = arith(c.lhs, c.lhs.result());
                                  auto rhs = arith(c.rhs, c.rhs.result());
                                  return {join(lhs.demand, rhs.demand), PartialBool::compare(c.op, lhs.expr, rhs.expr)};
                              },
                              [&](const NegationTrace& n) -> ExprSlice<PartialBool> {
                                  auto operand = boolean(n.operand, n.operand.result());
                                  return {std::move(operand.demand), PartialBool::negation(operand.expr)};
                              },
                              [&](const ConjunctionTrace& c) -> ExprSlice<PartialBool> {
                                  auto lhs = boolean(c.lhs, c.lhs.result());
                                  auto rhs = boolean(c.rhs, c.rhs.result());
                                  return {join(lhs.demand, rhs.demand), PartialBool::conjunction(lhs.expr, rhs.expr)};
                              },
                          },
                          t.node());
    }

    SliceOutcome command(const CmdTrace& t, const PartialState& criterion) const {
        if (criterion.empty()) {
            return {criterion, PartialCommand::hole()};
        }
        return std::visit(
            overloaded{
                [&](const SkipTrace&) -> SliceOutcome { return {criterion, PartialCommand::hole()}; },
                [&](const AssignTrace& a) -> SliceOutcome {
                    const PartialNat wanted = state_lookup(criterion, a.var);
                    if (!wanted) {
                        return {criterion, PartialCommand::hole()};
                    }
                    auto rhs = arith(a.expr, wanted);
                    // x is overwritten, so its prior value is only needed if the RHS reads it.
                    return {join(rhs.demand, state_update(criterion, a.var, std::nullopt)),
                            PartialCommand::assign(a.var, rhs.expr)};
                },
                [&](const SeqTrace& s) -> SliceOutcome {
                    auto second = command(s.second, criterion);
                    auto first = command(s.first, second.input_slice);
                    if (first.program_slice.is_hole() && second.program_slice.is_hole()) {
                        return {std::move(first.input_slice), PartialCommand::hole()};
                    }
                    return {std::move(first.input_slice), PartialCommand::seq(first.program_slice, second.program_slice)};
                },
                [&](const IfTrace& i) -> SliceOutcome {
                    auto branch = command(i.branch, criterion);
                    if (branch.program_slice.is_hole()) {
                        return branch;
                    }
                    auto guard = boolean(i.cond, i.taken);
                    auto program = i.taken
                                       ? PartialCommand::if_then_else(guard.expr, branch.program_slice, PartialCommand::hole())
                                       : PartialCommand::if_then_else(guard.expr, PartialCommand::hole(), branch.program_slice);
                    return {join(branch.input_slice, guard.demand), std::move(program)};
                },
                [&](const WhileFalseTrace&) -> SliceOutcome { return {criterion, PartialCommand::hole()}; },
                [&](const WhileTrueTrace& w) -> SliceOutcome {
                    auto rest = command(w.rest, criterion);
                    auto body = command(w.body, rest.input_slice);
                    if (rest.program_slice.is_hole() && body.program_slice.is_hole()) {
                        return {std::move(body.input_slice), PartialCommand::hole()};
                    }
                    auto guard = boolean(w.cond, true);
                    auto loop = PartialCommand::while_do(guard.expr, body.program_slice);
                    auto program = rest.program_slice.is_hole() ? std::move(loop) : join(rest.program_slice, loop);
                    return {join(body.input_slice, guard.demand), std::move(program)};
                },
            },
            t.node());
    }
};

} // namespace

PartialNat fwd_aexp(const ArithTrace& t, const PartialState& state, const PartialArith& a) { return fwd_arith(t, state, a); }

PartialTruth fwd_bexp(const BoolTrace& t, const PartialState& state, const PartialBool& b) { return fwd_bool(t, state, b); }

PartialState fwd_cmd(const CmdTrace& t, const PartialState& state, const PartialCommand& c) {
    require_domain(t, state);
    return fwd_command(t, state, c);
}

PartialState forward_slice(const Derivation& d, const SliceOutcome& input) {
    check_prefix(input.program_slice, d.program);
    check_prefix(input.input_slice, d.input);
    return fwd_command(d.trace, input.input_slice, input.program_slice);
}

ExprSlice<PartialArith> bwd_aexp(const ArithTrace& t, const StateDomain& domain, const PartialNat& criterion) {
    const PartialState blank = blank_state(domain);
    return Backward{blank}.arith(t, criterion);
}

ExprSlice<PartialBool> bwd_bexp(const BoolTrace& t, const StateDomain& domain, const PartialTruth& criterion) {
    const PartialState blank = blank_state(domain);
    return Backward{blank}.boolean(t, criterion);
}

SliceOutcome bwd_cmd(const CmdTrace& t, const PartialState& criterion) {
    const State& output = t.state_out();
    if (!criterion.same_domain(output)) {
        throw Error(ErrorKind::lattice_mismatch,
                    "criterion '" + render(criterion) + "' does not have the output domain (" + render(output) + ")");
    }
    for (std::size_t i = 0; i < criterion.size(); ++i) {
        if (criterion[i].value && *criterion[i].value != output[i].value) {
            throw Error(ErrorKind::criterion_mismatch, "criterion asks for " + criterion[i].name + " = " +
                                                           std::to_string(*criterion[i].value) + " but the run produced " +
                                                           std::to_string(output[i].value));
        }
    }
    const PartialState blank = blank_state(criterion);
    return Backward{blank}.command(t, criterion);
}

} // namespace impslice
