// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/trace.hpp"

#include "impslice/error.hpp"
#include "impslice/overloaded.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

struct ArithTrace::Impl {
    ArithTraceNode node;
    Nat result;
};

ArithTrace::ArithTrace(ArithTraceNode node, Nat result) : impl_(std::make_shared<const Impl>(Impl{std::move(node), result})) {}
const ArithTraceNode& ArithTrace::node() const { return impl_->node; }
Nat ArithTrace::result() const { return impl_->result; }

struct BoolTrace::Impl {
    BoolTraceNode node;
    bool result;
};

BoolTrace::BoolTrace(BoolTraceNode node, bool result) : impl_(std::make_shared<const Impl>(Impl{std::move(node), result})) {}
const BoolTraceNode& BoolTrace::node() const { return impl_->node; }
bool BoolTrace::result() const { return impl_->result; }

struct CmdTrace::Impl {
    CmdTraceNode node;
    std::shared_ptr<const State> state_in;
    std::shared_ptr<const State> state_out;
};

CmdTrace::CmdTrace(CmdTraceNode node, std::shared_ptr<const State> state_in, std::shared_ptr<const State> state_out)
    : impl_(std::make_shared<const Impl>(Impl{std::move(node), std::move(state_in), std::move(state_out)})) {}
const CmdTraceNode& CmdTrace::node() const { return impl_->node; }
const State& CmdTrace::state_in() const { return *impl_->state_in; }
const State& CmdTrace::state_out() const { return *impl_->state_out; }
const std::shared_ptr<const State>& CmdTrace::shared_state_in() const { return impl_->state_in; }
const std::shared_ptr<const State>& CmdTrace::shared_state_out() const { return impl_->state_out; }

// ---------------------------------------------------------------------------
// Evaluation.

ArithTrace eval_aexp(const State& state, const ArithExpr& a) {
    return std::visit(overloaded{
                          [](const NatLit& n) { return ArithTrace(ArithLitTrace{n.value}, n.value); },
                          [&](const VarRead& v) {
                              auto value = find_value(state, v.name);
                              if (!value) {
                                  throw Error(ErrorKind::unbound_variable, "read of unbound variable '" + v.name + "'");
                              }
                              return ArithTrace(ArithVarTrace{v.name, *value}, *value);
                          },
                          [&](const ArithBinary<false>& b) {
                              auto lhs = eval_aexp(state, b.lhs);
                              auto rhs = eval_aexp(state, b.rhs);
                              const Nat result = apply(b.op, lhs.result(), rhs.result());
                              return ArithTrace(ArithBinaryTrace{b.op, std::move(lhs), std::move(rhs)}, result);
                          },
                          [](const Hole&) -> ArithTrace { throw std::logic_error("hole in a total expression"); },
                      },
                      a.node());
}

BoolTrace eval_bexp(const State& state, const BoolExpr& b) {
    return std::visit(overloaded{
                          [](const BoolLit& l) { return BoolTrace(BoolLitTrace{l.value}, l.value); },
                          [&](const Compare<false>& c) {
                              auto lhs = eval_aexp(state, c.lhs);
                              auto rhs = eval_aexp(state, c.rhs);
                              const bool result = apply(c.op, lhs.result(), rhs.result());
                              return BoolTrace(CompareTrace{c.op, std::move(lhs), std::move(rhs)}, result);
                          },
                          [&](const Negation<false>& n) {
                              auto operand = eval_bexp(state, n.operand);
                              const bool result = !operand.result();
                              return BoolTrace(NegationTrace{std::move(operand)}, result);
                          },
                          [&](const Conjunction<false>& c) {
                              // Both operands are evaluated: the trace always records both.
                              auto lhs = eval_bexp(state, c.lhs);
                              auto rhs = eval_bexp(state, c.rhs);
                              const bool result = lhs.result() && rhs.result();
                              return BoolTrace(ConjunctionTrace{std::move(lhs), std::move(rhs)}, result);
                          },
                          [](const Hole&) -> BoolTrace { throw std::logic_error("hole in a total condition"); },
                      },
                      b.node());
}

namespace {

class Evaluator {
  public:
    explicit Evaluator(std::uint64_t fuel) : fuel_(fuel) {}

    CmdTrace run(const std::shared_ptr<const State>& in, const Command& c) {
        if (fuel_ == 0) {
            throw Error(ErrorKind::fuel_exhausted, "evaluation ran out of fuel");
        }
        --fuel_;
        return std::visit(overloaded{
                              [&](const Skip&) { return CmdTrace(SkipTrace{}, in, in); },
                              [&](const Assign<false>& a) {
                                  auto expr = eval_aexp(*in, a.expr);
                                  auto out = std::make_shared<const State>(state_update(*in, a.var, expr.result()));
                                  return CmdTrace(AssignTrace{a.var, std::move(expr)}, in, std::move(out));
                              },
                              [&](const Seq<false>& s) {
                                  auto first = run(in, s.first);
                                  auto second = run(first.shared_state_out(), s.second);
                                  auto out = second.shared_state_out();
                                  return CmdTrace(SeqTrace{std::move(first), std::move(second)}, in, std::move(out));
                              },
                              [&](const If<false>& i) {
                                  auto cond = eval_bexp(*in, i.cond);
                                  const bool taken = cond.result();
                                  auto branch = run(in, taken ? i.then_branch : i.else_branch);
                                  auto out = branch.shared_state_out();
                                  return CmdTrace(IfTrace{taken, std::move(cond), std::move(branch)}, in, std::move(out));
                              },
                              [&](const While<false>& w) {
                                  auto cond = eval_bexp(*in, w.cond);
                                  if (!cond.result()) {
                                      return CmdTrace(WhileFalseTrace{std::move(cond)}, in, in);
                                  }
                                  auto body = run(in, w.body);
                                  auto rest = run(body.shared_state_out(), c);
                                  auto out = rest.shared_state_out();
                                  return CmdTrace(WhileTrueTrace{std::move(cond), std::move(body), std::move(rest)}, in,
                                                  std::move(out));
                              },
                              [](const Hole&) -> CmdTrace { throw std::logic_error("hole in a total program"); },
                          },
                          c.node());
    }

  private:
    std::uint64_t fuel_;
};

} // namespace

Derivation eval_cmd(const State& state, const Command& c, std::uint64_t fuel) {
    auto trace = Evaluator(fuel).run(std::make_shared<const State>(state), c);
    State output = trace.state_out();
    return Derivation{c, state, std::move(output), std::move(trace)};
}

// ---------------------------------------------------------------------------

namespace {

void collect_stats(const CmdTrace& t, TraceStats& stats) {
    std::visit(overloaded{
                   [](const SkipTrace&) {},
                   [&](const AssignTrace&) { ++stats.assignments; },
                   [&](const SeqTrace& s) {
                       collect_stats(s.first, stats);
                       collect_stats(s.second, stats);
                   },
                   [&](const IfTrace& i) {
                       stats.branch_decisions.push_back(i.taken);
                       collect_stats(i.branch, stats);
                   },
                   [&](const WhileFalseTrace&) { ++stats.loop_condition_evaluations; },
                   [&](const WhileTrueTrace& w) {
                       ++stats.loop_condition_evaluations;
                       ++stats.loop_iterations;
                       collect_stats(w.body, stats);
                       collect_stats(w.rest, stats);
                   },
               },
               t.node());
}

struct Verifier {
    std::string problem;

    bool fail(std::string what) {
        if (problem.empty()) {
            problem = std::move(what);
        }
        return false;
    }

    bool arith(const State& s, const ArithTrace& t) {
        return std::visit(overloaded{
                              [&](const ArithLitTrace& l) { return t.result() == l.value || fail("literal result"); },
                              [&](const ArithVarTrace& v) {
                                  auto value = find_value(s, v.name);
                                  if (!value || *value != v.value || t.result() != v.value) {
                                      return fail("value recorded for '" + v.name + "' differs from the state");
                                  }
                                  return true;
                              },
                              [&](const ArithBinaryTrace& b) {
                                  if (!arith(s, b.lhs) || !arith(s, b.rhs)) {
                                      return false;
                                  }
                                  return t.result() == apply(b.op, b.lhs.result(), b.rhs.result()) ||
                                         fail(std::string("cached result of '") + to_string(b.op) + "'");
                              },
                          },
                          t.node());
    }

    bool boolean(const State& s, const BoolTrace& t) {
        return std::visit(overloaded{
                              [&](const BoolLitTrace& l) { return t.result() == l.value || fail("literal result"); },
                              [&](const CompareTrace& c) {
                                  if (!arith(s, c.lhs) || !arith(s, c.rhs)) {
                                      return false;
                                  }
                                  return t.result() == apply(c.op, c.lhs.result(), c.rhs.result()) ||
                                         fail("cached comparison result");
                              },
                              [&](const NegationTrace& n) {
                                  return boolean(s, n.operand) && (t.result() == !n.operand.result() || fail("cached negation"));
                              },
                              [&](const ConjunctionTrace& c) {
                                  return boolean(s, c.lhs) && boolean(s, c.rhs) &&
                                         (t.result() == (c.lhs.result() && c.rhs.result()) || fail("cached conjunction"));
                              },
                          },
                          t.node());
    }

    bool command(const State& in, const Command& c, const CmdTrace& t) {
        if (t.state_in() != in) {
            return fail("input state annotation differs from the replayed state");
        }
        const bool ok = std::visit(
            overloaded{
                [&](const SkipTrace&, const Skip&) { return t.state_out() == in || fail("skip changed the state"); },
                [&](const AssignTrace& a, const Assign<false>& ca) {
                    if (a.var != ca.var || !arith(in, a.expr)) {
                        return fail("assignment mismatch");
                    }
                    return t.state_out() == state_update(in, a.var, a.expr.result()) || fail("assignment output state");
                },
                [&](const SeqTrace& s, const Seq<false>& cs) {
                    return command(in, cs.first, s.first) && command(s.first.state_out(), cs.second, s.second) &&
                           (t.state_out() == s.second.state_out() || fail("sequence output state"));
                },
                [&](const IfTrace& i, const If<false>& ci) {
                    if (!boolean(in, i.cond) || i.cond.result() != i.taken) {
                        return fail("branch marker disagrees with the guard");
                    }
                    return command(in, i.taken ? ci.then_branch : ci.else_branch, i.branch) &&
                           (t.state_out() == i.branch.state_out() || fail("conditional output state"));
                },
                [&](const WhileFalseTrace& w, const While<false>&) {
                    if (!boolean(in, w.cond) || w.cond.result()) {
                        return fail("while_false marker with a true guard");
                    }
                    return t.state_out() == in || fail("while_false changed the state");
                },
                [&](const WhileTrueTrace& w, const While<false>& cw) {
                    if (!boolean(in, w.cond) || !w.cond.result()) {
                        return fail("while_true marker with a false guard");
                    }
                    return command(in, cw.body, w.body) && command(w.body.state_out(), c, w.rest) &&
                           (t.state_out() == w.rest.state_out() || fail("loop output state"));
                },
                [&](const auto&, const auto&) { return fail("trace shape does not follow the program"); },
            },
            t.node(), c.node());
        return ok;
    }
};

} // namespace

TraceStats trace_stats(const Derivation& d) {
    TraceStats stats;
    collect_stats(d.trace, stats);
    return stats;
}

std::string verify_derivation(const Derivation& d) {
    Verifier v;
    if (v.command(d.input, d.program, d.trace) && d.output != d.trace.state_out()) {
        v.fail("derivation output differs from the trace");
    }
    return v.problem;
}

// ---------------------------------------------------------------------------
// Listing.

namespace {

int precedence(const ArithTrace& t) {
    if (const auto* b = std::get_if<ArithBinaryTrace>(&t.node())) {
        return b->op == ArithOp::mul ? 2 : 1;
    }
    return 3;
}

void emit(std::string& out, const ArithTrace& t) {
    std::visit(overloaded{
                   [&](const ArithLitTrace& l) { out += std::to_string(l.value); },
                   [&](const ArithVarTrace& v) { out += v.name + "(" + std::to_string(v.value) + ")"; },
                   [&](const ArithBinaryTrace& b) {
                       const int prec = b.op == ArithOp::mul ? 2 : 1;
                       const bool wrap_l = precedence(b.lhs) < prec;
                       const bool wrap_r = precedence(b.rhs) <= prec;
                       out += wrap_l ? "(" : "";
                       emit(out, b.lhs);
                       out += wrap_l ? ")" : "";
                       out += std::string(" ") + to_string(b.op) + " ";
                       out += wrap_r ? "(" : "";
                       emit(out, b.rhs);
                       out += wrap_r ? ")" : "";
                   },
               },
               t.node());
}

void emit(std::string& out, const BoolTrace& t) {
    std::visit(overloaded{
                   [&](const BoolLitTrace& l) { out += l.value ? "true" : "false"; },
                   [&](const CompareTrace& c) {
                       emit(out, c.lhs);
                       out += std::string(" ") + to_string(c.op) + " ";
                       emit(out, c.rhs);
                   },
                   [&](const NegationTrace& n) {
                       const bool atomic = std::holds_alternative<BoolLitTrace>(n.operand.node()) ||
                                           std::holds_alternative<NegationTrace>(n.operand.node());
                       out += atomic ? "!" : "!(";
                       emit(out, n.operand);
                       out += atomic ? "" : ")";
                   },
                   [&](const ConjunctionTrace& c) {
                       emit(out, c.lhs);
                       const bool wrap = std::holds_alternative<ConjunctionTrace>(c.rhs.node());
                       out += wrap ? " && (" : " && ";
                       emit(out, c.rhs);
                       out += wrap ? ")" : "";
                   },
               },
               t.node());
}

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

// Emits `t` starting at the current line; callers place separators.
void emit(std::string& out, const CmdTrace& t, int depth) {
    std::visit(overloaded{
                   [&](const SkipTrace&) { out += "skip"; },
                   [&](const AssignTrace& a) {
                       out += a.var + " := ";
                       emit(out, a.expr);
                   },
                   [&](const SeqTrace& s) {
                       emit(out, s.first, depth);
                       out += ";\n";
                       indent(out, depth);
                       emit(out, s.second, depth);
                   },
                   [&](const IfTrace& i) {
                       out += i.taken ? "if_true (" : "if_false (";
                       emit(out, i.cond);
                       out += i.taken ? ") then {\n" : ") else {\n";
                       indent(out, depth + 1);
                       emit(out, i.branch, depth + 1);
                       out += "\n";
                       indent(out, depth);
                       out += "}";
                   },
                   [&](const WhileFalseTrace& w) {
                       out += "while_false (";
                       emit(out, w.cond);
                       out += ")";
                   },
                   [&](const WhileTrueTrace& w) {
                       out += "while_true (";
                       emit(out, w.cond);
                       out += ") do {\n";
                       indent(out, depth + 1);
                       emit(out, w.body, depth + 1);
                       out += "\n";
                       indent(out, depth);
                       out += "};\n";
                       indent(out, depth);
                       emit(out, w.rest, depth);
                   },
               },
               t.node());
}

} // namespace

std::string render_trace(const CmdTrace& t) {
    std::string out;
    emit(out, t, 0);
    return out;
}

std::string render_trace(const ArithTrace& t) {
    std::string out;
    emit(out, t);
    return out;
}

std::string render_trace(const BoolTrace& t) {
    std::string out;
    emit(out, t);
    return out;
}

} // namespace impslice
