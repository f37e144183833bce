// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/overloaded.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

namespace {

int precedence(ArithOp op) { return op == ArithOp::mul ? 2 : 1; }

template <bool P> int precedence(const BasicArith<P>& a) {
    if (const auto* b = std::get_if<ArithBinary<P>>(&a.node())) {
        return precedence(b->op);
    }
    return 3;
}

/// Emits terms while numbering nodes in preorder. When `spans` is set, the
/// extent of every node is recorded at its preorder index.
class Printer {
  public:
    Printer(bool pretty, std::vector<Span>* spans) : pretty_(pretty), spans_(spans) {}

    std::string take() { return std::move(out_); }

    template <bool P> void arith(const BasicArith<P>& a) {
        const std::size_t id = open();
        std::visit(overloaded{
                       [&](const Hole&) { out_ += "_"; },
                       [&](const NatLit& n) { out_ += std::to_string(n.value); },
                       [&](const VarRead& v) { out_ += v.name; },
                       [&](const ArithBinary<P>& b) {
                           const int prec = precedence(b.op);
                           parenthesized(precedence(b.lhs) < prec, [&] { arith(b.lhs); });
                           out_ += " ";
                           out_ += to_string(b.op);
                           out_ += " ";
                           parenthesized(precedence(b.rhs) <= prec, [&] { arith(b.rhs); });
                       },
                   },
                   a.node());
        close(id);
    }

    template <bool P> void boolean(const BasicBool<P>& b) {
        const std::size_t id = open();
        std::visit(overloaded{
                       [&](const Hole&) { out_ += "_"; },
                       [&](const BoolLit& l) { out_ += l.value ? "true" : "false"; },
                       [&](const Compare<P>& c) {
                           arith(c.lhs);
                           out_ += " ";
                           out_ += to_string(c.op);
                           out_ += " ";
                           arith(c.rhs);
                       },
                       [&](const Negation<P>& n) {
                           out_ += "!";
                           const bool atomic = std::holds_alternative<Hole>(n.operand.node()) ||
                                               std::holds_alternative<BoolLit>(n.operand.node()) ||
                                               std::holds_alternative<Negation<P>>(n.operand.node());
                           parenthesized(!atomic, [&] { boolean(n.operand); });
                       },
                       [&](const Conjunction<P>& c) {
                           boolean(c.lhs);
                           out_ += " && ";
                           parenthesized(std::holds_alternative<Conjunction<P>>(c.rhs.node()), [&] { boolean(c.rhs); });
                       },
                   },
                   b.node());
        close(id);
    }

    template <bool P> void command(const BasicCommand<P>& c) {
        const std::size_t id = open();
        std::visit(overloaded{
                       [&](const Hole&) { out_ += "_"; },
                       [&](const Skip&) { out_ += "skip"; },
                       [&](const Assign<P>& a) {
                           out_ += a.var;
                           out_ += " := ";
                           arith(a.expr);
                       },
                       [&](const Seq<P>& s) {
                           // `;` is right-associative; a nested left sequence needs a block.
                           if (std::holds_alternative<Seq<P>>(s.first.node())) {
                               block([&] { command(s.first); });
                           } else {
                               command(s.first);
                           }
                           if (pretty_) {
                               out_ += ";";
                               newline();
                           } else {
                               out_ += " ; ";
                           }
                           command(s.second);
                       },
                       [&](const If<P>& i) {
                           out_ += "if (";
                           boolean(i.cond);
                           out_ += ") then ";
                           block([&] { command(i.then_branch); });
                           out_ += " else ";
                           block([&] { command(i.else_branch); });
                       },
                       [&](const While<P>& w) {
                           out_ += "while (";
                           boolean(w.cond);
                           out_ += ") do ";
                           block([&] { command(w.body); });
                       },
                   },
                   c.node());
        close(id);
    }

  private:
    std::size_t open() {
        const std::size_t id = next_id_++;
        if (spans_ != nullptr) {
            if (spans_->size() <= id) {
                spans_->resize(id + 1);
            }
            (*spans_)[id].begin = out_.size();
        }
        return id;
    }

    void close(std::size_t id) {
        if (spans_ != nullptr) {
            (*spans_)[id].end = out_.size();
        }
    }

    template <class F> void parenthesized(bool wrap, F&& body) {
        if (wrap) {
            out_ += "(";
        }
        body();
        if (wrap) {
            out_ += ")";
        }
    }

    template <class F> void block(F&& body) {
        if (!pretty_) {
            out_ += "{ ";
            body();
            out_ += " }";
            return;
        }
        out_ += "{";
        ++indent_;
        newline();
        body();
        --indent_;
        newline();
        out_ += "}";
    }

    void newline() {
        out_ += "\n";
        out_.append(static_cast<std::size_t>(indent_) * 2, ' ');
    }

    bool pretty_;
    std::vector<Span>* spans_;
    std::string out_;
    std::size_t next_id_ = 0;
    int indent_ = 0;
};

template <bool P> std::string render_state(const BasicState<P>& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += s[i].name;
        out += " = ";
        if constexpr (P) {
            out += s[i].value ? std::to_string(*s[i].value) : "_";
        } else {
            out += std::to_string(s[i].value);
        }
    }
    return out;
}

} // namespace

std::string render(const ArithExpr& a) {
    Printer p(false, nullptr);
    p.arith(a);
    return p.take();
}
std::string render(const PartialArith& a) {
    Printer p(false, nullptr);
    p.arith(a);
    return p.take();
}
std::string render(const BoolExpr& b) {
    Printer p(false, nullptr);
    p.boolean(b);
    return p.take();
}
std::string render(const PartialBool& b) {
    Printer p(false, nullptr);
    p.boolean(b);
    return p.take();
}
std::string render(const Command& c) {
    Printer p(false, nullptr);
    p.command(c);
    return p.take();
}
std::string render(const PartialCommand& c) {
    Printer p(false, nullptr);
    p.command(c);
    return p.take();
}
std::string render(const State& s) { return render_state(s); }
std::string render(const PartialState& s) { return render_state(s); }
std::string render(const PartialNat& v) { return v ? std::to_string(*v) : "_"; }

std::string render_pretty(const Command& c) {
    Printer p(true, nullptr);
    p.command(c);
    return p.take();
}
std::string render_pretty(const PartialCommand& c) {
    Printer p(true, nullptr);
    p.command(c);
    return p.take();
}

RenderedProgram render_with_spans(const Command& c) {
    RenderedProgram result;
    Printer p(true, &result.node_spans);
    p.command(c);
    result.text = p.take();
    return result;
}

} // namespace impslice
