// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/schema.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "impslice/overloaded.hpp"

namespace impslice::schema {

namespace {

const Json hole_json = "_";

[[noreturn]] void malformed(const std::string& what, const Json& j) {
    throw Error(ErrorKind::parse, "malformed " + what + ": " + j.dump());
}

bool is_hole(const Json& j) { return j.is_string() && j.get<std::string>() == "_"; }

const Json& field(const Json& j, const char* name, const std::string& what) {
    if (!j.is_object() || !j.contains(name)) {
        malformed(what, j);
    }
    return j.at(name);
}

std::string string_field(const Json& j, const char* name, const std::string& what) {
    const Json& f = field(j, name, what);
    if (!f.is_string()) {
        malformed(what, j);
    }
    return f.get<std::string>();
}

// Same rule as the concrete syntax: a letter, then letters, digits or `_`,
// and not a keyword.
std::string identifier_field(const Json& j, const char* name, const std::string& what) {
    std::string id = string_field(j, name, what);
    static const std::set<std::string> keywords{"skip", "if", "then", "else", "while", "do", "true", "false"};
    const auto word_char = [](unsigned char c) { return std::isalnum(c) != 0 || c == '_'; };
    if (id.empty() || std::isalpha(static_cast<unsigned char>(id[0])) == 0 ||
        !std::all_of(id.begin(), id.end(), word_char) || keywords.contains(id)) {
        throw Error(ErrorKind::parse, "malformed " + what + ": '" + id + "' is not an identifier");
    }
    return id;
}

Nat nat_of(const Json& j, const std::string& what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        malformed(what, j);
    }
    return j.get<Nat>();
}

ArithOp arith_op(const std::string& op, const Json& j) {
    if (op == "+") {
        return ArithOp::add;
    }
    if (op == "-") {
        return ArithOp::sub;
    }
    if (op == "*") {
        return ArithOp::mul;
    }
    malformed("arithmetic expression", j);
}

template <bool P> Json arith_json(const BasicArith<P>& a) {
    return std::visit(overloaded{
                          [](const Hole&) { return hole_json; },
                          [](const NatLit& n) { return Json{{"nat", n.value}}; },
                          [](const VarRead& v) { return Json{{"var", v.name}}; },
                          [](const ArithBinary<P>& b) {
                              return Json{{"op", to_string(b.op)}, {"lhs", arith_json(b.lhs)}, {"rhs", arith_json(b.rhs)}};
                          },
                      },
                      a.node());
}

template <bool P> Json bool_json(const BasicBool<P>& b) {
    return std::visit(overloaded{
                          [](const Hole&) { return hole_json; },
                          [](const BoolLit& l) { return Json{{"bool", l.value}}; },
                          [](const Compare<P>& c) {
                              return Json{{"op", to_string(c.op)}, {"lhs", arith_json(c.lhs)}, {"rhs", arith_json(c.rhs)}};
                          },
                          [](const Negation<P>& n) { return Json{{"op", "!"}, {"arg", bool_json(n.operand)}}; },
                          [](const Conjunction<P>& c) {
                              return Json{{"op", "&&"}, {"lhs", bool_json(c.lhs)}, {"rhs", bool_json(c.rhs)}};
                          },
                      },
                      b.node());
}

template <bool P> Json command_json(const BasicCommand<P>& c) {
    return std::visit(overloaded{
                          [](const Hole&) { return hole_json; },
                          [](const Skip&) { return Json{{"cmd", "skip"}}; },
                          [](const Assign<P>& a) {
                              return Json{{"cmd", "assign"}, {"var", a.var}, {"expr", arith_json(a.expr)}};
                          },
                          [](const Seq<P>& s) {
                              return Json{{"cmd", "seq"}, {"first", command_json(s.first)}, {"second", command_json(s.second)}};
                          },
                          [](const If<P>& i) {
                              return Json{{"cmd", "if"},
                                          {"cond", bool_json(i.cond)},
                                          {"then", command_json(i.then_branch)},
                                          {"else", command_json(i.else_branch)}};
                          },
                          [](const While<P>& w) {
                              return Json{{"cmd", "while"}, {"cond", bool_json(w.cond)}, {"body", command_json(w.body)}};
                          },
                      },
                      c.node());
}

template <bool P> Json state_json(const BasicState<P>& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) {
        Json value;
        if constexpr (P) {
            value = e.value ? Json(*e.value) : Json(nullptr);
        } else {
            value = e.value;
        }
        out.push_back(Json{{"name", e.name}, {"value", value}});
    }
    return out;
}

} // namespace

Json to_json(const PartialArith& a) { return arith_json(a); }
Json to_json(const PartialBool& b) { return bool_json(b); }
Json to_json(const PartialCommand& c) { return command_json(c); }
Json to_json(const ArithExpr& a) { return arith_json(a); }
Json to_json(const BoolExpr& b) { return bool_json(b); }
Json to_json(const Command& c) { return command_json(c); }
Json to_json(const State& s) { return state_json(s); }
Json to_json(const PartialState& s) { return state_json(s); }

Json to_json(const SliceOutcome& s) {
    return Json{{"program_slice", to_json(s.program_slice)}, {"input_slice", to_json(s.input_slice)}};
}

Json to_json(const TraceStats& s) {
    return Json{{"assignments", s.assignments},
                {"loop_iterations", s.loop_iterations},
                {"loop_condition_evaluations", s.loop_condition_evaluations},
                {"branch_decisions", s.branch_decisions}};
}

Json to_json(const ArithTrace& t) {
    Json out = std::visit(overloaded{
                              [](const ArithLitTrace& l) { return Json{{"nat", l.value}}; },
                              [](const ArithVarTrace& v) { return Json{{"var", v.name}}; },
                              [](const ArithBinaryTrace& b) {
                                  return Json{{"op", to_string(b.op)}, {"lhs", to_json(b.lhs)}, {"rhs", to_json(b.rhs)}};
                              },
                          },
                          t.node());
    out["value"] = t.result();
    return out;
}

Json to_json(const BoolTrace& t) {
    Json out = std::visit(overloaded{
                              [](const BoolLitTrace& l) { return Json{{"bool", l.value}}; },
                              [](const CompareTrace& c) {
                                  return Json{{"op", to_string(c.op)}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
                              },
                              [](const NegationTrace& n) { return Json{{"op", "!"}, {"arg", to_json(n.operand)}}; },
                              [](const ConjunctionTrace& c) {
                                  return Json{{"op", "&&"}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
                              },
                          },
                          t.node());
    out["value"] = t.result();
    return out;
}

Json to_json(const CmdTrace& t) {
    Json out = std::visit(
        overloaded{
            [](const SkipTrace&) { return Json{{"rule", "skip"}}; },
            [](const AssignTrace& a) { return Json{{"rule", "assign"}, {"var", a.var}, {"expr", to_json(a.expr)}}; },
            [](const SeqTrace& s) { return Json{{"rule", "seq"}, {"first", to_json(s.first)}, {"second", to_json(s.second)}}; },
            [](const IfTrace& i) {
                return Json{{"rule", i.taken ? "if_true" : "if_false"}, {"cond", to_json(i.cond)}, {"branch", to_json(i.branch)}};
            },
            [](const WhileFalseTrace& w) { return Json{{"rule", "while_false"}, {"cond", to_json(w.cond)}}; },
            [](const WhileTrueTrace& w) {
                return Json{{"rule", "while_true"}, {"cond", to_json(w.cond)}, {"body", to_json(w.body)}, {"rest", to_json(w.rest)}};
            },
        },
        t.node());
    out["state_in"] = to_json(t.state_in());
    out["state_out"] = to_json(t.state_out());
    return out;
}

Json to_json(const CheckReport& r) {
    Json laws = Json::array();
    for (const auto& law : r.laws) {
        laws.push_back(Json{{"law", law.law},
                            {"method", law.method},
                            {"checked", law.checked},
                            {"holds", law.holds()},
                            {"counterexample", law.counterexample ? Json(*law.counterexample) : Json(nullptr)}});
    }
    return Json{{"derivation", r.derivation_id},
                {"input_lattice_size", r.input_lattice_size},
                {"output_lattice_size", r.output_lattice_size},
                {"holds", r.all_hold()},
                {"laws", laws},
                {"kernel", r.kernel},
                {"wall_seconds", r.wall_seconds}};
}

Json to_json(const Error& e) {
    Json out{{"error", to_string(e.kind())}, {"message", e.what()}};
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
        out["line"] = p->line();
        out["column"] = p->column();
        out["expected"] = p->expected();
    }
    if (const auto* s = dynamic_cast<const SizeExceeded*>(&e)) {
        out["cardinality"] = s->cardinality();
        out["bound"] = s->bound();
    }
    return out;
}

PartialArith partial_arith_from_json(const Json& j) {
    if (is_hole(j)) {
        return PartialArith::hole();
    }
    if (j.is_object() && j.contains("nat")) {
        return PartialArith::nat(nat_of(j.at("nat"), "arithmetic expression"));
    }
    if (j.is_object() && j.contains("var")) {
        return PartialArith::var(identifier_field(j, "var", "arithmetic expression"));
    }
    const std::string op = string_field(j, "op", "arithmetic expression");
    return PartialArith::binary(arith_op(op, j), partial_arith_from_json(field(j, "lhs", "arithmetic expression")),
                                partial_arith_from_json(field(j, "rhs", "arithmetic expression")));
}

PartialBool partial_bool_from_json(const Json& j) {
    if (is_hole(j)) {
        return PartialBool::hole();
    }
    if (j.is_object() && j.contains("bool")) {
        const Json& v = j.at("bool");
        if (!v.is_boolean()) {
            malformed("boolean expression", j);
        }
        return PartialBool::literal(v.get<bool>());
    }
    const std::string op = string_field(j, "op", "boolean expression");
    if (op == "!") {
        return PartialBool::negation(partial_bool_from_json(field(j, "arg", "boolean expression")));
    }
    if (op == "&&") {
        auto lhs = partial_bool_from_json(field(j, "lhs", "boolean expression"));
        return PartialBool::conjunction(std::move(lhs), partial_bool_from_json(field(j, "rhs", "boolean expression")));
    }
    CmpOp cmp{};
    if (op == "=") {
        cmp = CmpOp::eq;
    } else if (op == "<=") {
        cmp = CmpOp::leq;
    } else {
        malformed("boolean expression", j);
    }
    auto lhs = partial_arith_from_json(field(j, "lhs", "boolean expression"));
    return PartialBool::compare(cmp, std::move(lhs), partial_arith_from_json(field(j, "rhs", "boolean expression")));
}

PartialCommand partial_command_from_json(const Json& j) {
    if (is_hole(j)) {
        return PartialCommand::hole();
    }
    const std::string what = "command";
    const std::string kind = string_field(j, "cmd", what);
    if (kind == "skip") {
        return PartialCommand::skip();
    }
    if (kind == "assign") {
        return PartialCommand::assign(identifier_field(j, "var", what), partial_arith_from_json(field(j, "expr", what)));
    }
    if (kind == "seq") {
        auto first = partial_command_from_json(field(j, "first", what));
        return PartialCommand::seq(std::move(first), partial_command_from_json(field(j, "second", what)));
    }
    if (kind == "if") {
        auto cond = partial_bool_from_json(field(j, "cond", what));
        auto then_branch = partial_command_from_json(field(j, "then", what));
        return PartialCommand::if_then_else(std::move(cond), std::move(then_branch),
                                            partial_command_from_json(field(j, "else", what)));
    }
    if (kind == "while") {
        auto cond = partial_bool_from_json(field(j, "cond", what));
        return PartialCommand::while_do(std::move(cond), partial_command_from_json(field(j, "body", what)));
    }
    malformed(what, j);
}

Command command_from_json(const Json& j) {
    auto complete_program = complete(partial_command_from_json(j));
    if (!complete_program) {
        throw Error(ErrorKind::parse, "program contains holes: " + j.dump());
    }
    return *complete_program;
}

PartialState partial_state_from_json(const Json& j) {
    if (!j.is_array()) {
        malformed("state", j);
    }
    std::vector<PartialState::Entry> entries;
    for (const Json& e : j) {
        const Json& value = field(e, "value", "state entry");
        entries.push_back({identifier_field(e, "name", "state entry"),
                           value.is_null() ? PartialNat{} : PartialNat{nat_of(value, "state entry")}});
    }
    return PartialState::from_entries(std::move(entries));
}

State state_from_json(const Json& j) {
    auto s = complete(partial_state_from_json(j));
    if (!s) {
        throw Error(ErrorKind::parse, "state contains holes: " + j.dump());
    }
    return *s;
}

Json versioned(Json document) {
    document["schema_version"] = version;
    return document;
}

} // namespace impslice::schema
