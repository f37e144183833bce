// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <set>

#include "impslice/error.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

namespace {

enum class Tok {
    ident,
    nat,
    hole,
    kw_skip,
    kw_if,
    kw_then,
    kw_else,
    kw_while,
    kw_do,
    kw_true,
    kw_false,
    assign,  // :=
    semi,    // ;
    comma,   // ,
    lparen,
    rparen,
    lbrace,
    rbrace,
    plus,
    minus,
    star,
    eq,      // =
    leq,     // <=
    bang,    // !
    and_and, // &&
    end,
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::ident: return "identifier";
    case Tok::nat: return "natural number";
    case Tok::hole: return "'_'";
    case Tok::kw_skip: return "'skip'";
    case Tok::kw_if: return "'if'";
    case Tok::kw_then: return "'then'";
    case Tok::kw_else: return "'else'";
    case Tok::kw_while: return "'while'";
    case Tok::kw_do: return "'do'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::assign: return "':='";
    case Tok::semi: return "';'";
    case Tok::comma: return "','";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::eq: return "'='";
    case Tok::leq: return "'<='";
    case Tok::bang: return "'!'";
    case Tok::and_and: return "'&&'";
    case Tok::end: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    Nat value = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto bad = [&](const std::string& found) {
        throw ParseError(line, col, {"a token"}, found);
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token tok{Tok::end, {}, 0, line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            Nat v = 0;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
                const Nat d = static_cast<Nat>(src[j] - '0');
                if (v > (std::numeric_limits<Nat>::max() - d) / 10) {
                    throw ParseError(line, col, {"a natural number below 2^64"}, std::string(src.substr(i, j - i + 1)) + "...");
                }
                v = v * 10 + d;
                ++j;
            }
            tok.kind = Tok::nat;
            tok.value = v;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                ++j;
            }
            std::string word(src.substr(i, j - i));
            if (word == "_") {
                tok.kind = Tok::hole;
            } else if (word[0] == '_') {
                bad("'" + word + "' (identifiers start with a letter)");
            } else if (word == "skip") {
                tok.kind = Tok::kw_skip;
            } else if (word == "if") {
                tok.kind = Tok::kw_if;
            } else if (word == "then") {
                tok.kind = Tok::kw_then;
            } else if (word == "else") {
                tok.kind = Tok::kw_else;
            } else if (word == "while") {
                tok.kind = Tok::kw_while;
            } else if (word == "do") {
                tok.kind = Tok::kw_do;
            } else if (word == "true") {
                tok.kind = Tok::kw_true;
            } else if (word == "false") {
                tok.kind = Tok::kw_false;
            } else {
                tok.kind = Tok::ident;
            }
            tok.text = std::move(word);
            advance(j - i);
            out.push_back(std::move(tok));
            continue;
        }
        auto two = src.substr(i, 2);
        std::size_t len = 1;
        if (two == ":=") {
            tok.kind = Tok::assign;
            len = 2;
        } else if (two == "<=") {
            tok.kind = Tok::leq;
            len = 2;
        } else if (two == "&&") {
            tok.kind = Tok::and_and;
            len = 2;
        } else {
            switch (c) {
            case ';': tok.kind = Tok::semi; break;
            case ',': tok.kind = Tok::comma; break;
            case '(': tok.kind = Tok::lparen; break;
            case ')': tok.kind = Tok::rparen; break;
            case '{': tok.kind = Tok::lbrace; break;
            case '}': tok.kind = Tok::rbrace; break;
            case '+': tok.kind = Tok::plus; break;
            case '-': tok.kind = Tok::minus; break;
            case '*': tok.kind = Tok::star; break;
            case '=': tok.kind = Tok::eq; break;
            case '!': tok.kind = Tok::bang; break;
            default: bad(std::string("'") + c + "'");
            }
        }
        tok.text = std::string(src.substr(i, len));
        advance(len);
        out.push_back(std::move(tok));
    }
    out.push_back(Token{Tok::end, {}, 0, line, col});
    return out;
}

/// Recursive descent with backtracking for the comparison/parenthesis
/// ambiguity in boolean atoms. Failures record the furthest position reached
/// together with the tokens that would have been accepted there.
template <bool Partial> class Parser {
  public:
    using A = BasicArith<Partial>;
    using B = BasicBool<Partial>;
    using C = BasicCommand<Partial>;

    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    C command_file() { return finish(command()); }
    A arith_file() { return finish(arith()); }
    B bool_file() { return finish(boolean()); }

    BasicState<Partial> state_file() {
        std::vector<typename BasicState<Partial>::Entry> entries;
        if (peek() != Tok::end) {
            for (;;) {
                auto name = expect_ident();
                if (!name || !expect(Tok::eq)) {
                    raise();
                }
                if (peek() == Tok::nat) {
                    entries.push_back({*name, toks_[pos_++].value});
                } else if (Partial && peek() == Tok::hole) {
                    ++pos_;
                    entries.push_back({*name, typename BasicState<Partial>::Slot{}});
                } else {
                    note(Tok::nat);
                    if constexpr (Partial) {
                        note(Tok::hole);
                    }
                    raise();
                }
                if (peek() == Tok::comma) {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        if (peek() != Tok::end) {
            note(Tok::comma);
            note(Tok::end);
            raise();
        }
        return BasicState<Partial>::from_entries(std::move(entries));
    }

  private:
    template <class T> T finish(std::optional<T> result) {
        if (!result) {
            raise();
        }
        if (peek() != Tok::end) {
            note(Tok::end);
            raise();
        }
        return *result;
    }

    [[noreturn]] void raise() const {
        const Token& t = toks_[std::min(furthest_, toks_.size() - 1)];
        std::vector<std::string> expected(expected_.begin(), expected_.end());
        const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.column, std::move(expected), found);
    }

    [[nodiscard]] Tok peek() const { return toks_[pos_].kind; }

    void note(Tok expected) {
        if (pos_ > furthest_) {
            furthest_ = pos_;
            expected_.clear();
        }
        if (pos_ == furthest_) {
            expected_.insert(describe(expected));
        }
    }

    bool accept(Tok t) {
        if (peek() == t) {
            ++pos_;
            return true;
        }
        note(t);
        return false;
    }

    bool expect(Tok t) { return accept(t); }

    std::optional<std::string> expect_ident() {
        if (peek() == Tok::ident) {
            return toks_[pos_++].text;
        }
        note(Tok::ident);
        return std::nullopt;
    }

    // cmd ::= simple (";" cmd)?
    std::optional<C> command() {
        auto first = simple_command();
        if (!first) {
            return std::nullopt;
        }
        if (accept(Tok::semi)) {
            auto rest = command();
            if (!rest) {
                return std::nullopt;
            }
            return C::seq(*first, *rest);
        }
        return first;
    }

    std::optional<C> braced_command() {
        if (!expect(Tok::lbrace)) {
            return std::nullopt;
        }
        auto body = command();
        if (!body || !expect(Tok::rbrace)) {
            return std::nullopt;
        }
        return body;
    }

    std::optional<C> simple_command() {
        switch (peek()) {
        case Tok::kw_skip: ++pos_; return C::skip();
        case Tok::hole:
            if constexpr (Partial) {
                ++pos_;
                return C::hole();
            }
            break;
        case Tok::lbrace: return braced_command();
        case Tok::ident: {
            std::string name = toks_[pos_++].text;
            if (!expect(Tok::assign)) {
                return std::nullopt;
            }
            auto rhs = arith();
            if (!rhs) {
                return std::nullopt;
            }
            return C::assign(std::move(name), *rhs);
        }
        case Tok::kw_if: {
            ++pos_;
            if (!expect(Tok::lparen)) {
                return std::nullopt;
            }
            auto cond = boolean();
            if (!cond || !expect(Tok::rparen) || !expect(Tok::kw_then)) {
                return std::nullopt;
            }
            auto then_branch = braced_command();
            if (!then_branch || !expect(Tok::kw_else)) {
                return std::nullopt;
            }
            auto else_branch = braced_command();
            if (!else_branch) {
                return std::nullopt;
            }
            return C::if_then_else(*cond, *then_branch, *else_branch);
        }
        case Tok::kw_while: {
            ++pos_;
            if (!expect(Tok::lparen)) {
                return std::nullopt;
            }
            auto cond = boolean();
            if (!cond || !expect(Tok::rparen) || !expect(Tok::kw_do)) {
                return std::nullopt;
            }
            auto body = braced_command();
            if (!body) {
                return std::nullopt;
            }
            return C::while_do(*cond, *body);
        }
        default: break;
        }
        note(Tok::kw_skip);
        note(Tok::ident);
        note(Tok::kw_if);
        note(Tok::kw_while);
        note(Tok::lbrace);
        if constexpr (Partial) {
            note(Tok::hole);
        }
        return std::nullopt;
    }

    // aexp ::= term (("+" | "-") term)*
    std::optional<A> arith() {
        auto lhs = term();
        if (!lhs) {
            return std::nullopt;
        }
        for (;;) {
            ArithOp op;
            if (accept(Tok::plus)) {
                op = ArithOp::add;
            } else if (accept(Tok::minus)) {
                op = ArithOp::sub;
            } else {
                return lhs;
            }
            auto rhs = term();
            if (!rhs) {
                return std::nullopt;
            }
            lhs = A::binary(op, *lhs, *rhs);
        }
    }

    // term ::= factor ("*" factor)*
    std::optional<A> term() {
        auto lhs = factor();
        if (!lhs) {
            return std::nullopt;
        }
        while (accept(Tok::star)) {
            auto rhs = factor();
            if (!rhs) {
                return std::nullopt;
            }
            lhs = A::binary(ArithOp::mul, *lhs, *rhs);
        }
        return lhs;
    }

    std::optional<A> factor() {
        switch (peek()) {
        case Tok::nat: return A::nat(toks_[pos_++].value);
        case Tok::ident: return A::var(toks_[pos_++].text);
        case Tok::hole:
            if constexpr (Partial) {
                ++pos_;
                return A::hole();
            }
            break;
        case Tok::lparen: {
            ++pos_;
            auto inner = arith();
            if (!inner || !expect(Tok::rparen)) {
                return std::nullopt;
            }
            return inner;
        }
        default: break;
        }
        note(Tok::nat);
        note(Tok::ident);
        note(Tok::lparen);
        if constexpr (Partial) {
            note(Tok::hole);
        }
        return std::nullopt;
    }

    // bexp ::= unary ("&&" unary)*
    std::optional<B> boolean() {
        auto lhs = unary();
        if (!lhs) {
            return std::nullopt;
        }
        while (accept(Tok::and_and)) {
            auto rhs = unary();
            if (!rhs) {
                return std::nullopt;
            }
            lhs = B::conjunction(*lhs, *rhs);
        }
        return lhs;
    }

    std::optional<B> unary() {
        if (accept(Tok::bang)) {
            auto operand = unary();
            if (!operand) {
                return std::nullopt;
            }
            return B::negation(*operand);
        }
        return atom();
    }

    // atom ::= aexp ("=" | "<=") aexp | "true" | "false" | "_" | "(" bexp ")"
    std::optional<B> atom() {
        if (accept(Tok::kw_true)) {
            return B::literal(true);
        }
        if (accept(Tok::kw_false)) {
            return B::literal(false);
        }
        const std::size_t start = pos_;
        if (auto cmp = comparison()) {
            return cmp;
        }
        pos_ = start;
        if constexpr (Partial) {
            if (accept(Tok::hole)) {
                return B::hole();
            }
        }
        if (accept(Tok::lparen)) {
            auto inner = boolean();
            if (!inner || !expect(Tok::rparen)) {
                return std::nullopt;
            }
            return inner;
        }
        return std::nullopt;
    }

    std::optional<B> comparison() {
        auto lhs = arith();
        if (!lhs) {
            return std::nullopt;
        }
        CmpOp op;
        if (accept(Tok::eq)) {
            op = CmpOp::eq;
        } else if (accept(Tok::leq)) {
            op = CmpOp::leq;
        } else {
            return std::nullopt;
        }
        auto rhs = arith();
        if (!rhs) {
            return std::nullopt;
        }
        return B::compare(op, *lhs, *rhs);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t furthest_ = 0;
    std::set<std::string> expected_;
};

} // namespace

Command parse_command(std::string_view text) { return Parser<false>(text).command_file(); }
PartialCommand parse_partial_command(std::string_view text) { return Parser<true>(text).command_file(); }
ArithExpr parse_arith(std::string_view text) { return Parser<false>(text).arith_file(); }
PartialArith parse_partial_arith(std::string_view text) { return Parser<true>(text).arith_file(); }
BoolExpr parse_bool(std::string_view text) { return Parser<false>(text).bool_file(); }
PartialBool parse_partial_bool(std::string_view text) { return Parser<true>(text).bool_file(); }
State parse_state(std::string_view text) { return Parser<false>(text).state_file(); }
PartialState parse_partial_state(std::string_view text) { return Parser<true>(text).state_file(); }

} // namespace impslice
