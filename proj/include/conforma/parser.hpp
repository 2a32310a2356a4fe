#pragma once

// Lexer and recursive-descent parser for the chart file format:
//
//   chart <name>
//   ambient <flat1 | desitter | antidesitter> dim <n+1>
//   vars u1 in [lo, hi], u2 in [lo, hi], ...
//   params a = 1.5, lambda = 0.0, ...
//   x1 = <expr>
//   ...
//   xN = <expr>
//
// Keywords are case-sensitive, '#' starts a comment to end of line.
// Expression precedence: ^  >  unary -  >  * /  >  + -.

#include "conforma/chart.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conforma {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, std::string expected)
        : std::runtime_error("syntax error at line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ": expected " +
                             expected),
          line(line), col(col), expected(std::move(expected)) {}

    int line;
    int col;
    std::string expected;
};

class UnboundName : public std::runtime_error {
public:
    UnboundName(std::string name, int line, int col)
        : std::runtime_error("unbound name '" + name + "' at line " +
                             std::to_string(line) + ", column " +
                             std::to_string(col)),
          name(std::move(name)), line(line), col(col) {}

    std::string name;
    int line;
    int col;
};

class ArityError : public std::runtime_error {
public:
    ArityError(std::string fn, int line, int col)
        : std::runtime_error("function '" + fn +
                             "' takes exactly one argument (line " +
                             std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          fn(std::move(fn)), line(line), col(col) {}

    std::string fn;
    int line;
    int col;
};

namespace parser_detail {

enum class TokKind { Ident, Number, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0.0;
    int line = 0;
    int col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_'))
                advance();
            t.kind = TokKind::Ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_])))
                advance();
            if (pos_ < src_.size() && src_[pos_] == '.') {
                advance();
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    advance();
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                size_t mark = pos_;
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                    advance();
                if (pos_ < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    while (pos_ < src_.size() &&
                           std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        advance();
                } else {
                    pos_ = mark; // bare 'e' belongs to the next token
                }
            }
            t.kind = TokKind::Number;
            t.text = src_.substr(start, pos_ - start);
            t.number = std::stod(t.text);
            return t;
        }
        t.kind = TokKind::Punct;
        t.text = std::string(1, c);
        advance();
        return t;
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c)) && c != '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// Token stream with newline tokens preserved (header lines are line-based).
class TokenStream {
public:
    explicit TokenStream(const std::string& src) {
        Lexer lex(src);
        // Lexer skips '\n' inside skip_space?  no: '\n' is not skipped above.
        for (;;) {
            Token t = lex.next();
            if (t.kind == TokKind::End) {
                toks_.push_back(t);
                break;
            }
            toks_.push_back(std::move(t));
        }
    }

    const Token& peek(int ahead = 0) const {
        size_t i = pos_ + static_cast<size_t>(ahead);
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    Token take() {
        Token t = peek();
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool at_newline() const {
        return peek().kind == TokKind::Punct && peek().text == "\n";
    }

    void skip_newlines() {
        while (at_newline()) take();
    }

    bool at_end() const { return peek().kind == TokKind::End; }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

inline std::optional<UnaryFn> function_by_name(const std::string& s) {
    if (s == "sin") return UnaryFn::Sin;
    if (s == "cos") return UnaryFn::Cos;
    if (s == "sinh") return UnaryFn::Sinh;
    if (s == "cosh") return UnaryFn::Cosh;
    if (s == "exp") return UnaryFn::Exp;
    if (s == "log") return UnaryFn::Log;
    if (s == "sqrt") return UnaryFn::Sqrt;
    return std::nullopt;
}

class ExprParser {
public:
    ExprParser(TokenStream& ts, const std::map<std::string, int>& vars,
               const std::map<std::string, int>& params)
        : ts_(ts), vars_(vars), params_(params) {}

    ExprPtr parse() { return parse_sum(); }

private:
    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        while (is_punct("+") || is_punct("-")) {
            const bool add = ts_.take().text == "+";
            ExprPtr rhs = parse_term();
            e = make_binary(add ? BinaryOp::Add : BinaryOp::Sub, e, rhs);
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (is_punct("*") || is_punct("/")) {
            const bool mul = ts_.take().text == "*";
            ExprPtr rhs = parse_unary();
            e = make_binary(mul ? BinaryOp::Mul : BinaryOp::Div, e, rhs);
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (is_punct("-")) {
            ts_.take();
            ExprPtr c = parse_unary();
            // Fold a sign applied directly to a literal into the literal so
            // that printed negative constants re-parse to the same AST.
            if (const auto* k = std::get_if<Constant>(&c->node))
                return make_constant(-k->value);
            return make_unary(UnaryFn::Neg, c);
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr e = parse_atom();
        while (is_punct("^")) {
            const Token caret = ts_.take();
            int sign = 1;
            if (is_punct("-")) {
                ts_.take();
                sign = -1;
            }
            const Token t = ts_.peek();
            if (t.kind != TokKind::Number ||
                t.text.find_first_of(".eE") != std::string::npos)
                throw SyntaxError(caret.line, caret.col,
                                  "integer exponent after '^'");
            ts_.take();
            e = make_power(e, sign * static_cast<int>(t.number));
        }
        return e;
    }

    ExprPtr parse_atom() {
        const Token t = ts_.peek();
        if (t.kind == TokKind::Number) {
            ts_.take();
            return make_constant(t.number);
        }
        if (t.kind == TokKind::Ident) {
            ts_.take();
            if (is_punct("(")) {
                const auto fn = function_by_name(t.text);
                if (!fn) throw UnboundName(t.text, t.line, t.col);
                ts_.take();
                ExprPtr arg = parse_sum();
                if (is_punct(","))
                    throw ArityError(t.text, t.line, t.col);
                expect(")");
                return make_unary(*fn, arg);
            }
            if (auto it = vars_.find(t.text); it != vars_.end())
                return make_variable(it->second, t.text);
            if (auto it = params_.find(t.text); it != params_.end())
                return make_parameter(it->second, t.text);
            throw UnboundName(t.text, t.line, t.col);
        }
        if (is_punct("(")) {
            ts_.take();
            ExprPtr e = parse_sum();
            expect(")");
            return e;
        }
        throw SyntaxError(t.line, t.col, "expression");
    }

    bool is_punct(const char* s) const {
        return ts_.peek().kind == TokKind::Punct && ts_.peek().text == s;
    }

    void expect(const char* s) {
        if (!is_punct(s))
            throw SyntaxError(ts_.peek().line, ts_.peek().col,
                              "'" + std::string(s) + "'");
        ts_.take();
    }

    TokenStream& ts_;
    const std::map<std::string, int>& vars_;
    const std::map<std::string, int>& params_;
};

} // namespace parser_detail

inline ChartImmersion parse_chart(const std::string& source) {
    using namespace parser_detail;
    TokenStream ts(source);
    ChartImmersion chart;

    auto expect_ident = [&](const char* what) -> Token {
        const Token t = ts.peek();
        if (t.kind != TokKind::Ident) throw SyntaxError(t.line, t.col, what);
        return ts.take();
    };
    auto expect_keyword = [&](const char* kw) {
        const Token t = ts.peek();
        if (t.kind != TokKind::Ident || t.text != kw)
            throw SyntaxError(t.line, t.col, "'" + std::string(kw) + "'");
        ts.take();
    };
    auto expect_punct = [&](const char* s) {
        const Token t = ts.peek();
        if (t.kind != TokKind::Punct || t.text != s)
            throw SyntaxError(t.line, t.col, "'" + std::string(s) + "'");
        ts.take();
    };
    auto expect_number = [&]() -> double {
        bool neg = false;
        if (ts.peek().kind == TokKind::Punct && ts.peek().text == "-") {
            ts.take();
            neg = true;
        }
        const Token t = ts.peek();
        if (t.kind != TokKind::Number)
            throw SyntaxError(t.line, t.col, "number");
        ts.take();
        return neg ? -t.number : t.number;
    };
    auto end_line = [&]() {
        const Token& t = ts.peek();
        if (!(ts.at_newline() || ts.at_end()))
            throw SyntaxError(t.line, t.col, "end of line");
        ts.skip_newlines();
    };

    ts.skip_newlines();
    expect_keyword("chart");
    chart.name = expect_ident("chart name").text;
    end_line();

    expect_keyword("ambient");
    const Token form = expect_ident("'flat1', 'desitter' or 'antidesitter'");
    if (form.text == "flat1") chart.ambient.form = SpaceForm::Flat;
    else if (form.text == "desitter") chart.ambient.form = SpaceForm::DeSitter;
    else if (form.text == "antidesitter")
        chart.ambient.form = SpaceForm::AntiDeSitter;
    else
        throw SyntaxError(form.line, form.col,
                          "'flat1', 'desitter' or 'antidesitter'");
    expect_keyword("dim");
    const Token dimtok = ts.peek();
    const double dim = expect_number();
    if (dim != std::floor(dim) || dim < 3 || dim > kMaxJetVars + 1)
        throw SyntaxError(dimtok.line, dimtok.col,
                          "integer ambient dimension between 3 and " +
                              std::to_string(kMaxJetVars + 1));
    chart.ambient.n = static_cast<int>(dim) - 1;
    end_line();

    std::map<std::string, int> vars;
    std::map<std::string, int> params;

    expect_keyword("vars");
    for (;;) {
        const Token v = expect_ident("variable name");
        if (vars.count(v.text) || params.count(v.text))
            throw SyntaxError(v.line, v.col, "unique variable name");
        vars[v.text] = static_cast<int>(chart.variables.size());
        chart.variables.push_back(v.text);
        expect_keyword("in");
        expect_punct("[");
        const double lo = expect_number();
        expect_punct(",");
        const double hi = expect_number();
        expect_punct("]");
        chart.domain_lo.push_back(lo);
        chart.domain_hi.push_back(hi);
        if (ts.at_newline() || ts.at_end()) break;
        expect_punct(",");
    }
    end_line();
    if (static_cast<int>(chart.variables.size()) != chart.ambient.n) {
        const Token& t = ts.peek();
        throw SyntaxError(t.line, t.col,
                          std::to_string(chart.ambient.n) +
                              " chart variables for this ambient");
    }

    if (ts.peek().kind == TokKind::Ident && ts.peek().text == "params") {
        ts.take();
        for (;;) {
            const Token p = expect_ident("parameter name");
            if (vars.count(p.text) || params.count(p.text))
                throw SyntaxError(p.line, p.col, "unique parameter name");
            expect_punct("=");
            const double val = expect_number();
            params[p.text] = static_cast<int>(chart.param_names.size());
            chart.param_names.push_back(p.text);
            chart.param_values.push_back(val);
            if (ts.at_newline() || ts.at_end()) break;
            expect_punct(",");
        }
        end_line();
    }

    const int ncomp = chart.ambient.embedding_dim();
    for (int a = 0; a < ncomp; ++a) {
        const std::string expected = "x" + std::to_string(a + 1);
        const Token t = ts.peek();
        if (t.kind != TokKind::Ident || t.text != expected)
            throw SyntaxError(t.line, t.col, "'" + expected + " = ...'");
        ts.take();
        expect_punct("=");
        ExprParser ep(ts, vars, params);
        chart.components.push_back(ep.parse());
        end_line();
    }
    ts.skip_newlines();
    if (!ts.at_end()) {
        const Token& t = ts.peek();
        throw SyntaxError(t.line, t.col, "end of chart");
    }
    return chart;
}

} // namespace conforma
