#pragma once

// Expression AST for chart components: constants, chart variables, named
// parameters, unary functions, infix arithmetic and integer powers.
// Nodes are immutable and shared; evaluation is pure.

#include "conforma/jet.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace conforma {

enum class UnaryFn { Neg, Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div };

inline const char* unary_fn_name(UnaryFn f) {
    switch (f) {
    case UnaryFn::Neg: return "neg";
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Sinh: return "sinh";
    case UnaryFn::Cosh: return "cosh";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Log: return "log";
    case UnaryFn::Sqrt: return "sqrt";
    }
    return "?";
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Constant { double value; };
struct Variable { int index; std::string name; };
struct Parameter { int index; std::string name; };
struct Unary { UnaryFn fn; ExprPtr child; };
struct Binary { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };
struct Power { ExprPtr child; int exponent; };

struct Expr {
    std::variant<Constant, Variable, Parameter, Unary, Binary, Power> node;
};

inline ExprPtr make_constant(double v) { return std::make_shared<Expr>(Expr{Constant{v}}); }
inline ExprPtr make_variable(int i, std::string name) {
    return std::make_shared<Expr>(Expr{Variable{i, std::move(name)}});
}
inline ExprPtr make_parameter(int i, std::string name) {
    return std::make_shared<Expr>(Expr{Parameter{i, std::move(name)}});
}
inline ExprPtr make_unary(UnaryFn f, ExprPtr c) {
    return std::make_shared<Expr>(Expr{Unary{f, std::move(c)}});
}
inline ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
    return std::make_shared<Expr>(Expr{Binary{op, std::move(l), std::move(r)}});
}
inline ExprPtr make_power(ExprPtr c, int e) {
    return std::make_shared<Expr>(Expr{Power{std::move(c), e}});
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    if (const auto* c = std::get_if<Constant>(&a->node))
        return c->value == std::get<Constant>(b->node).value;
    if (const auto* v = std::get_if<Variable>(&a->node))
        return v->index == std::get<Variable>(b->node).index;
    if (const auto* p = std::get_if<Parameter>(&a->node))
        return p->index == std::get<Parameter>(b->node).index;
    if (const auto* u = std::get_if<Unary>(&a->node)) {
        const auto& ub = std::get<Unary>(b->node);
        return u->fn == ub.fn && expr_equal(u->child, ub.child);
    }
    if (const auto* bin = std::get_if<Binary>(&a->node)) {
        const auto& bb = std::get<Binary>(b->node);
        return bin->op == bb.op && expr_equal(bin->lhs, bb.lhs) &&
               expr_equal(bin->rhs, bb.rhs);
    }
    const auto& pa = std::get<Power>(a->node);
    const auto& pb = std::get<Power>(b->node);
    return pa.exponent == pb.exponent && expr_equal(pa.child, pb.child);
}

// Plain scalar evaluation; the independent order-0 reference for the jet path.
inline double eval_scalar(const ExprPtr& e, std::span<const double> point,
                          std::span<const double> params) {
    if (const auto* c = std::get_if<Constant>(&e->node)) return c->value;
    if (const auto* v = std::get_if<Variable>(&e->node)) return point[v->index];
    if (const auto* p = std::get_if<Parameter>(&e->node)) return params[p->index];
    if (const auto* u = std::get_if<Unary>(&e->node)) {
        const double x = eval_scalar(u->child, point, params);
        switch (u->fn) {
        case UnaryFn::Neg: return -x;
        case UnaryFn::Sin: return std::sin(x);
        case UnaryFn::Cos: return std::cos(x);
        case UnaryFn::Sinh: return std::sinh(x);
        case UnaryFn::Cosh: return std::cosh(x);
        case UnaryFn::Exp: return std::exp(x);
        case UnaryFn::Log:
            if (x <= 0.0) throw DegenerateEvaluation("log", x);
            return std::log(x);
        case UnaryFn::Sqrt:
            if (x < 0.0) throw DegenerateEvaluation("sqrt", x);
            return std::sqrt(x);
        }
    }
    if (const auto* b = std::get_if<Binary>(&e->node)) {
        const double l = eval_scalar(b->lhs, point, params);
        const double r = eval_scalar(b->rhs, point, params);
        switch (b->op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div:
            if (r == 0.0) throw DegenerateEvaluation("div", 0.0);
            return l / r;
        }
    }
    const auto& p = std::get<Power>(e->node);
    return std::pow(eval_scalar(p.child, point, params),
                    static_cast<double>(p.exponent));
}

template <int O>
Jet<O> eval_jet(const ExprPtr& e, std::span<const double> point,
                std::span<const double> params) {
    if (const auto* c = std::get_if<Constant>(&e->node))
        return Jet<O>::constant(static_cast<int>(point.size()), c->value);
    if (const auto* v = std::get_if<Variable>(&e->node))
        return Jet<O>::seed(point, v->index);
    if (const auto* p = std::get_if<Parameter>(&e->node))
        return Jet<O>::constant(static_cast<int>(point.size()), params[p->index]);
    if (const auto* u = std::get_if<Unary>(&e->node)) {
        Jet<O> x = eval_jet<O>(u->child, point, params);
        switch (u->fn) {
        case UnaryFn::Neg: return -x;
        case UnaryFn::Sin: return sin(x);
        case UnaryFn::Cos: return cos(x);
        case UnaryFn::Sinh: return sinh(x);
        case UnaryFn::Cosh: return cosh(x);
        case UnaryFn::Exp: return exp(x);
        case UnaryFn::Log: return log(x);
        case UnaryFn::Sqrt: return sqrt(x);
        }
    }
    if (const auto* b = std::get_if<Binary>(&e->node)) {
        Jet<O> l = eval_jet<O>(b->lhs, point, params);
        Jet<O> r = eval_jet<O>(b->rhs, point, params);
        switch (b->op) {
        case BinaryOp::Add: return l + r;
        case BinaryOp::Sub: return l - r;
        case BinaryOp::Mul: return l * r;
        case BinaryOp::Div: return l / r;
        }
    }
    const auto& p = std::get<Power>(e->node);
    return ipow(eval_jet<O>(p.child, point, params), p.exponent);
}

std::string pretty_print(const ExprPtr& e);

namespace ast_detail {

// Precedence levels: add/sub 1, mul/div 2, unary minus 3, power 4.
inline int precedence(const ExprPtr& e) {
    if (std::holds_alternative<Binary>(e->node)) {
        const auto& b = std::get<Binary>(e->node);
        return (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? 1 : 2;
    }
    if (std::holds_alternative<Unary>(e->node) &&
        std::get<Unary>(e->node).fn == UnaryFn::Neg)
        return 3;
    if (std::holds_alternative<Power>(e->node)) return 4;
    return 5;
}

inline void print_to(const ExprPtr& e, std::string& out) {
    auto child = [&](const ExprPtr& c, int min_prec) {
        if (precedence(c) < min_prec) {
            out += '(';
            print_to(c, out);
            out += ')';
        } else {
            print_to(c, out);
        }
    };
    if (const auto* c = std::get_if<Constant>(&e->node)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", c->value);
        if (c->value < 0.0) {
            out += '(';
            out += buf;
            out += ')';
        } else {
            out += buf;
        }
        return;
    }
    if (const auto* v = std::get_if<Variable>(&e->node)) {
        out += v->name;
        return;
    }
    if (const auto* p = std::get_if<Parameter>(&e->node)) {
        out += p->name;
        return;
    }
    if (const auto* u = std::get_if<Unary>(&e->node)) {
        if (u->fn == UnaryFn::Neg) {
            out += '-';
            child(u->child, 4);
        } else {
            out += unary_fn_name(u->fn);
            out += '(';
            print_to(u->child, out);
            out += ')';
        }
        return;
    }
    if (const auto* b = std::get_if<Binary>(&e->node)) {
        switch (b->op) {
        case BinaryOp::Add:
            child(b->lhs, 1); out += " + "; child(b->rhs, 2);
            break;
        case BinaryOp::Sub:
            child(b->lhs, 1); out += " - "; child(b->rhs, 2);
            break;
        case BinaryOp::Mul:
            child(b->lhs, 2); out += "*"; child(b->rhs, 3);
            break;
        case BinaryOp::Div:
            child(b->lhs, 2); out += "/"; child(b->rhs, 3);
            break;
        }
        return;
    }
    const auto& p = std::get<Power>(e->node);
    child(p.child, 5);
    out += '^';
    out += std::to_string(p.exponent);
}

} // namespace ast_detail

inline std::string pretty_print(const ExprPtr& e) {
    std::string out;
    ast_detail::print_to(e, out);
    return out;
}

} // namespace conforma
