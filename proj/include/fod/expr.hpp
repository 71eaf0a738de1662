#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "fod/errors.hpp"

namespace fod {

// Immutable expression tree over a single real variable x.
//
// Grammar accepted by parse():
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?            -- right associative
//   atom   := number | 'x' | 'e' | func '(' expr ')' | '(' expr ')'
//   func   := sin cos tan cot sec csc exp ln
//
// Unary minus binds tighter than '+'/'-' but looser than '^', so -x^2
// parses as -(x^2). A literal base b > 0, b != 1 in b^g is stored as a
// dedicated powbase node; e^g is canonicalized to exp(g).

enum class ExprKind {
    constant,
    variable,
    add,
    sub,
    mul,
    div,
    pow,
    powbase,
    neg,
    sin,
    cos,
    tan,
    cot,
    sec,
    csc,
    exp,
    ln,
};

class Expr {
public:
    Expr() : Expr(constant(0.0)) {}

    static Expr constant(double v) { return Expr(make(ExprKind::constant, v, nullptr, nullptr)); }
    static Expr variable() { return Expr(make(ExprKind::variable, 0.0, nullptr, nullptr)); }
    static Expr binary(ExprKind k, Expr l, Expr r) { return Expr(make(k, 0.0, l.node_, r.node_)); }
    static Expr unary(ExprKind k, Expr c) { return Expr(make(k, 0.0, c.node_, nullptr)); }

    /// base must satisfy base > 0 and base != 1.
    static Expr powbase(double base, Expr exponent) {
        if (!(base > 0.0) || base == 1.0)
            throw DomainError("powbase requires a positive base different from 1");
        return Expr(make(ExprKind::powbase, base, exponent.node_, nullptr));
    }

    ExprKind kind() const { return node_->kind; }
    /// Constant value, or the base of a powbase node.
    double value() const { return node_->value; }
    Expr left() const { return Expr(node_->a); }
    Expr right() const { return Expr(node_->b); }
    Expr child() const { return Expr(node_->a); }

    bool is_constant() const { return kind() == ExprKind::constant; }
    bool is_constant(double v) const { return is_constant() && value() == v; }

private:
    struct Node {
        ExprKind kind;
        double value;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expr(NodePtr n) : node_(std::move(n)) {}

    static NodePtr make(ExprKind k, double v, NodePtr a, NodePtr b) {
        return std::make_shared<const Node>(Node{k, v, std::move(a), std::move(b)});
    }

    NodePtr node_;
};

struct EvalResult {
    double value = 0.0;
    Status status = Status::ok;

    bool is_ok() const { return status == Status::ok; }
    static EvalResult ok(double v) { return {v, Status::ok}; }
    static EvalResult error(Status s) { return {0.0, s}; }
};

inline bool is_unary_function(ExprKind k) {
    switch (k) {
        case ExprKind::sin:
        case ExprKind::cos:
        case ExprKind::tan:
        case ExprKind::cot:
        case ExprKind::sec:
        case ExprKind::csc:
        case ExprKind::exp:
        case ExprKind::ln:
            return true;
        default:
            return false;
    }
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ExprKind::constant:
            return a.value() == b.value();
        case ExprKind::variable:
            return true;
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div:
        case ExprKind::pow:
            return structurally_equal(a.left(), b.left()) &&
                   structurally_equal(a.right(), b.right());
        case ExprKind::powbase:
            return a.value() == b.value() && structurally_equal(a.child(), b.child());
        default:
            return structurally_equal(a.child(), b.child());
    }
}

inline bool contains_variable(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::constant: return false;
        case ExprKind::variable: return true;
        case ExprKind::add:
        case ExprKind::sub:
        case ExprKind::mul:
        case ExprKind::div:
        case ExprKind::pow:
            return contains_variable(e.left()) || contains_variable(e.right());
        default:
            return contains_variable(e.child());
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline EvalResult finish(double v) {
    if (std::isnan(v)) return EvalResult::error(Status::domain_error);
    if (std::isinf(v)) return EvalResult::error(Status::pole);
    return EvalResult::ok(v);
}

inline bool is_integer_valued(double v) {
    return std::nearbyint(v) == v && std::abs(v) < 9.0e15;
}

} // namespace detail

/// Real-valued evaluation of f at x. Poles and domain violations come back
/// as statuses; the value is finite whenever status == ok.
inline EvalResult evaluate(const Expr& f, double x) {
    using detail::finish;
    switch (f.kind()) {
        case ExprKind::constant: return EvalResult::ok(f.value());
        case ExprKind::variable: return finish(x);
        case ExprKind::add: {
            auto l = evaluate(f.left(), x);
            if (!l.is_ok()) return l;
            auto r = evaluate(f.right(), x);
            if (!r.is_ok()) return r;
            return finish(l.value + r.value);
        }
        case ExprKind::sub: {
            auto l = evaluate(f.left(), x);
            if (!l.is_ok()) return l;
            auto r = evaluate(f.right(), x);
            if (!r.is_ok()) return r;
            return finish(l.value - r.value);
        }
        case ExprKind::mul: {
            auto l = evaluate(f.left(), x);
            if (!l.is_ok()) return l;
            auto r = evaluate(f.right(), x);
            if (!r.is_ok()) return r;
            return finish(l.value * r.value);
        }
        case ExprKind::div: {
            auto l = evaluate(f.left(), x);
            if (!l.is_ok()) return l;
            auto r = evaluate(f.right(), x);
            if (!r.is_ok()) return r;
            if (r.value == 0.0) return EvalResult::error(Status::pole);
            return finish(l.value / r.value);
        }
        case ExprKind::pow: {
            auto b = evaluate(f.left(), x);
            if (!b.is_ok()) return b;
            auto e = evaluate(f.right(), x);
            if (!e.is_ok()) return e;
            if (b.value == 0.0) {
                if (e.value > 0.0) return EvalResult::ok(0.0);
                if (e.value == 0.0) return EvalResult::ok(1.0);
                return EvalResult::error(Status::pole);
            }
            if (b.value < 0.0 && !detail::is_integer_valued(e.value))
                return EvalResult::error(Status::domain_error);
            return finish(std::pow(b.value, e.value));
        }
        case ExprKind::powbase: {
            auto e = evaluate(f.child(), x);
            if (!e.is_ok()) return e;
            return finish(std::pow(f.value(), e.value));
        }
        case ExprKind::neg: {
            auto c = evaluate(f.child(), x);
            if (!c.is_ok()) return c;
            return finish(-c.value);
        }
        case ExprKind::sin: {
            auto c = evaluate(f.child(), x);
            return c.is_ok() ? finish(std::sin(c.value)) : c;
        }
        case ExprKind::cos: {
            auto c = evaluate(f.child(), x);
            return c.is_ok() ? finish(std::cos(c.value)) : c;
        }
        case ExprKind::tan: {
            auto c = evaluate(f.child(), x);
            return c.is_ok() ? finish(std::tan(c.value)) : c;
        }
        case ExprKind::cot: {
            auto c = evaluate(f.child(), x);
            if (!c.is_ok()) return c;
            const double s = std::sin(c.value);
            if (s == 0.0) return EvalResult::error(Status::pole);
            return finish(std::cos(c.value) / s);
        }
        case ExprKind::sec: {
            auto c = evaluate(f.child(), x);
            if (!c.is_ok()) return c;
            const double cs = std::cos(c.value);
            if (cs == 0.0) return EvalResult::error(Status::pole);
            return finish(1.0 / cs);
        }
        case ExprKind::csc: {
            auto c = evaluate(f.child(), x);
            if (!c.is_ok()) return c;
            const double s = std::sin(c.value);
            if (s == 0.0) return EvalResult::error(Status::pole);
            return finish(1.0 / s);
        }
        case ExprKind::exp: {
            auto c = evaluate(f.child(), x);
            return c.is_ok() ? finish(std::exp(c.value)) : c;
        }
        case ExprKind::ln: {
            auto c = evaluate(f.child(), x);
            if (!c.is_ok()) return c;
            if (c.value <= 0.0) return EvalResult::error(Status::domain_error);
            return finish(std::log(c.value));
        }
    }
    return EvalResult::error(Status::domain_error);
}

// ---------------------------------------------------------------------------
// Folding constructors, used when building derived expressions
// ---------------------------------------------------------------------------

namespace detail {

inline Expr mk_const(double v) { return Expr::constant(v); }

inline std::optional<double> const_value(const Expr& e) {
    if (e.is_constant()) return e.value();
    return std::nullopt;
}

inline Expr mk_add(const Expr& a, const Expr& b) {
    auto ca = const_value(a);
    auto cb = const_value(b);
    if (ca && cb) return mk_const(*ca + *cb);
    if (ca && *ca == 0.0) return b;
    if (cb && *cb == 0.0) return a;
    return Expr::binary(ExprKind::add, a, b);
}

inline Expr mk_neg(const Expr& a) {
    if (auto c = const_value(a)) return mk_const(-*c);
    if (a.kind() == ExprKind::neg) return a.child();
    return Expr::unary(ExprKind::neg, a);
}

inline Expr mk_sub(const Expr& a, const Expr& b) {
    auto ca = const_value(a);
    auto cb = const_value(b);
    if (ca && cb) return mk_const(*ca - *cb);
    if (cb && *cb == 0.0) return a;
    if (ca && *ca == 0.0) return mk_neg(b);
    return Expr::binary(ExprKind::sub, a, b);
}

inline Expr mk_mul(const Expr& a, const Expr& b) {
    auto ca = const_value(a);
    auto cb = const_value(b);
    if (ca && cb) return mk_const(*ca * *cb);
    if ((ca && *ca == 0.0) || (cb && *cb == 0.0)) return mk_const(0.0);
    if (ca && *ca == 1.0) return b;
    if (cb && *cb == 1.0) return a;
    return Expr::binary(ExprKind::mul, a, b);
}

inline Expr mk_div(const Expr& a, const Expr& b) {
    auto ca = const_value(a);
    auto cb = const_value(b);
    if (cb && *cb != 0.0) {
        if (ca) return mk_const(*ca / *cb);
        if (*cb == 1.0) return a;
    }
    if (ca && *ca == 0.0) return mk_const(0.0);
    return Expr::binary(ExprKind::div, a, b);
}

inline Expr mk_pow(const Expr& b, const Expr& e) {
    auto cb = const_value(b);
    auto ce = const_value(e);
    if (ce) {
        if (*ce == 1.0) return b;
        if (*ce == 0.0) return mk_const(1.0);
    }
    if (cb && ce) {
        const double v = std::pow(*cb, *ce);
        if (std::isfinite(v)) return mk_const(v);
    }
    if (cb && *cb > 0.0 && *cb != 1.0) return Expr::powbase(*cb, e);
    return Expr::binary(ExprKind::pow, b, e);
}

inline Expr mk_powbase(double base, const Expr& e) {
    if (auto ce = const_value(e)) {
        const double v = std::pow(base, *ce);
        if (std::isfinite(v)) return mk_const(v);
    }
    return Expr::powbase(base, e);
}

inline Expr mk_fn(ExprKind k, const Expr& u) {
    if (u.is_constant()) {
        Expr node = Expr::unary(k, u);
        auto r = evaluate(node, 0.0);
        if (r.is_ok()) return mk_const(r.value);
        return node;
    }
    return Expr::unary(k, u);
}

// Conservative syntactic check that an expression is positive for every x
// where it evaluates. Used to decide whether f^g can be rewritten as
// exp(g*ln f).
inline bool definitely_positive(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::constant: return e.value() > 0.0;
        case ExprKind::exp:
        case ExprKind::powbase:
            return true;
        case ExprKind::add:
        case ExprKind::mul:
        case ExprKind::div:
            return definitely_positive(e.left()) && definitely_positive(e.right());
        case ExprKind::pow:
            return definitely_positive(e.left()) && e.right().is_constant();
        default:
            return false;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Symbolic differentiation
// ---------------------------------------------------------------------------

/// Exact first derivative with respect to x. Total on the grammar except for
/// f^g with an x-dependent exponent over a possibly non-positive base, which
/// has no single-valued real derivative and raises DomainError.
inline Expr derivative(const Expr& f) {
    using namespace detail;
    switch (f.kind()) {
        case ExprKind::constant: return mk_const(0.0);
        case ExprKind::variable: return mk_const(1.0);
        case ExprKind::add: return mk_add(derivative(f.left()), derivative(f.right()));
        case ExprKind::sub: return mk_sub(derivative(f.left()), derivative(f.right()));
        case ExprKind::mul:
            return mk_add(mk_mul(derivative(f.left()), f.right()),
                          mk_mul(f.left(), derivative(f.right())));
        case ExprKind::div:
            return mk_div(mk_sub(mk_mul(derivative(f.left()), f.right()),
                                 mk_mul(f.left(), derivative(f.right()))),
                          mk_pow(f.right(), mk_const(2.0)));
        case ExprKind::pow: {
            const Expr base = f.left();
            const Expr expo = f.right();
            if (expo.is_constant()) {
                const double n = expo.value();
                return mk_mul(mk_mul(mk_const(n), mk_pow(base, mk_const(n - 1.0))),
                              derivative(base));
            }
            if (!definitely_positive(base))
                throw DomainError(
                    "derivative of f^g with x-dependent exponent requires a base "
                    "known to stay positive");
            return derivative(mk_fn(ExprKind::exp, mk_mul(expo, mk_fn(ExprKind::ln, base))));
        }
        case ExprKind::powbase:
            return mk_mul(mk_mul(Expr::powbase(f.value(), f.child()),
                                 mk_const(std::log(f.value()))),
                          derivative(f.child()));
        case ExprKind::neg: return mk_neg(derivative(f.child()));
        case ExprKind::sin:
            return mk_mul(mk_fn(ExprKind::cos, f.child()), derivative(f.child()));
        case ExprKind::cos:
            return mk_neg(mk_mul(mk_fn(ExprKind::sin, f.child()), derivative(f.child())));
        case ExprKind::tan:
            return mk_mul(mk_add(mk_const(1.0), mk_pow(mk_fn(ExprKind::tan, f.child()), mk_const(2.0))),
                          derivative(f.child()));
        case ExprKind::cot:
            return mk_neg(mk_mul(
                mk_add(mk_const(1.0), mk_pow(mk_fn(ExprKind::cot, f.child()), mk_const(2.0))),
                derivative(f.child())));
        case ExprKind::sec:
            return mk_mul(mk_mul(mk_fn(ExprKind::sec, f.child()), mk_fn(ExprKind::tan, f.child())),
                          derivative(f.child()));
        case ExprKind::csc:
            return mk_neg(mk_mul(
                mk_mul(mk_fn(ExprKind::csc, f.child()), mk_fn(ExprKind::cot, f.child())),
                derivative(f.child())));
        case ExprKind::exp:
            return mk_mul(mk_fn(ExprKind::exp, f.child()), derivative(f.child()));
        case ExprKind::ln:
            return mk_div(derivative(f.child()), f.child());
    }
    throw DomainError("derivative: unknown node kind");
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    enum class Type { number, ident, op, lparen, rparen, end } type;
    double number = 0.0;
    std::string ident;
    char op = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= src_.size()) {
            tok_.type = Token::Type::end;
            return;
        }
        const char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < src_.size() && std::isalpha(static_cast<unsigned char>(src_[j]))) ++j;
            tok_.type = Token::Type::ident;
            tok_.ident = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^':
                tok_.type = Token::Type::op;
                tok_.op = c;
                ++i_;
                return;
            case '(':
                tok_.type = Token::Type::lparen;
                ++i_;
                return;
            case ')':
                tok_.type = Token::Type::rparen;
                ++i_;
                return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i_);
        }
    }

    void lex_number() {
        std::size_t j = i_;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        if (j < src_.size() && src_[j] == '.') {
            ++j;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        }
        // Exponent suffix only when it is unambiguously part of the number,
        // so "2*e" still lexes 'e' as the Euler constant.
        if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
            if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
                ++k;
                while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
                j = k;
            }
        }
        double v = 0.0;
        auto [p, ec] = std::from_chars(src_.data() + i_, src_.data() + j, v);
        if (ec != std::errc() || p != src_.data() + j)
            throw ParseError("malformed number", i_);
        tok_.type = Token::Type::number;
        tok_.number = v;
        i_ = j;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

inline std::optional<ExprKind> function_kind(std::string_view name) {
    if (name == "sin") return ExprKind::sin;
    if (name == "cos") return ExprKind::cos;
    if (name == "tan") return ExprKind::tan;
    if (name == "cot") return ExprKind::cot;
    if (name == "sec") return ExprKind::sec;
    if (name == "csc") return ExprKind::csc;
    if (name == "exp") return ExprKind::exp;
    if (name == "ln") return ExprKind::ln;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr parse() {
        Expr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.type != Token::Type::end)
            throw ParseError("unexpected trailing input", t.pos);
        return e;
    }

private:
    struct Atom {
        Expr expr;
        bool euler_ident = false;
    };

    Expr parse_expr() {
        Expr e = parse_term();
        while (lex_.peek().type == Token::Type::op &&
               (lex_.peek().op == '+' || lex_.peek().op == '-')) {
            const char op = lex_.next().op;
            Expr rhs = parse_term();
            e = Expr::binary(op == '+' ? ExprKind::add : ExprKind::sub, e, rhs);
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (lex_.peek().type == Token::Type::op &&
               (lex_.peek().op == '*' || lex_.peek().op == '/')) {
            const char op = lex_.next().op;
            Expr rhs = parse_factor();
            e = Expr::binary(op == '*' ? ExprKind::mul : ExprKind::div, e, rhs);
        }
        return e;
    }

    Expr parse_factor() {
        if (lex_.peek().type == Token::Type::op && lex_.peek().op == '-') {
            lex_.next();
            return Expr::unary(ExprKind::neg, parse_factor());
        }
        return parse_power();
    }

    Expr parse_power() {
        Atom base = parse_atom();
        if (lex_.peek().type == Token::Type::op && lex_.peek().op == '^') {
            lex_.next();
            Expr expo = parse_factor();
            if (base.euler_ident)
                return Expr::unary(ExprKind::exp, expo);
            if (base.expr.is_constant()) {
                const double b = base.expr.value();
                if (b > 0.0 && b != 1.0) return Expr::powbase(b, expo);
            }
            return Expr::binary(ExprKind::pow, base.expr, expo);
        }
        return base.expr;
    }

    Atom parse_atom() {
        Token t = lex_.next();
        switch (t.type) {
            case Token::Type::number:
                return {Expr::constant(t.number), false};
            case Token::Type::ident: {
                if (t.ident == "x") return {Expr::variable(), false};
                if (t.ident == "e") return {Expr::constant(M_E), true};
                if (auto fk = function_kind(t.ident)) {
                    expect_lparen();
                    Expr arg = parse_expr();
                    expect_rparen();
                    return {Expr::unary(*fk, arg), false};
                }
                throw ParseError("unknown identifier '" + t.ident + "'", t.pos);
            }
            case Token::Type::lparen: {
                Expr e = parse_expr();
                expect_rparen();
                return {e, false};
            }
            default:
                throw ParseError("expected a number, 'x', a function, or '('", t.pos);
        }
    }

    void expect_lparen() {
        Token t = lex_.next();
        if (t.type != Token::Type::lparen) throw ParseError("expected '('", t.pos);
    }

    void expect_rparen() {
        Token t = lex_.next();
        if (t.type != Token::Type::rparen) throw ParseError("expected ')'", t.pos);
    }

    Lexer lex_;
};

inline std::string format_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

inline const char* function_name(ExprKind k) {
    switch (k) {
        case ExprKind::sin: return "sin";
        case ExprKind::cos: return "cos";
        case ExprKind::tan: return "tan";
        case ExprKind::cot: return "cot";
        case ExprKind::sec: return "sec";
        case ExprKind::csc: return "csc";
        case ExprKind::exp: return "exp";
        case ExprKind::ln: return "ln";
        default: return "?";
    }
}

// Precedence levels used by the printer: additive 1, multiplicative 2,
// unary minus 3, power 4, atoms 5.
inline int print_precedence(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::add:
        case ExprKind::sub: return 1;
        case ExprKind::mul:
        case ExprKind::div: return 2;
        case ExprKind::neg: return 3;
        case ExprKind::constant:
            return e.value() < 0.0 ? 3 : 5;
        case ExprKind::pow:
        case ExprKind::powbase: return 4;
        default: return 5;
    }
}

inline void print_into(const Expr& e, int min_prec, std::string& out) {
    const int prec = print_precedence(e);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (e.kind()) {
        case ExprKind::constant:
            out += format_number(e.value());
            break;
        case ExprKind::variable:
            out += 'x';
            break;
        case ExprKind::add:
            print_into(e.left(), 1, out);
            out += '+';
            print_into(e.right(), 2, out);
            break;
        case ExprKind::sub:
            print_into(e.left(), 1, out);
            out += '-';
            print_into(e.right(), 2, out);
            break;
        case ExprKind::mul:
            print_into(e.left(), 2, out);
            out += '*';
            print_into(e.right(), 3, out);
            break;
        case ExprKind::div:
            print_into(e.left(), 2, out);
            out += '/';
            print_into(e.right(), 3, out);
            break;
        case ExprKind::pow:
            print_into(e.left(), 5, out);
            out += '^';
            print_into(e.right(), 4, out);
            break;
        case ExprKind::powbase:
            out += format_number(e.value());
            out += '^';
            print_into(e.child(), 4, out);
            break;
        case ExprKind::neg:
            out += '-';
            print_into(e.child(), 4, out);
            break;
        default:
            out += function_name(e.kind());
            out += '(';
            print_into(e.child(), 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

} // namespace detail

/// Parse expression text; throws ParseError with the offending position.
inline Expr parse(std::string_view source) {
    return detail::Parser(source).parse();
}

/// Render to text. parse(to_string(parse(s))) is structurally identical to
/// parse(s).
inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print_into(e, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Monomial detection (used by the Euler operator front end)
// ---------------------------------------------------------------------------

struct Monomial {
    double coefficient = 1.0;
    double exponent = 0.0;
};

/// Matches c, x, x^m, c*x^m, and negations/scalings thereof.
inline std::optional<Monomial> extract_monomial(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::constant:
            return Monomial{e.value(), 0.0};
        case ExprKind::variable:
            return Monomial{1.0, 1.0};
        case ExprKind::pow:
            if (e.left().kind() == ExprKind::variable && e.right().is_constant())
                return Monomial{1.0, e.right().value()};
            return std::nullopt;
        case ExprKind::neg:
            if (auto m = extract_monomial(e.child()))
                return Monomial{-m->coefficient, m->exponent};
            return std::nullopt;
        case ExprKind::mul: {
            auto l = extract_monomial(e.left());
            auto r = extract_monomial(e.right());
            if (l && r && l->exponent == 0.0) return Monomial{l->coefficient * r->coefficient, r->exponent};
            if (l && r && r->exponent == 0.0) return Monomial{l->coefficient * r->coefficient, l->exponent};
            return std::nullopt;
        }
        case ExprKind::div: {
            auto l = extract_monomial(e.left());
            auto r = extract_monomial(e.right());
            if (l && r && r->exponent == 0.0 && r->coefficient != 0.0)
                return Monomial{l->coefficient / r->coefficient, l->exponent};
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

} // namespace fod
