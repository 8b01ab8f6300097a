#include "quadfermat/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>
#include <vector>

namespace quadfermat {

struct Expr::Node {
    Kind kind;
    Cx value{};   // Const
    VarId var{};  // Var
    Cx expo{};    // PowConst
    std::shared_ptr<const Node> a, b;
};

Expr Expr::constant(Cx value) {
    ensure_finite(value, "Expr::constant");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(VarId v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->var = v;
    return Expr(std::move(n));
}

namespace {

template <typename Node>
std::shared_ptr<const Node> make_node(Expr::Kind k, std::shared_ptr<const Node> a,
                                      std::shared_ptr<const Node> b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

}  // namespace

Expr Expr::add(Expr a, Expr b) { return Expr(make_node(Kind::Add, a.node_, b.node_)); }
Expr Expr::sub(Expr a, Expr b) { return Expr(make_node(Kind::Sub, a.node_, b.node_)); }
Expr Expr::mul(Expr a, Expr b) { return Expr(make_node(Kind::Mul, a.node_, b.node_)); }
Expr Expr::div(Expr a, Expr b) { return Expr(make_node(Kind::Div, a.node_, b.node_)); }
Expr Expr::neg(Expr a) { return Expr(make_node(Kind::Neg, a.node_, {})); }
Expr Expr::exp(Expr a) { return Expr(make_node(Kind::Exp, a.node_, {})); }
Expr Expr::sin(Expr a) { return Expr(make_node(Kind::Sin, a.node_, {})); }
Expr Expr::cos(Expr a) { return Expr(make_node(Kind::Cos, a.node_, {})); }

Expr Expr::pow(Expr base, Cx exponent) {
    ensure_finite(exponent, "Expr::pow exponent");
    auto n = std::make_shared<Node>();
    n->kind = Kind::PowConst;
    n->expo = exponent;
    n->a = base.node_;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
Cx Expr::const_value() const { return node_->value; }
Expr::VarId Expr::var_id() const { return node_->var; }
Expr Expr::child() const { return Expr(node_->a); }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }
Cx Expr::exponent() const { return node_->expo; }

std::size_t Expr::node_count() const {
    std::size_t total = 1;
    if (node_->a) total += Expr(node_->a).node_count();
    if (node_->b) total += Expr(node_->b).node_count();
    return total;
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

Cx evaluate(const Expr& e, Cx z1, Cx z2, const ToleranceConfig& cfg) {
    using Kind = Expr::Kind;
    Cx out;
    switch (e.kind()) {
        case Kind::Const: out = e.const_value(); break;
        case Kind::Var: out = e.var_id() == Expr::VarId::Z1 ? z1 : z2; break;
        case Kind::Add: out = evaluate(e.lhs(), z1, z2, cfg) + evaluate(e.rhs(), z1, z2, cfg); break;
        case Kind::Sub: out = evaluate(e.lhs(), z1, z2, cfg) - evaluate(e.rhs(), z1, z2, cfg); break;
        case Kind::Mul: out = evaluate(e.lhs(), z1, z2, cfg) * evaluate(e.rhs(), z1, z2, cfg); break;
        case Kind::Div: {
            const Cx num = evaluate(e.lhs(), z1, z2, cfg);
            const Cx den = evaluate(e.rhs(), z1, z2, cfg);
            if (std::abs(den) < cfg.abs_tol)
                throw DivisionNearZero("evaluate: |denominator| below abs_tol");
            out = num / den;
            break;
        }
        case Kind::Neg: out = -evaluate(e.child(), z1, z2, cfg); break;
        case Kind::Exp: out = std::exp(evaluate(e.child(), z1, z2, cfg)); break;
        case Kind::Sin: out = std::sin(evaluate(e.child(), z1, z2, cfg)); break;
        case Kind::Cos: out = std::cos(evaluate(e.child(), z1, z2, cfg)); break;
        case Kind::PowConst:
            out = principal_power(evaluate(e.child(), z1, z2, cfg), e.exponent());
            break;
    }
    ensure_finite(out, "evaluate");
    return out;
}

// ---------------------------------------------------------------------------
// folding constructors (shared by differentiate and simplify)
// ---------------------------------------------------------------------------

namespace {

bool is_const(const Expr& e, Cx v) {
    return e.kind() == Expr::Kind::Const && e.const_value() == v;
}
bool is_const(const Expr& e) { return e.kind() == Expr::Kind::Const; }

const Cx kZero(0.0, 0.0);
const Cx kOne(1.0, 0.0);

Expr fadd(Expr a, Expr b) {
    if (is_const(a) && is_const(b)) return Expr::constant(a.const_value() + b.const_value());
    if (is_const(a, kZero)) return b;
    if (is_const(b, kZero)) return a;
    return Expr::add(std::move(a), std::move(b));
}

Expr fsub(Expr a, Expr b) {
    if (is_const(a) && is_const(b)) return Expr::constant(a.const_value() - b.const_value());
    if (is_const(b, kZero)) return a;
    if (is_const(a, kZero)) return Expr::neg(std::move(b));
    return Expr::sub(std::move(a), std::move(b));
}

Expr fneg(Expr a) {
    if (is_const(a)) return Expr::constant(-a.const_value());
    if (a.kind() == Expr::Kind::Neg) return a.child();
    return Expr::neg(std::move(a));
}

Expr fmul(Expr a, Expr b) {
    if (is_const(a) && is_const(b)) return Expr::constant(a.const_value() * b.const_value());
    if (is_const(a, kZero) || is_const(b, kZero)) return Expr::constant(kZero);
    if (is_const(a, kOne)) return b;
    if (is_const(b, kOne)) return a;
    return Expr::mul(std::move(a), std::move(b));
}

Expr fdiv(Expr a, Expr b) {
    if (is_const(b, kOne)) return a;
    if (is_const(b) && !is_const(b, kZero) && is_const(a, kZero)) return Expr::constant(kZero);
    if (is_const(a) && is_const(b) && std::abs(b.const_value()) > 1e-300) {
        const Cx q = a.const_value() / b.const_value();
        if (is_finite(q)) return Expr::constant(q);
    }
    return Expr::div(std::move(a), std::move(b));
}

Expr fpow(Expr a, Cx k) {
    if (k == kZero) return Expr::constant(kOne);
    if (k == kOne) return a;
    return Expr::pow(std::move(a), k);
}

}  // namespace

// ---------------------------------------------------------------------------
// differentiation
// ---------------------------------------------------------------------------

Expr differentiate(const Expr& e, Expr::VarId v) {
    using Kind = Expr::Kind;
    switch (e.kind()) {
        case Kind::Const: return Expr::constant(kZero);
        case Kind::Var: return Expr::constant(e.var_id() == v ? kOne : kZero);
        case Kind::Add: return fadd(differentiate(e.lhs(), v), differentiate(e.rhs(), v));
        case Kind::Sub: return fsub(differentiate(e.lhs(), v), differentiate(e.rhs(), v));
        case Kind::Mul:
            return fadd(fmul(differentiate(e.lhs(), v), e.rhs()),
                        fmul(e.lhs(), differentiate(e.rhs(), v)));
        case Kind::Div: {
            // (a/b)' = (a' b - a b') / b^2
            Expr num = fsub(fmul(differentiate(e.lhs(), v), e.rhs()),
                            fmul(e.lhs(), differentiate(e.rhs(), v)));
            return fdiv(std::move(num), fmul(e.rhs(), e.rhs()));
        }
        case Kind::Neg: return fneg(differentiate(e.child(), v));
        case Kind::Exp: return fmul(Expr::exp(e.child()), differentiate(e.child(), v));
        case Kind::Sin: return fmul(Expr::cos(e.child()), differentiate(e.child(), v));
        case Kind::Cos: return fneg(fmul(Expr::sin(e.child()), differentiate(e.child(), v)));
        case Kind::PowConst: {
            const Cx k = e.exponent();
            if (k == kZero) return Expr::constant(kZero);
            return fmul(fmul(Expr::constant(k), fpow(e.child(), k - kOne)),
                        differentiate(e.child(), v));
        }
    }
    throw Error("differentiate: unreachable node kind");
}

// ---------------------------------------------------------------------------
// shift and simplify
// ---------------------------------------------------------------------------

Expr shift(const Expr& e, const Shift& c) {
    using Kind = Expr::Kind;
    switch (e.kind()) {
        case Kind::Const: return e;
        case Kind::Var: {
            const Cx off = e.var_id() == Expr::VarId::Z1 ? c.c1 : c.c2;
            if (off == kZero) return e;
            return Expr::add(e, Expr::constant(off));
        }
        case Kind::Add: return Expr::add(shift(e.lhs(), c), shift(e.rhs(), c));
        case Kind::Sub: return Expr::sub(shift(e.lhs(), c), shift(e.rhs(), c));
        case Kind::Mul: return Expr::mul(shift(e.lhs(), c), shift(e.rhs(), c));
        case Kind::Div: return Expr::div(shift(e.lhs(), c), shift(e.rhs(), c));
        case Kind::Neg: return Expr::neg(shift(e.child(), c));
        case Kind::Exp: return Expr::exp(shift(e.child(), c));
        case Kind::Sin: return Expr::sin(shift(e.child(), c));
        case Kind::Cos: return Expr::cos(shift(e.child(), c));
        case Kind::PowConst: return Expr::pow(shift(e.child(), c), e.exponent());
    }
    throw Error("shift: unreachable node kind");
}

Expr simplify(const Expr& e) {
    using Kind = Expr::Kind;
    switch (e.kind()) {
        case Kind::Const:
        case Kind::Var: return e;
        case Kind::Add: return fadd(simplify(e.lhs()), simplify(e.rhs()));
        case Kind::Sub: return fsub(simplify(e.lhs()), simplify(e.rhs()));
        case Kind::Mul: return fmul(simplify(e.lhs()), simplify(e.rhs()));
        case Kind::Div: return fdiv(simplify(e.lhs()), simplify(e.rhs()));
        case Kind::Neg: return fneg(simplify(e.child()));
        case Kind::Exp: {
            Expr c = simplify(e.child());
            if (is_const(c) && is_finite(std::exp(c.const_value())))
                return Expr::constant(std::exp(c.const_value()));
            return Expr::exp(std::move(c));
        }
        case Kind::Sin: {
            Expr c = simplify(e.child());
            if (is_const(c) && is_finite(std::sin(c.const_value())))
                return Expr::constant(std::sin(c.const_value()));
            return Expr::sin(std::move(c));
        }
        case Kind::Cos: {
            Expr c = simplify(e.child());
            if (is_const(c) && is_finite(std::cos(c.const_value())))
                return Expr::constant(std::cos(c.const_value()));
            return Expr::cos(std::move(c));
        }
        case Kind::PowConst: {
            Expr c = simplify(e.child());
            if (is_const(c) && c.const_value() != kZero) {
                const Cx w = std::exp(e.exponent() * std::log(c.const_value()));
                if (is_finite(w))
                    return Expr::constant(principal_power(c.const_value(), e.exponent()));
            }
            return fpow(std::move(c), e.exponent());
        }
    }
    throw Error("simplify: unreachable node kind");
}

bool is_entire(const Expr& e) {
    using Kind = Expr::Kind;
    switch (e.kind()) {
        case Kind::Const:
        case Kind::Var: return true;
        case Kind::Div: return false;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul: return is_entire(e.lhs()) && is_entire(e.rhs());
        case Kind::Neg:
        case Kind::Exp:
        case Kind::Sin:
        case Kind::Cos: return is_entire(e.child());
        case Kind::PowConst: {
            // non-negative integer exponents keep the function entire
            const Cx k = e.exponent();
            const bool entire_power =
                k.imag() == 0.0 && k.real() >= 0.0 && k.real() == std::floor(k.real());
            return entire_power && is_entire(e.child());
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw SyntaxError("unexpected input", pos, what);
    }

    [[noreturn]] void fail(const char* expected) {
        throw SyntaxError("unexpected input", pos, expected);
    }

    bool starts_number() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    Cx parse_number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos == start) fail("number");
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            std::size_t exp_pos = pos + 1;
            if (exp_pos < text.size() && (text[exp_pos] == '+' || text[exp_pos] == '-')) ++exp_pos;
            if (exp_pos < text.size() && std::isdigit(static_cast<unsigned char>(text[exp_pos]))) {
                pos = exp_pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc() || res.ptr != text.data() + pos)
            throw SyntaxError("malformed number", start, "decimal literal");
        if (pos < text.size() && text[pos] == 'i') {
            ++pos;
            return Cx(0.0, value);
        }
        return Cx(value, 0.0);
    }

    // number, or "(re)", "(re+imi)", "(re-imi)" after '^'
    Cx parse_exponent() {
        if (accept('(')) {
            double sign = accept('-') ? -1.0 : 1.0;
            Cx first = parse_number() * sign;
            Cx total = first;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const double s2 = accept('+') ? 1.0 : (accept('-'), -1.0);
                total += parse_number() * s2;
            }
            expect(')', "')'");
            return total;
        }
        return parse_number();
    }

    std::string_view parse_ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos]))))
            ++pos;
        return text.substr(start, pos - start);
    }

    Expr parse_expr() {
        Expr acc = parse_term();
        for (;;) {
            if (accept('+'))
                acc = Expr::add(std::move(acc), parse_term());
            else if (accept('-'))
                acc = Expr::sub(std::move(acc), parse_term());
            else
                return acc;
        }
    }

    Expr parse_term() {
        Expr acc = parse_factor();
        for (;;) {
            if (accept('*'))
                acc = Expr::mul(std::move(acc), parse_factor());
            else if (accept('/'))
                acc = Expr::div(std::move(acc), parse_factor());
            else
                return acc;
        }
    }

    Expr parse_factor() {
        const bool negated = accept('-');
        Expr base = parse_atom();
        if (accept('^')) base = Expr::pow(std::move(base), parse_exponent());
        return negated ? Expr::neg(std::move(base)) : std::move(base);
    }

    Expr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("number, z1, z2, exp, sin, cos, or '('");
        if (accept('(')) {
            Expr inner = parse_expr();
            expect(')', "')'");
            return inner;
        }
        if (starts_number()) return Expr::constant(parse_number());
        const std::size_t ident_pos = pos;
        const std::string_view ident = parse_ident();
        if (ident == "z1") return Expr::z1();
        if (ident == "z2") return Expr::z2();
        if (ident == "exp" || ident == "sin" || ident == "cos") {
            expect('(', "'('");
            Expr inner = parse_expr();
            expect(')', "')'");
            if (ident == "exp") return Expr::exp(std::move(inner));
            if (ident == "sin") return Expr::sin(std::move(inner));
            return Expr::cos(std::move(inner));
        }
        throw SyntaxError("unknown token", ident_pos, "number, z1, z2, exp, sin, cos, or '('");
    }
};

}  // namespace

Expr parse(std::string_view text) {
    Parser p{text};
    Expr e = p.parse_expr();
    if (!p.eof()) throw SyntaxError("trailing input", p.pos, "end of input");
    return e;
}

Cx parse_complex(std::string_view text) {
    Parser p{text};
    double sign = p.accept('-') ? -1.0 : 1.0;
    Cx total = p.parse_number() * sign;
    p.skip_ws();
    if (p.peek() == '+' || p.peek() == '-') {
        const double s2 = p.accept('+') ? 1.0 : (p.accept('-'), -1.0);
        total += p.parse_number() * s2;
    }
    if (!p.eof()) throw SyntaxError("trailing input", p.pos, "end of complex literal");
    return total;
}

// ---------------------------------------------------------------------------
// renderer
// ---------------------------------------------------------------------------

namespace {

std::string render_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string render_complex(Cx v) {
    if (v.imag() == 0.0) return render_double(v.real());
    if (v.real() == 0.0) return render_double(v.imag()) + "i";
    std::string out = render_double(v.real());
    if (!(v.imag() < 0)) out += "+";
    out += render_double(v.imag()) + "i";
    return out;
}

namespace {

// precedence levels: 1 add/sub, 2 mul/div, 3 unary minus, 4 power base, 5 atom
void render_rec(const Expr& e, int min_prec, std::string& out) {
    using Kind = Expr::Kind;
    auto paren = [&](int prec, auto&& body) {
        const bool need = prec < min_prec;
        if (need) out += "(";
        body();
        if (need) out += ")";
    };
    switch (e.kind()) {
        case Kind::Const: {
            const Cx v = e.const_value();
            // a two-part literal reads as a sum, a negative one as a unary
            // minus; parenthesize accordingly
            int prec = 5;
            if (v.real() != 0.0 && v.imag() != 0.0)
                prec = 1;
            else if ((v.imag() == 0.0 && v.real() < 0.0) || (v.real() == 0.0 && v.imag() < 0.0))
                prec = 3;
            paren(prec, [&] { out += render_complex(v); });
            break;
        }
        case Kind::Var: out += e.var_id() == Expr::VarId::Z1 ? "z1" : "z2"; break;
        case Kind::Add:
            paren(1, [&] {
                render_rec(e.lhs(), 1, out);
                out += " + ";
                render_rec(e.rhs(), 2, out);
            });
            break;
        case Kind::Sub:
            paren(1, [&] {
                render_rec(e.lhs(), 1, out);
                out += " - ";
                render_rec(e.rhs(), 2, out);
            });
            break;
        case Kind::Mul:
            paren(2, [&] {
                render_rec(e.lhs(), 2, out);
                out += "*";
                render_rec(e.rhs(), 3, out);
            });
            break;
        case Kind::Div:
            paren(2, [&] {
                render_rec(e.lhs(), 2, out);
                out += "/";
                render_rec(e.rhs(), 3, out);
            });
            break;
        case Kind::Neg:
            paren(3, [&] {
                out += "-";
                render_rec(e.child(), 4, out);
            });
            break;
        case Kind::Exp:
        case Kind::Sin:
        case Kind::Cos: {
            out += e.kind() == Kind::Exp ? "exp(" : (e.kind() == Kind::Sin ? "sin(" : "cos(");
            render_rec(e.child(), 1, out);
            out += ")";
            break;
        }
        case Kind::PowConst: {
            paren(4, [&] {
                render_rec(e.child(), 5, out);
                out += "^";
                const Cx k = e.exponent();
                if ((k.imag() == 0.0 && k.real() >= 0.0) || (k.real() == 0.0 && k.imag() > 0.0))
                    out += render_complex(k);
                else {
                    out += "(";
                    out += render_double(k.real());
                    if (!(k.imag() < 0)) out += "+";
                    out += render_double(k.imag()) + "i)";
                }
            });
            break;
        }
    }
}

}  // namespace

std::string render(const Expr& e) {
    std::string out;
    render_rec(e, 1, out);
    return out;
}

}  // namespace quadfermat
