#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "quadfermat/kernels.hpp"

namespace quadfermat {

/// Shift c = (c1, c2) applied as f(z) -> f(z1 + c1, z2 + c2).
struct Shift {
    Cx c1{0.0, 0.0};
    Cx c2{0.0, 0.0};

    bool is_zero() const { return c1 == Cx(0.0, 0.0) && c2 == Cx(0.0, 0.0); }
};

/// Immutable expression tree over the two complex variables z1, z2.
///
/// Nodes: Const, Var(Z1|Z2), Add, Sub, Mul, Div, Neg, Exp, Sin, Cos,
/// PowConst (constant exponent, evaluated as a principal power).
/// Copies share structure; nothing is mutated after construction.
class Expr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Sin, Cos, PowConst };
    enum class VarId { Z1, Z2 };

    Expr() : Expr(constant(Cx(0.0, 0.0))) {}

    static Expr constant(Cx value);
    static Expr variable(VarId v);
    static Expr z1() { return variable(VarId::Z1); }
    static Expr z2() { return variable(VarId::Z2); }

    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr div(Expr a, Expr b);
    static Expr neg(Expr a);
    static Expr exp(Expr a);
    static Expr sin(Expr a);
    static Expr cos(Expr a);
    static Expr pow(Expr base, Cx exponent);

    Kind kind() const;
    Cx const_value() const;  // Kind::Const only
    VarId var_id() const;    // Kind::Var only
    Expr child() const;      // unary nodes and PowConst base
    Expr lhs() const;        // binary nodes
    Expr rhs() const;
    Cx exponent() const;  // Kind::PowConst only

    std::size_t node_count() const;

    friend Expr operator+(Expr a, Expr b) { return add(std::move(a), std::move(b)); }
    friend Expr operator-(Expr a, Expr b) { return sub(std::move(a), std::move(b)); }
    friend Expr operator*(Expr a, Expr b) { return mul(std::move(a), std::move(b)); }
    friend Expr operator/(Expr a, Expr b) { return div(std::move(a), std::move(b)); }
    friend Expr operator-(Expr a) { return neg(std::move(a)); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr a, Cx b) { return std::move(a) + Expr::constant(b); }
inline Expr operator+(Cx a, Expr b) { return Expr::constant(a) + std::move(b); }
inline Expr operator-(Expr a, Cx b) { return std::move(a) - Expr::constant(b); }
inline Expr operator-(Cx a, Expr b) { return Expr::constant(a) - std::move(b); }
inline Expr operator*(Cx a, Expr b) { return Expr::constant(a) * std::move(b); }
inline Expr operator*(Expr a, Cx b) { return std::move(a) * Expr::constant(b); }

/// Pointwise evaluation. Throws DivisionNearZero when a Div denominator has
/// modulus below cfg.abs_tol, NonFiniteResult on overflow.
Cx evaluate(const Expr& e, Cx z1, Cx z2, const ToleranceConfig& cfg = {});

/// Exact symbolic partial derivative.
Expr differentiate(const Expr& e, Expr::VarId v);

/// Expression equal pointwise to e(z1 + c.c1, z2 + c.c2).
Expr shift(const Expr& e, const Shift& c);

/// Constant folding, 0/1 identities, Neg(Neg(x)) -> x. Idempotent and
/// pointwise-equal to the input.
Expr simplify(const Expr& e);

/// True when the tree contains no Div node (entire-function candidate).
bool is_entire(const Expr& e);

/// Parse the expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? atom ("^" exponent)?
///   atom   := number | "z1" | "z2" | func "(" expr ")" | "(" expr ")"
///   func   := "exp" | "sin" | "cos"
///   number := decimal literal with optional "i" suffix (1i, 2.5i, 3e-4i)
/// `exponent` is a number or a parenthesised complex literal "(re+imi)".
/// Throws SyntaxError with byte offset and expected-token set.
Expr parse(std::string_view text);

/// Text form that parses back to an evaluation-equivalent expression.
std::string render(const Expr& e);

/// Shortest round-trip text for a complex constant ("2", "1i", "(1+2i)").
std::string render_complex(Cx v);

/// Parse a complex literal of the form "re", "imi", or "re+imi"
/// (e.g. "0.5", "2i", "0.5+0.25i", "-1-2i").
Cx parse_complex(std::string_view text);

}  // namespace quadfermat
