#pragma once

#include <utility>

#include "quadfermat/expr.hpp"
#include "quadfermat/kernels.hpp"

namespace quadfermat {

/// Coefficients of a x^2 + 2 alpha x y + b y^2 + 2 beta x + 2 gamma y + cc = 0.
/// All coefficients live in C; the conic language is formal.
struct QuadraticForm {
    Cx a{0.0, 0.0};
    Cx alpha{0.0, 0.0};
    Cx b{0.0, 0.0};
    Cx beta{0.0, 0.0};
    Cx gamma{0.0, 0.0};
    Cx cc{0.0, 0.0};

    /// max |coefficient| (the scale used by tolerance tests).
    double max_abs() const;

    /// P(x, y): the left-hand side evaluated at a point.
    Cx eval(Cx x, Cx y) const;

    /// The same polynomial as an expression in the two supplied arguments.
    Expr eval_expr(const Expr& x, const Expr& y) const;
};

/// Delta = det of the 3x3 companion matrix, D = ab - alpha^2.
struct Discriminants {
    Cx delta;
    Cx dee;
};

enum class Classification {
    NondegenerateReducible,
    DegenerateParallelLines,
    DegenerateIntersectingLines,
};

/// Discrete sign pairing of the reduction: Plus selects (A+, B-, xi+, eta+),
/// Minus the (A-, B+, xi-, eta-) pairing. The superscripts are locked
/// together; there is no mixed choice.
enum class Branch { Plus, Minus };

/// Translation + rotation + scaling data that carries the form to the unit
/// circle (scale_u * U)^2 + (scale_v * V)^2 = 1, plus the derived parametric
/// amplitudes. The source form travels with the data.
struct NormalForm {
    QuadraticForm form;
    Branch branch = Branch::Plus;
    Cx x1, y1;                // translation
    Cx xi, eta;               // rotation entries, xi^2 + eta^2 = 1
    Cx scale_u, scale_v;      // sqrt(D A/-Delta), sqrt(D B/-Delta)
    Cx d11, d12, e11, e12;    // parametric amplitudes
    Cx t1, t2;                // t1 == x1, t2 == y1
};

Discriminants discriminants(const QuadraticForm& q);

/// Classification table (abs_tol-scaled zero tests):
///   Delta ~ 0, alpha^2 ~ ab   -> DegenerateParallelLines
///   Delta ~ 0, alpha^2 != ab  -> DegenerateIntersectingLines
///   Delta != 0, alpha^2 != ab -> NondegenerateReducible
///   Delta != 0, alpha^2 ~ ab  -> UnsupportedCase (parabolic; the reduction
///                                divides by ab - alpha^2)
Classification classify(const QuadraticForm& q, const ToleranceConfig& cfg = {});

/// Full reduction chain. Requires classify(q) == NondegenerateReducible.
/// When the rotation formulas hit 0/0 (alpha = 0 with its degenerate branch)
/// the identity rotation is used; a vanishing scale factor raises
/// BranchUndefined.
NormalForm reduce(const QuadraticForm& q, Branch branch, const ToleranceConfig& cfg = {});

/// (x, y) = (d11 cos h - d12 sin h + t1, e11 cos h + e12 sin h + t2) as
/// expression trees; h must be entire (no Div nodes).
std::pair<Expr, Expr> parametric_solution(const NormalForm& nf, const Expr& h);

/// Inverse chain: translate, rotate by the transpose, scale. Points on the
/// conic land on the unit circle u^2 + v^2 = 1.
std::pair<Cx, Cx> forward_map(const NormalForm& nf, Cx x, Cx y);

}  // namespace quadfermat
