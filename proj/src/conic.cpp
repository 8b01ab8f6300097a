#include "quadfermat/conic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace quadfermat {

double QuadraticForm::max_abs() const {
    return std::max({std::abs(a), std::abs(alpha), std::abs(b), std::abs(beta), std::abs(gamma),
                     std::abs(cc)});
}

Cx QuadraticForm::eval(Cx x, Cx y) const {
    return a * x * x + 2.0 * alpha * x * y + b * y * y + 2.0 * beta * x + 2.0 * gamma * y + cc;
}

Expr QuadraticForm::eval_expr(const Expr& x, const Expr& y) const {
    Expr out = Expr::constant(a) * x * x;
    out = out + Expr::constant(2.0 * alpha) * x * y;
    out = out + Expr::constant(b) * y * y;
    out = out + Expr::constant(2.0 * beta) * x;
    out = out + Expr::constant(2.0 * gamma) * y;
    return out + Expr::constant(cc);
}

Discriminants discriminants(const QuadraticForm& q) {
    const Cx delta = q.a * q.b * q.cc + 2.0 * q.alpha * q.beta * q.gamma - q.a * q.gamma * q.gamma -
                     q.b * q.beta * q.beta - q.cc * q.alpha * q.alpha;
    const Cx dee = q.a * q.b - q.alpha * q.alpha;

    // cross-check against the companion-matrix determinant
    Eigen::Matrix3<Cx> companion;
    companion << q.a, q.alpha, q.beta,  //
        q.alpha, q.b, q.gamma,          //
        q.beta, q.gamma, q.cc;
    const Cx det = companion.determinant();
    const double scale = 1.0 + std::pow(q.max_abs(), 3);
    if (std::abs(det - delta) > 1e-9 * scale)
        throw Error("discriminants: companion determinant cross-check failed");

    ensure_finite(delta, "discriminants delta");
    ensure_finite(dee, "discriminants D");
    return {delta, dee};
}

namespace {

double cube(double x) { return x * x * x; }

}  // namespace

Classification classify(const QuadraticForm& q, const ToleranceConfig& cfg) {
    cfg.validate();
    const Discriminants d = discriminants(q);
    const double scale = q.max_abs();
    const bool delta_zero = std::abs(d.delta) <= cfg.abs_tol * (1.0 + cube(scale));
    const bool parallel = std::abs(q.alpha * q.alpha - q.a * q.b) <= cfg.abs_tol * (1.0 + scale * scale);
    if (delta_zero) {
        return parallel ? Classification::DegenerateParallelLines
                        : Classification::DegenerateIntersectingLines;
    }
    if (parallel)
        throw UnsupportedCase(
            "classify: Delta != 0 with alpha^2 = ab (parabolic case, reduction undefined)");
    return Classification::NondegenerateReducible;
}

NormalForm reduce(const QuadraticForm& q, Branch branch, const ToleranceConfig& cfg) {
    if (classify(q, cfg) != Classification::NondegenerateReducible)
        throw DegenerateForm("reduce: form is degenerate (Delta = 0)");

    const Discriminants dis = discriminants(q);
    const Cx D = dis.dee;
    const Cx delta = dis.delta;

    NormalForm nf;
    nf.form = q;
    nf.branch = branch;
    nf.x1 = (q.alpha * q.gamma - q.b * q.beta) / D;
    nf.y1 = (q.alpha * q.beta - q.a * q.gamma) / D;
    nf.t1 = nf.x1;
    nf.t2 = nf.y1;

    const double sgn = branch == Branch::Plus ? 1.0 : -1.0;
    const Cx diff = q.a - q.b;
    const Cx root = principal_sqrt(diff * diff + 4.0 * q.alpha * q.alpha);
    const Cx k14 = (q.b - q.a) + sgn * root;
    const Cx k12sq = k14 * k14 + 4.0 * q.alpha * q.alpha;
    const double rot_scale = 1.0 + std::max({std::abs(q.a), std::abs(q.b), std::abs(q.alpha)});
    if (std::abs(k12sq) <= cfg.abs_tol * rot_scale * rot_scale) {
        // 0/0 in the rotation formulas: the XY-term is absent on this branch,
        // the identity rotation is canonical.
        nf.xi = Cx(1.0, 0.0);
        nf.eta = Cx(0.0, 0.0);
    } else {
        const Cx k12 = principal_sqrt(k12sq);
        nf.xi = 2.0 * q.alpha / k12;
        nf.eta = k14 / k12;
    }

    const Cx a_scale = ((q.a + q.b) + sgn * root) / 2.0;  // A^{+-}
    const Cx b_scale = ((q.a + q.b) - sgn * root) / 2.0;  // B^{-+}
    nf.scale_u = principal_sqrt(D * a_scale / (-delta));
    nf.scale_v = principal_sqrt(D * b_scale / (-delta));
    const double scale_tol = cfg.abs_tol * (1.0 + q.max_abs());
    if (std::abs(nf.scale_u) <= scale_tol || std::abs(nf.scale_v) <= scale_tol)
        throw BranchUndefined("reduce: a scale factor vanishes for this branch");

    nf.d11 = nf.xi / nf.scale_u;
    nf.d12 = nf.eta / nf.scale_v;
    nf.e11 = nf.eta / nf.scale_u;
    nf.e12 = nf.xi / nf.scale_v;

    for (const Cx* v : {&nf.x1, &nf.y1, &nf.xi, &nf.eta, &nf.scale_u, &nf.scale_v, &nf.d11,
                        &nf.d12, &nf.e11, &nf.e12})
        ensure_finite(*v, "reduce");
    return nf;
}

std::pair<Expr, Expr> parametric_solution(const NormalForm& nf, const Expr& h) {
    if (!is_entire(h))
        throw Error("parametric_solution: h must be entire (no Div nodes)");
    Expr x = Expr::constant(nf.d11) * Expr::cos(h) - Expr::constant(nf.d12) * Expr::sin(h) +
             Expr::constant(nf.t1);
    Expr y = Expr::constant(nf.e11) * Expr::cos(h) + Expr::constant(nf.e12) * Expr::sin(h) +
             Expr::constant(nf.t2);
    return {std::move(x), std::move(y)};
}

std::pair<Cx, Cx> forward_map(const NormalForm& nf, Cx x, Cx y) {
    Eigen::Vector2<Cx> centered(x - nf.x1, y - nf.y1);
    Eigen::Matrix2<Cx> rot;
    rot << nf.xi, -nf.eta,  //
        nf.eta, nf.xi;
    const Eigen::Vector2<Cx> uv = rot.transpose() * centered;
    return {nf.scale_u * uv(0), nf.scale_v * uv(1)};
}

}  // namespace quadfermat
