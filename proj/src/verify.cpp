#include "quadfermat/verify.hpp"

#include <algorithm>
#include <cmath>

namespace quadfermat {

void EquationKind::validate() const {
    if (is_difference_kind()) {
        if (!shift) throw MissingShift("equation kind needs a shift c = (c1, c2)");
        if (shift->is_zero()) throw Error("shift must differ from (0, 0)");
    } else if (shift) {
        throw Error("differential kinds take no shift");
    }
}

std::string to_string(EquationTag tag) {
    switch (tag) {
        case EquationTag::L1L2: return "l1l2";
        case EquationTag::L1L3: return "l1l3";
        case EquationTag::L1L4: return "l1l4";
        case EquationTag::M1M2: return "m1m2";
        case EquationTag::M1M3: return "m1m3";
    }
    return "?";
}

std::optional<EquationTag> equation_tag_from_string(const std::string& s) {
    if (s == "l1l2") return EquationTag::L1L2;
    if (s == "l1l3") return EquationTag::L1L3;
    if (s == "l1l4") return EquationTag::L1L4;
    if (s == "m1m2") return EquationTag::M1M2;
    if (s == "m1m3") return EquationTag::M1M3;
    return std::nullopt;
}

Expr apply_operator(Operator op, const Expr& f, const std::optional<Shift>& c) {
    using V = Expr::VarId;
    const bool needs_shift = op == Operator::M1 || op == Operator::M2 || op == Operator::M3;
    if (needs_shift && !c) throw MissingShift("apply_operator: M operators need a shift");
    switch (op) {
        case Operator::L1: return f + differentiate(f, V::Z1);
        case Operator::L2: return f + differentiate(f, V::Z2);
        case Operator::L3: return f + differentiate(differentiate(f, V::Z1), V::Z1);
        case Operator::L4: return f + differentiate(differentiate(f, V::Z1), V::Z2);
        case Operator::M1: return shift(f, *c) + differentiate(f, V::Z1);
        case Operator::M2: return shift(f, *c) + differentiate(f, V::Z2);
        case Operator::M3: return shift(f, *c) + differentiate(differentiate(f, V::Z1), V::Z1);
    }
    throw Error("apply_operator: unreachable");
}

Expr residual_expr(const EquationKind& kind, const QuadraticForm& q, const Expr& f) {
    kind.validate();
    Expr x, y;
    switch (kind.tag) {
        case EquationTag::L1L2:
            x = apply_operator(Operator::L1, f);
            y = apply_operator(Operator::L2, f);
            break;
        case EquationTag::L1L3:
            x = apply_operator(Operator::L1, f);
            y = apply_operator(Operator::L3, f);
            break;
        case EquationTag::L1L4:
            x = apply_operator(Operator::L1, f);
            y = apply_operator(Operator::L4, f);
            break;
        case EquationTag::M1M2:
            x = apply_operator(Operator::M1, f, kind.shift);
            y = apply_operator(Operator::M2, f, kind.shift);
            break;
        case EquationTag::M1M3:
            x = apply_operator(Operator::M1, f, kind.shift);
            y = apply_operator(Operator::M3, f, kind.shift);
            break;
    }
    return q.eval_expr(x, y);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::CONSTANT: return "CONSTANT";
        case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

VerificationReport verify(const EquationKind& kind, const QuadraticForm& q, const Expr& f,
                          const SampleSpec& spec, const ToleranceConfig& cfg) {
    cfg.validate();
    kind.validate();
    VerificationReport rep;
    rep.equation = kind;
    rep.candidate = render(f);
    rep.samples = spec;

    const auto points = sample_points(spec);
    if (points.empty()) {
        rep.verdict = Verdict::INCONCLUSIVE;
        return rep;
    }

    const Expr residual = residual_expr(kind, q, f);

    bool failure = false;
    bool have_first = false;
    Cx first_value{};
    double spread = 0.0;
    double sum = 0.0;
    double worst = -1.0;
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& [z1, z2] = points[i];
        double r;
        try {
            const Cx fv = evaluate(f, z1, z2, cfg);
            if (!have_first) {
                first_value = fv;
                have_first = true;
            }
            spread = std::max(spread, std::abs(fv - first_value));
            r = std::abs(evaluate(residual, z1, z2, cfg));
        } catch (const Error& err) {
            failure = true;
            rep.notes.push_back("evaluation failed at sample " + std::to_string(i) + ": " +
                                err.what());
            continue;
        }
        ++evaluated;
        sum += r;
        if (r > worst) {  // strict: lowest sample index wins ties
            worst = r;
            rep.worst_point = points[i];
        }
    }

    if (evaluated > 0) {
        rep.max_abs_residual = worst;
        rep.mean_abs_residual = sum / static_cast<double>(evaluated);
    }

    const double tol = cfg.abs_tol * (1.0 + q.max_abs());
    if (failure)
        rep.verdict = Verdict::FAIL;
    else if (spread < cfg.abs_tol)
        rep.verdict = Verdict::CONSTANT;
    else if (rep.max_abs_residual <= tol)
        rep.verdict = Verdict::PASS;
    else
        rep.verdict = Verdict::FAIL;
    return rep;
}

double fd_crosscheck(const Expr& f, const SampleSpec& spec, const ToleranceConfig& cfg) {
    cfg.validate();
    const Expr df1 = differentiate(f, Expr::VarId::Z1);
    const Expr df2 = differentiate(f, Expr::VarId::Z2);
    const double h = cfg.fd_step;

    double worst = 0.0;
    for (const auto& [z1, z2] : sample_points(spec)) {
        const Cx s1 = evaluate(df1, z1, z2, cfg);
        const Cx fd1 =
            (evaluate(f, z1 + h, z2, cfg) - evaluate(f, z1 - h, z2, cfg)) / (2.0 * h);
        const Cx s2 = evaluate(df2, z1, z2, cfg);
        const Cx fd2 =
            (evaluate(f, z1, z2 + h, cfg) - evaluate(f, z1, z2 - h, cfg)) / (2.0 * h);
        const double d1 = std::abs(s1 - fd1) / (1.0 + std::max(std::abs(s1), std::abs(fd1)));
        const double d2 = std::abs(s2 - fd2) / (1.0 + std::max(std::abs(s2), std::abs(fd2)));
        worst = std::max({worst, d1, d2});
    }
    return worst;
}

}  // namespace quadfermat
