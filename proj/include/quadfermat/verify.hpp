#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadfermat/conic.hpp"
#include "quadfermat/equation.hpp"

namespace quadfermat {

/// The seven operators of the equations:
///   L1 f = f + df/dz1         M1 f = f(z+c) + df/dz1
///   L2 f = f + df/dz2         M2 f = f(z+c) + df/dz2
///   L3 f = f + d2f/dz1^2      M3 f = f(z+c) + d2f/dz1^2
///   L4 f = f + d2f/dz1 dz2
enum class Operator { L1, L2, L3, L4, M1, M2, M3 };

/// Symbolic application; c is required exactly for M1/M2/M3.
Expr apply_operator(Operator op, const Expr& f, const std::optional<Shift>& c = {});

/// The full left-hand side a x^2 + 2 alpha x y + b y^2 + 2 beta x +
/// 2 gamma y + C with (x, y) the operator pair of the kind, as one tree.
Expr residual_expr(const EquationKind& kind, const QuadraticForm& q, const Expr& f);

enum class Verdict { PASS, FAIL, CONSTANT, INCONCLUSIVE };

std::string to_string(Verdict v);

/// Residual statistics of a candidate over a deterministic sample.
/// PASS requires max residual <= abs_tol * (1 + max|coeff|) and a candidate
/// that is non-constant on the samples; CONSTANT flags candidates that vary
/// less than abs_tol. "Transcendental of finite order" is not machine-checked.
struct VerificationReport {
    EquationKind equation;
    std::string candidate;
    double max_abs_residual = 0.0;
    double mean_abs_residual = 0.0;
    std::pair<Cx, Cx> worst_point{};
    std::vector<std::pair<std::string, double>> constraint_residuals;
    Verdict verdict = Verdict::INCONCLUSIVE;
    SampleSpec samples;
    std::vector<std::string> notes;
};

VerificationReport verify(const EquationKind& kind, const QuadraticForm& q, const Expr& f,
                          const SampleSpec& spec, const ToleranceConfig& cfg = {});

/// Max relative discrepancy between the symbolic partials and central finite
/// differences with step cfg.fd_step, over both variables and all samples.
double fd_crosscheck(const Expr& f, const SampleSpec& spec, const ToleranceConfig& cfg = {});

}  // namespace quadfermat
