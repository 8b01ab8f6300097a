#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadfermat/verify.hpp"

namespace quadfermat {

/// Discrete sign choices that are independent of the conic Branch pairing:
/// the inner +- of the K2 formula and the +-pi i of the exponent A.
enum class Sign { Plus, Minus };

/// Constants of the constant-operator-output case: K1^2 + K2^2 = 1 and the
/// consistency K1 r1 - K2 r2 + r3 = 0 (the A = B collapse), with
/// r1 = d11 - e11, r2 = d12 + e12, r3 = t1 - t2.
struct KPair {
    Cx k1, k2;
    Cx r1, r2, r3;
};

/// A constructed or validate-only candidate solution.
/// CONSTRUCTED families have every constraint residual below abs_tol by
/// construction; VALIDATE-ONLY families report whatever the residuals are.
struct SolutionFamily {
    EquationKind kind;
    std::string source;  // theorem/case label
    Expr f;
    std::map<std::string, Cx> free_params;
    std::vector<std::pair<std::string, Cx>> constraints;
    bool validate_only = false;
    std::optional<Expr> stated_form;  // divergent literally-stated variant
    std::vector<std::string> notes;
};

/// Trinomial-notation constants (K11..K14, A11/A12/B11/B12, S11..S18).
/// S15..S18 depend on the free exponent alpha1 supplied to
/// corollary_constants.
struct CorollaryConstants {
    Cx k11, k12, k13, k14;
    Cx a11, a12, b11, b12;
    Cx s11, s12, s13, s14;
    Cx s15, s16, s17, s18;
};

KPair solve_k_pair(const NormalForm& nf, Sign sign, const ToleranceConfig& cfg = {});

/// A0 = K1 d11 - K2 d12 + t1 (the shared constant of every Case 1).
Cx kpair_constant(const NormalForm& nf, const KPair& kp);

/// f = A0 + R4 e^{-(z1+z2)} solving the L1L2 equation.
SolutionFamily construct_thm31_case1(const NormalForm& nf, Cx r4, Sign sign = Sign::Plus,
                                     const ToleranceConfig& cfg = {});

/// Trigonometric + exponential L1L2 family, requires t1 == t2. The phase
/// gradient (u, v) solves the integrability system
///   d11 v - e11 u + (d12 + e12) = 0,   d12 v + e12 u - (d11 - e11) = 0,
/// i.e. (u, v) = (R12, R11) / (d11 e12 + d12 e11).
SolutionFamily construct_thm31_case2(const NormalForm& nf, Cx r5, Cx r6,
                                     const ToleranceConfig& cfg = {});

/// L1L4 family. The primary f = A0 + B e^{z2 - z1} comes from resubstituting
/// the defining system; the literally-stated -A0 + B e^{z1 - z2} variant is
/// attached as stated_form with its residual reported, not asserted.
SolutionFamily construct_thm33(const NormalForm& nf, Cx b11_free, Sign sign = Sign::Plus,
                               const ToleranceConfig& cfg = {});

/// M1M2 family f = psi(z1 + z2), psi(s) = A0 + mu e^{lambda s} with lambda
/// solving lambda + e^{lambda s0} = 0 via the principal Lambert W
/// (lambda = -W0(s0)/s0; lambda = -1 when s0 = 0).
SolutionFamily construct_thm34_case1(const NormalForm& nf, const Shift& c, Cx mu,
                                     Sign sign = Sign::Plus, const ToleranceConfig& cfg = {});

/// VALIDATE-ONLY M1M2 template with free exponents (alpha1, alpha2), phase
/// bconst and a caller-supplied psi1 term. Reports the exp(2iL(c)) relation,
/// the quadratic alpha-relation, and the sampled PDDE residual.
SolutionFamily validate_thm34_case2(const NormalForm& nf, const Shift& c, Cx alpha1, Cx alpha2,
                                    Cx bconst, const Expr& candidate_psi1,
                                    const ToleranceConfig& cfg = {});

/// M1M3 family f = A0 + e^{z1 + A z2 + B}, A = (2k pi i +- pi i - c1)/c2,
/// which forces e^{c1 + A c2} = -1.
SolutionFamily construct_thm35_case1(const NormalForm& nf, const Shift& c, int k, Sign pm_sign,
                                     Cx bconst, Sign ksign = Sign::Plus,
                                     const ToleranceConfig& cfg = {});

/// VALIDATE-ONLY M1M3 templates: solves the quartic in alpha1, derives
/// alpha2 from the exp(2iL(c)) relation (log branches k = 0 and k = 1 are
/// both emitted; higher branches repeat those two), assembles
/// f = (-e^{-c1})^{z2/c2} pi(z2) e^{z1} + R11 sin[...] + R12 cos[...] + T2
/// with pi(z2) = pconst, and reports all residuals.
std::vector<SolutionFamily> construct_thm35_case2(const NormalForm& nf, const Shift& c, Cx bconst,
                                                  Cx pconst, const ToleranceConfig& cfg = {});

/// Falsification sweep for the L1L3 equation: exponential and trigonometric
/// templates with swept parameters are scored against the equation; the
/// report's max_abs_residual is the minimum achieved max-residual over all
/// non-constant candidates. Verdict FAIL supports non-existence, PASS means
/// some non-constant template solved the equation, CONSTANT when only
/// constants got below tolerance, INCONCLUSIVE with zero candidates.
VerificationReport nonexistence_l1l3(const QuadraticForm& form, const SampleSpec& sweep,
                                     const ToleranceConfig& cfg = {});

/// Constants of the trinomial corollaries; requires beta = gamma = 0 and
/// C = -1. alpha1 feeds the S15..S18 trig amplitudes.
CorollaryConstants corollary_constants(const QuadraticForm& q, Branch sign,
                                       Cx alpha1 = Cx(0.0, 0.0),
                                       const ToleranceConfig& cfg = {});

}  // namespace quadfermat
