#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quadfermat/families.hpp"

using namespace quadfermat;

namespace {

const QuadraticForm kCircle{Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
const double kSqrt2Half = 0.70710678118654752440;

double family_max_residual(const SolutionFamily& fam, const QuadraticForm& q,
                           const SampleSpec& spec = {200, 2.0, 42}) {
    return oracles::max_residual(residual_expr(fam.kind, q, fam.f), spec);
}

}  // namespace

TEST_CASE("solve_k_pair on the binomial form gives +-sqrt(2)/2") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    const KPair plus = solve_k_pair(nf, Sign::Plus);
    CHECK(std::abs(plus.k1 - Cx(kSqrt2Half, 0)) < 1e-15);
    CHECK(std::abs(plus.k2 - Cx(kSqrt2Half, 0)) < 1e-15);
    CHECK(std::abs(plus.r3) < 1e-15);  // R3 = 0 collapses the formula

    const KPair minus = solve_k_pair(nf, Sign::Minus);
    CHECK(std::abs(minus.k2 + Cx(kSqrt2Half, 0)) < 1e-15);

    CHECK(std::abs(kpair_constant(nf, plus) - Cx(kSqrt2Half, 0)) < 1e-15);
    CHECK(std::abs(kpair_constant(nf, minus) + Cx(kSqrt2Half, 0)) < 1e-15);
}

TEST_CASE("solve_k_pair invariants on random admissible forms") {
    oracles::Rng rng(53);
    for (int i = 0; i < 30; ++i) {
        const NormalForm nf = reduce(oracles::admissible_form(rng), Branch::Plus);
        for (const Sign s : {Sign::Plus, Sign::Minus}) {
            const KPair kp = solve_k_pair(nf, s);
            CHECK(std::abs(kp.k1 * kp.k1 + kp.k2 * kp.k2 - 1.0) < 1e-10);
            CHECK(std::abs(kp.k1 * kp.r1 - kp.k2 * kp.r2 + kp.r3) < 1e-10);
            // the consistency makes the constant sit on the conic diagonal
            const Cx a0 = kpair_constant(nf, kp);
            CHECK(std::abs(nf.form.eval(a0, a0)) < 1e-10);
        }
    }
}

TEST_CASE("construct_thm31_case1") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    const SolutionFamily fam = construct_thm31_case1(nf, Cx(1, 0));
    CHECK(std::abs(fam.free_params.at("A0") - Cx(kSqrt2Half, 0)) < 1e-12);
    CHECK(family_max_residual(fam, kCircle) < 1e-9);

    const SolutionFamily constant = construct_thm31_case1(nf, Cx(0, 0));
    CHECK(family_max_residual(constant, kCircle) < 1e-9);

    oracles::Rng rng(59);
    for (int i = 0; i < 15; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const SolutionFamily f = construct_thm31_case1(reduce(q, Branch::Plus), rng.cx(1.5));
        CHECK(family_max_residual(f, q) < 1e-8);
    }
}

TEST_CASE("construct_thm31_case2") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    const SolutionFamily fam = construct_thm31_case2(nf, Cx(0, 0), Cx(1, 0));
    CHECK(family_max_residual(fam, kCircle) < 1e-9);
    // binomial amplitudes are the +-1/2 pair of the known second family
    CHECK(std::abs(fam.free_params.at("p") - Cx(0.5, 0)) < 1e-12);
    CHECK(std::abs(fam.free_params.at("q") - Cx(0.5, 0)) < 1e-12);

    // t1 != t2 violates the theorem hypothesis
    oracles::Rng rng(61);
    for (;;) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const NormalForm n = reduce(q, Branch::Plus);
        if (std::abs(n.t1 - n.t2) < 1e-3) continue;
        CHECK_THROWS_AS(construct_thm31_case2(n, Cx(0, 0), Cx(1, 0)), HypothesisViolated);
        break;
    }

    for (int i = 0; i < 15; ++i) {
        const QuadraticForm q = oracles::case2_form(rng);
        const SolutionFamily f =
            construct_thm31_case2(reduce(q, Branch::Plus), rng.cx(1.0), rng.cx(1.0));
        CHECK(family_max_residual(f, q) < 1e-8);
    }
}

TEST_CASE("construct_thm33: derived form passes, stated form fails") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    const SolutionFamily fam = construct_thm33(nf, Cx(0.8, 0.1));
    CHECK(family_max_residual(fam, kCircle) < 1e-9);
    // binomial constant is the familiar +-sqrt(2)/2
    CHECK(std::abs(fam.free_params.at("A0") - Cx(kSqrt2Half, 0)) < 1e-12);
    CHECK(std::abs(construct_thm33(nf, Cx(1, 0), Sign::Minus).free_params.at("A0") +
                   Cx(kSqrt2Half, 0)) < 1e-12);
    REQUIRE(fam.stated_form.has_value());

    const EquationKind kind{EquationTag::L1L4, std::nullopt};
    CHECK(oracles::max_residual(residual_expr(kind, kCircle, *fam.stated_form),
                                {200, 2.0, 42}) > 1e-2);

    const SolutionFamily constant = construct_thm33(nf, Cx(0, 0));
    CHECK(family_max_residual(constant, kCircle) < 1e-9);

    oracles::Rng rng(67);
    for (int i = 0; i < 15; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const SolutionFamily f = construct_thm33(reduce(q, Branch::Plus), rng.cx(1.0));
        CHECK(family_max_residual(f, q) < 1e-8);
        CHECK(oracles::max_residual(residual_expr(kind, q, *f.stated_form), {100, 2.0, 42}) >
              1e-2);
    }
}

TEST_CASE("construct_thm34_case1: Lambert witness") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);

    // c = (1, 0): lambda = -W(1), and e^{-W(1)} = W(1) makes the identity exact
    const SolutionFamily fam = construct_thm34_case1(nf, Shift{Cx(1, 0), Cx(0, 0)}, Cx(1, 0));
    const Cx lambda = fam.free_params.at("lambda");
    CHECK(std::abs(lambda - Cx(-0.567143290409784, 0)) < 1e-12);
    CHECK(std::abs(lambda + std::exp(lambda)) < 1e-10);
    CHECK(family_max_residual(fam, kCircle) < 1e-9);

    // mu = 0: the constant particular solution
    const SolutionFamily constant =
        construct_thm34_case1(nf, Shift{Cx(1, 0), Cx(0, 0)}, Cx(0, 0));
    CHECK(family_max_residual(constant, kCircle) < 1e-9);

    // s0 = 0 degenerates to the ODE with lambda = -1
    const SolutionFamily ode = construct_thm34_case1(nf, Shift{Cx(1, 0), Cx(-1, 0)}, Cx(1, 0));
    CHECK(ode.free_params.at("lambda") == Cx(-1, 0));
    CHECK(family_max_residual(ode, kCircle) < 1e-9);

    oracles::Rng rng(71);
    for (int i = 0; i < 15; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const SolutionFamily f = construct_thm34_case1(
            reduce(q, Branch::Plus), Shift{Cx(0.3, 0), Cx(0.7, 0)}, Cx(1, 0));
        CHECK(family_max_residual(f, q) < 1e-8);
    }
}

TEST_CASE("validate_thm34_case2 is validate-only") {
    oracles::Rng rng(73);
    const QuadraticForm q = oracles::admissible_form(rng);
    const NormalForm nf = reduce(q, Branch::Plus);
    const Shift c = oracles::m1m2_shift(rng);

    CHECK_THROWS_AS(
        validate_thm34_case2(nf, c, Cx(1, 0), Cx(1, 0), Cx(0, 0), Expr::constant(Cx(0, 0))),
        DegenerateDenominator);

    // unconstrained parameters: residuals generically far from zero
    const SolutionFamily loose = validate_thm34_case2(nf, c, Cx(1.3, 0.2), Cx(-0.4, 0.9),
                                                      Cx(0.1, 0), Expr::constant(Cx(0, 0)));
    CHECK(loose.validate_only);
    double loose_constraints = 0.0;
    for (const auto& [label, r] : loose.constraints)
        if (label != "pdde_max_residual") loose_constraints = std::max(loose_constraints, std::abs(r));
    CHECK(loose_constraints > 1e-3);

    // parameters from the 2-dimensional root search satisfy the pair
    Cx a1, a2;
    REQUIRE(oracles::newton_thm34_pair(nf, c, rng, a1, a2));
    const SolutionFamily tight =
        validate_thm34_case2(nf, c, a1, a2, Cx(0.1, 0), Expr::constant(Cx(0, 0)));
    for (const auto& [label, r] : tight.constraints)
        if (label != "pdde_max_residual") CHECK(std::abs(r) < 1e-8);

    // the psi1 = 0 candidate exercises the reporting path: the PDDE residual
    // is present and finite (zero only if the forcing vanished)
    bool has_pdde = false;
    for (const auto& [label, r] : tight.constraints)
        if (label == "pdde_max_residual") {
            has_pdde = true;
            CHECK(std::isfinite(r.real()));
        }
    CHECK(has_pdde);
}

TEST_CASE("construct_thm35_case1") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);

    // c = (1, 2), k = 0, plus: A = (pi i - 1)/2
    const SolutionFamily fam =
        construct_thm35_case1(nf, Shift{Cx(1, 0), Cx(2, 0)}, 0, Sign::Plus, Cx(0, 0));
    const Cx big_a = fam.free_params.at("A");
    CHECK(std::abs(big_a - Cx(-0.5, 3.14159265358979323846 / 2)) < 1e-15);
    CHECK(std::abs(std::exp(Cx(1, 0) + big_a * 2.0) + 1.0) < 1e-12);
    CHECK(std::abs(fam.free_params.at("A0") - Cx(kSqrt2Half, 0)) < 1e-12);
    CHECK(family_max_residual(fam, kCircle) < 1e-9);

    const SolutionFamily fam_minus =
        construct_thm35_case1(nf, Shift{Cx(1, 0), Cx(2, 0)}, 0, Sign::Plus, Cx(0, 0),
                              Sign::Minus);
    CHECK(std::abs(fam_minus.free_params.at("A0") + Cx(kSqrt2Half, 0)) < 1e-12);

    CHECK_THROWS_AS(construct_thm35_case1(nf, Shift{Cx(1, 0), Cx(0, 0)}, 0, Sign::Plus, Cx(0, 0)),
                    ZeroC2);

    oracles::Rng rng(79);
    for (int i = 0; i < 15; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const Shift c = oracles::m1m3_shift(rng);
        const SolutionFamily f =
            construct_thm35_case1(reduce(q, Branch::Plus), c, 0, Sign::Plus, rng.cx(0.5));
        CHECK(std::abs(f.constraints.front().second) < 1e-12);  // e^{c1+Ac2}+1
        CHECK(family_max_residual(f, q) < 1e-8);
    }
}

TEST_CASE("construct_thm35_case2 validate-only templates") {
    oracles::Rng rng(83);
    const QuadraticForm q = oracles::admissible_form(rng);
    const NormalForm nf = reduce(q, Branch::Plus);
    const Shift c = oracles::m1m3_shift(rng);

    const auto fams = construct_thm35_case2(nf, c, Cx(0.3, 0.2), Cx(0.9, -0.1));
    CHECK(!fams.empty());
    for (const SolutionFamily& fam : fams) {
        CHECK(fam.validate_only);
        for (const auto& [label, r] : fam.constraints) {
            if (label == "quartic(alpha1)") CHECK(std::abs(r) < 1e-8);
            if (label == "exp(2iL(c))-relation") CHECK(std::abs(r) < 1e-8);
        }
    }

    // pconst = 0 reduces to the pure trig family; the report pathway still works
    const auto trig = construct_thm35_case2(nf, c, Cx(0, 0), Cx(0, 0));
    for (const auto& [label, r] : trig.front().constraints)
        if (label == "pdde_max_residual") CHECK(std::isfinite(r.real()));

    CHECK_THROWS_AS(construct_thm35_case2(nf, Shift{Cx(1, 0), Cx(0, 0)}, Cx(0, 0), Cx(1, 0)),
                    ZeroC2);
}

TEST_CASE("construct_thm35_case2 binomial constraint cross-check") {
    // our quartic on the binomial form: a^4 + 2a^3 + a^2 + (1+i) = 0
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    const std::vector<Cx> ours{Cx(1, 1), Cx(0, 0), Cx(1, 0), Cx(2, 0), Cx(1, 0)};

    // an alternative binomial constraint in circulation reads
    // (i a + a^2)^2 = 2, i.e. a^4 + 2i a^3 - a^2 - 2 = 0; its roots do NOT
    // satisfy our quartic -- the disagreement is documented, not resolved
    const std::vector<Cx> theirs{Cx(-2, 0), Cx(0, 0), Cx(-1, 0), Cx(0, 2), Cx(1, 0)};
    for (const Cx& root : poly_roots(theirs)) {
        CHECK(std::abs(poly_eval(theirs, root)) < 1e-9);
        CHECK(std::abs(poly_eval(ours, root)) > 1e-2);  // documented disagreement
    }

    // our own emitted roots do satisfy our quartic
    const auto fams = construct_thm35_case2(nf, Shift{Cx(0.4, 0.1), Cx(1.2, -0.3)}, Cx(0, 0),
                                            Cx(0.7, 0));
    for (const SolutionFamily& fam : fams)
        CHECK(std::abs(poly_eval(ours, fam.free_params.at("alpha1"))) < 1e-8);
}

TEST_CASE("free exponential amplitudes live in the operator kernel") {
    oracles::Rng rng(117);
    const QuadraticForm q = oracles::admissible_form(rng);
    const NormalForm nf = reduce(q, Branch::Plus);
    const Shift c2 = oracles::m1m2_shift(rng);
    const Cx amps[] = {Cx(0, 0), Cx(1, 0), Cx(0, 10), Cx(-3, 2)};
    for (const Cx amp : amps) {
        CHECK(family_max_residual(construct_thm31_case1(nf, amp), q) < 1e-8);
        CHECK(family_max_residual(construct_thm33(nf, amp), q) < 1e-8);
        CHECK(family_max_residual(construct_thm34_case1(nf, c2, amp), q) < 1e-7);
    }
}

TEST_CASE("construct_thm35_case1 at shift (0.5, 1.5) with k = 1") {
    oracles::Rng rng(119);
    const QuadraticForm q = oracles::admissible_form(rng);
    const NormalForm nf = reduce(q, Branch::Plus);
    const SolutionFamily fam =
        construct_thm35_case1(nf, Shift{Cx(0.5, 0), Cx(1.5, 0)}, 1, Sign::Plus, Cx(0, 0));
    CHECK(family_max_residual(fam, q) < 1e-8);
}

TEST_CASE("nonexistence sweep for L1L3") {
    const SampleSpec sweep{200, 2.0, 42};
    const VerificationReport rep = nonexistence_l1l3(kCircle, sweep);
    CHECK(rep.verdict == Verdict::FAIL);  // supports non-existence
    CHECK(rep.max_abs_residual > 1e-2);
    for (const auto& [label, value] : rep.constraint_residuals) CHECK(value > 1e-2);

    const VerificationReport empty = nonexistence_l1l3(kCircle, {0, 2.0, 42});
    CHECK(empty.verdict == Verdict::INCONCLUSIVE);

    // the constant A0 probe is labelled, not scored
    bool notes_constants = false;
    for (const auto& note : rep.notes)
        if (note.find("CONSTANT") != std::string::npos &&
            note.find("1 CONSTANT") != std::string::npos)
            notes_constants = true;
    CHECK(notes_constants);
}

TEST_CASE("corollary constants") {
    // (a, b, alpha) = (1, 1, 1/2), plus branch: K14 = 1, K12 = sqrt(2)
    const QuadraticForm tri{Cx(1, 0), Cx(0.5, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
    const CorollaryConstants cc = corollary_constants(tri, Branch::Plus);
    CHECK(std::abs(cc.k14 - Cx(1, 0)) < 1e-14);
    CHECK(std::abs(cc.k12 - Cx(std::sqrt(2.0), 0)) < 1e-14);

    // alpha = 0 with a = b: K12 = 0 blows the denominators
    const QuadraticForm deg{Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
    CHECK_THROWS_AS(corollary_constants(deg, Branch::Plus), DegenerateDenominator);

    // non-trinomial input is rejected
    const QuadraticForm bad{Cx(1, 0), Cx(0.5, 0), Cx(1, 0), Cx(0.3, 0), Cx(0, 0), Cx(-1, 0)};
    CHECK_THROWS_AS(corollary_constants(bad, Branch::Plus), UnsupportedCase);

    // the trinomial constants coincide with the normal-form amplitudes
    oracles::Rng rng(89);
    for (int i = 0; i < 20; ++i) {
        const QuadraticForm q = oracles::trinomial_form(rng);
        for (const Branch br : {Branch::Plus, Branch::Minus}) {
            NormalForm nf;
            CorollaryConstants k;
            try {
                nf = reduce(q, br);
                k = corollary_constants(q, br);
            } catch (const Error&) {
                continue;
            }
            CHECK(std::abs(k.a11 - nf.d11) < 1e-9);
            CHECK(std::abs(k.a12 - nf.d12) < 1e-9);
            CHECK(std::abs(k.b11 - nf.e11) < 1e-9);
            CHECK(std::abs(k.b12 - nf.e12) < 1e-9);
        }
    }
}
