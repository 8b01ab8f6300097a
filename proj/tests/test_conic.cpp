#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quadfermat/conic.hpp"

using namespace quadfermat;

namespace {

const QuadraticForm kCircle{Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};

QuadraticForm translated(const QuadraticForm& q, Cx x1, Cx y1) {
    // substitute x = X + x1, y = Y + y1 and collect coefficients
    QuadraticForm out = q;
    out.beta = q.a * x1 + q.alpha * y1 + q.beta;
    out.gamma = q.alpha * x1 + q.b * y1 + q.gamma;
    out.cc = q.eval(x1, y1);
    return out;
}

}  // namespace

TEST_CASE("discriminants against the cofactor oracle") {
    const QuadraticForm q{Cx(1, 0), Cx(2, 0), Cx(3, 0), Cx(4, 0), Cx(5, 0), Cx(6, 0)};
    const Discriminants d = discriminants(q);
    CHECK(std::abs(d.delta - Cx(1, 0)) < 1e-12);
    CHECK(std::abs(d.dee - Cx(-1, 0)) < 1e-12);
    CHECK(std::abs(d.delta - oracles::det3_cofactor(q)) < 1e-12);

    const Discriminants dc = discriminants(kCircle);
    CHECK(std::abs(dc.delta - Cx(-1, 0)) < 1e-15);
    CHECK(std::abs(dc.dee - Cx(1, 0)) < 1e-15);

    const QuadraticForm ones{Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0)};
    const Discriminants d1 = discriminants(ones);
    CHECK(std::abs(d1.delta) < 1e-15);
    CHECK(std::abs(d1.dee) < 1e-15);

    oracles::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const QuadraticForm r{rng.cx(), rng.cx(), rng.cx(), rng.cx(), rng.cx(), rng.cx()};
        CHECK(std::abs(discriminants(r).delta - oracles::det3_cofactor(r)) < 1e-12);
    }
}

TEST_CASE("classification table") {
    const QuadraticForm ones{Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0)};
    CHECK(classify(ones) == Classification::DegenerateParallelLines);
    CHECK(classify(kCircle) == Classification::NondegenerateReducible);

    const QuadraticForm hyper{Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
    CHECK(classify(hyper) == Classification::NondegenerateReducible);

    // Delta = 0 with alpha^2 != ab: intersecting lines (x^2 - y^2 = 0)
    const QuadraticForm cross{Cx(1, 0), Cx(0, 0), Cx(-1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0)};
    CHECK(classify(cross) == Classification::DegenerateIntersectingLines);

    // Delta != 0 with alpha^2 = ab: the parabolic case is rejected
    const QuadraticForm parab{Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0), Cx(1, 0), Cx(0, 0)};
    CHECK_THROWS_AS(classify(parab), UnsupportedCase);
}

TEST_CASE("reduce on the unit circle is the identity chain") {
    const NormalForm nf = reduce(kCircle, Branch::Plus);
    CHECK(nf.x1 == Cx(0, 0));
    CHECK(nf.y1 == Cx(0, 0));
    CHECK(nf.xi == Cx(1, 0));
    CHECK(nf.eta == Cx(0, 0));
    CHECK(std::abs(nf.scale_u - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(nf.scale_v - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(nf.d11 - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(nf.d12) < 1e-15);
    CHECK(std::abs(nf.e11) < 1e-15);
    CHECK(std::abs(nf.e12 - Cx(1, 0)) < 1e-15);
    CHECK(nf.t1 == Cx(0, 0));
    CHECK(nf.t2 == Cx(0, 0));
}

TEST_CASE("reduce on the axis-aligned ellipse x^2 + 2y^2 = 1") {
    const QuadraticForm q{Cx(1, 0), Cx(0, 0), Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
    const NormalForm nf = reduce(q, Branch::Plus);
    CHECK(std::abs(nf.t1) < 1e-15);
    CHECK(std::abs(nf.t2) < 1e-15);
    // A+ = 2, B- = 1, D = 2, -Delta = 2
    CHECK(std::abs(nf.scale_u * nf.scale_u - Cx(2, 0)) < 1e-14);
    CHECK(std::abs(nf.scale_v * nf.scale_v - Cx(1, 0)) < 1e-14);
    // parametric residual is the derived check
    const auto [x, y] = parametric_solution(nf, Expr::z1());
    const Expr res = q.eval_expr(x, y);
    CHECK(oracles::max_residual(res, {50, 2.0, 3}) < 1e-12);
}

TEST_CASE("rotation unitarity on random forms, both branches") {
    oracles::Rng rng(17);
    int done = 0;
    while (done < 200) {
        const QuadraticForm q{rng.cx(), rng.cx(), rng.cx(), rng.cx(), rng.cx(), rng.cx()};
        for (const Branch br : {Branch::Plus, Branch::Minus}) {
            NormalForm nf;
            try {
                nf = reduce(q, br);
            } catch (const Error&) {
                continue;
            }
            CHECK(std::abs(nf.xi * nf.xi + nf.eta * nf.eta - 1.0) < 1e-12);
            ++done;
        }
    }
}

TEST_CASE("translation kills the linear terms and preserves the invariants") {
    oracles::Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const NormalForm nf = reduce(q, Branch::Plus);
        const QuadraticForm moved = translated(q, nf.x1, nf.y1);
        CHECK(std::abs(moved.beta) < 1e-10);
        CHECK(std::abs(moved.gamma) < 1e-10);

        const Discriminants before = discriminants(q);
        const Discriminants after = discriminants(moved);
        CHECK(std::abs(after.delta - before.delta) < 1e-9 * (1.0 + std::abs(before.delta)));
        CHECK(std::abs(after.dee - before.dee) < 1e-12 * (1.0 + std::abs(before.dee)));
        // C1 = Delta / D
        CHECK(std::abs(moved.cc - before.delta / before.dee) < 1e-10);
    }
}

TEST_CASE("parametric solutions satisfy the conic") {
    const NormalForm circle = reduce(kCircle, Branch::Plus);
    const auto [x, y] = parametric_solution(circle, Expr::z1());
    for (const auto& [z1, z2] : sample_points({20, 2.0, 23})) {
        CHECK(std::abs(evaluate(x, z1, z2) - std::cos(z1)) < 1e-14);
        CHECK(std::abs(evaluate(y, z1, z2) - std::sin(z1)) < 1e-14);
    }

    const auto [xc, yc] = parametric_solution(circle, Expr::constant(Cx(0, 0)));
    CHECK(std::abs(evaluate(xc, Cx(1, 1), Cx(0, 0)) - (circle.d11 + circle.t1)) < 1e-15);
    CHECK(std::abs(evaluate(yc, Cx(1, 1), Cx(0, 0)) - (circle.e11 + circle.t2)) < 1e-15);

    CHECK_THROWS_AS(parametric_solution(circle, parse("1/(z1+2)")), Error);

    oracles::Rng rng(29);
    for (int i = 0; i < 20; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        for (const Branch br : {Branch::Plus, Branch::Minus}) {
            NormalForm nf;
            try {
                nf = reduce(q, br);
            } catch (const BranchUndefined&) {
                continue;
            }
            // polynomial h excites the whole circle
            const Expr h = parse("z1 + 0.5*z2^2 - 0.25");
            const auto [px, py] = parametric_solution(nf, h);
            const Expr res = q.eval_expr(px, py);
            CHECK(oracles::max_residual(res, {50, 1.5, 31}) < 1e-8);
        }
    }
}

TEST_CASE("forward_map lands on the unit circle") {
    const NormalForm circle = reduce(kCircle, Branch::Plus);
    const auto [u0, v0] = forward_map(circle, Cx(1, 0), Cx(0, 0));
    CHECK(std::abs(u0 - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(v0) < 1e-15);

    oracles::Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        const QuadraticForm q = oracles::admissible_form(rng);
        const NormalForm nf = reduce(q, Branch::Plus);
        for (int j = 0; j < 10; ++j) {
            const Cx t = rng.cx(2.0);
            const Cx x = nf.d11 * std::cos(t) - nf.d12 * std::sin(t) + nf.t1;
            const Cx y = nf.e11 * std::cos(t) + nf.e12 * std::sin(t) + nf.t2;
            const auto [u, v] = forward_map(nf, x, y);
            CHECK(std::abs(u - std::cos(t)) < 1e-9 * (1.0 + std::abs(std::cos(t))));
            CHECK(std::abs(v - std::sin(t)) < 1e-9 * (1.0 + std::abs(std::sin(t))));
            CHECK(std::abs(u * u + v * v - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("reduce rejects degenerate input") {
    const QuadraticForm ones{Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0), Cx(1, 0)};
    CHECK_THROWS_AS(reduce(ones, Branch::Plus), DegenerateForm);
}

TEST_CASE("alpha = 0 with a != b keeps both branches usable") {
    const QuadraticForm q{Cx(1, 0), Cx(0, 0), Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)};
    for (const Branch br : {Branch::Plus, Branch::Minus}) {
        const NormalForm nf = reduce(q, br);
        CHECK(std::abs(nf.xi * nf.xi + nf.eta * nf.eta - 1.0) < 1e-12);
        const auto [x, y] = parametric_solution(nf, Expr::z2());
        CHECK(oracles::max_residual(q.eval_expr(x, y), {30, 2.0, 41}) < 1e-12);
    }
}
