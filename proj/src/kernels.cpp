#include "quadfermat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace quadfermat {

void ToleranceConfig::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || !(fd_step > 0))
        throw Error("ToleranceConfig: tolerances must be strictly positive");
    if (max_iter < 1) throw Error("ToleranceConfig: max_iter must be >= 1");
}

void SampleSpec::validate() const {
    if (count < 0) throw Error("SampleSpec: count must be non-negative");
    if (!(radius > 0)) throw Error("SampleSpec: radius must be strictly positive");
}

bool is_finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void ensure_finite(Cx z, const char* what) {
    if (!is_finite(z)) throw NonFiniteResult(std::string(what) + ": non-finite result");
}

namespace {

// Collapse -0.0 imaginary parts so the branch cut of sqrt/log is approached
// from above: sqrt(-1) == +i, arg(log(-1)) == +pi.
Cx scrub_cut(Cx z) {
    if (z.imag() == 0.0) return Cx(z.real(), +0.0);
    return z;
}

}  // namespace

Cx principal_sqrt(Cx z) {
    ensure_finite(z, "principal_sqrt input");
    Cx w = std::sqrt(scrub_cut(z));
    ensure_finite(w, "principal_sqrt");
    return w;
}

Cx principal_log(Cx z) {
    if (z == Cx(0.0, 0.0)) throw ZeroBase("principal_log: log of zero");
    ensure_finite(z, "principal_log input");
    Cx w = std::log(scrub_cut(z));
    ensure_finite(w, "principal_log");
    return w;
}

Cx principal_power(Cx base, Cx exponent) {
    ensure_finite(base, "principal_power base");
    ensure_finite(exponent, "principal_power exponent");
    if (base == Cx(0.0, 0.0)) {
        const double k = exponent.real();
        const bool positive_integer =
            exponent.imag() == 0.0 && k > 0.0 && k == std::floor(k);
        if (!positive_integer)
            throw ZeroBase("principal_power: zero base needs a positive integer exponent");
        return Cx(0.0, 0.0);
    }
    Cx w = std::exp(exponent * principal_log(base));
    ensure_finite(w, "principal_power");
    return w;
}

namespace {

Cx halley_lambert(Cx z, Cx w, int max_iter, double tol, bool& ok) {
    // iterate to machine precision; tol is only the acceptance bound
    const double target = 4.0 * 2.2e-16 * (1.0 + std::abs(z));
    for (int i = 0; i < max_iter; ++i) {
        const Cx ew = std::exp(w);
        if (!is_finite(ew)) break;
        const Cx f = w * ew - z;
        if (std::abs(f) <= target) break;
        const Cx wp1 = w + 1.0;
        const Cx denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == Cx(0.0, 0.0) || !is_finite(denom)) break;
        const Cx step = f / denom;
        if (!is_finite(step)) break;
        w -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
    const Cx f = w * std::exp(w) - z;
    ok = is_finite(f) && std::abs(f) <= tol;
    return w;
}

}  // namespace

Cx lambert_w0(Cx z, const ToleranceConfig& cfg) {
    cfg.validate();
    ensure_finite(z, "lambert_w0 input");
    if (z == Cx(0.0, 0.0)) return Cx(0.0, 0.0);

    const double e = std::exp(1.0);
    const Cx ez1 = e * z + 1.0;
    if (ez1 == Cx(0.0, 0.0)) return Cx(-1.0, 0.0);  // exact branch point

    std::vector<Cx> starts;
    if (std::abs(ez1) < 0.5) {
        const Cx p = principal_sqrt(2.0 * ez1);
        starts.push_back(-1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p);
    }
    if (std::abs(z) < 0.8)
        starts.push_back(z * (1.0 - z * (1.0 - 1.5 * z)));  // W0 Taylor head
    if (std::abs(z + 1.0) > 0.1) starts.push_back(std::log(scrub_cut(1.0 + z)));
    {
        const Cx L = std::log(scrub_cut(z));
        if (std::abs(L) > 1.5) starts.push_back(L - std::log(L));
    }
    starts.push_back(Cx(0.5, 0.9));
    starts.push_back(Cx(0.5, -0.9));

    for (const Cx& w0 : starts) {
        if (!is_finite(w0)) continue;
        bool ok = false;
        Cx w = halley_lambert(z, w0, cfg.max_iter, cfg.abs_tol, ok);
        // keep only principal-strip results (|Im w| < pi up to roundoff)
        if (ok && std::abs(w.imag()) < 3.141592653589793 + 1e-9) {
            ensure_finite(w, "lambert_w0");
            return w;
        }
    }
    throw NoConvergence("lambert_w0: Halley iteration did not converge");
}

Cx poly_eval(const std::vector<Cx>& coeffs, Cx z) {
    Cx acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<Cx> poly_roots(const std::vector<Cx>& coeffs, const ToleranceConfig& cfg) {
    cfg.validate();
    if (coeffs.size() < 2) throw Error("poly_roots: degree must be >= 1");
    const Cx lead = coeffs.back();
    if (lead == Cx(0.0, 0.0))
        throw DegenerateLeadingCoefficient("poly_roots: leading coefficient is zero");
    for (const Cx& c : coeffs) ensure_finite(c, "poly_roots coefficient");

    const std::size_t n = coeffs.size() - 1;
    if (n == 1) return {-coeffs[0] / coeffs[1]};

    // monic copy
    std::vector<Cx> monic(coeffs.size());
    double max_ratio = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        monic[i] = coeffs[i] / lead;
        if (i < n) max_ratio = std::max(max_ratio, std::abs(monic[i]));
    }
    const double radius = 1.0 + max_ratio;  // Cauchy bound

    std::vector<Cx> zs(n);
    constexpr double kTau = 6.283185307179586;
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = kTau * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        zs[k] = radius * Cx(std::cos(ang), std::sin(ang));
    }

    double max_coeff = 0.0;
    for (const Cx& c : coeffs) max_coeff = std::max(max_coeff, std::abs(c));
    const double res_tol = 0.01 * cfg.abs_tol * (1.0 + max_coeff);
    const double step_tol = 1e-15 * (1.0 + radius);

    bool converged = false;
    for (int iter = 0; iter < cfg.max_iter && !converged; ++iter) {
        double max_step = 0.0;
        double max_res = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Cx num = poly_eval(monic, zs[k]);
            Cx den(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= zs[k] - zs[j];
            if (den == Cx(0.0, 0.0)) {
                zs[k] += Cx(1e-8 * radius, 1e-8 * radius);
                max_step = radius;
                continue;
            }
            const Cx delta = num / den;
            zs[k] -= delta;
            max_step = std::max(max_step, std::abs(delta));
            max_res = std::max(max_res, std::abs(num) * std::abs(lead));
        }
        converged = max_step <= step_tol || max_res <= res_tol;
    }

    // Newton polish against the original coefficients.
    std::vector<Cx> deriv(n);
    for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = coeffs[i] * static_cast<double>(i);
    for (Cx& r : zs) {
        for (int i = 0; i < 3; ++i) {
            const Cx p = poly_eval(coeffs, r);
            const Cx dp = poly_eval(deriv, r);
            if (dp == Cx(0.0, 0.0)) break;
            const Cx step = p / dp;
            if (!is_finite(step) || std::abs(step) > 0.5 * (1.0 + radius)) break;
            r -= step;
        }
    }

    const double final_tol = cfg.abs_tol * (1.0 + max_coeff);
    for (const Cx& r : zs) {
        ensure_finite(r, "poly_roots root");
        if (std::abs(poly_eval(coeffs, r)) > final_tol)
            throw NoConvergence("poly_roots: residual above tolerance after max_iter");
    }
    return zs;
}

std::vector<std::pair<Cx, Cx>> sample_points(const SampleSpec& spec) {
    spec.validate();
    std::vector<std::pair<Cx, Cx>> pts;
    pts.reserve(static_cast<std::size_t>(spec.count));
    std::mt19937_64 rng(spec.seed);
    // 53-bit mantissa mapping; distribution classes are avoided so the
    // sequence is identical on every platform.
    auto unit = [&rng]() {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return 2.0 * u - 1.0;
    };
    for (std::int64_t i = 0; i < spec.count; ++i) {
        const Cx z1(spec.radius * unit(), spec.radius * unit());
        const Cx z2(spec.radius * unit(), spec.radius * unit());
        pts.emplace_back(z1, z2);
    }
    return pts;
}

}  // namespace quadfermat
