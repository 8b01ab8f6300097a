#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadfermat/errors.hpp"

namespace quadfermat {

using Cx = std::complex<double>;

/// Numeric knobs shared across the library. All fields strictly positive,
/// max_iter >= 1 (see validate()).
struct ToleranceConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double fd_step = 1e-6;
    int max_iter = 100;

    void validate() const;
};

/// Deterministic sampling request: `count` points in the complex bidisc
/// |Re z_i|, |Im z_i| <= radius. Identical spec => identical sequence.
struct SampleSpec {
    std::int64_t count = 200;
    double radius = 2.0;
    std::uint64_t seed = 42;

    void validate() const;
};

bool is_finite(Cx z);
void ensure_finite(Cx z, const char* what);

/// Principal square root: arg of the result lies in (-pi/2, pi/2].
/// The branch cut maps onto the +i axis (sqrt(-1) == i).
Cx principal_sqrt(Cx z);

/// Principal logarithm, arg in (-pi, pi].
Cx principal_log(Cx z);

/// exp(exponent * Log(base)) with the principal Log. base == 0 is allowed
/// only for positive integer exponents (giving 0); otherwise ZeroBase.
Cx principal_power(Cx base, Cx exponent);

/// Principal branch W0 of the Lambert W function: returns w with
/// w * e^w == z, |w e^w - z| <= cfg.abs_tol. Halley iteration with
/// region-dependent deterministic starting points.
Cx lambert_w0(Cx z, const ToleranceConfig& cfg = {});

/// All complex roots (with multiplicity) of
///   p(z) = coeffs[0] + coeffs[1] z + ... + coeffs[n] z^n.
/// Simultaneous Durand-Kerner iteration from deterministic initial angles;
/// the output order is deterministic for a given input.
std::vector<Cx> poly_roots(const std::vector<Cx>& coeffs, const ToleranceConfig& cfg = {});

/// Evaluate coeffs[0] + coeffs[1] z + ... at z (Horner).
Cx poly_eval(const std::vector<Cx>& coeffs, Cx z);

/// Deterministic pseudo-random points (z1, z2) in the requested bidisc;
/// a pure function of the request.
std::vector<std::pair<Cx, Cx>> sample_points(const SampleSpec& spec);

}  // namespace quadfermat
