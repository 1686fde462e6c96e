#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace powergen {

inline constexpr double theta_lower = 2.0 * std::numbers::pi / 3.0;
inline constexpr double theta_upper = std::numbers::pi;
inline constexpr double z_critical = -4.0 / 27.0;

// Inputs this close to a domain endpoint are rejected rather than clamped;
// the parameterization degenerates there.
inline constexpr double endpoint_tol = 1e-12;

/// Root data of 1 + t + z t^3 for z < -4/27: the positive real root x and the
/// conjugate pair r e^{+-i theta} with theta in (2pi/3, pi).
struct CubicRoots {
    double theta;
    double r;
    double x;
    double z;

    std::complex<double> upper_root() const { return std::polar(r, theta); }

    double pair_distance_sq() const { return 2.0 * x * x + r * r; }  // |x - r e^{i theta}|^2
};

struct GeneralRootTriple {
    std::array<std::complex<double>, 3> roots;
    double z;
};

inline double discriminant(double z) { return -27.0 * z * z - 4.0 * z; }

inline double z_of_theta(double theta) {
    const double c2 = 4.0 * std::cos(theta) * std::cos(theta);
    const double d = 1.0 - c2;
    return c2 / (d * d * d);
}

inline double dz_dtheta(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double d = 1.0 - 4.0 * c * c;
    return -8.0 * s * c * (8.0 * c * c + 1.0) / (d * d * d * d);
}

inline CubicRoots roots_from_theta(double theta) {
    if (!(theta > theta_lower + endpoint_tol && theta < theta_upper - endpoint_tol))
        throw std::domain_error("roots_from_theta: theta must lie strictly inside (2pi/3, pi)");
    const double c = std::cos(theta);
    const double c2 = 4.0 * c * c;
    CubicRoots out;
    out.theta = theta;
    out.r = (1.0 - c2) / (2.0 * c);
    out.x = c2 - 1.0;
    out.z = c2 / ((1.0 - c2) * (1.0 - c2) * (1.0 - c2));
    return out;
}

/// Unique real root of 1 + t + z t^3 for z < -4/27. Hyperbolic Cardano start,
/// then Newton safeguarded by the bracket (0, 3): the cubic is +1 at t=0 and
/// 4 + 27z < 0 at t=3.
inline double real_root_x(double z) {
    if (!(z < z_critical - endpoint_tol))
        throw std::domain_error("real_root_x: requires z < -4/27");
    const double p = 1.0 / z;  // depressed form t^3 + p t + q with p = q = 1/z
    const double q = 1.0 / z;
    // one real root since the discriminant -27z^2-4z is negative here; q < 0
    // makes the cosh branch positive
    const double s = std::sqrt(-p / 3.0);
    double t = 2.0 * s * std::cosh(std::acosh(-3.0 * std::abs(q) / (2.0 * p * s)) / 3.0);
    if (!std::isfinite(t) || t <= 0.0 || t >= 3.0) t = 1.5;

    double lo = 0.0, hi = 3.0;
    for (int it = 0; it < 60; ++it) {
        const double f = 1.0 + t + z * t * t * t;
        const double df = 1.0 + 3.0 * z * t * t;
        if (f > 0.0) lo = t; else hi = t;
        double step = f / df;
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-16 * std::abs(t)) { t = next; break; }
        t = next;
    }
    return t;
}

/// The closed radical formula for the same root (real cube roots). Kept as a
/// cross-check path; the Newton route above is primary.
inline double real_root_x_radical(double z) {
    if (!(z < z_critical - endpoint_tol))
        throw std::domain_error("real_root_x_radical: requires z < -4/27");
    const double inner = std::sqrt(3.0) * std::sqrt(27.0 * z * z * z * z + 4.0 * z * z * z) - 9.0 * z * z;
    const double c = std::cbrt(inner);
    return c / (std::cbrt(2.0) * std::pow(3.0, 2.0 / 3.0) * z) - std::cbrt(2.0 / 3.0) / c;
}

/// Inverse of z_of_theta: the unique theta in (2pi/3, pi) with z(theta) = z.
/// Bisection on the monotone forward map, then one Newton polish.
inline double theta_from_z(double z) {
    if (!(z < z_critical - endpoint_tol))
        throw std::domain_error("theta_from_z: requires z < -4/27");
    double lo = theta_lower + 1e-15;
    double hi = theta_upper - 1e-15;
    // z_of_theta increases from -inf to -4/27
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (z_of_theta(mid) < z) lo = mid; else hi = mid;
    }
    double theta = 0.5 * (lo + hi);
    const double deriv = dz_dtheta(theta);
    if (deriv > 0.0) {
        const double polished = theta - (z_of_theta(theta) - z) / deriv;
        if (polished > lo - (hi - lo) && polished < hi + (hi - lo)) theta = polished;
    }
    return theta;
}

/// All three roots of 1 + t + z t^3 for any z != 0 (used by diagnostics; the
/// conjugate-pair regime has the dedicated CubicRoots path).
inline GeneralRootTriple all_roots(double z) {
    if (z == 0.0) throw std::domain_error("all_roots: z = 0 is not a cubic");
    const double p = 1.0 / z;
    const double q = 1.0 / z;
    const double disc = discriminant(z);
    GeneralRootTriple out;
    out.z = z;
    if (disc >= 0.0) {
        // three real roots (boundary included): trigonometric form
        const double s = std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (2.0 * p * s);
        arg = std::min(1.0, std::max(-1.0, arg));
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            const double t = 2.0 * s * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
            out.roots[k] = {t, 0.0};
        }
    } else {
        double t0;
        if (p < 0.0) {
            const double s = std::sqrt(-p / 3.0);
            const double sign_q = q > 0.0 ? 1.0 : -1.0;
            t0 = -2.0 * sign_q * s * std::cosh(std::acosh(-3.0 * std::abs(q) / (2.0 * p * s)) / 3.0);
        } else {
            const double s = std::sqrt(p / 3.0);
            t0 = -2.0 * s * std::sinh(std::asinh(3.0 * q / (2.0 * p * s)) / 3.0);
        }
        // Newton polish of the real root before deflating
        for (int it = 0; it < 4; ++it) {
            const double f = t0 * t0 * t0 + p * t0 + q;
            const double df = 3.0 * t0 * t0 + p;
            if (df != 0.0) t0 -= f / df;
        }
        // t^3 + p t + q = (t - t0)(t^2 + t0 t + (p + t0^2))
        const std::complex<double> pair_disc = std::complex<double>(t0 * t0 - 4.0 * (p + t0 * t0), 0.0);
        const std::complex<double> root_disc = std::sqrt(pair_disc);
        out.roots[0] = {t0, 0.0};
        out.roots[1] = 0.5 * (-t0 + root_disc);
        out.roots[2] = 0.5 * (-t0 - root_disc);
    }
    return out;
}

/// Residuals of the three elementary-symmetric identities satisfied by
/// (x, r e^{+-i theta}); all are ~machine-zero relative to 1 + |1/z|.
inline std::array<double, 3> vieta_residuals(const CubicRoots& roots) {
    const double c = std::cos(roots.theta);
    const double sum = roots.x + 2.0 * roots.r * c;
    const double pairs = roots.x * 2.0 * roots.r * c + roots.r * roots.r - 1.0 / roots.z;
    const double product = roots.x * roots.r * roots.r + 1.0 / roots.z;
    return {std::abs(sum), std::abs(pairs), std::abs(product)};
}

}  // namespace powergen
