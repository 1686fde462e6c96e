#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "powergen/cubic_geometry.hpp"
#include "powergen/gamma.hpp"
#include "powergen/quadrature.hpp"

namespace powergen {

namespace detail {

inline void require_unit_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(std::string(who) + ": requires alpha in (0, 1)");
}

/// Geometry bundle reused by every integrand at a fixed theta. All fractional
/// powers downstream are principal-branch; the factors below never cross the
/// cut on the integration rays (x - y - it stays in the fourth quadrant,
/// y + it in the second, and both Watson rays point into Re > 0).
struct ThetaFrame {
    double theta, x, r, z;
    double sin_theta, cos_theta;
    double pair_dist_sq;          // |x - y|^2 = 2x^2 + r^2
    std::complex<double> x_minus_y;
    std::complex<double> c2, c3;  // ray directions of the two Watson factors

    static ThetaFrame at(double theta) {
        const CubicRoots cr = roots_from_theta(theta);
        ThetaFrame f;
        f.theta = theta;
        f.x = cr.x;
        f.r = cr.r;
        f.z = cr.z;
        f.sin_theta = std::sin(theta);
        f.cos_theta = std::cos(theta);
        f.pair_dist_sq = cr.pair_distance_sq();
        f.x_minus_y = std::complex<double>(f.x - f.r * f.cos_theta, -f.r * f.sin_theta);
        const std::complex<double> eitheta = std::polar(1.0, theta);
        f.c2 = eitheta / (2.0 * f.cos_theta + eitheta);
        f.c3 = std::complex<double>(0.0, -1.0) * eitheta / (2.0 * f.sin_theta);
        return f;
    }
};

// log of the A-integrand with the x^(m+1) pole scale factored out; assembling
// the exponent first keeps the t -> 0 spike representable at every node
inline double log_integrand_A_scaled(const ThetaFrame& f, double t, double alpha, int m) {
    return -alpha * std::log(t) - alpha * std::log(t * (t + 3.0 * f.x) + f.pair_dist_sq)
           - (m + 1.0) * std::log1p(t / f.x);
}

inline std::complex<double> log_integrand_B(const ThetaFrame& f, double t, double alpha, int m) {
    const std::complex<double> lt1 = std::log(f.x_minus_y - std::complex<double>(0.0, t));
    const double lt2 = std::log(t * (t + 2.0 * f.r * f.sin_theta));
    const std::complex<double> lt3 =
        std::log(std::complex<double>(f.r * f.cos_theta, f.r * f.sin_theta + t));
    return -alpha * (lt1 + lt2) - (m + 1.0) * lt3;
}

// log g(u, theta); the u > 35 branch avoids overflowing e^u while the factors
// already sit on their asymptotic rays
inline std::complex<double> log_g(const ThetaFrame& f, double u, double alpha) {
    double ln_f1;
    std::complex<double> log_f2, log_f3;
    if (u > 35.0) {
        ln_f1 = u - std::log(u);
        log_f2 = u + std::log(f.c2);
        log_f3 = u + std::log(f.c3);
    } else {
        const double em = std::expm1(u);
        ln_f1 = std::log(em) - std::log(u);
        log_f2 = std::log(1.0 + f.c2 * em);
        log_f3 = std::log(1.0 + f.c3 * em);
    }
    return -alpha * (ln_f1 + log_f2 + log_f3);
}

inline IntegralResult integrate_A_scaled(const ThetaFrame& f, double alpha, int m,
                                         const QuadratureSpec& spec) {
    return integrate_zero_to_inf(
        [&](double t) { return std::complex<double>(std::exp(log_integrand_A_scaled(f, t, alpha, m)), 0.0); },
        spec);
}

/// Quadrature of g(u, theta) u^(-alpha) e^(-mu); this carries the whole
/// m-dependence of the B-integral apart from the explicit prefactor.
inline IntegralResult watson_g_integral(const ThetaFrame& f, double alpha, int m,
                                        const QuadratureSpec& spec) {
    return integrate_zero_to_inf(
        [&](double u) {
            const std::complex<double> expo = log_g(f, u, alpha) - alpha * std::log(u) - double(m) * u;
            return std::exp(expo);
        },
        spec);
}

struct LogPolar {
    double log_mag;
    double phase;  // continuous in theta, not reduced mod 2pi
};

// (-i)^(1-alpha) / ((x-y)^alpha (2 r sin)^alpha y^(m+alpha)) in log-polar form
inline LogPolar watson_prefactor(const ThetaFrame& f, double alpha, int m) {
    LogPolar lp;
    lp.log_mag = -0.5 * alpha * std::log(f.pair_dist_sq)
                 - alpha * std::log(2.0 * f.r * f.sin_theta)
                 - (m + alpha) * std::log(f.r);
    lp.phase = -0.5 * std::numbers::pi * (1.0 - alpha)
               - alpha * std::arg(f.x_minus_y)
               - (m + alpha) * f.theta;
    return lp;
}

}  // namespace detail

/// A_m(t, theta): positive integrand whose integral carries the real-axis cut.
inline double integrand_A(double t, double theta, double alpha, int m) {
    detail::require_unit_alpha(alpha, "integrand_A");
    if (!(t > 0.0)) throw std::domain_error("integrand_A: t must be positive");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    return std::exp(detail::log_integrand_A_scaled(f, t, alpha, m) - (m + 1.0) * std::log(f.x));
}

/// B_m(t, theta): complex integrand along the rotated cut through y.
inline std::complex<double> integrand_B(double t, double theta, double alpha, int m) {
    detail::require_unit_alpha(alpha, "integrand_B");
    if (!(t > 0.0)) throw std::domain_error("integrand_B: t must be positive");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    return std::exp(detail::log_integrand_B(f, t, alpha, m));
}

/// g(u, theta) of the Watson form; g -> 1 as u -> 0+.
inline std::complex<double> integrand_g(double u, double theta, double alpha) {
    detail::require_unit_alpha(alpha, "integrand_g");
    if (!(u > 0.0)) throw std::domain_error("integrand_g: u must be positive");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    return std::exp(detail::log_g(f, u, alpha));
}

inline IntegralResult integrate_A(double theta, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "integrate_A");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    IntegralResult res = detail::integrate_A_scaled(f, alpha, m, spec);
    const double scale = std::exp(-(m + 1.0) * std::log(f.x));
    res.value *= scale;
    res.err_estimate *= scale;
    return res;
}

/// Direct quadrature of B_m. Well conditioned for moderate m (<= ~30); the
/// (y+it)^(-m-1) factor turns oscillatory beyond that and the Watson form is
/// the authoritative route.
inline IntegralResult integrate_B_direct(double theta, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "integrate_B_direct");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    return integrate_zero_to_inf(
        [&](double t) { return std::exp(detail::log_integrand_B(f, t, alpha, m)); }, spec);
}

/// B-integral via the Watson form: prefactor times the g-quadrature. Valid for
/// every m >= 0 including large m.
inline IntegralResult integrate_B_watson(double theta, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "integrate_B_watson");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    IntegralResult res = detail::watson_g_integral(f, alpha, m, spec);
    const detail::LogPolar pref = detail::watson_prefactor(f, alpha, m);
    const double mag = std::exp(pref.log_mag);
    res.value *= std::polar(mag, pref.phase);
    res.err_estimate *= mag;
    return res;
}

struct ScalarResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int nodes_used = 0;
    bool converged = false;
};

/// P_m^(alpha)(z) recovered from the two cut integrals:
///   sin(alpha pi) / (pi (-z)^alpha) (int A - 2 Im int B).
/// The representation is established for alpha in (0, 1); larger alpha is
/// rejected rather than extrapolated.
inline ScalarResult reconstruct_Pm(double z, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "reconstruct_Pm");
    const double theta = theta_from_z(z);
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);

    const IntegralResult qa = detail::integrate_A_scaled(f, alpha, m, spec);
    const IntegralResult qb = detail::watson_g_integral(f, alpha, m, spec);
    const detail::LogPolar pref = detail::watson_prefactor(f, alpha, m);

    const double log_scale_a = -(m + 1.0) * std::log(f.x);
    const double termA = std::exp(log_scale_a + std::log(qa.value.real()));
    const double imB = std::exp(pref.log_mag + std::log(std::abs(qb.value)))
                       * std::sin(pref.phase + std::arg(qb.value));
    const double front = std::sin(alpha * std::numbers::pi)
                         / (std::numbers::pi * std::pow(-z, alpha));

    ScalarResult out;
    out.value = front * (termA - 2.0 * imB);
    out.err_estimate = std::abs(front) * (std::exp(log_scale_a) * qa.err_estimate
                                          + 2.0 * std::exp(pref.log_mag) * qb.err_estimate);
    out.nodes_used = qa.nodes_used + qb.nodes_used;
    out.converged = qa.converged && qb.converged;
    return out;
}

/// Gamma(1-alpha) / (|x-y|^(2 alpha) x^(m+alpha) m^(1-alpha)), m >= 1.
inline double upper_bound_A(double theta, double alpha, int m) {
    detail::require_unit_alpha(alpha, "upper_bound_A");
    if (m < 1) throw std::domain_error("upper_bound_A: requires m >= 1");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    return std::exp(std::log(gamma_fn(1.0 - alpha)) - alpha * std::log(f.pair_dist_sq)
                    - (m + alpha) * std::log(f.x) - (1.0 - alpha) * std::log(double(m)));
}

/// |int g u^(-alpha) e^(-mu)| m^(1-alpha) / Gamma(1-alpha); tends to 1 as
/// m grows, uniformly for theta bounded away from pi.
inline ScalarResult asymptotic_ratio(double theta, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "asymptotic_ratio");
    if (!(theta <= theta_upper - 0.1 + 1e-12))
        throw std::domain_error("asymptotic_ratio: theta must satisfy theta <= pi - 0.1");
    if (m < 1) throw std::domain_error("asymptotic_ratio: requires m >= 1");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    const IntegralResult q = detail::watson_g_integral(f, alpha, m, spec);
    const double scale = std::pow(double(m), 1.0 - alpha) / gamma_fn(1.0 - alpha);
    ScalarResult out;
    out.value = std::abs(q.value) * scale;
    out.err_estimate = q.err_estimate * scale;
    out.nodes_used = q.nodes_used;
    out.converged = q.converged;
    return out;
}

struct DominanceOutcome {
    bool a_below_b = false;   // int A < |int B|
    double margin = 0.0;      // |int B| - int A
    double log_integral_a = 0.0;
    double log_modulus_b = 0.0;
    bool converged = false;
};

/// Compares int A against |int B| in log scale; both sides overflow plain
/// doubles long before the comparison becomes close.
inline DominanceOutcome dominance_check(double theta, double alpha, int m, const QuadratureSpec& spec) {
    detail::require_unit_alpha(alpha, "dominance_check");
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    const IntegralResult qa = detail::integrate_A_scaled(f, alpha, m, spec);
    const IntegralResult qb = detail::watson_g_integral(f, alpha, m, spec);
    const detail::LogPolar pref = detail::watson_prefactor(f, alpha, m);

    DominanceOutcome out;
    out.log_integral_a = -(m + 1.0) * std::log(f.x) + std::log(qa.value.real());
    out.log_modulus_b = pref.log_mag + std::log(std::abs(qb.value));
    out.a_below_b = out.log_integral_a < out.log_modulus_b;
    out.margin = std::exp(out.log_modulus_b) - std::exp(out.log_integral_a);
    out.converged = qa.converged && qb.converged;
    return out;
}

}  // namespace powergen
