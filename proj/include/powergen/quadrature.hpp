#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace powergen {

/// Double-exponential (exp-sinh) quadrature on (0, inf). The substitution
/// t = exp((pi/2) sinh u) absorbs an algebraic t^(-a), a < 1, endpoint
/// singularity at 0 and polynomial decay at infinity without special weights.
struct QuadratureSpec {
    int levels = 10;         // refinement depth; step at level L is 2^(2-L)
    double abs_tol = 1e-300;
    double rel_tol = 1e-10;
    double truncation = 6.5; // |u| cutoff in the transformed variable

    void validate() const {
        if (levels < 3 || levels > 14) throw std::invalid_argument("QuadratureSpec: levels must be in [3, 14]");
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (!(truncation > 0.0)) throw std::invalid_argument("QuadratureSpec: truncation must be positive");
    }
};

struct IntegralResult {
    std::complex<double> value{0.0, 0.0};
    double err_estimate = std::numeric_limits<double>::infinity();
    int nodes_used = 0;
    bool converged = false;
};

namespace detail {

struct DeNode {
    double t;
    double weight;  // includes the step size h
};

inline DeNode de_node(double u, double h) {
    const double c = 0.5 * std::numbers::pi;
    const double s = c * std::sinh(u);
    const double t = std::exp(s);
    return {t, h * t * c * std::cosh(u)};
}

template <typename F>
std::complex<double> de_term(F&& f, double u, double h) {
    const DeNode n = de_node(u, h);
    std::complex<double> term = f(n.t) * n.weight;
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) term = 0.0;
    return term;
}

}  // namespace detail

/// Integrate f over (0, inf). f may return complex values; real integrands
/// simply leave the imaginary part zero. A full coarse pass locates the band
/// of u carrying the integrand's mass; halving refinements then revisit only
/// that band (plus padding) until successive values agree within tolerance.
template <typename F>
IntegralResult integrate_zero_to_inf(F&& f, const QuadratureSpec& spec) {
    spec.validate();
    IntegralResult res;
    const double trunc = spec.truncation;

    double h = 0.5;  // level 3
    std::complex<double> sum{0.0, 0.0};
    double band_lo = -trunc, band_hi = trunc;
    {
        const long k_max = static_cast<long>(std::floor(trunc / h));
        std::vector<std::pair<double, double>> magnitudes;  // (u, |term|)
        double peak = 0.0;
        for (long k = -k_max; k <= k_max; ++k) {
            const double u = k * h;
            const std::complex<double> term = detail::de_term(f, u, h);
            sum += term;
            ++res.nodes_used;
            const double mag = std::abs(term);
            magnitudes.emplace_back(u, mag);
            if (mag > peak) peak = mag;
        }
        // nodes outside the band contribute below 1e-18 of the largest term;
        // their odd-refinement neighbors are dropped at finer levels
        const double floor_mag = peak * 1e-18;
        double lo = trunc, hi = -trunc;
        for (const auto& [u, mag] : magnitudes)
            if (mag > floor_mag && mag > 0.0) {
                lo = std::min(lo, u);
                hi = std::max(hi, u);
            }
        if (lo <= hi) {
            band_lo = std::max(-trunc, lo - 2.0);
            band_hi = std::min(trunc, hi + 2.0);
        }
    }

    for (int level = 4; level <= spec.levels; ++level) {
        h *= 0.5;
        std::complex<double> odd{0.0, 0.0};
        long k = static_cast<long>(std::ceil(band_lo / h));
        if (k % 2 == 0) ++k;
        for (; k * h <= band_hi; k += 2) {
            odd += detail::de_term(f, k * h, h);
            ++res.nodes_used;
        }
        const std::complex<double> refined = 0.5 * sum + odd;  // halved step reuses previous nodes
        res.err_estimate = std::abs(refined - sum);
        sum = refined;
        if (res.err_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(sum))) {
            res.converged = true;
            break;
        }
    }
    res.value = sum;
    return res;
}

}  // namespace powergen
