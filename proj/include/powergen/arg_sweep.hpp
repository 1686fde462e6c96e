#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "powergen/integral_rep.hpp"
#include "powergen/parallel.hpp"

namespace powergen {

struct AxisCrossing {
    double theta;
    int sign;  // +1: h_m meets i R+, -1: i R-
};

/// Winding data of h_m(theta) = int_0^inf B_m(t, theta) dt over a theta grid.
/// h_m overflows double range near 2pi/3 (its modulus grows like r^(-m));
/// log_moduli and unwrapped_arg are always exact, hm_values clamp the modulus
/// to the representable band while keeping the direction.
struct ArgSweep {
    std::vector<double> thetas;
    std::vector<std::complex<double>> hm_values;
    std::vector<double> log_moduli;
    std::vector<double> unwrapped_arg;
    std::vector<AxisCrossing> axis_crossings;
    bool refined_ok = true;    // adjacent phase gaps all below pi/2
    bool quadrature_ok = true;

    // At theta -> 2pi/3 the g-quadrature becomes exactly real (its two ray
    // factors are conjugate there), so the limiting phase is
    // -pi(1-alpha)/2 + alpha pi/6 - (m+alpha) 2pi/3. When m is divisible by 3
    // this sits exactly on the negative imaginary axis: the endpoint itself is
    // the axis contact that brackets the leftmost zero.
    bool left_endpoint_contact = false;
    int left_endpoint_sign = 0;

    double total_arg_change() const {
        return unwrapped_arg.empty() ? 0.0 : unwrapped_arg.back() - unwrapped_arg.front();
    }

    // bracket boundaries: the endpoint contact (when it alternates with the
    // first interior crossing) followed by the interior crossings
    std::vector<AxisCrossing> bracket_marks() const {
        std::vector<AxisCrossing> marks;
        if (left_endpoint_contact && !axis_crossings.empty()
            && axis_crossings.front().sign == -left_endpoint_sign)
            marks.push_back({theta_lower, left_endpoint_sign});
        marks.insert(marks.end(), axis_crossings.begin(), axis_crossings.end());
        return marks;
    }

    int bracket_count() const {
        return std::max<int>(0, static_cast<int>(bracket_marks().size()) - 1);
    }
};

struct HmPolar {
    double log_modulus;
    double arg;  // continuous in theta by construction of the prefactor phase
    bool converged;
};

/// h_m in log-polar form. The prefactor phase is an explicit continuous
/// function of theta, so no unwrapping heuristics enter; only the principal
/// argument of the g-quadrature is added, and that factor stays near the
/// positive real axis.
inline HmPolar hm_polar(double alpha, int m, double theta, const QuadratureSpec& spec) {
    const detail::ThetaFrame f = detail::ThetaFrame::at(theta);
    const IntegralResult q = detail::watson_g_integral(f, alpha, m, spec);
    const detail::LogPolar pref = detail::watson_prefactor(f, alpha, m);
    return {pref.log_mag + std::log(std::abs(q.value)),
            pref.phase + std::arg(q.value),
            q.converged};
}

namespace detail {

inline std::complex<double> clamped_polar(double log_mag, double phase) {
    return std::polar(std::exp(std::clamp(log_mag, -700.0, 700.0)), phase);
}

}  // namespace detail

/// Sweeps the argument of h_m over (theta_lo, theta_hi), refining until
/// adjacent phase differences fall below pi/2, then locates every crossing of
/// the imaginary axis by bisection. grid_size = 0 picks a grid matched to the
/// expected winding rate (m + alpha per unit theta).
inline ArgSweep hm_arg_sweep(double alpha, int m, int grid_size, const QuadratureSpec& spec,
                             double theta_lo = theta_lower + 1e-7,
                             double theta_hi = theta_upper - 1e-4) {
    detail::require_unit_alpha(alpha, "hm_arg_sweep");
    if (m < 1) throw std::domain_error("hm_arg_sweep: requires m >= 1");
    if (!(theta_lo > theta_lower && theta_hi < theta_upper && theta_lo < theta_hi))
        throw std::domain_error("hm_arg_sweep: bad sweep interval");

    const double span = theta_hi - theta_lo;
    const int min_points = static_cast<int>(std::ceil(span * (m + alpha) / (0.5 * std::numbers::pi))) + 9;
    const int n0 = std::max(grid_size, min_points);

    std::vector<double> thetas(n0);
    for (int i = 0; i < n0; ++i) thetas[i] = theta_lo + span * i / (n0 - 1);

    std::vector<HmPolar> values(thetas.size());
    auto eval_range = [&](std::size_t begin) {
        parallel_for(thetas.size() - begin,
                     [&](std::size_t i) { values[begin + i] = hm_polar(alpha, m, thetas[begin + i], spec); });
    };
    eval_range(0);

    ArgSweep out;
    for (int pass = 0; pass < 14; ++pass) {
        std::vector<double> extra;
        for (std::size_t i = 0; i + 1 < thetas.size(); ++i)
            if (std::abs(values[i + 1].arg - values[i].arg) >= 0.5 * std::numbers::pi)
                extra.push_back(0.5 * (thetas[i] + thetas[i + 1]));
        if (extra.empty()) break;
        const std::size_t old = thetas.size();
        thetas.insert(thetas.end(), extra.begin(), extra.end());
        values.resize(thetas.size());
        eval_range(old);
        // re-sort both arrays together by theta
        std::vector<std::size_t> order(thetas.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });
        std::vector<double> st(thetas.size());
        std::vector<HmPolar> sv(values.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            st[i] = thetas[order[i]];
            sv[i] = values[order[i]];
        }
        thetas.swap(st);
        values.swap(sv);
    }

    out.thetas = thetas;
    out.hm_values.resize(thetas.size());
    out.log_moduli.resize(thetas.size());
    out.unwrapped_arg.resize(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        out.log_moduli[i] = values[i].log_modulus;
        out.unwrapped_arg[i] = values[i].arg;
        out.hm_values[i] = detail::clamped_polar(values[i].log_modulus, values[i].arg);
        if (!values[i].converged) out.quadrature_ok = false;
        if (i > 0 && std::abs(values[i].arg - values[i - 1].arg) >= 0.5 * std::numbers::pi)
            out.refined_ok = false;
    }

    // crossings of arg = pi/2 + k pi, located by bisection inside each cell
    const double half_pi = 0.5 * std::numbers::pi;
    for (std::size_t i = 0; i + 1 < thetas.size(); ++i) {
        double a = out.unwrapped_arg[i];
        double b = out.unwrapped_arg[i + 1];
        const bool decreasing = b < a;
        const double lo = std::min(a, b), hi = std::max(a, b);
        // candidate levels pi/2 + k pi inside (lo, hi]
        const long k_first = static_cast<long>(std::ceil((lo - half_pi) / std::numbers::pi));
        for (long k = k_first; half_pi + k * std::numbers::pi <= hi; ++k) {
            const double level = half_pi + k * std::numbers::pi;
            if (level <= lo || level > hi) continue;
            double tl = thetas[i], tr = thetas[i + 1];
            for (int it = 0; it < 60 && (tr - tl) > 1e-12; ++it) {
                const double mid = 0.5 * (tl + tr);
                const double phi = hm_polar(alpha, m, mid, spec).arg;
                const bool root_right = decreasing ? (phi > level) : (phi < level);
                if (root_right) tl = mid; else tr = mid;
            }
            // sign: level congruent to +pi/2 mod 2pi means i R+
            const long k_mod = ((k % 2) + 2) % 2;
            out.axis_crossings.push_back({0.5 * (tl + tr), k_mod == 0 ? 1 : -1});
        }
    }
    std::sort(out.axis_crossings.begin(), out.axis_crossings.end(),
              [](const AxisCrossing& a, const AxisCrossing& b) { return a.theta < b.theta; });

    const double limit_phase = -0.5 * std::numbers::pi * (1.0 - alpha)
                               + alpha * std::numbers::pi / 6.0 - (m + alpha) * theta_lower;
    if (std::abs(std::remainder(limit_phase - half_pi, 2.0 * std::numbers::pi)) < 1e-9) {
        out.left_endpoint_contact = true;
        out.left_endpoint_sign = 1;
    } else if (std::abs(std::remainder(limit_phase + half_pi, 2.0 * std::numbers::pi)) < 1e-9) {
        out.left_endpoint_contact = true;
        out.left_endpoint_sign = -1;
    }
    return out;
}

}  // namespace powergen
