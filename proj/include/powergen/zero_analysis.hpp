#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "powergen/cubic_geometry.hpp"
#include "powergen/root_finding.hpp"
#include "powergen/series.hpp"

namespace powergen {

// Tolerances of the curve-membership and root checks.
inline constexpr double curve_tol = 1e-6;
inline constexpr double coeff_vanish_tol = 1e-8;  // |A| or |B| below this excludes a root
inline constexpr double root_location_slack = 1e-9;

struct PmRealRoots {
    std::vector<double> roots;      // ascending
    std::vector<double> residuals;  // scaled residuals from the w-domain solve
    bool converged = false;
    bool count_matches_degree = false;
    bool all_below_critical = false;  // every root <= -4/27 - slack
    bool brackets_verified = false;   // eval_scaled sign alternation around each root
    std::vector<std::size_t> violations;  // indices failing interval/real-ness checks
};

namespace detail {

inline void eval_real_poly(const std::vector<double>& c, double x, double& v, double& dv,
                           double& noise) {
    v = c.back();
    dv = 0.0;
    noise = std::abs(c.back());
    const double ax = std::abs(x);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dv = dv * x + v;
        v = v * x + c[k];
        noise = noise * ax + std::abs(c[k]);
    }
}

// Reciprocal-domain route: all zeros of the reversed polynomial sit in the
// bounded interval (-27/4, 0); simultaneous iteration finds them at once.
// The simultaneous iterates carry conditioning-sized imaginary dust, so each
// is finished with a few real-axis Newton steps.
inline PmRealRoots pm_real_roots_reciprocal(double alpha, int m) {
    const UnivariateCoeffs pm = pm_coeffs(alpha, m);
    const int d = pm.degree();

    std::vector<double> reversed(d + 1);
    std::vector<Complex> reversed_c(d + 1);
    for (int j = 0; j <= d; ++j) {
        reversed[j] = pm.coeffs[d - j];
        reversed_c[j] = Complex(reversed[j], 0.0);
    }
    const RootSet ws = aberth_roots(PolynomialZ(std::move(reversed_c)));

    PmRealRoots out;
    out.converged = ws.converged;
    out.roots.reserve(ws.roots.size());
    for (std::size_t i = 0; i < ws.roots.size(); ++i) {
        const Complex w = ws.roots[i];
        // dust up to the local conditioning is expected on real roots; a
        // genuinely non-real root sits a spacing-scale distance off the axis
        if (std::abs(w.imag()) > 1e-3 * (1.0 + std::abs(w)) || w.real() == 0.0) {
            out.violations.push_back(i);
            continue;
        }
        double wr = w.real();
        bool at_floor = false;
        for (int it = 0; it < 16; ++it) {
            double v, dv, noise;
            eval_real_poly(reversed, wr, v, dv, noise);
            if (std::abs(v) <= 8.0 * std::numeric_limits<double>::epsilon() * noise) {
                at_floor = true;
                break;
            }
            if (dv == 0.0) break;
            const double step = v / dv;
            wr -= step;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(wr))) {
                double v2, dv2, noise2;
                eval_real_poly(reversed, wr, v2, dv2, noise2);
                at_floor = std::abs(v2) <= 64.0 * std::numeric_limits<double>::epsilon() * noise2;
                break;
            }
        }
        if (!at_floor || wr == 0.0) {
            out.violations.push_back(i);
            continue;
        }
        out.roots.push_back(1.0 / wr);
    }
    std::sort(out.roots.begin(), out.roots.end());
    // polished iterates must remain distinct
    for (std::size_t i = 0; i + 1 < out.roots.size(); ++i)
        if (out.roots[i + 1] - out.roots[i] <= 1e-12 * (1.0 + std::abs(out.roots[i])))
            out.violations.push_back(i);
    out.residuals = ws.residuals;
    out.converged = out.converged && out.violations.empty();

    out.count_matches_degree = static_cast<int>(out.roots.size()) == d;
    out.all_below_critical = !out.roots.empty()
        && std::all_of(out.roots.begin(), out.roots.end(),
                       [](double z) { return z <= z_critical - root_location_slack; });

    // Sign of P alternates across consecutive roots; probe the gaps.
    if (out.count_matches_degree && out.all_below_critical) {
        bool ok = true;
        int expected = pm.sign_at_minus_infinity();
        for (std::size_t i = 0; i <= out.roots.size() && ok; ++i) {
            double probe;
            if (i == 0)
                probe = out.roots.front() * 1.5;
            else if (i == out.roots.size())
                probe = 0.5 * (out.roots.back() + z_critical);
            else
                probe = 0.5 * (out.roots[i - 1] + out.roots[i]);
            if (eval_scaled(pm, probe).sign != expected) ok = false;
            expected = -expected;
        }
        out.brackets_verified = ok;
    }
    return out;
}

// Large-m route: isolate the floor(m/3) sign changes of theta -> P(z(theta))
// on a uniform grid and bisect each bracket with the recurrence evaluator.
inline PmRealRoots pm_real_roots_bisect(double alpha, int m) {
    PmRealRoots out;
    const int want = m / 3;
    const double lo = theta_lower + std::min(0.05 / m, 1e-3);
    const double hi = theta_upper - 1e-7;
    auto sign_at = [&](double theta) { return eval_pm_recurrence(alpha, m, z_of_theta(theta)).sign; };

    std::vector<std::pair<double, double>> brackets;
    for (int n_grid = 8 * m; n_grid <= 64 * m; n_grid *= 2) {
        brackets.clear();
        int prev_sign = sign_at(lo);
        double prev_theta = lo;
        for (int i = 1; i < n_grid; ++i) {
            const double theta = lo + (hi - lo) * i / (n_grid - 1.0);
            const int s = sign_at(theta);
            if (s != 0 && prev_sign != 0 && s != prev_sign) brackets.emplace_back(prev_theta, theta);
            if (s != 0) {
                prev_sign = s;
                prev_theta = theta;
            }
        }
        if (static_cast<int>(brackets.size()) == want) break;
    }
    if (static_cast<int>(brackets.size()) != want) {
        out.converged = false;
        out.count_matches_degree = false;
        return out;
    }

    const int start_sign = ((m - m / 3) % 2 == 0) ? 1 : -1;
    bool alternation_ok = sign_at(lo) == start_sign;
    for (const auto& [bl, bh] : brackets) {
        double tl = bl, th = bh;
        const int sl = sign_at(tl);
        const double log_scale = eval_pm_recurrence(alpha, m, z_of_theta(tl)).log_magnitude;
        for (int it = 0; it < 80 && th - tl > 1e-14; ++it) {
            const double mid = 0.5 * (tl + th);
            const int sm = sign_at(mid);
            if (sm == 0) { tl = th = mid; break; }
            if (sm == sl) tl = mid; else th = mid;
        }
        const double theta_root = 0.5 * (tl + th);
        out.roots.push_back(z_of_theta(theta_root));
        const ScaledValue at_root = eval_pm_recurrence(alpha, m, out.roots.back());
        out.residuals.push_back(at_root.sign == 0 ? 0.0 : std::exp(at_root.log_magnitude - log_scale));
    }
    std::sort(out.roots.begin(), out.roots.end());

    out.count_matches_degree = static_cast<int>(out.roots.size()) == want;
    out.all_below_critical = !out.roots.empty()
        && std::all_of(out.roots.begin(), out.roots.end(),
                       [](double z) { return z <= z_critical - root_location_slack; });
    out.brackets_verified = alternation_ok;
    out.converged = out.count_matches_degree && out.all_below_critical && alternation_ok;
    return out;
}

}  // namespace detail

// Coefficient arithmetic resolves the zeros up to this m. Beyond it the
// coefficient hump's rounding floor swallows the polynomial near the dense
// end of the zero set (measured onset m ~ 65-80: the floor certificate then
// accepts points ~0.1 away from true zeros), so the recurrence-based
// bisection route takes over.
inline constexpr int reciprocal_route_max_m = 60;

/// Real zeros of P_m^(alpha), ascending. Moderate m: Aberth iteration on the
/// reversed polynomial in w = 1/z (all w-zeros in (-27/4, 0)), certified by
/// eval_scaled sign brackets. Large m: sign-change bisection of the scaled
/// member recurrence along a theta grid.
inline PmRealRoots pm_real_roots(double alpha, int m) {
    if (m < 3) throw std::invalid_argument("pm_real_roots: requires m >= 3");
    if (m <= reciprocal_route_max_m) return detail::pm_real_roots_reciprocal(alpha, m);
    return detail::pm_real_roots_bisect(alpha, m);
}

/// Limiting zero density -3x sqrt(x+1) / (2 pi z (3+2x) sqrt(3-x)) with x the
/// real root of the cubic at z.
inline double limiting_density(double z) {
    const double x = real_root_x(z);  // rejects z >= -4/27
    return -3.0 * x * std::sqrt(x + 1.0)
           / (2.0 * std::numbers::pi * z * (3.0 + 2.0 * x) * std::sqrt(3.0 - x));
}

/// Same density through the theta parameterization (theta = W(z)); used where
/// grids are built in theta space.
inline double density_from_theta(double theta) {
    const double c2 = 4.0 * std::cos(theta) * std::cos(theta);
    const double d = 1.0 - c2;
    return -3.0 * d * d * d * d
           / (4.0 * std::numbers::pi * std::sin(2.0 * theta) * (2.0 * c2 + 1.0));
}

/// F(z) = (3/pi)(W(z) - 2pi/3): the limiting CDF of the zeros.
inline double limiting_cdf(double z) {
    return 3.0 / std::numbers::pi * (theta_from_z(z) - theta_lower);
}

struct DensityReport {
    double alpha = 0.0;
    int m = 0;
    std::vector<double> z_grid;         // strictly below -4/27, built from a theta grid
    std::vector<double> density;
    std::vector<double> model_cdf;
    std::vector<double> empirical_cdf;  // step CDF of the located zeros at z_grid
    double ks_distance = 0.0;           // sup gap, evaluated at the zeros themselves
    double cdf_at_support_ends[2] = {0.0, 0.0};  // closed form at theta = 2pi/3 and pi
    int root_count = 0;
    bool converged = false;
};

inline DensityReport density_report(double alpha, int m, int grid_size = 200) {
    if (m < 30) throw std::invalid_argument("density_report: requires m >= 30 for meaningful statistics");
    if (grid_size < 2) throw std::invalid_argument("density_report: grid_size must be at least 2");
    const PmRealRoots rr = pm_real_roots(alpha, m);

    DensityReport rep;
    rep.alpha = alpha;
    rep.m = m;
    rep.converged = rr.converged && rr.count_matches_degree && rr.all_below_critical;
    rep.root_count = static_cast<int>(rr.roots.size());

    const double n = std::max<double>(1.0, static_cast<double>(rr.roots.size()));
    for (std::size_t i = 0; i < rr.roots.size(); ++i) {
        const double F = limiting_cdf(rr.roots[i]);
        rep.ks_distance = std::max(rep.ks_distance, std::abs((i + 1.0) / n - F));
        rep.ks_distance = std::max(rep.ks_distance, std::abs(F - i / n));
    }

    rep.z_grid.resize(grid_size);
    rep.density.resize(grid_size);
    rep.model_cdf.resize(grid_size);
    rep.empirical_cdf.resize(grid_size);
    const double span = theta_upper - theta_lower;
    for (int j = 0; j < grid_size; ++j) {
        const double theta = theta_lower + span * (j + 0.5) / grid_size;
        rep.z_grid[j] = z_of_theta(theta);
        rep.density[j] = density_from_theta(theta);
        rep.model_cdf[j] = 3.0 / std::numbers::pi * (theta - theta_lower);
        const auto upper = std::upper_bound(rr.roots.begin(), rr.roots.end(), rep.z_grid[j]);
        rep.empirical_cdf[j] = static_cast<double>(upper - rr.roots.begin()) / n;
    }
    rep.cdf_at_support_ends[0] = 3.0 / std::numbers::pi * (theta_lower - theta_lower);
    rep.cdf_at_support_ends[1] = 3.0 / std::numbers::pi * (theta_upper - theta_lower);
    return rep;
}

struct CurveReport {
    std::vector<Complex> roots;             // roots with the curve value evaluated
    std::vector<Complex> w_values;          // B(root)^3 / A(root), matching `roots`
    std::vector<Complex> excluded_roots;    // |A| or |B| below coeff_vanish_tol
    double max_im_scaled = 0.0;             // max |Im w| / (1 + |w|)
    bool re_range_ok = false;               // every Re w in (-27/4, 0) up to tolerance
    bool on_curve = false;
    RootSet solve;
};

/// Zeros of H_m^(alpha) for polynomial A, B, checked against the curve
/// Im(B^3/A) = 0, Re(B^3/A) in (-27/4, 0). Roots where A or B vanishes are
/// reported separately: the curve expression degenerates there (w = B^3/A is
/// undefined at zeros of A and pinned to the interval endpoint 0 at zeros
/// of B, which are exact zeros of H_m whenever 3 does not divide m).
inline CurveReport curve_check_Hm(double alpha, const PolynomialZ& A, const PolynomialZ& B, int m) {
    const BivariateSeries series = hm_coeffs(alpha, A, B, m);
    const PolynomialZ& hm = series.entries[m];
    if (hm.degree() < 1) throw std::invalid_argument("curve_check_Hm: H_m is constant");

    CurveReport rep;
    rep.solve = aberth_roots(hm);
    rep.re_range_ok = true;
    for (const Complex& root : rep.solve.roots) {
        if (std::abs(A.eval(root)) < coeff_vanish_tol || std::abs(B.eval(root)) < coeff_vanish_tol) {
            rep.excluded_roots.push_back(root);
            continue;
        }
        const Complex b = B.eval(root);
        const Complex w = b * b * b / A.eval(root);
        rep.roots.push_back(root);
        rep.w_values.push_back(w);
        rep.max_im_scaled = std::max(rep.max_im_scaled, std::abs(w.imag()) / (1.0 + std::abs(w)));
        if (!(w.real() > -27.0 / 4.0 - curve_tol && w.real() < -1e-12)) rep.re_range_ok = false;
    }
    rep.on_curve = rep.max_im_scaled <= curve_tol && rep.re_range_ok;
    return rep;
}

}  // namespace powergen
