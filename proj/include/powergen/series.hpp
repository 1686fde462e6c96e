#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "powergen/polynomial.hpp"

namespace powergen {

struct SeriesParams {
    double alpha;
    int m_max;

    SeriesParams(double alpha_, int m_max_) : alpha(alpha_), m_max(m_max_) {
        if (!(alpha > 0.0)) throw std::invalid_argument("SeriesParams: alpha must be positive");
        if (m_max < 0) throw std::invalid_argument("SeriesParams: m_max must be non-negative");
    }
};

/// Coefficients of one member of the sequence generated by (1+t+z t^3)^(-alpha),
/// ascending in z. Degree is floor(m/3).
struct UnivariateCoeffs {
    double alpha = 0.0;
    int m = 0;
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    // sign of the value as z -> -infinity: sign(c_d) * (-1)^d
    int sign_at_minus_infinity() const {
        if (coeffs.empty() || coeffs.back() == 0.0) return 0;
        int s = coeffs.back() > 0.0 ? 1 : -1;
        return (degree() % 2 == 0) ? s : -s;
    }
};

/// Entry m holds the coefficient of t^m of (1+B(z)t+A(z)t^3)^(-alpha) as a
/// polynomial in z.
struct BivariateSeries {
    double alpha = 0.0;
    std::vector<PolynomialZ> entries;
};

/// Sign/log-magnitude pair. Survives values far outside double range; the
/// leftmost zeros sit near -(m/pi)^3, where plain Horner overflows for large m.
struct ScaledValue {
    int sign = 0;  // -1, 0, +1
    double log_magnitude = -std::numeric_limits<double>::infinity();

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
};

/// Generalized binomial (-alpha choose n) = (-a)(-a-1)...(-a-n+1)/n! by the
/// forward recurrence b_{n+1} = b_n (-alpha-n)/(n+1). Sign is (-1)^n.
inline double binom_neg_alpha(double alpha, int n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("binom_neg_alpha: alpha must be positive");
    if (n < 0) throw std::invalid_argument("binom_neg_alpha: n must be non-negative");
    double b = 1.0;
    for (int i = 0; i < n; ++i) b *= (-alpha - i) / (i + 1);
    return b;
}

namespace detail {

// Ordinary binomial by multiplicative recurrence; exact until it exceeds 2^53.
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

}  // namespace detail

/// Closed form: c_k = binom(-alpha, m-2k) binom(m-2k, k), 0 <= k <= floor(m/3).
inline UnivariateCoeffs pm_coeffs(double alpha, int m) {
    if (!(alpha > 0.0)) throw std::invalid_argument("pm_coeffs: alpha must be positive");
    if (m < 0) throw std::invalid_argument("pm_coeffs: m must be non-negative");
    UnivariateCoeffs out;
    out.alpha = alpha;
    out.m = m;
    out.coeffs.resize(m / 3 + 1);
    for (int k = 0; k <= m / 3; ++k)
        out.coeffs[k] = binom_neg_alpha(alpha, m - 2 * k) * detail::binom(m - 2 * k, k);
    return out;
}

/// All members up to m_max from the first-order recurrence
///   (m+1) P_{m+1} = -(m+alpha) P_m - (m-2+3 alpha) z P_{m-2},
/// which follows from u f' = -alpha u' f with u = 1+t+z t^3. O(1) per
/// coefficient versus O(m) for the closed form.
inline std::vector<UnivariateCoeffs> pm_coeffs_recurrence(const SeriesParams& params) {
    const double alpha = params.alpha;
    std::vector<UnivariateCoeffs> out;
    out.reserve(params.m_max + 1);
    out.push_back(UnivariateCoeffs{alpha, 0, {1.0}});
    for (int m = 0; m < params.m_max; ++m) {
        const std::vector<double>& pm = out[m].coeffs;
        const std::vector<double>* pm2 = m >= 2 ? &out[m - 2].coeffs : nullptr;
        std::vector<double> next((m + 1) / 3 + 1, 0.0);
        const double a = -(m + alpha) / (m + 1);
        const double b = -(m - 2 + 3.0 * alpha) / (m + 1);
        for (std::size_t k = 0; k < pm.size(); ++k) next[k] += a * pm[k];
        if (pm2)
            for (std::size_t k = 0; k < pm2->size(); ++k) next[k + 1] += b * (*pm2)[k];
        out.push_back(UnivariateCoeffs{alpha, m + 1, std::move(next)});
    }
    return out;
}

/// Same recurrence with polynomial A(z), B(z):
///   (m+1) H_{m+1} = -(m+alpha) B H_m - (m-2+3 alpha) A H_{m-2}.
inline BivariateSeries hm_coeffs(double alpha, const PolynomialZ& A, const PolynomialZ& B, int m_max) {
    if (!(alpha > 0.0)) throw std::invalid_argument("hm_coeffs: alpha must be positive");
    if (m_max < 0) throw std::invalid_argument("hm_coeffs: m_max must be non-negative");
    if (A.is_zero() && B.is_zero()) throw std::invalid_argument("hm_coeffs: A and B must not both be zero");
    BivariateSeries out;
    out.alpha = alpha;
    out.entries.reserve(m_max + 1);
    out.entries.push_back(PolynomialZ::constant({1.0, 0.0}));
    for (int m = 0; m < m_max; ++m) {
        PolynomialZ next = B * out.entries[m] * Complex{-(m + alpha) / (m + 1), 0.0};
        if (m >= 2) next += A * out.entries[m - 2] * Complex{-(m - 2 + 3.0 * alpha) / (m + 1), 0.0};
        out.entries.push_back(std::move(next));
    }
    return out;
}

/// Max scaled coefficient mismatch in -alpha P_m^(alpha+1) = d/dz P_{m+3}^(alpha).
inline double derivative_identity_residual(double alpha, int m) {
    UnivariateCoeffs lhs = pm_coeffs(alpha + 1.0, m);
    UnivariateCoeffs rhs = pm_coeffs(alpha, m + 3);
    double worst = 0.0;
    for (int k = 0; k <= std::max(lhs.degree(), rhs.degree() - 1); ++k) {
        double left = -alpha * (k <= lhs.degree() ? lhs.coeffs[k] : 0.0);
        double right = (k + 1 <= rhs.degree() ? (k + 1) * rhs.coeffs[k + 1] : 0.0);
        double res = std::abs(left - right) / (1.0 + std::abs(left));
        worst = std::max(worst, res);
    }
    return worst;
}

/// Horner evaluation with exponent tracking. Exact zero gives sign 0.
inline ScaledValue eval_scaled(const UnivariateCoeffs& p, double z) {
    if (p.coeffs.empty()) return {};
    // running value is mant * 2^e2 with mant kept near [0.5, 1)
    double mant = p.coeffs.back();
    long e2 = 0;
    auto normalize = [&] {
        if (mant == 0.0) { e2 = 0; return; }
        int e;
        mant = std::frexp(mant, &e);
        e2 += e;
    };
    normalize();
    for (int k = p.degree() - 1; k >= 0; --k) {
        mant *= z;
        normalize();
        const double c = p.coeffs[k];
        if (c == 0.0) continue;
        int ce;
        const double cm = std::frexp(c, &ce);
        if (mant == 0.0) {
            mant = cm;
            e2 = ce;
        } else {
            const long diff = e2 - ce;
            if (diff < -100) {  // running value negligible next to coefficient
                mant = cm;
                e2 = ce;
            } else if (diff <= 100) {  // otherwise coefficient negligible
                mant += std::ldexp(cm, static_cast<int>(-diff));
                normalize();
            }
        }
    }
    ScaledValue out;
    if (mant == 0.0) return out;
    out.sign = mant > 0.0 ? 1 : -1;
    out.log_magnitude = std::log(std::abs(mant)) + static_cast<double>(e2) * std::log(2.0);
    return out;
}

/// Sign/log-magnitude of P_m^(alpha)(z) by running the member recurrence in m
/// at the fixed point z. For large m this is the only reliable evaluator near
/// the zeros: the coefficient form develops a hump (~1e46 at m = 300) whose
/// rounding floor swamps the polynomial's value there, while the recurrence
/// tracks the dominant r^(-m) growth and stays forward-stable.
inline ScaledValue eval_pm_recurrence(double alpha, int m, double z) {
    if (!(alpha > 0.0)) throw std::invalid_argument("eval_pm_recurrence: alpha must be positive");
    if (m < 0) throw std::invalid_argument("eval_pm_recurrence: m must be non-negative");
    // window P_{k-2}, P_{k-1}, P_k scaled by a shared power of two
    double a = 1.0;                        // P_0
    double b = -alpha;                     // P_1
    double c = alpha * (alpha + 1.0) / 2;  // P_2
    long e2 = 0;
    double target = m == 0 ? a : (m == 1 ? b : c);
    for (int k = 2; k < m; ++k) {
        const double next = -((k + alpha) * c + (k - 2 + 3.0 * alpha) * z * a) / (k + 1);
        a = b;
        b = c;
        c = next;
        const double mag = std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (mag > 1e250 || (mag > 0.0 && mag < 1e-250)) {
            int e;
            std::frexp(mag, &e);
            a = std::ldexp(a, -e);
            b = std::ldexp(b, -e);
            c = std::ldexp(c, -e);
            e2 += e;
        }
        target = c;
    }
    ScaledValue out;
    if (target == 0.0) return out;
    out.sign = target > 0.0 ? 1 : -1;
    out.log_magnitude = std::log(std::abs(target)) + static_cast<double>(e2) * std::log(2.0);
    return out;
}

}  // namespace powergen
