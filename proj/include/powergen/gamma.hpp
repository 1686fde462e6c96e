#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace powergen {

namespace detail {

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline double lanczos_gamma(double s) {
    // valid for s >= 0.5
    double acc = lanczos_coeffs[0];
    for (int i = 1; i < 9; ++i) acc += lanczos_coeffs[i] / (s - 1.0 + i);
    const double t = s + 6.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, s - 0.5) * std::exp(-t) * acc;
}

}  // namespace detail

/// Gamma function on the real line away from the poles 0, -1, -2, ...
inline double gamma_fn(double s) {
    if (s <= 0.0 && s == std::floor(s)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (s >= 0.5) return detail::lanczos_gamma(s);
    // reflection through sin(pi s) Gamma(s) Gamma(1-s) = pi
    return std::numbers::pi / (std::sin(std::numbers::pi * s) * detail::lanczos_gamma(1.0 - s));
}

}  // namespace powergen
