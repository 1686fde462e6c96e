#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "powergen/polynomial.hpp"

namespace powergen {

struct RootSet {
    std::vector<Complex> roots;      // sorted by (re, im); count equals degree
    std::vector<double> residuals;   // |p(root)| / sum_j |c_j| |root|^j
    int iterations = 0;
    bool converged = false;
};

namespace detail {

// Horner pass returning value, derivative, and the rounding-noise scale
// sum |c_j| |x|^j of the evaluation.
inline void eval_with_derivative(const std::vector<Complex>& c, Complex x, Complex& v, Complex& dv,
                                 double& noise) {
    const double ax = std::abs(x);
    v = c.back();
    dv = Complex{};
    noise = std::abs(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dv = dv * x + v;
        v = v * x + c[k];
        noise = noise * ax + std::abs(c[k]);
    }
}

inline double residual_scale(const std::vector<Complex>& c, Complex x) {
    const double ax = std::abs(x);
    double scale = 0.0, p = 1.0;
    for (const auto& ck : c) {
        scale += std::abs(ck) * p;
        p *= ax;
    }
    return scale > 0.0 ? scale : 1.0;
}

}  // namespace detail

/// Ehrlich-Aberth simultaneous iteration. Deterministic: roots start on a
/// circle of radius (|c_0|/|c_d|)^(1/d) with fixed angular offsets, and the
/// update order is fixed, so identical inputs give identical RootSets.
inline RootSet aberth_roots(const PolynomialZ& p, int max_iterations = 400) {
    if (p.degree() < 1) throw std::invalid_argument("aberth_roots: degree must be at least 1");
    std::vector<Complex> coeffs = p.coeffs();

    // exact zero constant terms factor out as roots at the origin
    std::size_t zero_roots = 0;
    while (zero_roots < coeffs.size() - 1 && coeffs[zero_roots] == Complex{}) ++zero_roots;
    coeffs.erase(coeffs.begin(), coeffs.begin() + zero_roots);

    RootSet out;
    const std::size_t d = coeffs.size() - 1;
    std::vector<Complex> roots(d);
    if (d >= 1) {
        double radius = std::pow(std::abs(coeffs.front() / coeffs.back()), 1.0 / double(d));
        if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;
        for (std::size_t k = 0; k < d; ++k)
            roots[k] = std::polar(radius, 2.0 * std::numbers::pi * double(k) / double(d) + 0.4);

        bool settled = false;
        for (int iter = 0; iter < max_iterations && !settled; ++iter) {
            out.iterations = iter + 1;
            double worst_step = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                Complex v, dv;
                double noise;
                detail::eval_with_derivative(coeffs, roots[i], v, dv, noise);
                // at the rounding floor of the evaluation the ratio is pure
                // noise; the root cannot be improved in this precision
                if (std::abs(v) <= 4.0 * std::numeric_limits<double>::epsilon() * noise) continue;
                if (dv == Complex{}) dv = Complex{1e-300, 0.0};
                const Complex ratio = v / dv;
                Complex repulsion{};
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i) continue;
                    Complex diff = roots[i] - roots[j];
                    if (diff == Complex{}) diff = Complex{1e-14, 1e-14};
                    repulsion += 1.0 / diff;
                }
                const Complex correction = ratio / (1.0 - ratio * repulsion);
                roots[i] -= correction;
                worst_step = std::max(worst_step, std::abs(correction) / (1.0 + std::abs(roots[i])));
            }
            settled = worst_step <= 1e-14;
        }
        out.converged = settled;
    } else {
        out.converged = true;
    }

    for (std::size_t k = 0; k < zero_roots; ++k) roots.push_back(Complex{});
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    out.roots = std::move(roots);
    out.residuals.resize(out.roots.size());
    bool residuals_ok = true;
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        const double res = std::abs(p.eval(out.roots[i])) / detail::residual_scale(p.coeffs(), out.roots[i]);
        out.residuals[i] = res;
        if (res > 1e-9) residuals_ok = false;
    }
    out.converged = out.converged && residuals_ok;
    return out;
}

}  // namespace powergen
