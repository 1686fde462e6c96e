#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "powergen/gamma.hpp"
#include "powergen/quadrature.hpp"

using namespace powergen;

TEST_CASE("gamma_fn classical values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("gamma_fn cross-checked against the C library on (0, 50)") {
    for (double s = 0.05; s < 50.0; s += 0.173) {
        const double want = std::tgamma(s);
        CHECK(std::abs(gamma_fn(s) - want) <= 1e-13 * std::abs(want));
    }
}

TEST_CASE("gamma_fn satisfies the duplication formula") {
    for (double s : {0.3, 0.75, 1.9, 4.2, 11.0}) {
        const double lhs = gamma_fn(2.0 * s);
        const double rhs = gamma_fn(s) * gamma_fn(s + 0.5) * std::pow(2.0, 2.0 * s - 1.0)
                           / std::sqrt(std::numbers::pi);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("quadrature reproduces Beta integrals with endpoint singularity") {
    // int_0^inf t^(a-1) (1+t)^(-a-b) dt = Gamma(a) Gamma(b) / Gamma(a+b)
    const QuadratureSpec spec;
    for (auto [a, b] : {std::pair{0.5, 5.5}, {0.25, 3.0}, {0.75, 10.25}, {0.1, 1.3}}) {
        const auto res = integrate_zero_to_inf(
            [a = a, b = b](double t) {
                return std::complex<double>(std::pow(t, a - 1.0) * std::pow(1.0 + t, -a - b), 0.0);
            },
            spec);
        const double want = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
        REQUIRE(res.converged);
        CHECK(res.value.real() == doctest::Approx(want).epsilon(1e-10));
        CHECK(std::abs(res.value.imag()) == 0.0);
        CHECK(res.err_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(res.value)));
    }
}

TEST_CASE("quadrature handles gamma-type integrands") {
    const QuadratureSpec spec;
    const auto half = integrate_zero_to_inf(
        [](double t) { return std::complex<double>(std::exp(-t) / std::sqrt(t), 0.0); }, spec);
    REQUIRE(half.converged);
    CHECK(half.value.real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));

    const auto fact = integrate_zero_to_inf(
        [](double t) { return std::complex<double>(std::exp(-t) * t * t, 0.0); }, spec);
    REQUIRE(fact.converged);
    CHECK(fact.value.real() == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("quadrature of a complex exponential") {
    const QuadratureSpec spec;
    const auto res = integrate_zero_to_inf(
        [](double t) { return std::exp(std::complex<double>(-t, -t)); }, spec);
    REQUIRE(res.converged);
    CHECK(res.value.real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(res.value.imag() == doctest::Approx(-0.5).epsilon(1e-10));
}

TEST_CASE("one more level moves the value by less than the reported estimate") {
    for (int levels : {8, 10}) {
        QuadratureSpec lo;
        lo.levels = levels;
        lo.rel_tol = 1e-15;
        QuadratureSpec hi = lo;
        hi.levels = levels + 1;
        auto f = [](double t) {
            return std::complex<double>(std::pow(t, -0.3) / std::pow(1.0 + t, 4.0), 0.0);
        };
        const auto coarse = integrate_zero_to_inf(f, lo);
        const auto fine = integrate_zero_to_inf(f, hi);
        CHECK(std::abs(fine.value - coarse.value) <= coarse.err_estimate + 1e-15 * std::abs(coarse.value));
    }
}

TEST_CASE("QuadratureSpec validation") {
    QuadratureSpec spec;
    spec.levels = 2;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.levels = 15;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.levels = 10;
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.rel_tol = 1e-10;
    spec.truncation = -1.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
