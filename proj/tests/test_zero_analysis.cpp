#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "powergen/arg_sweep.hpp"
#include "powergen/quadrature.hpp"
#include "powergen/zero_analysis.hpp"

using namespace powergen;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("pm_real_roots small cases") {
    const PmRealRoots r3 = pm_real_roots(1.0, 3);
    REQUIRE(r3.roots.size() == 1);
    CHECK(r3.roots[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r3.converged);
    CHECK(r3.count_matches_degree);
    CHECK(r3.all_below_critical);
    CHECK(r3.brackets_verified);

    CHECK_THROWS_AS(pm_real_roots(1.0, 2), std::invalid_argument);
}

TEST_CASE("pm_real_roots across alphas and sizes") {
    for (double alpha : {0.5, 1.0, 7.5})
        for (int m : {10, 25, 50}) {
            const PmRealRoots rr = pm_real_roots(alpha, m);
            CHECK(rr.converged);
            CHECK(rr.count_matches_degree);
            CHECK(rr.all_below_critical);
            CHECK(rr.brackets_verified);
            CHECK(rr.violations.empty());
            CHECK(std::is_sorted(rr.roots.begin(), rr.roots.end()));
        }
}

TEST_CASE("the two zero-location routes agree at the handover scale") {
    // reciprocal-domain Aberth (coefficients) against theta bisection (member
    // recurrence): independent representations of the same zeros
    for (double alpha : {0.5, 2.0})
        for (int m : {42, 57, 60}) {
            const PmRealRoots via_aberth = detail::pm_real_roots_reciprocal(alpha, m);
            const PmRealRoots via_bisect = detail::pm_real_roots_bisect(alpha, m);
            REQUIRE(via_aberth.count_matches_degree);
            REQUIRE(via_bisect.count_matches_degree);
            REQUIRE(via_aberth.roots.size() == via_bisect.roots.size());
            // agreement is conditioning-limited: the coefficient route carries
            // ~1e-6 dust on the densest zeros near -4/27 by m = 60
            for (std::size_t i = 0; i < via_aberth.roots.size(); ++i)
                CHECK(std::abs(via_aberth.roots[i] - via_bisect.roots[i])
                      <= 1e-5 * (1.0 + std::abs(via_aberth.roots[i])));
        }
}

TEST_CASE("pm_real_roots at m=300: count and leftmost scale") {
    const PmRealRoots rr = pm_real_roots(0.5, 300);
    REQUIRE(rr.count_matches_degree);
    REQUIRE(rr.roots.size() == 100);
    CHECK(rr.all_below_critical);
    CHECK(rr.brackets_verified);
    // leftmost zero grows on the (m/pi)^3 scale
    const double scale = std::pow(300.0 / pi, 3.0);
    CHECK(rr.roots.front() < -0.1 * scale);
    CHECK(rr.roots.front() > -10.0 * scale);
}

TEST_CASE("pm_real_roots stays reliable at m=1000 (recurrence route)") {
    const PmRealRoots rr = pm_real_roots(0.5, 1000);
    CHECK(rr.converged);
    REQUIRE(rr.roots.size() == 333);
    CHECK(rr.all_below_critical);
    CHECK(std::is_sorted(rr.roots.begin(), rr.roots.end()));
    const DensityReport rep = density_report(0.5, 1000, 32);
    CHECK(rep.ks_distance <= 0.02);
}

TEST_CASE("limiting_density pinned value and endpoint behavior") {
    CHECK(limiting_density(-2.0) == doctest::Approx(3.0 / (20.0 * pi)).epsilon(1e-12));
    CHECK(limiting_density(z_critical - 1e-10) > 100.0);   // blows up at the right edge
    CHECK(limiting_density(-1e12) < 1e-3);                 // vanishes toward -inf
    CHECK(limiting_density(-1e12) > 0.0);
    CHECK_THROWS_AS(limiting_density(-0.1), std::domain_error);
}

TEST_CASE("limiting_density equals its theta form") {
    for (double z : {-0.149, -0.2, -0.7, -2.0, -9.0, -500.0}) {
        const double theta = theta_from_z(z);
        CHECK(density_from_theta(theta) == doctest::Approx(limiting_density(z)).epsilon(1e-10));
    }
}

TEST_CASE("limiting_density integrates to one") {
    // integrate over z < -4/27 via the substitution z = -4/27 - s; below the
    // endpoint-rejection band continue with the exact C/sqrt(s) edge scaling
    QuadratureSpec spec;
    spec.levels = 12;
    const double s_min = 1e-10;
    const double edge = limiting_density(z_critical - s_min);
    const auto res = integrate_zero_to_inf(
        [&](double s) {
            const double d = s >= s_min ? limiting_density(z_critical - s) : edge * std::sqrt(s_min / s);
            return std::complex<double>(d, 0.0);
        },
        spec);
    REQUIRE(res.converged);
    CHECK(res.value.real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("limiting_cdf values, monotonicity, and consistency with the density") {
    CHECK(limiting_cdf(-2.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(limiting_cdf(-1e9) <= 1e-2);
    CHECK(limiting_cdf(z_critical - 1e-11) >= 1.0 - 1e-4);
    CHECK_THROWS_AS(limiting_cdf(-0.14), std::domain_error);

    double prev = -1.0;
    for (double z = -40.0; z < -0.16; z += 0.37) {
        const double F = limiting_cdf(z);
        CHECK(F >= prev);
        CHECK(F >= 0.0);
        CHECK(F <= 1.0);
        prev = F;
        // centered difference of F matches the density
        const double h = 1e-5 * std::abs(z);
        const double diff = (limiting_cdf(z + h) - limiting_cdf(z - h)) / (2.0 * h);
        CHECK(diff == doctest::Approx(limiting_density(z)).epsilon(1e-6));
    }
}

TEST_CASE("density_report: KS distance and grid shape") {
    const DensityReport rep = density_report(0.5, 300, 128);
    CHECK(rep.converged);
    CHECK(rep.root_count == 100);
    CHECK(rep.ks_distance <= 0.03);
    CHECK(rep.cdf_at_support_ends[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.cdf_at_support_ends[1] == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(rep.z_grid.size() == 128);
    for (std::size_t j = 0; j < rep.z_grid.size(); ++j) {
        CHECK(rep.z_grid[j] < z_critical);
        CHECK(rep.density[j] > 0.0);
        if (j) {
            CHECK(rep.z_grid[j] > rep.z_grid[j - 1]);
            CHECK(rep.model_cdf[j] >= rep.model_cdf[j - 1]);
            CHECK(rep.empirical_cdf[j] >= rep.empirical_cdf[j - 1]);
        }
    }
    CHECK(rep.model_cdf.front() >= 0.0);
    CHECK(rep.model_cdf.back() <= 1.0);

    // KS shrinks with m (within noise)
    const DensityReport coarse = density_report(0.5, 60, 16);
    CHECK(rep.ks_distance < coarse.ks_distance + 0.005);
    CHECK_THROWS_AS(density_report(0.5, 10, 64), std::invalid_argument);
}

TEST_CASE("derivative zeros stay inside the hull of the parent zeros") {
    for (double alpha : {0.5, 2.0})
        for (int m : {12, 30}) {
            const PmRealRoots parent = pm_real_roots(alpha, m + 3);
            const PmRealRoots deriv = pm_real_roots(alpha + 1.0, m);
            REQUIRE(parent.count_matches_degree);
            REQUIRE(deriv.count_matches_degree);
            CHECK(deriv.roots.front() >= parent.roots.front() - 1e-9);
            CHECK(deriv.roots.back() <= parent.roots.back() + 1e-9);
        }
}

TEST_CASE("curve_check_Hm reduces to the real-interval case for A=z, B=1") {
    const CurveReport rep = curve_check_Hm(2.0, PolynomialZ::variable(), PolynomialZ::constant({1.0, 0.0}), 40);
    CHECK(rep.on_curve);
    CHECK(rep.excluded_roots.empty());
    CHECK(rep.max_im_scaled <= curve_tol);
    CHECK(rep.re_range_ok);
    REQUIRE(rep.roots.size() == 13);  // floor(40/3)

    const PmRealRoots direct = pm_real_roots(2.0, 40);
    REQUIRE(direct.roots.size() == 13);
    std::vector<double> got;
    for (const auto& r : rep.roots) got.push_back(r.real());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(direct.roots[i]).epsilon(1e-8));
    // w = 1/z lands in (-27/4, 0)
    for (const auto& w : rep.w_values) {
        CHECK(w.real() > -27.0 / 4.0);
        CHECK(w.real() < 0.0);
    }
}

TEST_CASE("curve_check_Hm on the three-ray family A=1, B=z") {
    const CurveReport rep = curve_check_Hm(2.0, PolynomialZ::constant({1.0, 0.0}), PolynomialZ::variable(), 40);
    CHECK(rep.on_curve);
    // the origin root (an exact zero of B) is excluded from the curve values
    REQUIRE(rep.excluded_roots.size() == 1);
    CHECK(std::abs(rep.excluded_roots[0]) <= 1e-10);
    REQUIRE(rep.roots.size() == 39);
    const double ray_limit = std::pow(27.0 / 4.0, 1.0 / 3.0);
    for (const auto& root : rep.roots) {
        const double a = std::arg(root);
        const double to_ray = std::min({std::abs(a - pi / 3.0), std::abs(a - pi), std::abs(a + pi / 3.0),
                                        std::abs(a + pi), std::abs(a - 5.0 * pi / 3.0)});
        CHECK(to_ray <= 1e-7);
        CHECK(std::abs(root) < ray_limit);
    }
}

TEST_CASE("curve_check_Hm with complex coefficients") {
    // A = 2+i constant, B = z: the curve Im(z^3/(2+i)) = 0 consists of three
    // rays rotated by Arg(2+i)/3
    const PolynomialZ A = PolynomialZ::constant({2.0, 1.0});
    const PolynomialZ B = PolynomialZ::variable();
    const CurveReport rep = curve_check_Hm(1.5, A, B, 40);
    CHECK(rep.solve.converged);
    CHECK(rep.on_curve);
    REQUIRE(rep.excluded_roots.size() == 1);  // the zero of B
    const double base = std::arg(Complex{2.0, 1.0}) / 3.0;
    for (const auto& root : rep.roots) {
        const double a = std::arg(root) - base;
        double best = 1e300;
        for (int k = -3; k <= 3; ++k)
            best = std::min({best, std::abs(a - pi / 3.0 - 2.0 * pi * k / 3.0)});
        CHECK(best <= 1e-6);
    }
    for (const auto& w : rep.w_values) {
        CHECK(std::abs(w.imag()) <= curve_tol * (1.0 + std::abs(w)));
        CHECK(w.real() > -27.0 / 4.0);
        CHECK(w.real() < 0.0);
    }
}

TEST_CASE("curve_check_Hm small-m regime reports data without failing") {
    // H_1 = -alpha B: roots are the zeros of B, excluded as degenerate
    const CurveReport rep = curve_check_Hm(1.5, PolynomialZ::constant({2.0, 0.0}), PolynomialZ::variable(), 1);
    CHECK(rep.roots.empty());
    REQUIRE(rep.excluded_roots.size() == 1);
    CHECK(std::abs(rep.excluded_roots[0]) <= 1e-12);

    CHECK_THROWS_AS(curve_check_Hm(1.0, PolynomialZ::variable(), PolynomialZ::constant({1.0, 0.0}), 0),
                    std::invalid_argument);
}

TEST_CASE("parse_poly round trip on randomized polynomials") {
    std::uint64_t state = 0x13198a2e03707344ull;
    auto next_unit = [&] {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return double(state >> 11) / 9007199254740992.0;
    };
    for (int trial = 0; trial < 40; ++trial) {
        const int degree = int(next_unit() * 8);
        std::vector<Complex> coeffs(degree + 1);
        for (int k = 0; k <= degree; ++k) {
            const double re = (next_unit() - 0.5) * std::pow(10.0, int(next_unit() * 6) - 3);
            const double im = next_unit() < 0.4 ? (next_unit() - 0.5) * 2.0 : 0.0;
            coeffs[k] = {re, im};
        }
        coeffs[degree] += 1.0;  // keep the lead nonzero
        const PolynomialZ p{coeffs};
        const PolynomialZ back = parse_poly(print_poly(p));
        REQUIRE(back.degree() == p.degree());
        for (int k = 0; k <= p.degree(); ++k) CHECK(back.coeff(k) == p.coeff(k));
    }
}

TEST_CASE("parse_poly grammar and round trip") {
    CHECK(parse_poly("1").coeffs() == std::vector<Complex>{{1.0, 0.0}});
    CHECK(parse_poly("0,1").degree() == 1);
    CHECK(parse_poly("0,1").coeff(1) == Complex{1.0, 0.0});
    const PolynomialZ p = parse_poly("1,0,-2");
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == Complex{1.0, 0.0});
    CHECK(p.coeff(1) == Complex{0.0, 0.0});
    CHECK(p.coeff(2) == Complex{-2.0, 0.0});

    const PolynomialZ c = parse_poly(" 1.5-2i , 3e-2 , 0+1i ");
    CHECK(c.coeff(0) == Complex{1.5, -2.0});
    CHECK(c.coeff(1) == Complex{0.03, 0.0});
    CHECK(c.coeff(2) == Complex{0.0, 1.0});

    for (const char* text : {"1", "0,1", "1,0,-2", "1.5-2i,0.03,0+1i", "-0.25,7e3"}) {
        const PolynomialZ q = parse_poly(text);
        CHECK(print_poly(parse_poly(print_poly(q))) == print_poly(q));
    }

    CHECK_THROWS_AS(parse_poly(""), PolyParseError);
    CHECK_THROWS_AS(parse_poly("1,,2"), PolyParseError);
    CHECK_THROWS_AS(parse_poly("1,"), PolyParseError);
    CHECK_THROWS_AS(parse_poly("abc"), PolyParseError);
    CHECK_THROWS_AS(parse_poly("1+2j"), PolyParseError);
    try {
        parse_poly("1, 2x, 3");
    } catch (const PolyParseError& err) {
        CHECK(err.position > 0);
    }
}

TEST_CASE("winding sweep brackets the real zeros (m = 20)") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    const ArgSweep sweep = hm_arg_sweep(0.5, 20, 0, spec);
    CHECK(sweep.refined_ok);
    CHECK(sweep.quadrature_ok);
    CHECK_FALSE(sweep.left_endpoint_contact);  // m = 20 is not divisible by 3

    const auto marks = sweep.bracket_marks();
    REQUIRE(marks.size() >= 7);  // floor(20/3) + 1
    for (std::size_t i = 1; i < marks.size(); ++i)
        CHECK(marks[i].sign == -marks[i - 1].sign);

    // total argument change is -m pi/3 - alpha pi/2 + phi_g with phi_g in (-pi/2, 0)
    const double drift = sweep.total_arg_change() + 20.0 * pi / 3.0 + 0.5 * pi / 2.0;
    CHECK(drift > -0.5 * pi - 0.3);
    CHECK(drift < 0.3);

    // each consecutive opposite pair brackets exactly one zero of P_20
    const PmRealRoots rr = pm_real_roots(0.5, 20);
    REQUIRE(rr.roots.size() == 6);
    std::vector<double> root_thetas;
    for (double z : rr.roots) root_thetas.push_back(theta_from_z(z));
    std::sort(root_thetas.begin(), root_thetas.end());
    int bracketed = 0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        int inside = 0;
        for (double t : root_thetas)
            if (t > marks[i].theta && t < marks[i + 1].theta) ++inside;
        CHECK(inside == 1);
        bracketed += inside;
    }
    CHECK(bracketed == 6);

    // cross-module consistency: where h meets i R+ the reconstructed member
    // is negative, where it meets i R- positive
    for (std::size_t i = 0; i < marks.size(); i += 2) {
        const double z = z_of_theta(marks[i].theta);
        const auto rec = reconstruct_Pm(z, 0.5, 20, spec);
        REQUIRE(rec.converged);
        CHECK((rec.value < 0.0) == (marks[i].sign > 0));
    }
}

TEST_CASE("winding sweep at another exponent (alpha = 0.9, m = 30)") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    const ArgSweep sweep = hm_arg_sweep(0.9, 30, 0, spec);
    CHECK(sweep.refined_ok);
    const auto marks = sweep.bracket_marks();
    CHECK(sweep.bracket_count() >= 10);
    const PmRealRoots rr = pm_real_roots(0.9, 30);
    REQUIRE(rr.roots.size() == 10);
    std::vector<double> root_thetas;
    for (double z : rr.roots) root_thetas.push_back(theta_from_z(z));
    std::sort(root_thetas.begin(), root_thetas.end());
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        int inside = 0;
        for (double t : root_thetas)
            if (t > marks[i].theta && t < marks[i + 1].theta) ++inside;
        CHECK(inside == 1);
    }
}

TEST_CASE("winding sweep endpoint contact (m divisible by 3)") {
    // at theta -> 2pi/3 the limiting phase sits exactly on i R- when 3 | m;
    // the endpoint contact supplies the bracket holding the leftmost zero
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    const ArgSweep sweep = hm_arg_sweep(0.5, 21, 0, spec);
    CHECK(sweep.left_endpoint_contact);
    CHECK(sweep.left_endpoint_sign == -1);

    const auto marks = sweep.bracket_marks();
    CHECK(sweep.bracket_count() >= 7);  // floor(21/3)

    const PmRealRoots rr = pm_real_roots(0.5, 21);
    REQUIRE(rr.roots.size() == 7);
    std::vector<double> root_thetas;
    for (double z : rr.roots) root_thetas.push_back(theta_from_z(z));
    std::sort(root_thetas.begin(), root_thetas.end());
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        int inside = 0;
        for (double t : root_thetas)
            if (t > marks[i].theta && t < marks[i + 1].theta) ++inside;
        CHECK(inside == 1);
    }
}
