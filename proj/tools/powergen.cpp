// powergen: coefficients, zeros, integral checks, and zero-density data for
// the polynomial families generated by (1 + B(z) t + A(z) t^3)^(-alpha).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "powergen/powergen.hpp"

namespace {

using namespace powergen;
const double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// deterministic serialization: every float is emitted with 17 significant
// digits so outputs are byte-identical across runs and parse back exactly

std::string jescape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string jbool(bool b) { return b ? "true" : "false"; }

// non-finite values have no JSON number representation; emit null
std::string jnum(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

struct JsonObject {
    std::string body;
    void raw(const std::string& key, const std::string& value) {
        body += body.empty() ? "" : ",";
        body += jescape(key) + ":" + value;
    }
    void num(const std::string& key, double v) { raw(key, jnum(v)); }
    void integer(const std::string& key, long v) { raw(key, std::to_string(v)); }
    void str(const std::string& key, const std::string& v) { raw(key, jescape(v)); }
    void boolean(const std::string& key, bool v) { raw(key, jbool(v)); }
    std::string done() const { return "{" + body + "}"; }
};

struct JsonArray {
    std::string body;
    void raw(const std::string& value) {
        body += body.empty() ? "" : ",";
        body += value;
    }
    void num(double v) { raw(jnum(v)); }
    std::string done() const { return "[" + body + "]"; }
};

struct Output {
    std::string path = "-";

    void write(const std::string& text) const {
        if (path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        file << text;
    }
};

// ---------------------------------------------------------------------------

struct CommonArgs {
    double alpha = 0.0;
    int m = 0;
    std::string format = "json";
    Output out;
    QuadratureSpec quad;
};

void add_quadrature_flags(CLI::App* cmd, QuadratureSpec& quad) {
    cmd->add_option("--levels", quad.levels, "quadrature refinement depth (3..14)");
    cmd->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--abs-tol", quad.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--truncation", quad.truncation, "quadrature truncation parameter");
}

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--format", args.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", args.out.path, "output path ('-' for stdout)");
    add_quadrature_flags(cmd, args.quad);
}

std::string csv_complex_columns(const Complex& c) {
    return format_double(c.real()) + "," + format_double(c.imag());
}

// ---------------------------------------------------------------------------
// coeffs

int run_coeffs(const CommonArgs& args, const std::string& a_text, const std::string& b_text) {
    const bool general = !a_text.empty() || !b_text.empty();
    std::string text;
    if (!general) {
        const UnivariateCoeffs p = pm_coeffs(args.alpha, args.m);
        if (args.format == "json") {
            JsonObject obj;
            obj.str("command", "coeffs");
            obj.num("alpha", args.alpha);
            obj.integer("m", args.m);
            obj.boolean("general", false);
            obj.integer("degree", p.degree());
            obj.integer("leading_sign", p.sign_at_minus_infinity());
            JsonArray arr;
            for (double c : p.coeffs) arr.num(c);
            obj.raw("coeffs", arr.done());
            text = obj.done() + "\n";
        } else {
            std::string csv = "k,coeff\n";
            for (std::size_t k = 0; k < p.coeffs.size(); ++k)
                csv += std::to_string(k) + "," + format_double(p.coeffs[k]) + "\n";
            text = csv;
        }
    } else {
        const PolynomialZ A = a_text.empty() ? PolynomialZ::variable() : parse_poly(a_text);
        const PolynomialZ B = b_text.empty() ? PolynomialZ::constant({1.0, 0.0}) : parse_poly(b_text);
        const BivariateSeries series = hm_coeffs(args.alpha, A, B, args.m);
        const PolynomialZ& hm = series.entries[args.m];
        if (args.format == "json") {
            JsonObject obj;
            obj.str("command", "coeffs");
            obj.num("alpha", args.alpha);
            obj.integer("m", args.m);
            obj.boolean("general", true);
            obj.str("A", print_poly(A));
            obj.str("B", print_poly(B));
            obj.integer("degree", hm.degree());
            JsonArray arr;
            for (int k = 0; k <= hm.degree(); ++k) arr.raw(jescape(format_complex(hm.coeff(k))));
            obj.raw("coeffs", arr.done());
            text = obj.done() + "\n";
        } else {
            std::string csv = "k,re,im\n";
            for (int k = 0; k <= hm.degree(); ++k)
                csv += std::to_string(k) + "," + csv_complex_columns(hm.coeff(k)) + "\n";
            text = csv;
        }
    }
    args.out.write(text);
    return 0;
}

// ---------------------------------------------------------------------------
// roots

int run_roots(const CommonArgs& args) {
    const PmRealRoots rr = pm_real_roots(args.alpha, args.m);
    const bool ok = rr.converged && rr.count_matches_degree && rr.all_below_critical;
    if (args.format == "json") {
        JsonObject obj;
        obj.str("command", "roots");
        obj.num("alpha", args.alpha);
        obj.integer("m", args.m);
        obj.integer("count", static_cast<long>(rr.roots.size()));
        obj.boolean("all_below_critical", rr.all_below_critical);
        obj.boolean("brackets_verified", rr.brackets_verified);
        obj.boolean("converged", rr.converged);
        JsonArray roots;
        for (double r : rr.roots) roots.num(r);
        obj.raw("roots", roots.done());
        JsonArray res;
        for (double r : rr.residuals) res.num(r);
        obj.raw("residuals", res.done());
        args.out.write(obj.done() + "\n");
    } else {
        std::string csv = "root,residual\n";
        for (std::size_t i = 0; i < rr.roots.size(); ++i)
            csv += format_double(rr.roots[i]) + ","
                   + format_double(i < rr.residuals.size() ? rr.residuals[i] : 0.0) + "\n";
        args.out.write(csv);
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// density

int run_density(const CommonArgs& args, int grid_size) {
    const DensityReport rep = density_report(args.alpha, args.m, grid_size);
    if (args.format == "json") {
        JsonObject obj;
        obj.str("command", "density");
        obj.num("alpha", args.alpha);
        obj.integer("m", args.m);
        obj.integer("root_count", rep.root_count);
        obj.num("ks_distance", rep.ks_distance);
        obj.boolean("converged", rep.converged);
        JsonArray ends;
        ends.num(rep.cdf_at_support_ends[0]);
        ends.num(rep.cdf_at_support_ends[1]);
        obj.raw("cdf_support_ends", ends.done());
        JsonArray grid;
        for (std::size_t j = 0; j < rep.z_grid.size(); ++j) {
            JsonObject row;
            row.num("z", rep.z_grid[j]);
            row.num("density", rep.density[j]);
            row.num("model_cdf", rep.model_cdf[j]);
            row.num("empirical_cdf", rep.empirical_cdf[j]);
            grid.raw(row.done());
        }
        obj.raw("grid", grid.done());
        args.out.write(obj.done() + "\n");
    } else {
        std::string csv = "z,density,model_cdf,empirical_cdf,ks_distance\n";
        for (std::size_t j = 0; j < rep.z_grid.size(); ++j)
            csv += format_double(rep.z_grid[j]) + "," + format_double(rep.density[j]) + ","
                   + format_double(rep.model_cdf[j]) + "," + format_double(rep.empirical_cdf[j]) + ","
                   + format_double(rep.ks_distance) + "\n";
        args.out.write(csv);
    }
    return rep.converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// curve

int run_curve(const CommonArgs& args, const std::string& a_text, const std::string& b_text) {
    const PolynomialZ A = parse_poly(a_text);
    const PolynomialZ B = parse_poly(b_text);
    const CurveReport rep = curve_check_Hm(args.alpha, A, B, args.m);
    if (args.format == "json") {
        JsonObject obj;
        obj.str("command", "curve");
        obj.num("alpha", args.alpha);
        obj.integer("m", args.m);
        obj.str("A", print_poly(A));
        obj.str("B", print_poly(B));
        obj.boolean("on_curve", rep.on_curve);
        obj.num("max_im_scaled", rep.max_im_scaled);
        obj.boolean("re_range_ok", rep.re_range_ok);
        obj.boolean("converged", rep.solve.converged);
        JsonArray entries;
        for (std::size_t i = 0; i < rep.roots.size(); ++i) {
            JsonObject row;
            row.str("root", format_complex(rep.roots[i]));
            row.str("w", format_complex(rep.w_values[i]));
            entries.raw(row.done());
        }
        obj.raw("roots", entries.done());
        JsonArray excluded;
        for (const auto& r : rep.excluded_roots) excluded.raw(jescape(format_complex(r)));
        obj.raw("excluded_roots", excluded.done());
        args.out.write(obj.done() + "\n");
    } else {
        std::string csv = "root_re,root_im,w_re,w_im\n";
        for (std::size_t i = 0; i < rep.roots.size(); ++i)
            csv += csv_complex_columns(rep.roots[i]) + "," + csv_complex_columns(rep.w_values[i]) + "\n";
        args.out.write(csv);
    }
    return rep.solve.converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

CheckResult check_integral_rep(double alpha, double z, int m, const QuadratureSpec& quad) {
    CheckResult c{"integral-rep", false, 0.0, 1e-6, ""};
    const auto rec = reconstruct_Pm(z, alpha, m, quad);
    const ScaledValue series = eval_pm_recurrence(alpha, m, z);
    const double direct = series.value();
    c.measured = std::abs(rec.value - direct) / std::abs(direct);
    c.pass = rec.converged && c.measured <= c.tolerance;
    c.detail = "reconstructed " + format_double(rec.value) + " vs series " + format_double(direct);
    return c;
}

CheckResult check_watson(double alpha, int m, const QuadratureSpec& quad) {
    CheckResult c{"watson", true, 0.0, 1e-6, "max relative gap over theta grid"};
    for (double theta : {13.0 * pi / 18.0, 0.75 * pi, 5.0 * pi / 6.0}) {
        const auto direct = integrate_B_direct(theta, alpha, m, quad);
        const auto watson = integrate_B_watson(theta, alpha, m, quad);
        const double rel = std::abs(direct.value - watson.value) / std::abs(watson.value);
        c.measured = std::max(c.measured, rel);
        if (!direct.converged || !watson.converged) c.pass = false;
    }
    c.pass = c.pass && c.measured <= c.tolerance;
    return c;
}

CheckResult check_upper_bound(double alpha, int m, const QuadratureSpec& quad) {
    CheckResult c{"upper-bound", true, 0.0, 1.0, "max ratio integral/bound over theta grid"};
    for (int i = 0; i < 20; ++i) {
        const double theta = theta_lower + 0.01 + (pi - 0.02 - theta_lower) * i / 19.0;
        const auto a = integrate_A(theta, alpha, m, quad);
        const double ratio = a.value.real() / upper_bound_A(theta, alpha, m);
        c.measured = std::max(c.measured, ratio);
        if (!a.converged) c.pass = false;
    }
    c.pass = c.pass && c.measured < c.tolerance;
    return c;
}

CheckResult check_asymptotics(double alpha, int m, const QuadratureSpec& quad) {
    CheckResult c{"asymptotics", true, 0.0, 0.05, "max |ratio - 1| at theta in {13pi/18, 5pi/6}"};
    for (double theta : {13.0 * pi / 18.0, 5.0 * pi / 6.0}) {
        const auto r = asymptotic_ratio(theta, alpha, m, quad);
        c.measured = std::max(c.measured, std::abs(r.value - 1.0));
        if (!r.converged) c.pass = false;
    }
    c.pass = c.pass && c.measured <= c.tolerance;
    return c;
}

CheckResult check_dominance(double alpha, int m, int grid, const QuadratureSpec& quad) {
    CheckResult c{"dominance", true, 0.0, 0.0, ""};
    int failures = 0;
    std::vector<int> fail_flags(grid, 0);
    parallel_for(grid, [&](std::size_t i) {
        const double theta = theta_lower + 0.01 + (pi - 0.02 - theta_lower) * i / (grid - 1.0);
        const auto dom = dominance_check(theta, alpha, m, quad);
        if (!dom.a_below_b || !dom.converged) fail_flags[i] = 1;
    });
    for (int f : fail_flags) failures += f;
    c.measured = failures;
    c.pass = failures == 0;
    c.detail = "grid points failing dominance: " + std::to_string(failures) + "/" + std::to_string(grid);
    return c;
}

CheckResult check_derivative(double alpha, int m) {
    CheckResult c{"derivative", false, 0.0, 1e-12, ""};
    c.measured = derivative_identity_residual(alpha, m);
    c.pass = c.measured <= c.tolerance;
    return c;
}

CheckResult check_winding(double alpha, int m, const QuadratureSpec& quad) {
    CheckResult c{"winding", false, 0.0, 0.0, ""};
    const ArgSweep sweep = hm_arg_sweep(alpha, m, 0, quad);
    const int target = m / 3;
    const std::vector<AxisCrossing> marks = sweep.bracket_marks();
    bool alternating = true;
    for (std::size_t i = 1; i < marks.size(); ++i)
        if (marks[i].sign != -marks[i - 1].sign) alternating = false;
    const int brackets = sweep.bracket_count();

    const PmRealRoots rr = pm_real_roots(alpha, m);
    std::vector<double> root_thetas;
    for (double z : rr.roots) root_thetas.push_back(theta_from_z(z));
    std::sort(root_thetas.begin(), root_thetas.end());
    bool each_one = brackets > 0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        int inside = 0;
        for (double t : root_thetas)
            if (t > marks[i].theta && t < marks[i + 1].theta) ++inside;
        if (inside != 1) each_one = false;
    }
    c.measured = brackets;
    c.tolerance = target;
    c.pass = sweep.refined_ok && sweep.quadrature_ok && alternating && brackets >= target && each_one;
    c.detail = "sign-change brackets: " + std::to_string(brackets) + ", zeros: "
               + std::to_string(rr.roots.size());
    return c;
}

CheckResult check_geometry() {
    CheckResult c{"geometry", true, 0.0, 1e-12, "max scaled residual over 1000-point grid"};
    double worst_roundtrip = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double theta = theta_lower + (theta_upper - theta_lower) * i / 1001.0;
        const CubicRoots cr = roots_from_theta(theta);
        const auto res = vieta_residuals(cr);
        const double scale = 1.0 + std::abs(1.0 / cr.z);
        for (double r : res) c.measured = std::max(c.measured, r / scale);
        const std::complex<double> y = cr.upper_root();
        const double direct = std::norm(std::complex<double>(cr.x, 0.0) - y);
        c.measured = std::max(c.measured, std::abs(direct - cr.pair_distance_sq()) / direct);
        if (cr.z < z_critical - endpoint_tol)
            worst_roundtrip = std::max(worst_roundtrip, std::abs(theta_from_z(cr.z) - theta));
    }
    c.pass = c.measured <= c.tolerance && worst_roundtrip <= 1e-10;
    c.detail = "max theta round-trip error " + format_double(worst_roundtrip);
    return c;
}

int run_verify(const CommonArgs& args, const std::vector<std::string>& checks, double z, int grid) {
    std::vector<CheckResult> results;
    for (const std::string& name : checks) {
        if (name == "integral-rep") results.push_back(check_integral_rep(args.alpha, z, args.m, args.quad));
        else if (name == "watson") results.push_back(check_watson(args.alpha, args.m, args.quad));
        else if (name == "upper-bound") results.push_back(check_upper_bound(args.alpha, args.m, args.quad));
        else if (name == "asymptotics") results.push_back(check_asymptotics(args.alpha, args.m, args.quad));
        else if (name == "dominance") results.push_back(check_dominance(args.alpha, args.m, grid, args.quad));
        else if (name == "derivative") results.push_back(check_derivative(args.alpha, args.m));
        else if (name == "winding") results.push_back(check_winding(args.alpha, args.m, args.quad));
        else if (name == "geometry") results.push_back(check_geometry());
        else throw CLI::ValidationError("unknown check: " + name);
    }

    bool all_pass = true;
    for (const auto& r : results) all_pass = all_pass && r.pass;

    if (args.format == "json") {
        JsonObject obj;
        obj.str("command", "verify");
        obj.boolean("all_pass", all_pass);
        JsonArray arr;
        for (const auto& r : results) {
            JsonObject row;
            row.str("check", r.name);
            row.boolean("pass", r.pass);
            row.num("measured", r.measured);
            row.num("tolerance", r.tolerance);
            if (!r.detail.empty()) row.str("detail", r.detail);
            arr.raw(row.done());
        }
        obj.raw("checks", arr.done());
        args.out.write(obj.done() + "\n");
    } else {
        std::string csv = "check,pass,measured,tolerance\n";
        for (const auto& r : results)
            csv += r.name + "," + (r.pass ? "true" : "false") + "," + format_double(r.measured) + ","
                   + format_double(r.tolerance) + "\n";
        args.out.write(csv);
    }
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// figures

int run_figures(const std::string& outdir) {
    // zeros of every member up to m = 50 at alpha = 7.5
    const double alpha = 7.5;
    const int m_max = 50;
    std::vector<std::vector<double>> roots_by_m(m_max + 1);
    std::vector<int> failed(m_max + 1, 0);
    parallel_for(m_max + 1, [&](std::size_t m) {
        if (m < 3) return;  // constant members have no zeros
        const PmRealRoots rr = pm_real_roots(alpha, static_cast<int>(m));
        if (!rr.converged || !rr.count_matches_degree) failed[m] = 1;
        roots_by_m[m] = rr.roots;
    });
    int n_failed = 0;
    for (int f : failed) n_failed += f;

    std::string fig1 = "m,root\n";
    long rows1 = 0;
    for (int m = 1; m <= m_max; ++m)
        for (double r : roots_by_m[m]) {
            fig1 += std::to_string(m) + "," + format_double(r) + "\n";
            ++rows1;
        }

    // density samples over a theta grid, plus the vertical-asymptote marker
    std::string fig2 = "z,density,asymptote_z\n";
    const int grid = 400;
    long rows2 = 0;
    for (int j = 0; j < grid; ++j) {
        const double theta = theta_lower + (theta_upper - theta_lower) * (j + 0.5) / grid;
        fig2 += format_double(z_of_theta(theta)) + "," + format_double(density_from_theta(theta)) + ","
                + format_double(z_critical) + "\n";
        ++rows2;
    }

    const std::string path1 = outdir + "/fig1.csv";
    const std::string path2 = outdir + "/fig2.csv";
    {
        std::ofstream f1(path1, std::ios::binary);
        if (!f1) throw std::runtime_error("cannot open " + path1);
        f1 << fig1;
        std::ofstream f2(path2, std::ios::binary);
        if (!f2) throw std::runtime_error("cannot open " + path2);
        f2 << fig2;
    }

    JsonObject obj;
    obj.str("command", "figures");
    obj.str("fig1", path1);
    obj.str("fig2", path2);
    obj.integer("fig1_rows", rows1);
    obj.integer("fig2_rows", rows2);
    obj.integer("failed_solves", n_failed);
    std::cout << obj.done() << "\n";
    return n_failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial sequences generated by powers of a cubic: coefficients, zeros, "
                 "integral representations, and limiting zero density"};
    app.require_subcommand(1);
    app.set_config("--config");

    CommonArgs args;
    std::string a_text, b_text;
    double z = -2.0;
    int grid_size = 200;
    std::string outdir = ".";
    std::vector<std::string> checks;

    CLI::App* coeffs = app.add_subcommand("coeffs", "coefficient list of one member");
    coeffs->add_option("--alpha", args.alpha, "exponent alpha > 0")->required();
    coeffs->add_option("--m", args.m, "member index m >= 0")->required();
    coeffs->add_option("--A", a_text, "A(z) coefficients, ascending, e.g. \"0,1\"");
    coeffs->add_option("--B", b_text, "B(z) coefficients, ascending");
    add_common_flags(coeffs, args);

    CLI::App* roots = app.add_subcommand("roots", "real zeros of one member");
    roots->add_option("--alpha", args.alpha)->required();
    roots->add_option("--m", args.m)->required();
    add_common_flags(roots, args);

    CLI::App* density = app.add_subcommand("density", "empirical zero distribution against the limit law");
    density->add_option("--alpha", args.alpha)->required();
    density->add_option("--m", args.m)->required();
    density->add_option("--grid-size", grid_size, "sample grid size");
    add_common_flags(density, args);

    CLI::App* curve = app.add_subcommand("curve", "zero-curve membership for polynomial A, B");
    curve->add_option("--alpha", args.alpha)->required();
    curve->add_option("--m", args.m)->required();
    curve->add_option("--A", a_text, "A(z) coefficients")->required();
    curve->add_option("--B", b_text, "B(z) coefficients")->required();
    add_common_flags(curve, args);

    CLI::App* verify = app.add_subcommand("verify", "numerical verification checks");
    verify->add_option("--check", checks, "checks: integral-rep watson upper-bound asymptotics dominance derivative winding geometry")
        ->required();
    verify->add_option("--alpha", args.alpha);
    verify->add_option("--m", args.m);
    verify->add_option("--z", z, "evaluation point for integral-rep");
    verify->add_option("--grid-size", grid_size, "theta grid size for dominance");
    add_common_flags(verify, args);

    CLI::App* figures = app.add_subcommand("figures", "emit fig1.csv (zeros) and fig2.csv (density)");
    figures->add_option("--outdir", outdir, "directory for the CSV files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (coeffs->parsed()) return run_coeffs(args, a_text, b_text);
        if (roots->parsed()) return run_roots(args);
        if (density->parsed()) return run_density(args, grid_size);
        if (curve->parsed()) return run_curve(args, a_text, b_text);
        if (verify->parsed()) return run_verify(args, checks, z, grid_size);
        if (figures->parsed()) return run_figures(outdir);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
