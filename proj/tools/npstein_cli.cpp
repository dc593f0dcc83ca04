// Command-line front end: polynomial family dumps, coefficient tables,
// diagnostics for spectra given as JSON, Stein operator synthesis, mixture
// polynomial grids, root isolation, the numeric residual suite, Monte Carlo
// estimation, and the full acceptance run.
#include "npstein/bessel.hpp"
#include "npstein/bessel_checks.hpp"
#include "npstein/family.hpp"
#include "npstein/json_io.hpp"
#include "npstein/montecarlo.hpp"
#include "npstein/spectral.hpp"
#include "npstein/sturm.hpp"
#include "npstein/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

namespace {

using namespace npstein;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw CliError("cannot open output file '" + output_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open '" + path + "'");
    Json j;
    in >> j;
    return j;
}

ParsedElement load_element(const std::string& path) {
    if (path.empty()) throw CliError("--element <file> is required");
    return element_from_json(read_json_file(path));
}

std::vector<double> element_lambdas_as_double(const ParsedElement& pe) {
    std::vector<double> out;
    std::visit(
        [&](const auto& e) {
            if (!e.has_lambdas())
                throw CliError("sampling needs explicit spectral coefficients, not power sums");
            for (const auto& l : e.lambdas()) out.push_back(scalar_to_double(l));
        },
        pe);
    return out;
}

Poly<Rational> resolve_poly(const std::string& name) {
    static const std::regex family_re("^([PHWQ])([0-9]+)$");
    static const std::regex monom_re("^x\\^?([0-9]+)$");
    std::smatch m;
    if (std::regex_match(name, m, family_re)) {
        const int k = std::stoi(m[2]);
        switch (m[1].str()[0]) {
            case 'P': return stein_family(k).poly(k);
            case 'H': return hermite_family(k).poly(k);
            case 'W': return w_poly(k);
            case 'Q': return mixture_q_poly(k);
        }
    }
    if (std::regex_match(name, m, monom_re)) return Poly<Rational>::monomial(std::stoi(m[1]));
    return poly_from_json(read_json_file(name));
}

std::pair<int, int> parse_range(const std::string& s) {
    static const std::regex range_re("^([0-9]+)(\\.\\.([0-9]+))?$");
    std::smatch m;
    if (!std::regex_match(s, m, range_re)) throw CliError("bad --n value '" + s + "'");
    const int lo = std::stoi(m[1]);
    const int hi = m[3].matched ? std::stoi(m[3]) : lo;
    if (hi < lo) throw CliError("bad --n range '" + s + "'");
    return {lo, hi};
}

std::string family_dump(const std::vector<Poly<Rational>>& polys, const std::string& format,
                        const std::string& var) {
    if (format == "pretty") {
        std::ostringstream os;
        for (const auto& p : polys) os << p.pretty(var) << "\n";
        return os.str();
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "n,k,coeff\n";
        for (size_t n = 0; n < polys.size(); ++n)
            for (int k = 0; k <= polys[n].degree(); ++k)
                os << n << "," << k << "," << polys[n].coeff(k).str() << "\n";
        return os.str();
    }
    Json out = Json::array();
    for (size_t n = 0; n < polys.size(); ++n)
        out.push_back({{"n", n}, {"coeffs", to_json(polys[n])["coeffs"]}});
    return out.dump(2);
}

// --- subcommand bodies --------------------------------------------------------

int cmd_polys(int n, const std::string& format, const std::string& output) {
    FamilyTable fam = stein_family(n);
    emit(family_dump(fam.polys, format, "x"), output);
    return 0;
}

int cmd_coeff(int n, const std::string& format, const std::string& output) {
    auto table = coeff_recursion_table(n);
    if (format == "json") {
        Json out = Json::array();
        for (size_t r = 0; r < table.size(); ++r) {
            Json row = Json::array();
            for (const auto& v : table[r]) row.push_back(v.str());
            out.push_back({{"n", r}, {"coeffs", row}});
        }
        emit(out.dump(2), output);
        return 0;
    }
    std::ostringstream os;
    if (format == "csv") os << "n,k,value\n";
    for (size_t r = 0; r < table.size(); ++r)
        for (size_t k = 0; k < table[r].size(); ++k) {
            if (format == "csv")
                os << r << "," << k << "," << table[r][k].str() << "\n";
            else
                os << "a(" << r << "," << k << ") = " << table[r][k].str() << "\n";
        }
    emit(os.str(), output);
    return 0;
}

int cmd_euler(int n, const std::string& format, const std::string& output) {
    auto e = euler_numbers(n);
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& v : e) arr.push_back(v.str());
        emit(Json{{"euler", arr}}.dump(2), output);
        return 0;
    }
    std::ostringstream os;
    if (format == "csv") os << "n,E_n\n";
    for (size_t k = 0; k < e.size(); ++k) {
        if (format == "csv")
            os << k << "," << e[k].str() << "\n";
        else
            os << e[k].str() << "\n";
    }
    emit(os.str(), output);
    return 0;
}

int cmd_genfun(int n, const std::string& format, const std::string& output) {
    auto gf = generating_function_coeffs(n);
    FamilyTable fam = stein_family(n);
    if (format == "json") {
        Json out = Json::array();
        for (size_t k = 0; k < gf.size(); ++k)
            out.push_back({{"n", k},
                           {"coeffs", to_json(gf[k])["coeffs"]},
                           {"matches_operator_route", gf[k] == fam.poly(static_cast<int>(k))}});
        emit(out.dump(2), output);
        return 0;
    }
    emit(family_dump(gf, format, "x"), output);
    return 0;
}

template <class T>
Json moments_json(const SpectralElement<T>& e, int n) {
    auto cum = cumulants(e, n);
    auto mom = moments_from_cumulants(cum);
    Json kappa = Json::array(), m = Json::array();
    for (int r = 1; r <= n; ++r) kappa.push_back(value_with_float(cum.kappa(r)));
    for (int r = 0; r <= n; ++r) m.push_back(value_with_float(mom.moment(r)));
    return Json{{"order", n}, {"kappa", kappa}, {"moments", m}};
}

int cmd_moments(const std::string& element_path, int n, const std::string& output) {
    ParsedElement pe = load_element(element_path);
    Json out = std::visit([&](const auto& e) { return moments_json(e, n); }, pe);
    emit(out.dump(2), output);
    return 0;
}

int cmd_diagnose(const std::string& element_path, bool no_normalize, const std::string& format,
                 const std::string& output) {
    ParsedElement pe = load_element(element_path);
    DiagnosticOptions opt;
    opt.auto_normalize = !no_normalize;
    Json out = std::visit([&](const auto& e) { return to_json(p6_diagnostic(e, opt)); }, pe);
    if (format == "pretty") {
        std::ostringstream os;
        os << "kappa2            = " << out["kappa2"]["exact"].get<std::string>() << "\n"
           << "kappa3^2          = " << out["kappa3_sq"]["exact"].get<std::string>() << "\n"
           << "delta'            = " << out["delta_prime"]["exact"].get<std::string>() << "\n"
           << "E[P6]             = " << out["expect_p6"]["exact"].get<std::string>() << "\n"
           << "identity residual = " << out["identity_residual"]["exact"].get<std::string>()
           << "\n"
           << "bound (mod const) = " << out["bound"]["float"].get<double>() << "\n";
        emit(os.str(), output);
        return 0;
    }
    emit(out.dump(2), output);
    return 0;
}

int cmd_steinop(const std::string& element_path, const std::string& format,
                const std::string& output) {
    ParsedElement pe = load_element(element_path);
    Json out;
    std::string pretty;
    std::visit(
        [&](const auto& e) {
            if (!e.has_lambdas())
                throw CliError("steinop needs explicit spectral coefficients (the roots of P)");
            auto spec = stein_coefficients(e.lambdas());
            out = to_json(spec);
            std::ostringstream os;
            os << "assembled : " << spec.assembled.pretty() << "\n"
               << "normalized: " << spec.normalized.pretty() << "\n";
            pretty = os.str();
        },
        pe);
    emit(format == "pretty" ? pretty : out.dump(2), output);
    return 0;
}

int cmd_qpoly(const std::string& range, int grid, const std::string& format,
              const std::string& output) {
    auto [lo, hi] = parse_range(range);
    if (lo < 1) throw CliError("qpoly needs n >= 1");
    std::vector<std::pair<int, Poly<Rational>>> qs;
    for (int n = lo; n <= hi; ++n) qs.emplace_back(n, mixture_q_poly(n));

    if (grid > 0) {
        std::ostringstream os;
        os << "t";
        for (auto& [n, q] : qs) os << ",Q" << n;
        os << "\n";
        for (int i = 0; i <= grid; ++i) {
            const Rational t(i, grid);
            os << t.to_double();
            for (auto& [n, q] : qs) os << "," << q.eval(t).to_double();
            os << "\n";
        }
        emit(os.str(), output);
        return 0;
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "n,k,coeff\n";
        for (auto& [n, q] : qs)
            for (int k = 0; k <= q.degree(); ++k) os << n << "," << k << "," << q.coeff(k).str() << "\n";
        emit(os.str(), output);
        return 0;
    }
    if (format == "pretty") {
        std::ostringstream os;
        for (auto& [n, q] : qs) os << "Q" << n << "(t) = " << q.pretty("t") << "\n";
        emit(os.str(), output);
        return 0;
    }
    // a single polynomial is emitted bare so the artifact feeds roots --poly
    if (qs.size() == 1) {
        Json out = to_json(qs[0].second);
        out["n"] = qs[0].first;
        emit(out.dump(2), output);
        return 0;
    }
    Json out = Json::array();
    for (auto& [n, q] : qs) out.push_back({{"n", n}, {"coeffs", to_json(q)["coeffs"]}});
    emit(out.dump(2), output);
    return 0;
}

int cmd_roots(const std::string& poly_name, const std::string& lo, const std::string& hi,
              bool closed, const std::string& tol, const std::string& output) {
    Poly<Rational> p = resolve_poly(poly_name);
    const Rational a(lo), b(hi);
    const Rational eps = tol.empty() ? Rational(1, 65536) : Rational(tol);
    Json out = to_json(isolate_roots(p, a, b, eps));
    out["count"] = sturm_count(p, a, b, !closed);
    out["open"] = !closed;
    out["budan_fourier_bound"] = budan_fourier_count(p, a, b);
    std::vector<Rational> coeffs(p.coeffs());
    out["coefficient_sign_changes"] = sign_changes(coeffs);
    emit(out.dump(2), output);
    return 0;
}

int cmd_quadcheck(double tol, const std::string& output) {
    QuadratureConfig cfg;
    cfg.abs_tol = std::min(1e-13, tol / 10);
    cfg.rel_tol = cfg.abs_tol;
    Json checks = Json::array();
    auto add = [&](const std::string& name, double value, double target, double tolerance) {
        const double resid = std::fabs(value - target);
        checks.push_back({{"name", name},
                          {"value", value},
                          {"target", target},
                          {"residual", resid},
                          {"tolerance", tolerance},
                          {"pass", resid <= tolerance}});
    };

    add("density mass", expect_under_density(Poly<Rational>(1), cfg), 1.0, 1e-10);
    FamilyTable fam = stein_family(10);
    auto np = normal_product_element();
    for (int n = 1; n <= 4; ++n) {
        const double target =
            (odd_double_factorial(n) * odd_double_factorial(n)).to_double();
        add("moment m" + std::to_string(2 * n),
            expect_under_density(Poly<Rational>::monomial(2 * n), cfg), target, 1e-7 * target);
    }
    for (int n = 1; n <= 10; ++n)
        add("E[P" + std::to_string(n) + "]", expect_under_density(fam.poly(n), cfg), 0.0, 1e-7);

    DensityModel dm;
    add("theta(100)/100", dm.theta(100.0) / 100.0, 2.0, 1e-2);
    add("theta(1e-8)", dm.theta(1e-8), 0.0, 0.12);
    for (double x : {0.5, 1.0, 5.0}) {
        const double h = 1e-5;
        const double fd = (bessel_k0(x + h) - bessel_k0(x - h)) / (2 * h);
        add("K0'(" + std::to_string(x) + ") vs -K1", fd, -bessel_k1(x), 1e-9);
    }
    const std::vector<std::pair<long, int>> pairs = {{0, 0}, {4, 0}, {8, 0}, {2, 1}, {6, 1}};
    for (auto [two_mu, nu] : pairs) {
        auto r = check_integral_formula(two_mu, nu, cfg);
        add("integral formula mu=" + std::to_string(two_mu / 2.0).substr(0, 3) +
                " nu=" + std::to_string(nu),
            r.numeric, r.closed_form, 1e-8);
    }
    double worst = 0.0;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            worst = std::max(worst, adjoint_residual(Poly<Rational>::monomial(i),
                                                     Poly<Rational>::monomial(j), cfg)
                                        .residual);
    add("adjoint residual (deg <= 4)", worst, 0.0, 1e-6);

    bool all = true;
    for (const auto& c : checks) all = all && c["pass"].get<bool>();
    Json out{{"pass", all}, {"checks", checks}};
    emit(out.dump(2), output);
    return all ? 0 : 1;
}

int cmd_mc(const std::string& element_path, const std::string& poly_name, long long n,
           std::uint64_t seed, int shards, int grid, const std::string& format,
           const std::string& output) {
    Poly<Rational> p_exact = resolve_poly(poly_name);
    Poly<double> p = map_coeffs<double>(p_exact, [](const Rational& r) { return r.to_double(); });

    if (grid > 0) {
        // Interpolation family F_t = sqrt(t) F_inf + sqrt(1-t) G_inf on a grid;
        // exact mixture values attached when the polynomial is an even P_2k.
        std::optional<Poly<Rational>> exact;
        FamilyTable fam = stein_family(std::max(0, p_exact.degree()));
        for (int k = 1; 2 * k <= fam.max_index(); ++k)
            if (fam.poly(2 * k) == p_exact) exact = mixture_q_poly(k);

        std::ostringstream os;
        os << "t,mean,stderr" << (exact ? ",exact" : "") << "\n";
        for (int i = 0; i <= grid; ++i) {
            const double t = static_cast<double>(i) / grid;
            const double st = std::sqrt(t), su = std::sqrt(1.0 - t);
            std::vector<double> lambdas = {0.5 * st, -0.5 * st, 0.5 * su, -0.5 * su};
            McEstimate e = estimate_expect_poly(lambdas, p, n, seed + i, shards);
            os << t << "," << e.mean << "," << e.stderr_of_mean;
            if (exact) os << "," << exact->eval(Rational(i, grid)).to_double();
            os << "\n";
        }
        emit(os.str(), output);
        return 0;
    }

    ParsedElement pe = load_element(element_path);
    McEstimate e = estimate_expect_poly(element_lambdas_as_double(pe), p, n, seed, shards);
    if (format == "csv") {
        std::ostringstream os;
        os << "mean,stderr,n,seed\n"
           << e.mean << "," << e.stderr_of_mean << "," << e.n << "," << e.seed << "\n";
        emit(os.str(), output);
        return 0;
    }
    emit(to_json(e).dump(2), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normal product Stein-family toolkit"};
    app.require_subcommand(1);

    std::string format = "json", output, element, poly = "P6", lo = "0", hi = "1", tol_s;
    std::string n_range = "6";
    int n = 6, grid = 0, shards = 1;
    long long mc_n = 100000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    bool closed = false, no_normalize = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--output", output, "write to file instead of stdout");
    };

    auto* polys = app.add_subcommand("polys", "operator-iterated family P_0..P_n");
    polys->add_option("--n", n)->required()->check(CLI::Range(0, 200));
    add_common(polys);

    auto* coeff = app.add_subcommand("coeff", "coefficient triangle a(n,k) by recursion");
    coeff->add_option("--n", n)->required()->check(CLI::Range(0, 200));
    add_common(coeff);

    auto* euler = app.add_subcommand("euler", "Euler numbers E_0..E_n from 1/cosh");
    euler->add_option("--n", n)->required()->check(CLI::Range(0, 500));
    add_common(euler);

    auto* genfun = app.add_subcommand("genfun", "family via the generating function route");
    genfun->add_option("--n", n)->required()->check(CLI::Range(0, 60));
    add_common(genfun);

    auto* moments = app.add_subcommand("moments", "cumulant and moment vectors of an element");
    moments->add_option("--element", element)->required();
    moments->add_option("--n", n)->check(CLI::Range(1, 64));
    add_common(moments);

    auto* diagnose = app.add_subcommand("diagnose", "P6/even-moment diagnostic report");
    diagnose->add_option("--element", element)->required();
    diagnose->add_flag("--no-normalize", no_normalize, "fail instead of normalizing kappa2 to 1");
    add_common(diagnose);

    auto* steinop = app.add_subcommand("steinop", "order-d Stein operator of an element");
    steinop->add_option("--element", element)->required();
    add_common(steinop);

    auto* qpoly = app.add_subcommand("qpoly", "mixture polynomials Q_n (single n or a..b)");
    qpoly->add_option("--n", n_range)->required();
    qpoly->add_option("--grid", grid, "emit a (t, Q_n(t)) grid with this many steps");
    add_common(qpoly);

    auto* roots = app.add_subcommand("roots", "exact root counting/isolation on an interval");
    roots->add_option("--poly", poly)->required();
    roots->add_option("--lo", lo);
    roots->add_option("--hi", hi);
    roots->add_flag("--closed", closed, "count endpoint roots too");
    roots->add_option("--tol", tol_s, "isolation interval width (rational, e.g. 1/65536)");
    add_common(roots);

    auto* quadcheck = app.add_subcommand("quadcheck", "numeric residual table for the density");
    quadcheck->add_option("--tol", tol);
    add_common(quadcheck);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E[p(F)]");
    mc->add_option("--element", element);
    mc->add_option("--poly", poly);
    mc->add_option("--n", mc_n)->check(CLI::Range(2LL, 2000000000LL));
    mc->add_option("--seed", seed);
    mc->add_option("--shards", shards)->check(CLI::Range(1, 256));
    mc->add_option("--grid", grid, "trace over the interpolation family F_t instead");
    add_common(mc);

    auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
    verify->add_option("--seed", seed);
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        nlohmann::json err{{"error", e.what()}, {"code", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        if (polys->parsed()) return cmd_polys(n, format, output);
        if (coeff->parsed()) return cmd_coeff(n, format, output);
        if (euler->parsed()) return cmd_euler(n, format, output);
        if (genfun->parsed()) return cmd_genfun(n, format, output);
        if (moments->parsed()) return cmd_moments(element, n, output);
        if (diagnose->parsed()) return cmd_diagnose(element, no_normalize, format, output);
        if (steinop->parsed()) return cmd_steinop(element, format, output);
        if (qpoly->parsed()) return cmd_qpoly(n_range, grid, format, output);
        if (roots->parsed()) return cmd_roots(poly, lo, hi, closed, tol_s, output);
        if (quadcheck->parsed()) return cmd_quadcheck(tol, output);
        if (mc->parsed()) return cmd_mc(element, poly, mc_n, seed, shards, grid, format, output);
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.seed = seed;
            std::ostringstream os;
            const int failures = print_acceptance(os, opt);
            emit(os.str(), output);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", e.what()}, {"code", 2}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 2;
}
