#include "npstein/verify.hpp"

#include "npstein/bessel.hpp"
#include "npstein/bessel_checks.hpp"
#include "npstein/family.hpp"
#include "npstein/montecarlo.hpp"
#include "npstein/spectral.hpp"
#include "npstein/sturm.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace npstein {
namespace {

// Reference table of P_0..P_15 as printed (ascending powers).
const std::vector<std::vector<long long>> kPublishedFamily = {
    {1},
    {0, 1},
    {-1, 0, 1},
    {0, -5, 0, 1},
    {5, 0, -14, 0, 1},
    {0, 61, 0, -30, 0, 1},
    {-61, 0, 331, 0, -55, 0, 1},
    {0, -1385, 0, 1211, 0, -91, 0, 1},
    {1385, 0, -12284, 0, 3486, 0, -140, 0, 1},
    {0, 50521, 0, -68060, 0, 8526, 0, -204, 0, 1},
    {-50521, 0, 663061, 0, -281210, 0, 18522, 0, -285, 0, 1},
    {0, -2702765, 0, 5162421, 0, -948002, 0, 36762, 0, -385, 0, 1},
    {2702765, 0, -49164554, 0, 28862471, 0, -2749340, 0, 67947, 0, -506, 0, 1},
    {0, 199360981, 0, -510964090, 0, 127838711, 0, -7097948, 0, 118547, 0, -650, 0, 1},
    {-199360981, 0, 4798037791, 0, -3706931865, 0, 475638163, 0, -16700255, 0, 197197, 0, -819,
     0, 1},
    {0, -19391512144, 0, 64108947633, 0, -20829905733, 0, 1544454483, 0, -36419955, 0, 315133,
     0, -1015, 0, 1},
};

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        if (!pass) detail << "; ";
        pass = false;
        detail << what;
    }
    void note(const std::string& what) {
        if (pass && detail.tellp() == std::streampos(0)) detail << what;
    }
};

std::vector<Rational> random_rational_lambdas(std::uint64_t seed, std::uint64_t tag, int max_d) {
    auto pick = [&](std::uint64_t idx, int lo, int hi) {
        const double u = mc_uniform01(seed, tag * 100003 + idx);
        return lo + static_cast<int>(u * (hi - lo + 1));
    };
    const int d = pick(0, 1, max_d);
    std::vector<Rational> ls;
    for (int k = 0; k < d; ++k) {
        int num = 0;
        std::uint64_t salt = 0;
        while (num == 0) num = pick(100 * (k + 1) + salt++, -9, 9);
        const int den = pick(50000 + k, 1, 9);
        ls.emplace_back(num, den);
    }
    return ls;
}

// --- criteria ---------------------------------------------------------------

Check golden_family() {
    Check c;
    FamilyTable fam = stein_family(15);
    for (int n = 0; n <= 15; ++n) {
        const auto& want = kPublishedFamily[n];
        for (int k = 0; k <= n; ++k) {
            if (fam.coeff(n, k) != Rational(static_cast<long>(want[k]))) {
                std::ostringstream os;
                os << "P" << n << " x^" << k << ": table has " << want[k] << ", computed "
                   << fam.coeff(n, k).str();
                c.fail(os.str());
            }
        }
    }
    c.note("16 polynomials, 136 coefficients");
    return c;
}

Check three_way_agreement() {
    Check c;
    const int n_max = 30;
    FamilyTable fam = stein_family(n_max);
    auto rec = coeff_recursion_table(n_max);
    for (int n = 0; n <= n_max; ++n) {
        for (int k = 0; k <= n; ++k) {
            const Rational a = fam.coeff(n, k);
            if (a != rec[n][k]) c.fail("iteration vs recursion at (" + std::to_string(n) + "," +
                                       std::to_string(k) + ")");
            if (a != coeff_closed_form(n, k))
                c.fail("iteration vs closed form at (" + std::to_string(n) + "," +
                       std::to_string(k) + ")");
        }
    }
    c.note("n <= 30, all k, three routes");
    return c;
}

Check euler_identity() {
    Check c;
    auto e = euler_numbers(24);
    auto a = coeff_recursion_table(24);
    for (int n = 1; n <= 12; ++n)
        if (e[2 * n] != a[2 * n][0])
            c.fail("E_" + std::to_string(2 * n) + " != a(" + std::to_string(2 * n) + ",0)");
    if (e[6] != Rational(-61)) c.fail("E_6 != -61");
    if (e[8] != Rational(1385)) c.fail("E_8 != 1385");
    for (int n = 1; n <= 23; n += 2)
        if (!e[n].is_zero()) c.fail("E_" + std::to_string(n) + " != 0");
    c.note("a(2n,0) = E_2n for n <= 12");
    return c;
}

Check generating_function() {
    Check c;
    const int n_max = 12;
    FamilyTable fam = stein_family(n_max);
    auto gf = generating_function_coeffs(n_max);
    for (int n = 0; n <= n_max; ++n)
        if (gf[n] != fam.poly(n)) c.fail("n! [t^n] G != P_" + std::to_string(n));

    // PDE G_t = x G - G_x - x G_xx, coefficient-wise to order 11 on the
    // series-route truncation: (n+1) c_{n+1} = R(c_n) with c_n = P_n/n!.
    DiffOp<Rational> R = stein_operator();
    for (int n = 0; n <= n_max - 1; ++n) {
        Poly<Rational> cn = gf[n] / from_rational<Rational>(factorial(n));
        Poly<Rational> cnp1 = gf[n + 1] / from_rational<Rational>(factorial(n + 1));
        if (cnp1 * Rational(n + 1) != R.apply(cn))
            c.fail("PDE fails at t-order " + std::to_string(n));
    }
    c.note("series route matches for n <= 12, PDE to order 11");
    return c;
}

Check lowering_operator() {
    Check c;
    FamilyTable fam = stein_family(15);
    for (int n = 1; n <= 15; ++n)
        if (lowering_apply(fam.poly(n)) != fam.poly(n - 1) * Rational(n))
            c.fail("arctanh(D) P_" + std::to_string(n) + " != n P_" + std::to_string(n - 1));
    c.note("arctanh(D) P_n = n P_{n-1}, n <= 15");
    return c;
}

Check lemma_identities() {
    Check c;
    const int n_max = 12;
    FamilyTable fam = stein_family(n_max + 1);
    DiffOp<Rational> R = stein_operator();
    const Poly<Rational> x = Poly<Rational>::variable();

    // (i) R P'_{n-1} = P''_{n-1} - P_{n-1} + P'_n
    for (int n = 1; n <= n_max; ++n) {
        const auto& pm = fam.poly(n - 1);
        if (R.apply(pm.derivative()) !=
            pm.derivative().derivative() - pm + fam.poly(n).derivative())
            c.fail("(i) fails at n=" + std::to_string(n));
    }
    // (ii) R(P_n P_m) = P_n R P_m + P_m R P_n - (2x P'_n P'_m + x P_n P_m)
    for (int n = 1; n <= n_max; ++n) {
        for (int m = 1; m <= n_max; ++m) {
            const auto &pn = fam.poly(n), &pm = fam.poly(m);
            if (R.apply(pn * pm) !=
                pn * R.apply(pm) + pm * R.apply(pn) -
                    (x * pn.derivative() * pm.derivative() * Rational(2) + x * pn * pm))
                c.fail("(ii) fails at n=" + std::to_string(n) + ",m=" + std::to_string(m));
        }
        // specialization R(x P_n) = x P_{n+1} - P_n - 2x P'_n
        const auto& pn = fam.poly(n);
        if (R.apply(x * pn) !=
            x * fam.poly(n + 1) - pn - x * pn.derivative() * Rational(2))
            c.fail("(ii) specialization fails at n=" + std::to_string(n));
    }
    auto np = normal_product_element();
    MomentVector<Rational> mom = moments(np, 2 * n_max + 2);
    // (iii) E[P_n] = 0
    for (int n = 1; n <= n_max; ++n)
        if (!expect_against_moments(mom, fam.poly(n)).is_zero())
            c.fail("(iii) E[P_" + std::to_string(n) + "] != 0");
    // (iv) E[F P_{n+1}] = 2 E[F P'_n], both sides zero for odd n
    for (int n = 1; n <= n_max; ++n) {
        Rational lhs = expect_against_moments(mom, x * fam.poly(n + 1));
        Rational rhs = expect_against_moments(mom, x * fam.poly(n).derivative());
        if (lhs != Rational(2) * rhs) c.fail("(iv) fails at n=" + std::to_string(n));
        if (n % 2 == 1 && (!lhs.is_zero() || !rhs.is_zero()))
            c.fail("(iv) odd-n sides not zero at n=" + std::to_string(n));
    }
    // (v) weak orthogonality: E[P_n P_m] = 0 for n+m odd
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; m <= n_max; ++m)
            if ((n + m) % 2 == 1 &&
                !expect_against_moments(mom, fam.poly(n) * fam.poly(m)).is_zero())
                c.fail("(v) fails at n=" + std::to_string(n) + ",m=" + std::to_string(m));

    // Pinned product value from the criterion: E[P_2 P_4] = 94.
    Rational p2p4 = expect_against_moments(mom, fam.poly(2) * fam.poly(4));
    if (p2p4 != Rational(94))
        c.fail("E[P2*P4] = " + p2p4.str() + ", criterion expects 94");
    c.note("items (i)-(v) for n,m <= 12");
    return c;
}

Check non_orthogonality() {
    Check c;
    FamilyTable fam = stein_family(5);
    for (int n = 1; n <= 2; ++n) {
        auto fit = three_term_fit(fam, n);
        if (!fit.consistent) c.fail("fit inconsistent at n=" + std::to_string(n));
        if (n == 2 && (fit.c != Rational(0) || fit.d != Rational(4)))
            c.fail("(c_2,d_2) != (0,4)");
    }
    auto fit3 = three_term_fit(fam, 3);
    if (fit3.consistent) c.fail("fit unexpectedly consistent at n=3");
    if (fit3.d != Rational(9)) c.fail("top coefficients demand d_3 = " + fit3.d.str() + " != 9");
    bool demanded5 = false;
    for (const auto& [k, dem] : fit3.conflicts)
        if (dem && *dem == Rational(5)) demanded5 = true;
    if (!demanded5) c.fail("no conflicting equation demanding d_3 = 5");
    c.note("consistent for n <= 2, d_3 demanded both 9 and 5");
    return c;
}

Check turan_inequality() {
    Check c;
    auto rows = turan_check(20);
    int strict = 0;
    for (const auto& r : rows) {
        if (r.n < 2) continue;
        if (!r.holds) c.fail("fails at n=" + std::to_string(r.n));
        if (r.strict) ++strict;
    }
    c.note("2 <= n <= 20, strict in " + std::to_string(strict) + "/19 cases");
    return c;
}

Check p6_identity_random(std::uint64_t seed) {
    Check c;
    int nonneg = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto ls = random_rational_lambdas(seed, 1000 + trial, 5);
        auto elem = SpectralElement<Rational>::from_lambdas(ls);
        auto rep = p6_diagnostic(elem);
        if (!rep.identity_residual.is_zero())
            c.fail("identity residual nonzero at trial " + std::to_string(trial));
        if (rep.expect_p6.sign() >= 0) ++nonneg;
    }
    if (nonneg != 100) c.fail("E[P6] negative in " + std::to_string(100 - nonneg) + " cases");
    c.note("100 seeded spectra (d <= 5), residual 0 and E[P6] >= 0");
    return c;
}

Check normal_product_law() {
    Check c;
    auto np = normal_product_element();
    auto cum = cumulants(np, 16);
    auto mom = moments_from_cumulants(cum);
    for (int n = 1; n <= 8; ++n) {
        if (cum.kappa(2 * n) != factorial(2 * n - 1))
            c.fail("kappa_" + std::to_string(2 * n) + " != (2n-1)!");
        if (mom.moment(2 * n) != odd_double_factorial(n) * odd_double_factorial(n))
            c.fail("m_" + std::to_string(2 * n) + " != ((2n-1)!!)^2");
    }
    FamilyTable fam = stein_family(15);
    for (int n = 1; n <= 15; ++n)
        if (!expect_poly(np, fam.poly(n)).is_zero())
            c.fail("E[P_" + std::to_string(n) + "] != 0");
    c.note("kappa/moment laws to order 16, E[P_n] = 0 to n = 15");
    return c;
}

Check counterexample_quadratic() {
    Check c;
    auto f8 = counterexample_element();
    FamilyTable fam = stein_family(8);
    auto p = [&](int n) { return promote_poly<QuadRational>(fam.poly(n)); };
    if (!expect_poly(f8, p(4)).is_zero()) c.fail("E[P4(F8)] != 0");
    if (!expect_poly(f8, p(8)).is_zero()) c.fail("E[P8(F8)] != 0");
    QuadRational p6 = expect_poly(f8, p(6));
    if (!(p6.sign() > 0)) c.fail("E[P6(F8)] not positive");
    c.note("in Q(sqrt(3)): E[P4] = E[P8] = 0, E[P6] = " + p6.str());
    return c;
}

Check mixture_polynomials() {
    Check c;
    Poly<Rational> q4 = mixture_q_poly(4);
    Poly<Rational> want({Rational(0), Rational(-4032), Rational(19152), Rational(-30240),
                         Rational(15120)});
    if (q4 != want) c.fail("Q4 != 15120t^4 - 30240t^3 + 19152t^2 - 4032t");

    for (int n = 4; n <= 8; ++n) {
        Poly<Rational> q = mixture_q_poly(n);
        if (!q.eval(Rational(0)).is_zero() || !q.eval(Rational(1)).is_zero())
            c.fail("Q_" + std::to_string(n) + " endpoint values nonzero");
        const int want_deg = (n % 2 == 0) ? n : n - 1;
        if (q.degree() != want_deg)
            c.fail("deg Q_" + std::to_string(n) + " = " + std::to_string(q.degree()));
        // coefficients t^1..t^deg all nonzero with strictly alternating signs,
        // starting negative for even n and positive for odd n
        int expect_sign = (n % 2 == 0) ? -1 : 1;
        for (int k = 1; k <= q.degree(); ++k) {
            if (q.coeff(k).sign() != expect_sign)
                c.fail("sign pattern of Q_" + std::to_string(n) + " breaks at t^" +
                       std::to_string(k));
            expect_sign = -expect_sign;
        }
        std::vector<Rational> coeffs(q.coeffs());
        if (sign_changes(coeffs) != q.degree() - 1)
            c.fail("sign changes of Q_" + std::to_string(n) + " != deg - 1");
    }
    if (sturm_count(q4, Rational(0), Rational(1)) != 0) c.fail("Q4 has a root in (0,1)");
    for (int n = 5; n <= 7; ++n)
        if (sturm_count(mixture_q_poly(n), Rational(0), Rational(1)) < 1)
            c.fail("Q_" + std::to_string(n) + " has no root in (0,1)");
    c.note("Q4 exact, structure for n = 4..8, root counts for Q4..Q7");
    return c;
}

Check basis_decomposition() {
    Check c;
    FamilyTable fam = stein_family(8);
    Poly<Rational> p = Poly<Rational>::monomial(8) - Poly<Rational>(Rational(11025));
    auto dec = decompose_in_family(p, fam);
    std::vector<std::pair<int, long>> want = {{8, 1}, {6, 140}, {4, 4214}, {2, 24940}};
    for (auto [n, v] : want)
        if (dec[n] != Rational(v))
            c.fail("coefficient of P_" + std::to_string(n) + " is " + dec[n].str());
    for (int n : {0, 1, 3, 5, 7})
        if (!dec[n].is_zero()) c.fail("coefficient of P_" + std::to_string(n) + " nonzero");
    c.note("x^8 - 11025 = P8 + 140 P6 + 4214 P4 + 24940 P2");
    return c;
}

Check stein_synthesis(std::uint64_t seed) {
    Check c;
    auto spec = stein_coefficients(std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
    if (spec.assembled != stein_operator<Rational>() * Rational(-1, 4))
        c.fail("assembled operator for (1/2,-1/2) is not -(1/4) R");

    for (int trial = 0; trial < 25; ++trial) {
        auto ls = random_rational_lambdas(seed, 5000 + trial, 4);
        auto sp = stein_coefficients(ls);
        auto elem = SpectralElement<Rational>::from_lambdas(ls);
        for (int j = 0; j <= 10; ++j) {
            Poly<Rational> applied = sp.assembled.apply(Poly<Rational>::monomial(j));
            if (!expect_poly(elem, applied).is_zero()) {
                c.fail("E[(op x^" + std::to_string(j) + ")(F)] != 0 at trial " +
                       std::to_string(trial));
                break;
            }
        }
    }
    c.note("(1/2,-1/2) gives -(1/4) R; 25 seeded spectra (d <= 4), j <= 10");
    return c;
}

Check numeric_suite() {
    Check c;
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;

    const double total = expect_under_density(Poly<Rational>(1), cfg);
    if (std::fabs(total - 1.0) > 1e-10)
        c.fail("density mass off by " + std::to_string(total - 1.0));

    const double m2 = expect_under_density(Poly<Rational>::monomial(2), cfg);
    const double m4 = expect_under_density(Poly<Rational>::monomial(4), cfg);
    if (std::fabs(m2 - 1.0) > 1e-7) c.fail("quadrature m2 off");
    if (std::fabs(m4 - 9.0) > 1e-7) c.fail("quadrature m4 off");

    // Adjoint residual on the monomial basis spans all f, g with deg <= 4.
    double worst = 0.0;
    for (int i = 0; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
            auto ac = adjoint_residual(Poly<Rational>::monomial(i), Poly<Rational>::monomial(j),
                                       cfg);
            worst = std::max(worst, ac.residual);
        }
    }
    if (worst > 1e-6) c.fail("adjoint residual " + std::to_string(worst) + " > 1e-6");

    const std::vector<std::pair<long, int>> pairs = {{0, 0}, {4, 0}, {8, 0}, {2, 1}, {6, 1}};
    for (auto [two_mu, nu] : pairs) {
        auto r = check_integral_formula(two_mu, nu, cfg);
        if (r.residual > 1e-8)
            c.fail("integral formula residual too large at mu=" + std::to_string(two_mu / 2) +
                   ",nu=" + std::to_string(nu));
    }
    std::ostringstream os;
    os.precision(3);
    os << "mass, m2, m4, adjoint worst " << worst << ", formula pairs (0,0),(2,0),(4,0),(1,1),(3,1)";
    c.note(os.str());
    return c;
}

Check monte_carlo_calibration() {
    Check c;
    FamilyTable fam = stein_family(6);
    const std::vector<double> lambdas = {0.5, -0.5};
    const long long n = 100000;
    for (int target : {2, 4, 6}) {
        Poly<double> p = map_coeffs<double>(fam.poly(target),
                                            [](const Rational& r) { return r.to_double(); });
        int within = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            McEstimate e = estimate_expect_poly(lambdas, p, n, seed);
            if (std::fabs(e.mean) <= 4.0 * e.stderr_of_mean) ++within;
        }
        if (within < 19)
            c.fail("P_" + std::to_string(target) + ": only " + std::to_string(within) +
                   "/20 seeds within 4 stderr");
    }
    c.note("20 seeds x 1e5 draws, targets P2, P4, P6");
    return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
    using Clock = std::chrono::steady_clock;
    struct Entry {
        int id;
        const char* name;
        double budget_ms;  // 0 = no stated budget
        std::function<Check()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "golden family vs shipped reference table", 1000, golden_family},
        {2, "three-way coefficient agreement (n <= 30)", 10000, three_way_agreement},
        {3, "Euler-number constant terms", 0, euler_identity},
        {4, "generating function and PDE", 0, generating_function},
        {5, "lowering operator", 0, lowering_operator},
        {6, "operator identity suite", 0, lemma_identities},
        {7, "three-term recurrence breakdown", 0, non_orthogonality},
        {8, "averaged Turan inequality", 0, turan_inequality},
        {9, "P6 identity on random spectra", 0, [&] { return p6_identity_random(opt.seed); }},
        {10, "normal product cumulants/moments", 0, normal_product_law},
        {11, "quadratic-field counterexample", 0, counterexample_quadratic},
        {12, "mixture polynomials Q_n", 0, mixture_polynomials},
        {13, "basis decomposition of x^8 - 11025", 0, basis_decomposition},
        {14, "Stein operator synthesis", 0, [&] { return stein_synthesis(opt.seed); }},
        {15, "density/quadrature/adjoint numerics", 30000, numeric_suite},
        {16, "Monte Carlo calibration", 60000, monte_carlo_calibration},
    };

    std::vector<CriterionResult> out;
    for (const auto& e : entries) {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        const auto t0 = Clock::now();
        try {
            Check c = e.fn();
            r.pass = c.pass;
            r.detail = c.detail.str();
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        r.millis =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - t0)
                .count();
        if (r.pass && e.budget_ms > 0 && r.millis > e.budget_ms) {
            r.pass = false;
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("runtime budget exceeded");
        }
        out.push_back(std::move(r));
    }
    return out;
}

int print_acceptance(std::ostream& out, const VerifyOptions& opt) {
    auto results = run_acceptance(opt);
    int failures = 0;
    for (const auto& r : results) {
        out << "criterion " << (r.id < 10 ? "0" : "") << r.id << "  "
            << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << "  [" << static_cast<long>(r.millis + 0.5) << " ms]\n";
        if (!r.pass) ++failures;
    }
    out << (failures == 0 ? "all criteria passed"
                          : std::to_string(failures) + " criterion(s) failed")
        << "\n";
    return failures;
}

}  // namespace npstein
