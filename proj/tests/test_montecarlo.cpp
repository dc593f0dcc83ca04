#include "npstein/montecarlo.hpp"

#include "npstein/family.hpp"
#include "npstein/spectral.hpp"

#include <doctest.h>

#include <cmath>

namespace {

using namespace npstein;
using PQ = Poly<Rational>;

Poly<double> as_double(const PQ& p) {
    return map_coeffs<double>(p, [](const Rational& r) { return r.to_double(); });
}

const std::vector<double> kNormalProduct = {0.5, -0.5};

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("determinism per seed") {
    auto a = sample_element(kNormalProduct, 10, 42);
    auto b = sample_element(kNormalProduct, 10, 42);
    CHECK(a == b);
    auto c = sample_element(kNormalProduct, 10, 43);
    CHECK(a != c);
}

TEST_CASE("normal quantile inverts the CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    for (double u : {1e-18, 1e-9, 0.01, 0.3, 0.7, 0.975, 1 - 1e-12}) {
        CAPTURE(u);
        const double x = normal_quantile(u);
        const double back = 0.5 * std::erfc(-x / std::sqrt(2.0));
        CHECK(back == doctest::Approx(u).epsilon(1e-11));
    }
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("power-sum-only elements cannot be sampled") {
    CHECK_THROWS_AS(sample_element({}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_expect_poly({}, as_double(PQ::variable()), 100, 1),
                    std::invalid_argument);
}

TEST_CASE("shard count does not change the estimate") {
    Poly<double> p6 = as_double(stein_family(6).poly(6));
    auto one = estimate_expect_poly(kNormalProduct, p6, 200000, 7, 1);
    auto four = estimate_expect_poly(kNormalProduct, p6, 200000, 7, 4);
    auto nine = estimate_expect_poly(kNormalProduct, p6, 200000, 7, 9);
    CHECK(one.mean == four.mean);
    CHECK(one.stderr_of_mean == four.stderr_of_mean);
    CHECK(one.mean == nine.mean);
}

TEST_CASE("mean and variance of the normal product sample") {
    const long long n = 1000000;
    auto mean = estimate_expect_poly(kNormalProduct, as_double(PQ::variable()), n, 11);
    CHECK(std::fabs(mean.mean) <= 4 * mean.stderr_of_mean);
    auto var = estimate_expect_poly(kNormalProduct, as_double(PQ::monomial(2)), n, 11);
    CHECK(std::fabs(var.mean - 1.0) <= 4 * var.stderr_of_mean);
    auto m4 = estimate_expect_poly(kNormalProduct, as_double(PQ::monomial(4)), n, 11);
    CHECK(std::fabs(m4.mean - 9.0) <= 4 * m4.stderr_of_mean);
}

TEST_CASE("family expectations vanish within Monte Carlo error") {
    FamilyTable fam = stein_family(8);
    auto p6 = estimate_expect_poly(kNormalProduct, as_double(fam.poly(6)), 1000000, 5);
    CHECK(std::fabs(p6.mean) <= 4 * p6.stderr_of_mean);

    // P8 has a heavy tail (its variance rides on m16), so the acceptance band
    // comes from the exact variance, not the sample one: at n = 1e6 the draws
    // cannot see the x^16 tail that dominates E[P8^2]
    auto mom = moments(normal_product_element(), 16);
    const double var_p8 =
        expect_against_moments(mom, fam.poly(8) * fam.poly(8)).to_double();
    const double achievable = 4.0 * std::sqrt(var_p8 / 1000000.0);
    const long long n = std::max<long long>(1000000, mc_samples_for(var_p8, achievable));
    CHECK(n >= 1000000);
    CHECK(mc_samples_for(var_p8, achievable / 10) > 10 * n);  // tighter targets cost more
    auto p8 = estimate_expect_poly(kNormalProduct, as_double(fam.poly(8)), n, 5);
    CHECK(std::fabs(p8.mean) <= 4.0 * std::sqrt(var_p8 / static_cast<double>(n)));
    // the sample stderr itself underestimates the exact one here
    CHECK(p8.stderr_of_mean < std::sqrt(var_p8 / static_cast<double>(n)));
}

TEST_CASE("exact product expectation is confirmed statistically") {
    FamilyTable fam = stein_family(4);
    PQ p24 = fam.poly(2) * fam.poly(4);
    auto mom = moments(normal_product_element(), 12);
    const double exact = expect_against_moments(mom, p24).to_double();
    CHECK(exact == 104.0);
    auto est = estimate_expect_poly(kNormalProduct, as_double(p24), 4000000, 17);
    CHECK(std::fabs(est.mean - exact) <= 4 * est.stderr_of_mean);
}

TEST_CASE("counterexample spectrum: E[P4] vanishes") {
    const double s3 = std::sqrt(3.0), s12 = std::sqrt(12.0);
    const std::vector<double> f8 = {-1.0 / s3, 1.0 / s12, 1.0 / s12};
    auto est = estimate_expect_poly(f8, as_double(stein_family(4).poly(4)), 1000000, 23);
    CHECK(std::fabs(est.mean) <= 4 * est.stderr_of_mean);
}

TEST_CASE("trace along the interpolation family tracks Q4") {
    FamilyTable fam = stein_family(8);
    Poly<double> p8 = as_double(fam.poly(8));
    PQ q4 = mixture_q_poly(4);
    PQ p8sq = fam.poly(8) * fam.poly(8);
    std::vector<std::vector<double>> path;
    std::vector<double> exact, band;
    const long long n = 1000000;
    for (int i = 0; i <= 4; ++i) {
        const double t = i / 4.0;
        path.push_back({0.5 * std::sqrt(t), -0.5 * std::sqrt(t), 0.5 * std::sqrt(1 - t),
                        -0.5 * std::sqrt(1 - t)});
        exact.push_back(q4.eval(Rational(i, 4)).to_double());
        // exact variance of P8(F_t): even moments of F_t are rational in t
        CumulantVector<Rational> cum;
        cum.k.assign(17, Rational(0));
        const Rational tr(i, 4);
        for (int j = 1; 2 * j <= 16; ++j)
            cum.k[2 * j] = (tr.pow(j) + (Rational(1) - tr).pow(j)) * factorial(2 * j - 1);
        auto mom = moments_from_cumulants(cum);
        const double var =
            expect_against_moments(mom, p8sq).to_double() - exact.back() * exact.back();
        band.push_back(4.0 * std::sqrt(var / static_cast<double>(n)));
    }
    auto trace = convergence_trace(path, p8, n, 29);
    REQUIRE(trace.size() == 5);
    for (size_t i = 0; i < trace.size(); ++i) {
        CAPTURE(i);
        CHECK(std::fabs(trace[i].mean - exact[i]) <= band[i]);
    }
    CHECK(exact[4] == 0.0);  // Q4(1) = E[P8(F_inf)] = 0

    // along the same path, E[P6] never dips below the Monte Carlo floor
    Poly<double> p6 = as_double(fam.poly(6));
    auto t6 = convergence_trace(path, p6, 200000, 31);
    for (const auto& e : t6) CHECK(e.mean >= -4 * e.stderr_of_mean);
}

TEST_CASE("calibration across twenty seeds") {
    FamilyTable fam = stein_family(6);
    const long long n = 100000;
    for (int target : {2, 4, 6}) {
        CAPTURE(target);
        Poly<double> p = as_double(fam.poly(target));
        int within = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto e = estimate_expect_poly(kNormalProduct, p, n, seed);
            if (std::fabs(e.mean) <= 4 * e.stderr_of_mean) ++within;
        }
        CHECK(within >= 19);
    }
}

}  // TEST_SUITE
