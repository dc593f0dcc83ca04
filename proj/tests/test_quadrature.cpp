#include "npstein/quadrature.hpp"

#include "npstein/bessel.hpp"
#include "npstein/bessel_checks.hpp"
#include "npstein/family.hpp"
#include "npstein/spectral.hpp"

#include <doctest.h>

#include <cmath>

namespace {
using namespace npstein;
using PQ = Poly<Rational>;
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("quadrature") {

TEST_CASE("elementary integrals") {
    QuadratureConfig cfg;
    CHECK(integrate_exp_sinh([](double x) { return std::exp(-x); }, 0.0, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_tanh_sinh([](double x) { return x * x; }, 0.0, 1.0, cfg) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));
    // logarithmic endpoint singularity
    CHECK(integrate_tanh_sinh([](double x) { return -std::log(x); }, 0.0, 1.0, cfg) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // square-root endpoint singularity
    CHECK(integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg) ==
          doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("semi-infinite Bessel integrals") {
    QuadratureConfig cfg;
    const double ik0 = quad_semiinf([](double x) { return bessel_k0(x); }, cfg);
    CHECK(std::fabs(ik0 - kPi / 2) <= 1e-10);
    const double m4 = 2.0 / kPi * quad_semiinf(
                                      [](double x) {
                                          const double k = bessel_k0(x);
                                          return k == 0.0 ? 0.0 : std::pow(x, 4) * k;
                                      },
                                      cfg);
    CHECK(std::fabs(m4 - 9.0) <= 1e-8);
}

TEST_CASE("non-convergence is an explicit failure") {
    QuadratureConfig cfg;
    cfg.max_refinements = 8;
    CHECK_THROWS_AS(integrate_exp_sinh([](double x) { return 1.0 / (1.0 + x); }, 0.0, cfg),
                    QuadratureError);
}

TEST_CASE("density normalization and quadrature moments") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    CHECK(std::fabs(expect_under_density(PQ(1), cfg) - 1.0) <= 1e-10);
    for (int n = 1; n <= 4; ++n) {
        const double target = (odd_double_factorial(n) * odd_double_factorial(n)).to_double();
        const double got = expect_under_density(PQ::monomial(2 * n), cfg);
        CHECK(std::fabs(got - target) <= 1e-7 * target);
    }
}

TEST_CASE("quadrature cross-validates the exact family expectations") {
    QuadratureConfig cfg;
    FamilyTable fam = stein_family(10);
    for (int n = 1; n <= 10; ++n) {
        CAPTURE(n);
        CHECK(std::fabs(expect_under_density(fam.poly(n), cfg)) <= 1e-7);
    }
    // and a deliberately nonzero one
    auto mom = moments(normal_product_element(), 12);
    const PQ p24 = fam.poly(2) * fam.poly(4);
    const double exact = expect_against_moments(mom, p24).to_double();
    CHECK(expect_under_density(p24, cfg) == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("closed-form integral formula") {
    auto r = check_integral_formula(4, 0);  // mu = 2, nu = 0
    CHECK(r.closed_form == doctest::Approx(kPi / 2));
    CHECK(r.residual <= 1e-8);
    auto r11 = check_integral_formula(2, 1);  // mu = 1, nu = 1
    CHECK(r11.closed_form == doctest::Approx(kPi / 2));
    auto r31 = check_integral_formula(6, 1);  // mu = 3, nu = 1
    CHECK(r31.closed_form == doctest::Approx(3 * kPi / 2));
    CHECK(r31.residual <= 1e-8);
    // divergent corner (mu, nu) = (0, 1) is refused
    CHECK_THROWS_AS(check_integral_formula(0, 1), std::domain_error);
    CHECK_THROWS_AS(check_integral_formula(1, 0), std::domain_error);  // half-integer mu
    CHECK(gamma_half_integer(1) == doctest::Approx(std::sqrt(kPi)));
    CHECK(gamma_half_integer(8) == doctest::Approx(6.0));  // Gamma(4)
}

TEST_CASE("adjoint operator residuals") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-13;
    auto trivial = adjoint_residual(PQ(1), PQ(1), cfg);
    CHECK(std::fabs(trivial.lhs) <= 1e-10);
    CHECK(std::fabs(trivial.rhs) <= 1e-10);
    auto fx = adjoint_residual(PQ::variable(), PQ(1), cfg);
    CHECK(std::fabs(fx.lhs) <= 1e-10);  // E[P2] = 0
    double worst = 0.0;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            worst = std::max(worst,
                             adjoint_residual(PQ::monomial(i), PQ::monomial(j), cfg).residual);
    CHECK(worst <= 1e-6);
    // degree-6 inputs stay within the precondition and still agree well
    auto big = adjoint_residual(PQ::monomial(6), PQ::monomial(5), cfg);
    CHECK(big.residual <= 1e-4 * std::max(1.0, std::fabs(big.lhs)));
}

}  // TEST_SUITE
