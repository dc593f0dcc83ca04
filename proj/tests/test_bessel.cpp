#include "npstein/bessel.hpp"

#include "npstein/rational.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

using namespace npstein;

// Exact-rational ascending-series oracle for K0 and K1. All sums run in GMP
// rationals; the only irrational inputs are gamma and the logarithm of x/2,
// supplied as 50-digit decimal literals, so every oracle value is accurate to
// far beyond double precision even under the series' internal cancellation.
Rational decimal(const std::string& digits) {
    // "0.577..." -> rational with a power-of-ten denominator; base must be
    // pinned to 10 or a leading zero in the fraction reads as octal
    const auto dot = digits.find('.');
    std::string whole = digits.substr(0, dot), frac = digits.substr(dot + 1);
    mpz_class den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(mpz_class(whole, 10)) + Rational(mpz_class(frac, 10), den);
}

const Rational kGamma = decimal("0.57721566490153286060651209008240243104215933593992");
const Rational kLn2 = decimal("0.69314718055994530941723212145817656807550013436025");
const Rational kLn3 = decimal("1.09861228866810969139524523692252570464749055782274");
const Rational kLn5 = decimal("1.60943791243410037460075933322618763952560135426851");

struct OraclePoint {
    Rational x;
    Rational log_half_x;  // ln(x/2)
};

// Oracle points are chosen so ln(x/2) is a small integer combination of the
// logarithm literals above.
std::vector<OraclePoint> oracle_points() {
    return {
        {Rational(1, 2), -(kLn2 + kLn2)},            // ln(1/4)
        {Rational(1), -kLn2},                        // ln(1/2)
        {Rational(2), Rational(0)},                  // ln 1
        {Rational(3), kLn3 - kLn2},                  // ln(3/2)
        {Rational(5), kLn5 - kLn2},                  // ln(5/2)
        {Rational(10), kLn5},                        // ln 5
        {Rational(16), kLn2 + kLn2 + kLn2},          // ln 8
    };
}

struct OracleK {
    Rational k0, k1;
};

OracleK oracle_k(const Rational& x, const Rational& log_half_x) {
    const Rational q = x * x / Rational(4);
    Rational i0(1), s0(0);
    Rational u_sum(1);  // sum q^k/(k!(k+1)!)
    Rational w_sum(1);  // sum (H_k + H_{k+1}) q^k/(k!(k+1)!)
    Rational t0(1), t1(1), h(0);
    const Rational cutoff = Rational(1, mpz_class("1" + std::string(60, '0')));
    for (int k = 1; k < 400; ++k) {
        t0 *= q / (Rational(k) * Rational(k));
        t1 *= q / (Rational(k) * Rational(k + 1));
        h += Rational(1, k);
        i0 += t0;
        s0 += t0 * h;
        u_sum += t1;
        w_sum += t1 * (h + h + Rational(1, k + 1));
        if (k > 4 && t0 < cutoff && t1 < cutoff) break;
    }
    const Rational i1 = x / Rational(2) * u_sum;
    OracleK out;
    out.k0 = -(log_half_x + kGamma) * i0 + s0;
    out.k1 = log_half_x * i1 + Rational(1) / x -
             x / Rational(4) * (w_sum - Rational(2) * kGamma * u_sum);
    return out;
}

}  // namespace

TEST_SUITE("bessel-num") {

TEST_CASE("K0/K1 against the exact-rational series oracle") {
    for (const auto& pt : oracle_points()) {
        const double x = pt.x.to_double();
        CAPTURE(x);
        OracleK ref = oracle_k(pt.x, pt.log_half_x);
        const double k0_ref = ref.k0.to_double(), k1_ref = ref.k1.to_double();
        CHECK(std::fabs(bessel_k0(x) - k0_ref) <= 1e-12 * std::fabs(k0_ref));
        CHECK(std::fabs(bessel_k1(x) - k1_ref) <= 1e-12 * std::fabs(k1_ref));
    }
    // the frozen value the oracle produces at x = 1
    CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-12));
}

TEST_CASE("domain errors and the deep-tail underflow") {
    CHECK_THROWS_AS(bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k0(-1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(2, 1.0), std::domain_error);
    CHECK(bessel_k0(800.0) == 0.0);           // e^{-800} underflows
    CHECK(bessel_k0_scaled(800.0) > 0.0);     // the scaled value survives
}

TEST_CASE("small-x asymptotics: K0 ~ -log x") {
    const double x = 1e-8;
    CHECK(bessel_k0(x) / (-std::log(x)) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("large-x asymptotics at x = 50") {
    const double x = 50.0;
    const double ratio = bessel_k0_scaled(x) * std::sqrt(2.0 * x / M_PI);
    // leading-order ratio approaches 1 like 1 - 1/(8x): the deviation at
    // x = 50 is 2.5e-3 by the next asymptotic term, and we pin that too
    CHECK(std::fabs(ratio - 1.0) <= 3e-3);
    CHECK(std::fabs(ratio - (1.0 - 1.0 / (8 * x) + 9.0 / (128 * x * x))) <= 1e-6);
}

TEST_CASE("Wronskian pins the relative accuracy across the range") {
    for (double x : {1e-8, 1e-4, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 7.0, 20.0, 50.0, 120.0,
                     350.0, 700.0}) {
        CAPTURE(x);
        const double w =
            bessel_i0_scaled(x) * bessel_k1_scaled(x) + bessel_i1_scaled(x) * bessel_k0_scaled(x);
        CHECK(std::fabs(x * w - 1.0) <= 1e-12);
    }
}

TEST_CASE("derivative identity K0' = -K1 by central differences") {
    for (double x : {0.5, 1.0, 5.0}) {
        CAPTURE(x);
        auto fd = [&](double h) { return (bessel_k0(x + h) - bessel_k0(x - h)) / (2 * h); };
        const double e1 = std::fabs(fd(1e-3) + bessel_k1(x));
        const double e2 = std::fabs(fd(5e-4) + bessel_k1(x));
        CHECK(e1 < 5e-6);
        // halving the step divides the error by about four (second order)
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.35));
    }
}

TEST_CASE("density model symmetry, positivity, and theta limits") {
    DensityModel dm;
    for (double x : {0.3, 1.0, 4.0, 20.0}) {
        CHECK(dm.pdf(x) > 0.0);
        CHECK(dm.pdf(-x) == dm.pdf(x));
        CHECK(dm.theta(-x) == dm.theta(x));
    }
    CHECK_THROWS_AS(dm.pdf(0.0), std::domain_error);
    CHECK(dm.theta(0.0) == 0.0);
    // theta(x)/x -> 2 from above as x -> infinity
    CHECK(std::fabs(dm.theta(100.0) / 100.0 - 2.0) <= 1e-2);
    // theta decreases to zero near the origin
    CHECK(dm.theta(1e-8) < 0.12);
    CHECK(dm.theta(1e-8) > 0.0);
    CHECK(dm.theta(1e-4) > dm.theta(1e-8));
}

}  // TEST_SUITE
