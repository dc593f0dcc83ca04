#include "npstein/sturm.hpp"

#include "npstein/spectral.hpp"

#include <doctest.h>

#include <random>
#include <set>

namespace {

using namespace npstein;
using PQ = Poly<Rational>;

// Brute-force count for polynomials with simple rational roots: walk the
// interval in 10^4 steps, counting sign flips and exact hits on the grid.
int scan_count(const PQ& p, const Rational& lo, const Rational& hi) {
    const int steps = 10000;
    int count = 0;
    int prev_sign = p.eval(lo).sign();
    for (int i = 1; i <= steps; ++i) {
        Rational x = lo + (hi - lo) * Rational(i, steps);
        int s = p.eval(x).sign();
        if (s == 0) {
            if (x != hi) ++count;
        } else if (prev_sign != 0 && s != prev_sign) {
            ++count;
        }
        prev_sign = s;
    }
    return count;
}

// Product of (den*x - num) factors: all roots rational and known.
PQ poly_with_roots(const std::vector<Rational>& roots) {
    PQ p(1);
    for (const auto& r : roots)
        p *= PQ({Rational(-r.numerator()), Rational(r.denominator())});
    return p;
}

}  // namespace

TEST_SUITE("roots") {

TEST_CASE("sturm counts on fixed examples") {
    PQ x2m2({Rational(-2), Rational(0), Rational(1)});
    CHECK(sturm_count(x2m2, Rational(0), Rational(2)) == 1);
    CHECK(sturm_count(x2m2, Rational(-2), Rational(2)) == 2);
    PQ p2({Rational(-1), Rational(0), Rational(1)});
    CHECK(sturm_count(p2, Rational(-2), Rational(2)) == 2);
    // endpoint roots are excluded when open, included when closed
    CHECK(sturm_count(p2, Rational(-1), Rational(1), true) == 0);
    CHECK(sturm_count(p2, Rational(-1), Rational(1), false) == 2);
    CHECK_THROWS_AS(sturm_count(PQ(), Rational(0), Rational(1)), std::invalid_argument);
}

TEST_CASE("multiple roots count once") {
    PQ dbl = poly_with_roots({Rational(1, 2), Rational(1, 2), Rational(1, 3)});
    CHECK(sturm_count(dbl, Rational(0), Rational(1)) == 2);
    auto iv = isolate_roots(dbl, Rational(0), Rational(1));
    CHECK(iv.size() == 2);
}

TEST_CASE("mixture polynomials on the unit interval") {
    CHECK(sturm_count(mixture_q_poly(4), Rational(0), Rational(1)) == 0);
    for (int n = 5; n <= 7; ++n) {
        CAPTURE(n);
        CHECK(sturm_count(mixture_q_poly(n), Rational(0), Rational(1)) >= 1);
        CHECK(!isolate_roots(mixture_q_poly(n), Rational(0), Rational(1)).empty());
    }
}

TEST_CASE("sturm count against brute-force scanning") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> deg(1, 6), num(-8, 8), den(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        // distinct roots only: the scan oracle can only see simple crossings
        std::set<Rational> distinct;
        const int d = deg(rng);
        while (static_cast<int>(distinct.size()) < d) distinct.insert(Rational(num(rng), den(rng)));
        std::vector<Rational> roots(distinct.begin(), distinct.end());
        PQ p = poly_with_roots(roots);
        const Rational lo(-10), hi(10);
        const int expected = static_cast<int>(roots.size());
        CHECK(sturm_count(p, lo, hi) == expected);
        CHECK(scan_count(p, lo, hi) == expected);
    }
}

TEST_CASE("sign changes of coefficient lists") {
    CHECK(sign_changes({Rational(-4032), Rational(19152), Rational(-30240), Rational(15120)}) ==
          3);
    CHECK(sign_changes({Rational(1), Rational(2), Rational(3)}) == 0);
    CHECK(sign_changes({Rational(1), Rational(0), Rational(-1)}) == 1);
    CHECK(sign_changes({}) == 0);
}

TEST_CASE("Budan-Fourier bound dominates with matching parity") {
    PQ x2m2({Rational(-2), Rational(0), Rational(1)});
    CHECK(budan_fourier_count(x2m2, Rational(0), Rational(2)) == 1);

    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> deg(1, 5), num(-8, 8), den(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> roots(deg(rng));
        for (auto& r : roots) r = Rational(num(rng), den(rng));
        PQ p = poly_with_roots(roots);
        // pick endpoints that are not roots
        const Rational lo(-171, 17), hi(171, 17);
        const int sturm = sturm_count(p, lo, hi);
        const int bf = budan_fourier_count(p, lo, hi);
        CHECK(bf >= sturm);
        // Budan-Fourier counts with multiplicity; parity matches that count
        int with_mult = 0;
        for (const auto& r : roots)
            if (lo < r && r < hi) ++with_mult;
        CHECK((bf - with_mult) % 2 == 0);
    }
}

TEST_CASE("isolating intervals are disjoint, tight, and complete") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> deg(1, 6), num(-8, 8), den(1, 6);
    const Rational eps(1, 65536);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> roots(deg(rng));
        for (auto& r : roots) r = Rational(num(rng), den(rng));
        PQ p = poly_with_roots(roots);
        const Rational lo(-10), hi(10);
        auto ivs = isolate_roots(p, lo, hi, eps);
        CHECK(static_cast<int>(ivs.size()) == sturm_count(p, lo, hi));
        for (size_t i = 0; i < ivs.size(); ++i) {
            CHECK(ivs[i].lo < ivs[i].hi);
            CHECK(ivs[i].hi - ivs[i].lo <= eps);
            CHECK(sturm_count(p, ivs[i].lo, ivs[i].hi, false) == 1);
            if (i > 0) CHECK(ivs[i - 1].hi <= ivs[i].lo);
        }
        // every root is covered by some interval
        std::set<Rational> distinct(roots.begin(), roots.end());
        for (const auto& r : distinct) {
            if (!(lo < r && r < hi)) continue;
            bool covered = false;
            for (const auto& iv : ivs) covered = covered || (iv.lo <= r && r <= iv.hi);
            CHECK(covered);
        }
    }
}

TEST_CASE("isolation on irrational roots") {
    PQ x2m2({Rational(-2), Rational(0), Rational(1)});
    auto ivs = isolate_roots(x2m2, Rational(0), Rational(2));
    REQUIRE(ivs.size() == 1);
    CHECK(ivs[0].lo.to_double() < 1.4142135624);
    CHECK(ivs[0].hi.to_double() > 1.4142135623);
    CHECK((ivs[0].hi - ivs[0].lo) <= Rational(1, 65536));
}

}  // TEST_SUITE
