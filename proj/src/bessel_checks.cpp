#include "npstein/bessel_checks.hpp"

#include "npstein/bessel.hpp"
#include "npstein/family.hpp"

#include <cmath>
#include <stdexcept>

namespace npstein {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

Poly<Rational> even_part(const Poly<Rational>& h) {
    std::vector<Rational> c(h.degree() + 1, Rational(0));
    if (h.is_zero()) return {};
    for (int k = 0; k <= h.degree(); k += 2) c[k] = h.coeff(k);
    return Poly<Rational>(std::move(c));
}

double eval_double(const Poly<Rational>& p, double x) {
    double r = 0.0;
    for (int k = p.degree(); k >= 0; --k) r = r * x + p.coeff(k).to_double();
    return r;
}

}  // namespace

double gamma_half_integer(long two_z) {
    if (two_z <= 0) throw std::domain_error("gamma_half_integer: argument must be positive");
    if (two_z == 1) return kSqrtPi;  // Gamma(1/2)
    if (two_z == 2) return 1.0;      // Gamma(1)
    return 0.5 * (two_z - 2) * gamma_half_integer(two_z - 2);
}

IntegralFormulaResult check_integral_formula(long two_mu, int nu, const QuadratureConfig& cfg) {
    if (nu != 0 && nu != 1) throw std::domain_error("check_integral_formula: nu must be 0 or 1");
    // The Gamma arguments (1 + mu ± nu)/2 must be in the half-integer lattice
    // reached from Gamma(1) and Gamma(1/2), which forces mu integral here.
    if (two_mu % 2 != 0)
        throw std::domain_error(
            "check_integral_formula: mu must be integral for the Gamma recurrence");
    const long mu_i = two_mu / 2;
    // Convergence region mu + 1 ± nu > 0.
    if (mu_i + 1 - nu <= 0 || mu_i + 1 + nu <= 0)
        throw std::domain_error("check_integral_formula: (mu, nu) outside the convergence region");

    const double mu = 0.5 * two_mu;
    IntegralFormulaResult r;
    r.closed_form = std::pow(2.0, mu - 1.0) * gamma_half_integer(1 + mu_i + nu) *
                    gamma_half_integer(1 + mu_i - nu);
    r.numeric = quad_semiinf(
        [&](double x) {
            const double k = bessel_k(nu, x);
            return k == 0.0 ? 0.0 : std::pow(x, mu) * k;
        },
        cfg);
    r.residual = std::fabs(r.numeric - r.closed_form);
    return r;
}

double expect_under_density(const Poly<Rational>& h, const QuadratureConfig& cfg) {
    Poly<Rational> he = even_part(h);
    if (he.is_zero()) return 0.0;
    // evaluate the Bessel factor first: once it underflows to zero the
    // polynomial factor must not be formed (it may overflow)
    const double val = quad_semiinf(
        [&](double x) {
            const double k0 = bessel_k0(x);
            return k0 == 0.0 ? 0.0 : eval_double(he, x) * k0;
        },
        cfg);
    return 2.0 / kPi * val;
}

double expect_theta_weighted(const Poly<Rational>& h, const QuadratureConfig& cfg) {
    Poly<Rational> he = even_part(h);
    if (he.is_zero()) return 0.0;
    const double val = quad_semiinf(
        [&](double x) {
            const double k1 = bessel_k1(x);
            return k1 == 0.0 ? 0.0 : eval_double(he, x) * x * k1;
        },
        cfg);
    return 4.0 / kPi * val;
}

AdjointCheck adjoint_residual(const Poly<Rational>& f, const Poly<Rational>& g,
                              const QuadratureConfig& cfg) {
    DiffOp<Rational> R = stein_operator();
    AdjointCheck out;
    out.lhs = expect_under_density(R.apply(f) * g, cfg);
    // R* g = R g + theta g' - x g: the theta part needs the K1 weight.
    Poly<Rational> rg = R.apply(g) - Poly<Rational>::variable() * g;
    out.rhs = expect_under_density(f * rg, cfg) + expect_theta_weighted(f * g.derivative(), cfg);
    out.residual = std::fabs(out.lhs - out.rhs);
    return out;
}

}  // namespace npstein
