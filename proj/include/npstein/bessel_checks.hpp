// Numerical verification layer over K0/K1 and the density: closed-form
// integral cross-checks, polynomial expectations under the normal product
// density, and the adjoint-operator residual test.
#pragma once

#include "npstein/poly.hpp"
#include "npstein/quadrature.hpp"

namespace npstein {

// Gamma at positive integer or half-integer arguments, from the recurrence
// seeded by Gamma(1) = 1, Gamma(1/2) = sqrt(pi). `two_z` is 2z.
double gamma_half_integer(long two_z);

struct IntegralFormulaResult {
    double numeric;      // ∫_0^∞ x^mu K_nu(x) dx by quadrature
    double closed_form;  // 2^{mu-1} Gamma((1+mu+nu)/2) Gamma((1+mu-nu)/2)
    double residual;     // |numeric - closed_form|
};

// mu is a half-integer given as 2*mu; requires mu + 1 > |nu| (convergence).
IntegralFormulaResult check_integral_formula(long two_mu, int nu,
                                             const QuadratureConfig& cfg = {});

// E[h(F)] for the normal product F, via (2/pi) ∫_0^∞ h_even(x) K0(x) dx.
double expect_under_density(const Poly<Rational>& h, const QuadratureConfig& cfg = {});

// E[h(F) theta(F)] via (4/pi) ∫_0^∞ h_even(x) x K1(x) dx.
double expect_theta_weighted(const Poly<Rational>& h, const QuadratureConfig& cfg = {});

struct AdjointCheck {
    double lhs;       // E[(R f)(F) g(F)]
    double rhs;       // E[f(F) (R* g)(F)], R* g = R g + theta g' - x g
    double residual;  // |lhs - rhs|
};

AdjointCheck adjoint_residual(const Poly<Rational>& f, const Poly<Rational>& g,
                              const QuadratureConfig& cfg = {});

}  // namespace npstein
