// Double-exponential quadrature: tanh-sinh on finite intervals (endpoint
// singularities up to logarithmic strength are fine) and exp-sinh on
//semi-infinite tails, with level-doubling refinement and explicit failure on
// non-convergence.
#pragma once

#include <functional>
#include <stdexcept>

namespace npstein {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_refinements = 12;
    double split = 1.0;  // boundary between the singular region and the tail
};

using Integrand = std::function<double(double)>;

// ∫_a^b f, tanh-sinh transform.
double integrate_tanh_sinh(const Integrand& f, double a, double b,
                           const QuadratureConfig& cfg = {});

// ∫_a^∞ f, exp-sinh transform; f must decay (at least like an integrable
// power with exponential tail) as x → ∞.
double integrate_exp_sinh(const Integrand& f, double a, const QuadratureConfig& cfg = {});

// ∫_0^∞ f with at worst a logarithmic singularity at 0: tanh-sinh on
// (0, split] plus exp-sinh on [split, ∞).
double quad_semiinf(const Integrand& f, const QuadratureConfig& cfg = {});

}  // namespace npstein
