#include "npstein/quadrature.hpp"

#include <cmath>
#include <string>

namespace npstein {
namespace {

constexpr double kHalfPi = 1.57079632679489661923132169163975144;

// Level-doubling driver shared by both transforms. row(h, from, step) must
// return the plain node sum at parameters t = k*h, k = from, from+step, ...
template <class Row>
double refine(Row row, const QuadratureConfig& cfg, const char* what) {
    double h = 1.0;
    double acc = row(h, 0, 1) * h;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        h *= 0.5;
        const double refined = 0.5 * acc + row(h, 1, 2) * h;
        const double err = std::fabs(refined - acc);
        acc = refined;
        if (level >= 2 && std::isfinite(acc) &&
            err <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(acc)))
            return acc;
    }
    throw QuadratureError(std::string(what) + ": no convergence within max_refinements");
}

}  // namespace

double integrate_tanh_sinh(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
    if (!(a < b)) throw QuadratureError("integrate_tanh_sinh: needs a < b");
    const double halfwidth = 0.5 * (b - a);
    const double center = 0.5 * (a + b);

    // x = center + halfwidth*tanh(u), u = (pi/2) sinh t. The offset from the
    // nearer endpoint, halfwidth*(1 - |tanh u|), is formed without cancellation.
    auto row = [&](double h, int from, int step) {
        double sum = 0.0;
        int dead = 0;
        for (int k = from;; k += step) {
            const double t = k * h;
            const double u = kHalfPi * std::sinh(t);
            if (u > 350.0) break;  // node weight underflows from here on
            const double e = std::exp(-2.0 * u);
            const double one_minus = 2.0 * e / (1.0 + e);
            const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
            const double w = halfwidth * kHalfPi * std::cosh(t) * sech2;
            double term;
            if (k == 0) {
                term = f(center) * w;
            } else {
                const double off = halfwidth * one_minus;
                term = (f(a + off) + f(b - off)) * w;
            }
            sum += term;
            if (k > 0 && std::fabs(term) < 1e-320) {
                if (++dead >= 3) break;
            } else {
                dead = 0;
            }
        }
        return sum;
    };
    return refine(row, cfg, "integrate_tanh_sinh");
}

double integrate_exp_sinh(const Integrand& f, double a, const QuadratureConfig& cfg) {
    // x = a + e^u, u = (pi/2) sinh t, weight (pi/2) cosh(t) e^u.
    auto row = [&](double h, int from, int step) {
        double sum = 0.0;
        // t >= 0: x marches to infinity; rely on the decay of f.
        {
            int dead = 0;
            for (int k = from;; k += step) {
                const double u = kHalfPi * std::sinh(k * h);
                if (u > 700.0) break;
                const double w = kHalfPi * std::cosh(k * h) * std::exp(u);
                const double fx = f(a + std::exp(u));
                const double term = fx == 0.0 ? 0.0 : fx * w;
                sum += term;
                if (std::fabs(term) < 1e-320) {
                    if (++dead >= 3 && k * h > 1.0) break;
                } else {
                    dead = 0;
                }
            }
        }
        // t < 0: x -> a from above, weight dies double-exponentially.
        {
            const int neg_from = (from == 0) ? 1 : from;
            for (int k = neg_from;; k += step) {
                const double t = -k * h;
                const double u = kHalfPi * std::sinh(t);
                const double eu = std::exp(u);
                if (eu < 1e-305) break;
                const double w = kHalfPi * std::cosh(t) * eu;
                const double term = f(a + eu) * w;
                sum += term;
                if (std::fabs(term) < 1e-320 && k * h > 1.0) break;
            }
        }
        return sum;
    };
    return refine(row, cfg, "integrate_exp_sinh");
}

double quad_semiinf(const Integrand& f, const QuadratureConfig& cfg) {
    const double split = cfg.split > 0 ? cfg.split : 1.0;
    QuadratureConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    half.rel_tol = 0.5 * cfg.rel_tol;
    return integrate_tanh_sinh(f, 0.0, split, half) + integrate_exp_sinh(f, split, half);
}

}  // namespace npstein
