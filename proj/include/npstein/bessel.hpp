// Modified Bessel functions K0, K1 (and the I0, I1 companions used for
// cross-checks), plus the normal product density p(x) = K0(|x|)/pi and the
// conditional-second-moment function theta(x) = 2|x| K1(|x|)/K0(|x|).
#pragma once

namespace npstein {

// K_nu(x) for nu in {0,1}, x > 0. Ascending series for x <= 2, continued
// fraction (scaled by e^x) for x > 2; relative error <= 1e-12 on
// [1e-8, 700]. Underflows to 0 once e^{-x} leaves the double range
// (x > ~745); throws std::domain_error for x <= 0 or nu outside {0,1}.
double bessel_k(int nu, double x);
double bessel_k0(double x);
double bessel_k1(double x);

// e^x K_nu(x), usable through x ~ 1e5 without underflow.
double bessel_k0_scaled(double x);
double bessel_k1_scaled(double x);

double bessel_i0(double x);
double bessel_i1(double x);
// e^{-x} I_nu(x)
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

// Density and theta of the normal product law.
struct DensityModel {
    // p(x) = K0(|x|)/pi, x != 0
    double pdf(double x) const;
    // theta(x) = 2|x| K1(|x|)/K0(|x|), theta(0) = 0
    double theta(double x) const;
};

}  // namespace npstein
