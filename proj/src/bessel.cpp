#include "npstein/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace npstein {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kPi = 3.14159265358979323846264338327950288;

struct KPair {
    double k0, k1;
};

// Ascending series, x <= 2 (A&S 9.6.10-9.6.13):
//   K0 = -(log(x/2) + gamma) I0 + sum_{k>=1} H_k q^k/(k!)^2
//   K1 = log(x/2) I1 + 1/x - (x/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) q^k/(k!(k+1)!)
// with q = x^2/4.
KPair k_series(double x) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x);

    double i0 = 1.0, s0 = 0.0;
    double i1sum = 1.0;  // sum q^k/(k!(k+1)!), k = 0 term
    double s1 = 1.0;     // (H_0 + H_1) q^0/(0!1!) = 1
    double t0 = 1.0, t1 = 1.0, h = 0.0;
    for (int k = 1; k < 40; ++k) {
        t0 *= q / (static_cast<double>(k) * k);
        t1 *= q / (static_cast<double>(k) * (k + 1));
        h += 1.0 / k;
        i0 += t0;
        s0 += t0 * h;
        i1sum += t1;
        s1 += t1 * (2.0 * h + 1.0 / (k + 1));
        if (t0 < 1e-18 * i0 && k > 3) break;
    }
    const double i1 = 0.5 * x * i1sum;
    KPair out;
    out.k0 = -(lg + kEulerGamma) * i0 + s0;
    out.k1 = lg * i1 + 1.0 / x - 0.25 * x * (s1 - 2.0 * kEulerGamma * i1sum);
    return out;
}

// Steed/Thompson-Barnett continued fraction (Temme's CF2) for x > 2, order
// mu = 0: returns e^x K0 and e^x K1 simultaneously.
KPair k_continued_fraction(double x) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 40000;
    const double a1 = 0.25;  // 1/4 - mu^2 with mu = 0

    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= max_iter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= eps) {
            h = a1 * h;
            KPair out;
            out.k0 = std::sqrt(kPi / (2.0 * x)) / s;       // e^x K0
            out.k1 = out.k0 * (0.5 + x - h) / x;           // e^x K1
            return out;
        }
    }
    throw std::runtime_error("bessel_k: continued fraction failed to converge");
}

KPair k_scaled(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
    if (x <= 2.0) {
        KPair p = k_series(x);
        const double e = std::exp(x);
        return {p.k0 * e, p.k1 * e};
    }
    return k_continued_fraction(x);
}

}  // namespace

double bessel_k0_scaled(double x) { return k_scaled(x).k0; }
double bessel_k1_scaled(double x) { return k_scaled(x).k1; }

double bessel_k0(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
    if (x <= 2.0) return k_series(x).k0;
    if (x > 746.0) return 0.0;  // e^{-x} underflows even subnormally
    return k_continued_fraction(x).k0 * std::exp(-x);
}

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
    if (x <= 2.0) return k_series(x).k1;
    if (x > 746.0) return 0.0;
    return k_continued_fraction(x).k1 * std::exp(-x);
}

double bessel_k(int nu, double x) {
    if (nu == 0) return bessel_k0(x);
    if (nu == 1) return bessel_k1(x);
    throw std::domain_error("bessel_k: order must be 0 or 1");
}

double bessel_i0(double x) {
    x = std::fabs(x);
    const double q = 0.25 * x * x;
    double sum = 1.0, t = 1.0;
    for (int k = 1; k < 1000; ++k) {
        t *= q / (static_cast<double>(k) * k);
        sum += t;
        if (t < 1e-17 * sum) break;
    }
    return sum;
}

double bessel_i1(double x) {
    const double q = 0.25 * x * x;
    double sum = 1.0, t = 1.0;
    for (int k = 1; k < 1000; ++k) {
        t *= q / (static_cast<double>(k) * (k + 1));
        sum += t;
        if (t < 1e-17 * sum) break;
    }
    return 0.5 * x * sum;
}

double bessel_i0_scaled(double x) { return bessel_i0(x) * std::exp(-std::fabs(x)); }
double bessel_i1_scaled(double x) { return bessel_i1(x) * std::exp(-std::fabs(x)); }

double DensityModel::pdf(double x) const {
    if (x == 0.0) throw std::domain_error("DensityModel: density is singular at 0");
    return bessel_k0(std::fabs(x)) / kPi;
}

double DensityModel::theta(double x) const {
    if (x == 0.0) return 0.0;
    const double ax = std::fabs(x);
    // scaled ratio avoids the e^{-x} underflow for large |x|
    return 2.0 * ax * bessel_k1_scaled(ax) / bessel_k0_scaled(ax);
}

}  // namespace npstein
