// Exact distributional calculus for second-chaos elements
// F = Σ λ_k (N_k² - 1): cumulants and moments from spectral power sums,
// polynomial expectations, the order-d Stein operator synthesis, and the
// convergence diagnostics built on P₆, the even moments and the mixture
// polynomials Q_n.
#pragma once

#include "npstein/family.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace npstein {

template <class T>
class SpectralElement {
public:
    static SpectralElement from_lambdas(std::vector<T> lambdas) {
        SpectralElement e;
        e.lambdas_ = std::move(lambdas);
        return e;
    }

    // p[i] = power sum of order i+1
    static SpectralElement from_power_sums(std::vector<T> power_sums) {
        SpectralElement e;
        e.power_sums_ = std::move(power_sums);
        return e;
    }

    bool has_lambdas() const { return lambdas_.has_value(); }

    const std::vector<T>& lambdas() const {
        if (!lambdas_) throw std::domain_error("SpectralElement: no spectral coefficients stored");
        return *lambdas_;
    }

    // -1 means unbounded (lambdas available)
    int max_order() const {
        return lambdas_ ? -1 : static_cast<int>(power_sums_.size());
    }

    // p_r = Σ_k λ_k^r
    T power_sum(int r) const {
        if (r < 1) throw std::invalid_argument("SpectralElement: power sum order must be >= 1");
        if (lambdas_) {
            T acc(0);
            for (const T& l : *lambdas_) acc = acc + power(l, r);
            return acc;
        }
        if (r > static_cast<int>(power_sums_.size()))
            throw std::out_of_range("SpectralElement: power sums available only to order " +
                                    std::to_string(power_sums_.size()));
        return power_sums_[r - 1];
    }

    const std::vector<T>& stored_power_sums() const { return power_sums_; }

private:
    std::optional<std::vector<T>> lambdas_;
    std::vector<T> power_sums_;

    static T power(const T& x, int r) {
        T acc(1);
        for (int i = 0; i < r; ++i) acc = acc * x;
        return acc;
    }
};

// kappa(r) valid for 1 <= r <= order
template <class T>
struct CumulantVector {
    std::vector<T> k;  // k[r] = κ_r, k[0] unused
    int order() const { return static_cast<int>(k.size()) - 1; }
    const T& kappa(int r) const {
        if (r < 1 || r > order()) throw std::out_of_range("CumulantVector: order out of range");
        return k[r];
    }
};

// moment(r) valid for 0 <= r <= order, moment(0) = 1
template <class T>
struct MomentVector {
    std::vector<T> m;  // m[r]
    int order() const { return static_cast<int>(m.size()) - 1; }
    const T& moment(int r) const {
        if (r < 0 || r > order()) throw std::out_of_range("MomentVector: order out of range");
        return m[r];
    }
};

// κ_1 = 0 and κ_r = 2^{r-1} (r-1)! p_r for r >= 2, from the log-MGF of
// λ(N²-1): -½ log(1-2λt) - λt.
template <class T>
CumulantVector<T> cumulants(const SpectralElement<T>& e, int n_max) {
    if (n_max < 1) throw std::invalid_argument("cumulants: order must be >= 1");
    CumulantVector<T> c;
    c.k.assign(n_max + 1, T(0));
    for (int r = 2; r <= n_max; ++r)
        c.k[r] = from_rational<T>(pow2(r - 1) * factorial(r - 1)) * e.power_sum(r);
    return c;
}

// m_n = Σ_{r=1}^{n} C(n-1, r-1) κ_r m_{n-r}; works over any commutative ring
// containing the rationals.
template <class T>
MomentVector<T> moments_from_cumulants(const CumulantVector<T>& c) {
    MomentVector<T> m;
    m.m.assign(c.order() + 1, T(0));
    m.m[0] = T(1);
    for (int n = 1; n <= c.order(); ++n) {
        T acc(0);
        for (int r = 1; r <= n; ++r)
            acc = acc + from_rational<T>(binomial(n - 1, r - 1)) * c.k[r] * m.m[n - r];
        m.m[n] = acc;
    }
    return m;
}

// Inverse map of moments_from_cumulants.
template <class T>
CumulantVector<T> cumulants_from_moments(const MomentVector<T>& m) {
    CumulantVector<T> c;
    c.k.assign(m.order() + 1, T(0));
    for (int n = 1; n <= m.order(); ++n) {
        T acc = m.m[n];
        for (int r = 1; r <= n - 1; ++r)
            acc = acc - from_rational<T>(binomial(n - 1, r - 1)) * c.k[r] * m.m[n - r];
        c.k[n] = acc;
    }
    return c;
}

template <class T>
MomentVector<T> moments(const SpectralElement<T>& e, int n_max) {
    return moments_from_cumulants(cumulants(e, n_max));
}

template <class T>
T expect_against_moments(const MomentVector<T>& m, const Poly<T>& p) {
    if (p.degree() > m.order())
        throw std::out_of_range("expect_against_moments: moments available only to order " +
                                std::to_string(m.order()));
    T acc(0);
    for (int k = 0; k <= p.degree(); ++k) acc = acc + p.coeff(k) * m.moment(k);
    return acc;
}

// E[p(F)] for the element F, exactly.
template <class T>
T expect_poly(const SpectralElement<T>& e, const Poly<T>& p) {
    if (p.is_zero()) return T(0);
    return expect_against_moments(moments(e, std::max(1, p.degree())), p);
}

// Standard Gaussian moments m_{2k} = (2k-1)!!.
inline MomentVector<Rational> gaussian_moments(int n_max) {
    MomentVector<Rational> m;
    m.m.assign(n_max + 1, Rational(0));
    for (int k = 0; 2 * k <= n_max; ++k) m.m[2 * k] = odd_double_factorial(k);
    return m;
}

// The normal product law N₁·N₂ as a spectral element: λ = (1/2, -1/2).
inline SpectralElement<Rational> normal_product_element() {
    return SpectralElement<Rational>::from_lambdas({Rational(1, 2), Rational(-1, 2)});
}

// λ = (-1/√3, 1/√12, 1/√12) in Q(√3): the smallest element known with
// E[P₄] = E[P₈] = 0 but a law different from the normal product.
inline SpectralElement<QuadRational> counterexample_element() {
    QuadRational l1(Rational(0), Rational(-1, 3), 3);  // -√3/3 = -1/√3
    QuadRational l2(Rational(0), Rational(1, 6), 3);   //  √3/6 =  1/√12
    return SpectralElement<QuadRational>::from_lambdas({l1, l2, l2});
}

// --- P₆ / even-moment diagnostics -------------------------------------------

template <class T>
struct DiagnosticReport {
    T kappa2_raw;             // κ₂ before normalization
    bool normalized = false;  // true if λ ↦ λ/√κ₂ was applied
    std::optional<T> kappa3;  // exact normalized κ₃ when representable in T
    int kappa3_sign = 0;      // sign of κ₃ (normalization preserves it)
    T kappa3_sq;              // normalized κ₃², always exact
    T delta_prime;            // κ₆/5! - 2 κ₄/3! + κ₂ of the normalized element
    T expect_p6;              // E[P₆(F)] = 5! Δ' + 10 κ₃²
    T identity_residual;      // expect_p6 - 5! Δ' - 10 κ₃², zero in exact mode
    double bound;             // √(E[P₆]), Wasserstein-2 bound modulo an unknown constant
    std::vector<std::pair<int, T>> even_moment_gaps;  // (k, m_{2k} - (2k-1)!!)
};

struct DiagnosticOptions {
    bool auto_normalize = true;
    std::vector<int> even_gap_orders = {2, 3, 4};
};

template <class T>
DiagnosticReport<T> p6_diagnostic(const SpectralElement<T>& e,
                                  const DiagnosticOptions& opt = {}) {
    DiagnosticReport<T> rep;
    T kappa2 = T(2) * e.power_sum(2);
    rep.kappa2_raw = kappa2;
    if (kappa2 == T(0)) throw std::domain_error("p6_diagnostic: element has zero variance");

    int max_gap = 3;
    for (int k : opt.even_gap_orders) max_gap = std::max(max_gap, k);
    int need = std::max(6, 2 * max_gap);

    MomentVector<T> raw = moments(e, need);
    CumulantVector<T> cum = cumulants(e, 6);

    bool unit_variance = (kappa2 == T(1));
    if (!unit_variance && !opt.auto_normalize)
        throw std::domain_error("p6_diagnostic: κ₂ != 1 and auto-normalization is disabled");
    rep.normalized = !unit_variance;

    // Normalized even moments m_{2j}/κ₂^j and cumulants κ_r/κ₂^{r/2}: only
    // integer powers of κ₂ enter, so every report field stays in the field T.
    auto kpow = [&](int j) {
        T acc(1);
        for (int i = 0; i < j; ++i) acc = acc * kappa2;
        return acc;
    };
    T k3 = cum.kappa(3);
    rep.kappa3_sign = scalar_sign(k3);
    rep.kappa3_sq = (k3 * k3) / kpow(3);
    T k4n = cum.kappa(4) / kpow(2);
    T k6n = cum.kappa(6) / kpow(3);
    rep.delta_prime = k6n * from_rational<T>(Rational(1, 120)) -
                      k4n * from_rational<T>(Rational(1, 3)) + T(1);

    T m2n = raw.moment(2) / kpow(1);  // = 1
    T m4n = raw.moment(4) / kpow(2);
    T m6n = raw.moment(6) / kpow(3);
    rep.expect_p6 = m6n - T(55) * m4n + T(331) * m2n - T(61);
    rep.identity_residual =
        rep.expect_p6 - T(120) * rep.delta_prime - T(10) * rep.kappa3_sq;

    if (auto c = scalar_sqrt(kappa2)) rep.kappa3 = k3 / (*c * *c * *c);

    double p6 = scalar_to_double(rep.expect_p6);
    rep.bound = p6 > 0 ? std::sqrt(p6) : 0.0;

    for (int k : opt.even_gap_orders) {
        T gap = raw.moment(2 * k) / kpow(k) - from_rational<T>(odd_double_factorial(k));
        rep.even_moment_gaps.emplace_back(k, gap);
    }
    return rep;
}

// Signed gap m_{2k} - (2k-1)!! together with E[W_k(F)] computed against the
// same moment vector (the Q≥0-family connection).
template <class T>
struct EvenMomentDiagnostic {
    T gap;
    T w_expectation;
};

template <class T>
EvenMomentDiagnostic<T> even_moment_diagnostic(const MomentVector<T>& m, int k) {
    if (k < 2) throw std::invalid_argument("even_moment_diagnostic: needs k >= 2");
    EvenMomentDiagnostic<T> d;
    d.gap = m.moment(2 * k) - from_rational<T>(odd_double_factorial(k));
    d.w_expectation = expect_against_moments(m, promote_poly<T>(w_poly(k)));
    return d;
}

// Q_n(t) = E[P_{2n}(√t F∞ + √(1-t) G∞)] as an exact polynomial in t, via
// κ_r(F_t) = (t^{r/2} + (1-t)^{r/2}) κ_r(F∞) and the vanishing odd cumulants.
inline Poly<Rational> mixture_q_poly(int n) {
    if (n < 1) throw std::invalid_argument("mixture_q_poly: needs n >= 1");
    using PR = Poly<Rational>;
    int deg = 2 * n;
    PR t = PR::variable();
    PR one_minus_t = PR(1) - t;

    CumulantVector<PR> cum;
    cum.k.assign(deg + 1, PR());
    PR tj(1), uj(1);
    for (int j = 1; 2 * j <= deg; ++j) {
        tj *= t;
        uj *= one_minus_t;
        // κ_{2j}(F∞) = (2j-1)!
        cum.k[2 * j] = (tj + uj) * factorial(2 * j - 1);
    }
    MomentVector<PR> mom = moments_from_cumulants(cum);

    auto a = coeff_recursion_table(deg);
    PR q;
    for (int k = 0; k <= deg; ++k)
        if (!a[deg][k].is_zero()) q += mom.moment(k) * a[deg][k];

    if (!q.eval(Rational(0)).is_zero() || !q.eval(Rational(1)).is_zero())
        throw std::logic_error("mixture_q_poly: Q_n(0) = Q_n(1) = 0 violated");
    return q;
}

// --- Stein operator synthesis (order d) --------------------------------------

template <class T>
struct SteinOpSpec {
    int d = 0;
    std::vector<T> a;  // a[l-1] = a_l, l = 1..d+1
    std::vector<T> b;  // b[l-2] = b_l, l = 2..d+1
    DiffOp<T> assembled;
    DiffOp<T> normalized;  // scaled so the coefficient of x·f is -1

    const T& a_coeff(int l) const { return a.at(l - 1); }
    const T& b_coeff(int l) const { return b.at(l - 2); }
};

// Coefficients of Σ_{l=2}^{d+1} (b_l - a_{l-1} x) f^{(d+2-l)} - a_{d+1} x f
// from P(x) = x Π_k (x - λ_k): a_l = P^{(l)}(0)/(l! 2^{l-1}) and
// b_l = Σ_{r=l}^{d+1} a_r κ_{r-l+2}(F)/(r-l+1)!.
template <class T>
SteinOpSpec<T> stein_coefficients(const std::vector<T>& lambdas) {
    if (lambdas.empty()) throw std::invalid_argument("stein_coefficients: empty spectrum");
    for (const T& l : lambdas)
        if (l == T(0))
            throw std::invalid_argument("stein_coefficients: zero spectral coefficient");

    int d = static_cast<int>(lambdas.size());
    using P = Poly<T>;
    P big_p = P::variable();
    for (const T& l : lambdas) big_p *= (P::variable() - P(l));

    SteinOpSpec<T> spec;
    spec.d = d;
    spec.a.reserve(d + 1);
    for (int l = 1; l <= d + 1; ++l)  // P^{(l)}(0)/l! is the coefficient of x^l
        spec.a.push_back(big_p.coeff(l) / from_rational<T>(pow2(l - 1)));

    auto elem = SpectralElement<T>::from_lambdas(lambdas);
    CumulantVector<T> cum = cumulants(elem, d + 1);

    spec.b.reserve(d);
    for (int l = 2; l <= d + 1; ++l) {
        T acc(0);
        for (int r = l; r <= d + 1; ++r)
            acc = acc + spec.a[r - 1] * cum.kappa(r - l + 2) /
                            from_rational<T>(factorial(r - l + 1));
        spec.b.push_back(acc);
    }

    std::vector<typename DiffOp<T>::Term> terms;
    for (int l = 2; l <= d + 1; ++l) {
        P coeff = P(spec.b[l - 2]) - P::monomial(1, spec.a[l - 2]);
        if (!coeff.is_zero()) terms.emplace_back(d + 2 - l, std::move(coeff));
    }
    terms.emplace_back(0, P::monomial(1, -spec.a[d]));
    spec.assembled = DiffOp<T>(std::move(terms));
    spec.normalized = spec.assembled * (T(1) / spec.a[d]);
    return spec;
}

// --- non-orthogonality and basis work ----------------------------------------

struct TuranRow {
    int n;
    Rational lhs;  // E[P_n²]
    Rational rhs;  // E[P_{n-1} P_{n+1}]
    bool holds;
    bool strict;
};

// E[P_n²(F∞)] >= E[P_{n-1}(F∞) P_{n+1}(F∞)] on the normal product law.
inline std::vector<TuranRow> turan_check(int n_max) {
    if (n_max < 1) throw std::invalid_argument("turan_check: needs n >= 1");
    FamilyTable fam = stein_family(n_max + 1);
    auto np = normal_product_element();
    MomentVector<Rational> mom = moments(np, 2 * n_max + 2);
    std::vector<TuranRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        TuranRow r;
        r.n = n;
        r.lhs = expect_against_moments(mom, fam.poly(n) * fam.poly(n));
        r.rhs = expect_against_moments(mom, fam.poly(n - 1) * fam.poly(n + 1));
        r.holds = r.lhs >= r.rhs;
        r.strict = r.lhs > r.rhs;
        rows.push_back(r);
    }
    return rows;
}

// Unique expansion of p in the monic basis {P_n}, by back-substitution from
// the top degree. Returns c with p = Σ c[n] P_n.
inline std::vector<Rational> decompose_in_family(const Poly<Rational>& p, const FamilyTable& fam) {
    if (p.degree() > fam.max_index())
        throw std::invalid_argument("decompose_in_family: family table too small");
    std::vector<Rational> c(std::max(0, p.degree()) + 1, Rational(0));
    Poly<Rational> rest = p;
    while (!rest.is_zero()) {
        int k = rest.degree();
        Rational ck = rest.leading() / fam.poly(k).leading();
        c[k] = ck;
        rest -= fam.poly(k) * ck;
        if (!rest.is_zero() && rest.degree() >= k)
            throw std::logic_error("decompose_in_family: degree did not drop");
    }
    return c;
}

}  // namespace npstein
