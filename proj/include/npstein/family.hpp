// Construction and cross-validation of the operator-iterated polynomial
// family P_n = R^n 1 for the normal product Stein operator
// (R f)(x) = x f(x) - f'(x) - x f''(x), together with the Hermite family of
// the Ornstein-Uhlenbeck operator and the W_k polynomials.
//
// Four independent routes to the same coefficients are provided: operator
// iteration, the two-term recursion a(n,k) = a(n-1,k-1) - (k+1)^2 a(n-1,k+1),
// the nested-sum closed form, and the exponential generating function
// e^{x tanh t} / cosh t.
#pragma once

#include "npstein/diff_op.hpp"
#include "npstein/power_series.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace npstein {

// (R f)(x) = x f - f' - x f''
template <class T = Rational>
DiffOp<T> stein_operator() {
    using P = Poly<T>;
    return DiffOp<T>({{0, P::variable()}, {1, P(-1)}, {2, -P::variable()}});
}

// Ornstein-Uhlenbeck first-order operator (L f)(x) = x f - f'
template <class T = Rational>
DiffOp<T> ou_operator() {
    using P = Poly<T>;
    return DiffOp<T>({{0, P::variable()}, {1, P(-1)}});
}

// Modified Bessel operator x^2 f'' + x f' - (x^2 + nu^2) f
template <class T = Rational>
DiffOp<T> modified_bessel_operator(int nu) {
    using P = Poly<T>;
    P x2 = P::monomial(2);
    return DiffOp<T>({{2, x2}, {1, P::variable()}, {0, -(x2 + P(nu * nu))}});
}

// Iterates of an operator applied to 1: polys[n] = op^n 1.
struct FamilyTable {
    DiffOp<Rational> op;
    std::vector<Poly<Rational>> polys;

    int max_index() const { return static_cast<int>(polys.size()) - 1; }

    const Poly<Rational>& poly(int n) const {
        if (n < 0 || n > max_index()) throw std::out_of_range("FamilyTable: index out of range");
        return polys[n];
    }

    Rational coeff(int n, int k) const { return poly(n).coeff(k); }
};

inline FamilyTable generate_family(const DiffOp<Rational>& op, int n_max) {
    if (n_max < 0) throw std::invalid_argument("generate_family: negative order");
    FamilyTable t;
    t.op = op;
    t.polys.reserve(n_max + 1);
    t.polys.push_back(Poly<Rational>(1));
    for (int n = 1; n <= n_max; ++n) t.polys.push_back(op.apply(t.polys.back()));
    return t;
}

inline FamilyTable stein_family(int n_max) { return generate_family(stein_operator(), n_max); }
inline FamilyTable hermite_family(int n_max) { return generate_family(ou_operator(), n_max); }

// Triangular coefficient array a(n,k), 0 <= k <= n <= n_max, built from the
// recursion with terminal conditions a(n,n) = 1, a(n,n-1) = 0.
inline std::vector<std::vector<Rational>> coeff_recursion_table(int n_max) {
    if (n_max < 0) throw std::invalid_argument("coeff_recursion_table: negative order");
    std::vector<std::vector<Rational>> a(n_max + 1);
    a[0] = {Rational(1)};
    for (int n = 1; n <= n_max; ++n) {
        a[n].assign(n + 1, Rational(0));
        auto prev = [&](int k) { return (k < 0 || k >= n) ? Rational(0) : a[n - 1][k]; };
        for (int k = 0; k <= n - 2; ++k)
            a[n][k] = prev(k - 1) - Rational((k + 1)) * Rational(k + 1) * prev(k + 1);
        a[n][n] = Rational(1);
        if (n >= 1) a[n][n - 1] = Rational(0);
    }
    return a;
}

// Closed form for a(n,k) (k = exponent of x): zero off-parity, 1 on the
// diagonal, otherwise the alternating nested sum
//   a(n, n-2j) = (-1)^j Σ_{i1=1}^{n-2j+1} i1² Σ_{i2=1}^{i1+1} i2² ... Σ_{ij=1}^{i_{j-1}+1} ij².
inline Rational coeff_closed_form(int n, int k) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    if ((n - k) % 2 != 0) return Rational(0);
    int j = (n - k) / 2;
    if (j == 0) return Rational(1);
    // Innermost level first: G_level(m) = Σ_{i=1}^{m} i² G_{level+1}(i+1).
    int width = n + 2;
    std::vector<Rational> g(width + 1, Rational(1));  // level j+1 ≡ 1
    for (int level = j; level >= 1; --level) {
        std::vector<Rational> next(width + 1, Rational(0));
        Rational acc(0);
        for (int m = 1; m <= width; ++m) {
            int idx = m + 1 <= width ? m + 1 : width;
            acc += Rational(m) * Rational(m) * g[idx];
            next[m] = acc;
        }
        g = std::move(next);
    }
    Rational value = g[n - 2 * j + 1];
    return (j % 2 == 0) ? value : -value;
}

// E_n from n! [t^n] sech t; odd entries vanish.
inline std::vector<Rational> euler_numbers(int n_max) {
    if (n_max < 0) throw std::invalid_argument("euler_numbers: negative order");
    PowerSeries<Rational> sech = series_sech(n_max);
    std::vector<Rational> e(n_max + 1);
    for (int n = 0; n <= n_max; ++n) e[n] = sech.coeff(n) * factorial(n);
    return e;
}

// n! [t^n] of e^{x tanh t} / cosh t, as polynomials in x, computed purely by
// exact series operations.
inline std::vector<Poly<Rational>> generating_function_coeffs(int n_max) {
    if (n_max < 0) throw std::invalid_argument("generating_function_coeffs: negative order");
    using PR = Poly<Rational>;
    PowerSeries<Rational> tanh = series_tanh(n_max);
    PowerSeries<Rational> sech = series_sech(n_max);

    std::vector<PR> xt(n_max + 1);
    for (int k = 0; k <= n_max; ++k) xt[k] = PR::monomial(1, tanh.coeff(k));
    PowerSeries<PR> exponent{std::move(xt)};
    PowerSeries<PR> g = exponent.exp();

    std::vector<PR> sech_lift(n_max + 1);
    for (int k = 0; k <= n_max; ++k) sech_lift[k] = PR(sech.coeff(k));
    g = g * PowerSeries<PR>{std::move(sech_lift)};

    std::vector<PR> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = g.coeff(n) * factorial(n);
    return out;
}

// Lowering operator arctanh(D) = Σ D^{2k+1}/(2k+1), truncated at `order`.
// Truncation at deg(p) is exact since higher derivatives annihilate p.
template <class T>
Poly<T> lowering_apply(const Poly<T>& p, int order = -1) {
    if (order < 0) order = p.degree();
    if (order < p.degree())
        throw std::invalid_argument("lowering_apply: truncation below the input degree");
    Poly<T> out;
    Poly<T> d = p.derivative();
    for (int m = 1; m <= order && !d.is_zero(); m += 2) {
        out += d * from_rational<T>(Rational(1, m));
        d = d.derivative().derivative();
    }
    return out;
}

// W_k(x) = (2k-1) ( x ∫₀^x H_k H_{k-2} dt - H_k(x) H_{k-2}(x) ), monic of
// degree 2k.
inline Poly<Rational> w_poly(int k) {
    if (k < 2) throw std::invalid_argument("w_poly: defined for k >= 2");
    FamilyTable h = hermite_family(k);
    const Poly<Rational>& hk = h.poly(k);
    const Poly<Rational>& hk2 = h.poly(k - 2);
    Poly<Rational> prod = hk * hk2;
    Poly<Rational> w =
        Poly<Rational>::variable() * prod.antiderivative_from_0() - prod;
    return w * Rational(2 * k - 1);
}

// Attempted three-term recurrence P_{n+1} = (x - c) P_n - d P_{n-1}: (c, d)
// are solved from the two highest coefficient equations that contain them,
// then every remaining coefficient is verified. For each failing equation
// that determines its own d, the conflicting demanded value is recorded.
struct ThreeTermFit {
    bool consistent = false;
    Rational c, d;
    // (exponent, demanded d) for every coefficient equation violating the fit
    std::vector<std::pair<int, std::optional<Rational>>> conflicts;
};

inline ThreeTermFit three_term_fit(const FamilyTable& fam, int n) {
    if (n < 1) throw std::invalid_argument("three_term_fit: needs n >= 1");
    if (fam.max_index() < n + 1)
        throw std::invalid_argument("three_term_fit: family table too small");
    const Poly<Rational>&pm = fam.poly(n - 1), &p = fam.poly(n), &q = fam.poly(n + 1);
    if (p.coeff(n) != Rational(1) || q.coeff(n + 1) != Rational(1))
        throw std::invalid_argument("three_term_fit: family is not monic");

    ThreeTermFit fit;
    // x^n equation: q_n = p_{n-1} - c p_n - d pm_n, with pm_n = 0.
    fit.c = p.coeff(n - 1) - q.coeff(n);
    // x^{n-1} equation gives d (pm is monic of degree n-1).
    fit.d = p.coeff(n - 2) - fit.c * p.coeff(n - 1) - q.coeff(n - 1);

    Poly<Rational> rhs =
        (Poly<Rational>::variable() - Poly<Rational>(fit.c)) * p - pm * fit.d;
    fit.consistent = (rhs == q);
    if (!fit.consistent) {
        for (int k = n; k >= 0; --k) {
            Rational want = q.coeff(k);
            Rational have = rhs.coeff(k);
            if (want == have) continue;
            if (!pm.coeff(k).is_zero()) {
                Rational demanded =
                    (p.coeff(k - 1) - fit.c * p.coeff(k) - want) / pm.coeff(k);
                fit.conflicts.emplace_back(k, demanded);
            } else {
                fit.conflicts.emplace_back(k, std::nullopt);
            }
        }
    }
    return fit;
}

// Both sides of the even-constant-term relation: the printed form
// a(n,0) = 4 Σ_{k=1}^{n/2} (-1)^{k-1} a(n-2k,2) and the corrected form with
// the terminal (-1)^{n/2} term restored. Only even n are reported.
struct EvenConstantRelationRow {
    int n;
    Rational constant_term;  // a(n,0)
    Rational printed_rhs;
    Rational corrected_rhs;
    bool printed_holds;
    bool corrected_holds;
};

inline std::vector<EvenConstantRelationRow> even_constant_term_relation(int n_max) {
    auto a = coeff_recursion_table(n_max);
    std::vector<EvenConstantRelationRow> rows;
    for (int n = 2; n <= n_max; n += 2) {
        Rational sum(0);
        for (int k = 1; 2 * k <= n; ++k) {
            Rational term = (n - 2 * k >= 2) ? a[n - 2 * k][2] : Rational(0);
            sum += (k % 2 == 1) ? term : -term;
        }
        EvenConstantRelationRow row;
        row.n = n;
        row.constant_term = a[n][0];
        row.printed_rhs = Rational(4) * sum;
        row.corrected_rhs = row.printed_rhs + ((n / 2) % 2 == 0 ? Rational(1) : Rational(-1));
        row.printed_holds = row.printed_rhs == row.constant_term;
        row.corrected_holds = row.corrected_rhs == row.constant_term;
        rows.push_back(row);
    }
    return rows;
}

// Sheffer pair of the family: delta series f = arctanh t (so f-bar = tanh t)
// and invertible series g = (1 - t^2)^{-1/2}.
struct ShefferPair {
    PowerSeries<Rational> f;
    PowerSeries<Rational> g;
    PowerSeries<Rational> fbar;
};

inline ShefferPair make_sheffer_pair(int order) {
    ShefferPair p{series_arctanh(order), series_inv_sqrt_one_minus_sq(order),
                  series_tanh(order)};
    if (!(p.f.compose(p.fbar) == PowerSeries<Rational>::identity(order)))
        throw std::logic_error("ShefferPair: f(fbar(t)) != t");
    return p;
}

}  // namespace npstein
