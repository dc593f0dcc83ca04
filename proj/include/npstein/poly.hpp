// Dense univariate polynomials over an exact field (or any commutative ring
// with the needed operations). Coefficients ascending; the highest stored
// coefficient is nonzero, the zero polynomial stores nothing.
#pragma once

#include "npstein/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace npstein {

template <class T>
class Poly {
public:
    Poly() = default;
    Poly(int c) : c_{T(c)} { normalize(); }
    Poly(const T& c) : c_{c} { normalize(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

    static Poly monomial(int k, const T& coeff = T(1)) {
        if (k < 0) throw std::invalid_argument("Poly: negative exponent");
        std::vector<T> c(k + 1, T(0));
        c[k] = coeff;
        return Poly(std::move(c));
    }
    static Poly variable() { return monomial(1); }

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }

    T coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return T(0);
        return c_[k];
    }
    T leading() const {
        if (is_zero()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<T> c(std::max(p.c_.size(), q.c_.size()), T(0));
        for (size_t i = 0; i < p.c_.size(); ++i) c[i] = c[i] + p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) c[i] = c[i] + q.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly();
        std::vector<T> c(p.c_.size() + q.c_.size() - 1, T(0));
        for (size_t i = 0; i < p.c_.size(); ++i)
            for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] = c[i + j] + p.c_[i] * q.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& p, const T& s) {
        Poly r = p;
        for (auto& c : r.c_) c = c * s;
        r.normalize();
        return r;
    }
    friend Poly operator*(const T& s, const Poly& p) { return p * s; }

    friend Poly operator/(const Poly& p, const T& s) {
        if (s == T(0)) throw std::domain_error("Poly: division by zero scalar");
        Poly r = p;
        for (auto& c : r.c_) c = c / s;
        r.normalize();
        return r;
    }

    Poly& operator+=(const Poly& q) { return *this = *this + q; }
    Poly& operator-=(const Poly& q) { return *this = *this - q; }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }

    friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

    T eval(const T& x) const {
        T r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * T(static_cast<int>(i));
        return Poly(std::move(c));
    }

    Poly derivative(int times) const {
        Poly r = *this;
        for (int i = 0; i < times; ++i) r = r.derivative();
        return r;
    }

    // ∫₀^x p(t) dt
    Poly antiderivative_from_0() const {
        if (is_zero()) return Poly();
        std::vector<T> c(c_.size() + 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            c[i + 1] = c_[i] * from_rational<T>(Rational(1, static_cast<long>(i) + 1));
        return Poly(std::move(c));
    }

    Poly compose(const Poly& inner) const {
        Poly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * inner + Poly(c_[i]);
        return r;
    }

    // Rendering used by the CLI: "x^6 - 55x^4 + 331x^2 - 61".
    std::string pretty(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            T c = coeff(k);
            if (c == T(0)) continue;
            std::string cs = scalar_str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            if (first) {
                if (neg) out << "-";
                first = false;
            } else {
                out << (neg ? " - " : " + ");
            }
            bool needs_parens = cs.find('/') != std::string::npos || cs.find(' ') != std::string::npos;
            if (k == 0) {
                out << cs;
            } else {
                if (cs != "1") out << (needs_parens ? "(" + cs + ")" : cs);
                out << var;
                if (k > 1) out << "^" << k;
            }
        }
        return out.str();
    }

private:
    std::vector<T> c_;

    void normalize() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    static std::string scalar_str(const T& v) {
        if constexpr (requires(const T& t) { t.str(); }) {
            return v.str();
        } else {
            std::ostringstream os;
            os << v;
            return os.str();
        }
    }
};

template <class T>
struct ScalarOps<Poly<T>> {
    static Poly<T> from_rational(const Rational& r) { return Poly<T>(npstein::from_rational<T>(r)); }
};

template <class U, class T, class F>
Poly<U> map_coeffs(const Poly<T>& p, F f) {
    std::vector<U> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(f(x));
    return Poly<U>(std::move(c));
}

template <class U>
Poly<U> promote_poly(const Poly<Rational>& p) {
    return map_coeffs<U>(p, [](const Rational& r) { return from_rational<U>(r); });
}

// Exact Euclidean division over a field: p = q*d + r with deg r < deg d.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& p, const Poly<T>& d) {
    if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly<T> q, r = p;
    T lead = d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        T c = r.leading() / lead;
        Poly<T> t = Poly<T>::monomial(k, c);
        q += t;
        r -= t * d;
    }
    return {q, r};
}

// Monic gcd over a field.
template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a / a.leading();
}

}  // namespace npstein
