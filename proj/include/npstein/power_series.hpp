// Truncated formal power series with explicit order tracking: an object of
// order N holds exact coefficients of t^0..t^N and nothing beyond. Binary
// operations return the minimum of the two orders.
#pragma once

#include "npstein/scalar.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace npstein {

struct SeriesDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

template <class T>
class PowerSeries {
public:
    explicit PowerSeries(int order) : c_(order + 1, T(0)) {
        if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
    }
    PowerSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
    }

    static PowerSeries constant(const T& v, int order) {
        PowerSeries s(order);
        s.c_[0] = v;
        return s;
    }
    static PowerSeries identity(int order) {
        PowerSeries s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    T coeff(int k) const {
        if (k < 0 || k > order()) throw std::out_of_range("PowerSeries: coefficient beyond order");
        return c_[k];
    }
    const std::vector<T>& coeffs() const { return c_; }

    PowerSeries truncate(int order) const {
        if (order > this->order())
            throw std::invalid_argument("PowerSeries: cannot extend truncation order");
        return PowerSeries(std::vector<T>(c_.begin(), c_.begin() + order + 1));
    }

    PowerSeries operator-() const {
        PowerSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const T& s) {
        PowerSeries r = a;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    friend PowerSeries operator*(const T& s, const PowerSeries& a) { return a * s; }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

    // a/b with b(0) != 0, by long division.
    friend PowerSeries divide(const PowerSeries& a, const PowerSeries& b) {
        if (b.c_[0] == T(0))
            throw SeriesDomainError("PowerSeries: divisor has zero constant term");
        int n = std::min(a.order(), b.order());
        PowerSeries q(n);
        for (int k = 0; k <= n; ++k) {
            T acc = a.c_[k];
            for (int j = 1; j <= k && j <= b.order(); ++j) acc = acc - b.c_[j] * q.c_[k - j];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

    // this ∘ inner, inner(0) = 0 required.
    PowerSeries compose(const PowerSeries& inner) const {
        if (inner.c_[0] != T(0))
            throw SeriesDomainError("PowerSeries: composition needs zero constant term");
        int n = std::min(order(), inner.order());
        PowerSeries r = constant(T(0), n);
        for (int k = std::min(order(), n); k >= 0; --k) {
            r = r * inner.truncate(n);
            r.c_[0] = r.c_[0] + c_[k];
        }
        return r;
    }

    // exp of a series with zero constant term, via n e_n = Σ k a_k e_{n-k}.
    PowerSeries exp() const {
        if (c_[0] != T(0))
            throw SeriesDomainError("PowerSeries: exp needs zero constant term");
        int n = order();
        PowerSeries e(n);
        e.c_[0] = T(1);
        for (int m = 1; m <= n; ++m) {
            T acc(0);
            for (int k = 1; k <= m; ++k) acc = acc + T(k) * c_[k] * e.c_[m - k];
            e.c_[m] = acc * from_rational<T>(Rational(1, m));
        }
        return e;
    }

private:
    std::vector<T> c_;
};

// --- classical series over the rationals -----------------------------------

inline PowerSeries<Rational> series_sinh(int order) {
    std::vector<Rational> c(order + 1, Rational(0));
    for (int k = 1; k <= order; k += 2) c[k] = Rational(1) / factorial(k);
    return PowerSeries<Rational>(std::move(c));
}

inline PowerSeries<Rational> series_cosh(int order) {
    std::vector<Rational> c(order + 1, Rational(0));
    for (int k = 0; k <= order; k += 2) c[k] = Rational(1) / factorial(k);
    return PowerSeries<Rational>(std::move(c));
}

inline PowerSeries<Rational> series_tanh(int order) {
    return divide(series_sinh(order), series_cosh(order));
}

inline PowerSeries<Rational> series_sech(int order) {
    return divide(PowerSeries<Rational>::constant(Rational(1), order), series_cosh(order));
}

// arctanh t = Σ t^(2k+1)/(2k+1)
inline PowerSeries<Rational> series_arctanh(int order) {
    std::vector<Rational> c(order + 1, Rational(0));
    for (int k = 1; k <= order; k += 2) c[k] = Rational(1, k);
    return PowerSeries<Rational>(std::move(c));
}

// (1 - t²)^(-1/2) = Σ C(2k,k) 4^(-k) t^(2k)
inline PowerSeries<Rational> series_inv_sqrt_one_minus_sq(int order) {
    std::vector<Rational> c(order + 1, Rational(0));
    for (int k = 0; 2 * k <= order; ++k)
        c[2 * k] = binomial(2 * static_cast<unsigned long>(k), k) / pow2(2 * k);
    return PowerSeries<Rational>(std::move(c));
}

}  // namespace npstein
