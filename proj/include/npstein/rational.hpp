// Exact arbitrary-precision rationals on top of GMP, plus the integer
// combinatorics (factorials, binomials) used throughout the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace npstein {

// Canonical rational number: gcd(|num|, den) = 1 and den > 0 always hold.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(const mpz_class& n) : q_(n) {}

    Rational(long num, long den) : q_(num, den) { canonical_or_throw(); }
    Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) { canonical_or_throw(); }

    // Parses "a/b" or "a" in base 10.
    explicit Rational(const std::string& s) {
        if (mpq_set_str(q_.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        canonical_or_throw();
    }

    static Rational from_mpq(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);
        return r;
    }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return from_mpq(-q_); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Rational abs() const { return from_mpq(::abs(q_)); }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        bool invert = e < 0;
        unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), k);
        mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), k);
        if (invert) {
            if (num == 0) throw std::domain_error("Rational: 0 to a negative power");
            return Rational(den, num);
        }
        return Rational(num, den);
    }

    // sqrt when this is a perfect square of a rational, nullopt otherwise.
    std::optional<Rational> sqrt_if_square() const {
        if (sign() < 0) return std::nullopt;
        if (is_zero()) return Rational(0);
        mpz_class num = q_.get_num(), den = q_.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        return Rational(rn, rd);
    }

    double to_double() const { return q_.get_d(); }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;

    void canonical_or_throw() {
        if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
};

inline Rational factorial(unsigned long n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rational(z);
}

// (2k-1)!! with the empty-product convention for k = 0.
inline Rational odd_double_factorial(unsigned long k) {
    mpz_class z = 1;
    for (unsigned long j = 1; j <= k; ++j) z *= 2 * j - 1;
    return Rational(z);
}

inline Rational binomial(unsigned long n, unsigned long k) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rational(z);
}

inline Rational pow2(long e) { return Rational(2).pow(e); }

}  // namespace npstein
