// Numbers a + b*sqrt(s) in a real quadratic field Q(sqrt(s)), s a fixed
// square-free positive integer. Values with b = 0 carry no field tag and mix
// freely with any tag; two different nonzero tags refuse to combine.
#pragma once

#include "npstein/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace npstein {

struct FieldMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

class QuadRational {
public:
    QuadRational() : a_(0), b_(0), s_(0) {}
    QuadRational(int n) : a_(n), b_(0), s_(0) {}
    QuadRational(long n) : a_(n), b_(0), s_(0) {}
    QuadRational(Rational a) : a_(std::move(a)), b_(0), s_(0) {}

    QuadRational(Rational a, Rational b, long s) : a_(std::move(a)), b_(std::move(b)), s_(s) {
        if (b_.is_zero()) {
            s_ = 0;
        } else {
            if (s_ <= 1) throw std::invalid_argument("QuadRational: radicand must be > 1");
            check_squarefree(s_);
        }
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    long radicand() const { return s_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("QuadRational: value is irrational");
        return a_;
    }

    QuadRational operator-() const { return make(-a_, -b_, s_); }

    friend QuadRational operator+(const QuadRational& x, const QuadRational& y) {
        long s = join(x, y);
        return make(x.a_ + y.a_, x.b_ + y.b_, s);
    }
    friend QuadRational operator-(const QuadRational& x, const QuadRational& y) {
        long s = join(x, y);
        return make(x.a_ - y.a_, x.b_ - y.b_, s);
    }
    friend QuadRational operator*(const QuadRational& x, const QuadRational& y) {
        long s = join(x, y);
        return make(x.a_ * y.a_ + x.b_ * y.b_ * Rational(s),
                    x.a_ * y.b_ + x.b_ * y.a_, s);
    }
    friend QuadRational operator/(const QuadRational& x, const QuadRational& y) {
        return x * y.inverse();
    }

    QuadRational& operator+=(const QuadRational& o) { return *this = *this + o; }
    QuadRational& operator-=(const QuadRational& o) { return *this = *this - o; }
    QuadRational& operator*=(const QuadRational& o) { return *this = *this * o; }
    QuadRational& operator/=(const QuadRational& o) { return *this = *this / o; }

    QuadRational inverse() const {
        if (is_zero()) throw std::domain_error("QuadRational: division by zero");
        // 1/(a + b√s) = (a - b√s)/(a² - b²s); the norm is nonzero since √s is
        // irrational for square-free s > 1.
        Rational norm = a_ * a_ - b_ * b_ * Rational(s_);
        return make(a_ / norm, -b_ / norm, s_);
    }

    friend bool operator==(const QuadRational& x, const QuadRational& y) {
        if (x.b_.is_zero() && y.b_.is_zero()) return x.a_ == y.a_;
        return x.a_ == y.a_ && x.b_ == y.b_ && x.s_ == y.s_;
    }
    friend bool operator!=(const QuadRational& x, const QuadRational& y) { return !(x == y); }

    // Exact sign of a + b√s.
    int sign() const {
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        if (a_.sign() == b_.sign()) return a_.sign();
        // Opposite signs: the winner is whichever square dominates.
        Rational a2 = a_ * a_, b2s = b_ * b_ * Rational(s_);
        if (a2 == b2s) return 0;  // impossible for square-free s, kept for safety
        return a2 > b2s ? a_.sign() : b_.sign();
    }

    QuadRational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        QuadRational r(1), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // Square root within the same field, when one exists.
    std::optional<QuadRational> sqrt_in_field() const {
        if (sign() < 0) return std::nullopt;
        if (b_.is_zero()) {
            if (auto r = a_.sqrt_if_square()) return QuadRational(*r);
            // a = y²·s would give √a = y√s; only possible if a/s is a square.
            if (s_ > 1) {
                if (auto y = (a_ / Rational(s_)).sqrt_if_square())
                    return make(Rational(0), *y, s_);
            }
            return std::nullopt;
        }
        // (x + y√s)² = (x² + y²s) + 2xy√s: solve x² from the quadratic
        // 4x⁴ - 4a x² + b²s = 0, x² = (a ± t)/2 with t = √(a² - b²s).
        Rational disc = a_ * a_ - b_ * b_ * Rational(s_);
        auto t = disc.sqrt_if_square();
        if (!t) return std::nullopt;
        for (const Rational& tt : {*t, -*t}) {
            Rational x2 = (a_ + tt) / Rational(2);
            if (x2.sign() < 0) continue;
            if (auto x = x2.sqrt_if_square()) {
                if (x->is_zero()) continue;
                Rational y = b_ / (Rational(2) * (*x));
                QuadRational cand = make(*x, y, s_);
                if (cand.sign() < 0) cand = -cand;
                if (cand * cand == *this) return cand;
            }
        }
        return std::nullopt;
    }

    double to_double() const {
        double v = a_.to_double();
        if (!b_.is_zero()) v += b_.to_double() * std::sqrt(static_cast<double>(s_));
        return v;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string out = a_.is_zero() ? "" : a_.str();
        std::string bs = b_.str();
        if (!out.empty()) {
            out += (b_.sign() >= 0) ? " + " : " - ";
            if (bs[0] == '-') bs = bs.substr(1);
        }
        out += bs + "*sqrt(" + std::to_string(s_) + ")";
        return out;
    }

private:
    Rational a_, b_;
    long s_;  // 0 when b_ == 0

    static QuadRational make(Rational a, Rational b, long s) {
        QuadRational r;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.s_ = r.b_.is_zero() ? 0 : s;
        return r;
    }

    static long join(const QuadRational& x, const QuadRational& y) {
        if (x.s_ == 0) return y.s_;
        if (y.s_ == 0 || x.s_ == y.s_) return x.s_;
        throw FieldMismatch("QuadRational: mixed radicands " + std::to_string(x.s_) + " and " +
                            std::to_string(y.s_));
    }

    static void check_squarefree(long s) {
        for (long p = 2; p * p <= s; ++p) {
            if (s % (p * p) == 0)
                throw std::invalid_argument("QuadRational: radicand " + std::to_string(s) +
                                            " is not square-free");
        }
    }
};

}  // namespace npstein
