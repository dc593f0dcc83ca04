// Conversions between the coefficient fields the library is instantiated
// with (Rational, QuadRational, floating types, polynomial rings).
#pragma once

#include "npstein/quad_rational.hpp"
#include "npstein/rational.hpp"

#include <cmath>
#include <optional>

namespace npstein {

template <class T>
struct ScalarOps {
    static T from_rational(const Rational& r) { return T(r); }
    static double to_double(const T& v) { return v.to_double(); }
    static int sign(const T& v) { return v.sign(); }
    // exact square root within the type, when one exists
    static std::optional<T> sqrt(const T& v);
};

template <>
struct ScalarOps<Rational> {
    static Rational from_rational(const Rational& r) { return r; }
    static double to_double(const Rational& v) { return v.to_double(); }
    static int sign(const Rational& v) { return v.sign(); }
    static std::optional<Rational> sqrt(const Rational& v) { return v.sqrt_if_square(); }
};

template <>
struct ScalarOps<QuadRational> {
    static QuadRational from_rational(const Rational& r) { return QuadRational(r); }
    static double to_double(const QuadRational& v) { return v.to_double(); }
    static int sign(const QuadRational& v) { return v.sign(); }
    static std::optional<QuadRational> sqrt(const QuadRational& v) { return v.sqrt_in_field(); }
};

template <>
struct ScalarOps<double> {
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double to_double(double v) { return v; }
    static int sign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
    static std::optional<double> sqrt(double v) {
        return v >= 0 ? std::optional<double>(std::sqrt(v)) : std::nullopt;
    }
};

template <class T>
T from_rational(const Rational& r) {
    return ScalarOps<T>::from_rational(r);
}

template <class T>
double scalar_to_double(const T& v) {
    return ScalarOps<T>::to_double(v);
}

template <class T>
int scalar_sign(const T& v) {
    return ScalarOps<T>::sign(v);
}

template <class T>
std::optional<T> scalar_sqrt(const T& v) {
    return ScalarOps<T>::sqrt(v);
}

}  // namespace npstein
