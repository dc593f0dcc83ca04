// Floating coefficient field for spectra that leave every supported exact
// field: 113-bit binary significand, used with a 1e-12 working tolerance.
#pragma once

#include "npstein/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace npstein {

using HighFloat = boost::multiprecision::cpp_bin_float_quad;

template <>
struct ScalarOps<HighFloat> {
    static HighFloat from_rational(const Rational& r) {
        return HighFloat(r.numerator().get_str()) / HighFloat(r.denominator().get_str());
    }
    static double to_double(const HighFloat& v) { return v.convert_to<double>(); }
    static int sign(const HighFloat& v) { return v.sign(); }
    static std::optional<HighFloat> sqrt(const HighFloat& v) {
        if (v < 0) return std::nullopt;
        return boost::multiprecision::sqrt(v);
    }
};

}  // namespace npstein
