// Canonical JSON encodings of the library's value types.
//
//   Rational        "num/den" (or "num" when integral)
//   QuadRational    "num/den" when rational, else {"a","b","s"}
//   Poly            {"coeffs": [...]} ascending powers
//   SpectralElement {"lambdas": [...]} or {"power_sums": [...]}
//
// Spectra parse into one of three modes: exact rational, exact quadratic
// (entries in one Q(sqrt(s))), or high-precision floating for anything else.
#pragma once

#include "npstein/highfloat.hpp"
#include "npstein/montecarlo.hpp"
#include "npstein/spectral.hpp"
#include "npstein/sturm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>

namespace npstein {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const QuadRational& q);
Rational rational_from_json(const Json& j);
QuadRational quad_from_json(const Json& j);

Json to_json(const Poly<Rational>& p);
Poly<Rational> poly_from_json(const Json& j);

std::string highfloat_str(const HighFloat& v);

enum class ElementMode { rational, quadratic, floating };

using ParsedElement = std::variant<SpectralElement<Rational>, SpectralElement<QuadRational>,
                                   SpectralElement<HighFloat>>;

ParsedElement element_from_json(const Json& j);
ElementMode element_mode(const ParsedElement& e);

Json to_json(const SpectralElement<Rational>& e);
Json to_json(const SpectralElement<QuadRational>& e);
Json to_json(const SpectralElement<HighFloat>& e);

Json to_json(const McEstimate& e);
Json to_json(const std::vector<IsolatingInterval>& intervals);

// --- generic value rendering: exact string plus float ------------------------

inline std::string scalar_json_str(const Rational& v) { return v.str(); }
inline std::string scalar_json_str(const QuadRational& v) { return v.str(); }
inline std::string scalar_json_str(const HighFloat& v) { return highfloat_str(v); }

template <class T>
Json value_with_float(const T& v) {
    return Json{{"exact", scalar_json_str(v)}, {"float", scalar_to_double(v)}};
}

template <class T>
Json to_json(const DiffOp<T>& op) {
    Json terms = Json::array();
    for (const auto& [order, coeff] : op.terms()) {
        Json c = Json::array();
        for (const auto& x : coeff.coeffs()) c.push_back(scalar_json_str(x));
        terms.push_back({{"order", order}, {"coeffs", c}});
    }
    return Json{{"terms", terms}};
}

template <class T>
Json to_json(const SteinOpSpec<T>& spec) {
    Json a = Json::array(), b = Json::array();
    for (const auto& x : spec.a) a.push_back(scalar_json_str(x));
    for (const auto& x : spec.b) b.push_back(scalar_json_str(x));
    return Json{{"d", spec.d},
                {"a", a},
                {"b", b},
                {"assembled", to_json(spec.assembled)},
                {"normalized", to_json(spec.normalized)}};
}

template <class T>
Json to_json(const DiagnosticReport<T>& rep) {
    Json gaps = Json::array();
    for (const auto& [k, gap] : rep.even_moment_gaps)
        gaps.push_back({{"k", k}, {"gap", value_with_float(gap)}});
    Json kappa3;
    if (rep.kappa3) {
        kappa3 = value_with_float(*rep.kappa3);
    } else {
        const double mag = std::sqrt(std::max(0.0, scalar_to_double(rep.kappa3_sq)));
        kappa3 = Json{{"exact", nullptr}, {"float", rep.kappa3_sign * mag}};
    }
    return Json{{"kappa2", value_with_float(rep.kappa2_raw)},
                {"normalized", rep.normalized},
                {"kappa3", kappa3},
                {"kappa3_sq", value_with_float(rep.kappa3_sq)},
                {"delta_prime", value_with_float(rep.delta_prime)},
                {"expect_p6", value_with_float(rep.expect_p6)},
                {"identity_residual", value_with_float(rep.identity_residual)},
                {"bound", Json{{"float", rep.bound}, {"note", "modulo unknown constant"}}},
                {"even_moment_gaps", gaps}};
}

}  // namespace npstein
