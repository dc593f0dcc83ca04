#include "npstein/json_io.hpp"

#include <sstream>

namespace npstein {
namespace {

bool is_quad_object(const Json& j) {
    return j.is_object() && j.contains("a") && j.contains("b") && j.contains("s");
}

// Entry classification for spectra: strings stay exact, objects are
// quadratic-field values, bare numbers force floating mode.
enum class EntryKind { rational, quadratic, floating };

EntryKind classify(const Json& j) {
    if (j.is_string()) return EntryKind::rational;
    if (is_quad_object(j)) return EntryKind::quadratic;
    if (j.is_number()) return EntryKind::floating;
    throw std::invalid_argument("element JSON: entries must be strings, numbers, or {a,b,s}");
}

HighFloat highfloat_from_json(const Json& j) {
    if (j.is_string()) {
        Rational r = rational_from_json(j);
        return ScalarOps<HighFloat>::from_rational(r);
    }
    if (is_quad_object(j)) {
        QuadRational q = quad_from_json(j);
        HighFloat a = ScalarOps<HighFloat>::from_rational(q.rational_part());
        HighFloat b = ScalarOps<HighFloat>::from_rational(q.radical_part());
        return a + b * boost::multiprecision::sqrt(HighFloat(q.radicand()));
    }
    return HighFloat(j.get<double>());
}

template <class T, class F>
ParsedElement build_element(const Json& j, F convert) {
    if (j.contains("lambdas")) {
        std::vector<T> ls;
        for (const auto& e : j.at("lambdas")) ls.push_back(convert(e));
        if (ls.empty()) throw std::invalid_argument("element JSON: empty lambda list");
        return SpectralElement<T>::from_lambdas(std::move(ls));
    }
    std::vector<T> ps;
    for (const auto& e : j.at("power_sums")) ps.push_back(convert(e));
    if (ps.empty()) throw std::invalid_argument("element JSON: empty power-sum list");
    return SpectralElement<T>::from_power_sums(std::move(ps));
}

template <class T>
Json element_json(const SpectralElement<T>& e, Json (*enc)(const T&)) {
    Json out;
    if (e.has_lambdas()) {
        Json ls = Json::array();
        for (const auto& l : e.lambdas()) ls.push_back(enc(l));
        out["lambdas"] = ls;
    } else {
        Json ps = Json::array();
        for (const auto& p : e.stored_power_sums()) ps.push_back(enc(p));
        out["power_sums"] = ps;
    }
    return out;
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const QuadRational& q) {
    if (q.is_rational()) return q.rational_part().str();
    return Json{{"a", q.rational_part().str()},
                {"b", q.radical_part().str()},
                {"s", q.radicand()}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("Rational JSON: expected \"num/den\" string");
}

QuadRational quad_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer()) return QuadRational(rational_from_json(j));
    if (is_quad_object(j))
        return QuadRational(rational_from_json(j.at("a")), rational_from_json(j.at("b")),
                            j.at("s").get<long>());
    throw std::invalid_argument("QuadRational JSON: expected string or {a,b,s}");
}

Json to_json(const Poly<Rational>& p) {
    Json c = Json::array();
    for (const auto& x : p.coeffs()) c.push_back(x.str());
    return Json{{"coeffs", c}};
}

Poly<Rational> poly_from_json(const Json& j) {
    const Json& arr = j.is_array() ? j : j.at("coeffs");
    if (!arr.is_array()) throw std::invalid_argument("Poly JSON: expected a coeffs array");
    std::vector<Rational> c;
    for (const auto& e : arr) c.push_back(rational_from_json(e));
    return Poly<Rational>(std::move(c));
}

std::string highfloat_str(const HighFloat& v) {
    std::ostringstream os;
    os.precision(36);
    os << v;
    return os.str();
}

ParsedElement element_from_json(const Json& j) {
    if (!j.is_object() || (!j.contains("lambdas") && !j.contains("power_sums")))
        throw std::invalid_argument("element JSON: need \"lambdas\" or \"power_sums\"");
    const Json& entries = j.contains("lambdas") ? j.at("lambdas") : j.at("power_sums");
    if (!entries.is_array()) throw std::invalid_argument("element JSON: entry list must be an array");

    bool any_quad = false, any_float = false;
    for (const auto& e : entries) {
        switch (classify(e)) {
            case EntryKind::quadratic: any_quad = true; break;
            case EntryKind::floating: any_float = true; break;
            case EntryKind::rational: break;
        }
    }
    if (any_float)
        return build_element<HighFloat>(j, [](const Json& e) { return highfloat_from_json(e); });
    if (any_quad)
        return build_element<QuadRational>(j, [](const Json& e) { return quad_from_json(e); });
    return build_element<Rational>(j, [](const Json& e) { return rational_from_json(e); });
}

ElementMode element_mode(const ParsedElement& e) {
    if (std::holds_alternative<SpectralElement<Rational>>(e)) return ElementMode::rational;
    if (std::holds_alternative<SpectralElement<QuadRational>>(e)) return ElementMode::quadratic;
    return ElementMode::floating;
}

Json to_json(const SpectralElement<Rational>& e) {
    return element_json<Rational>(e, [](const Rational& r) { return to_json(r); });
}
Json to_json(const SpectralElement<QuadRational>& e) {
    return element_json<QuadRational>(e, [](const QuadRational& q) { return to_json(q); });
}
Json to_json(const SpectralElement<HighFloat>& e) {
    return element_json<HighFloat>(e, [](const HighFloat& v) { return Json(highfloat_str(v)); });
}

Json to_json(const McEstimate& e) {
    return Json{{"mean", e.mean},
                {"stderr", e.stderr_of_mean},
                {"n", e.n},
                {"seed", e.seed}};
}

Json to_json(const std::vector<IsolatingInterval>& intervals) {
    Json arr = Json::array();
    for (const auto& iv : intervals) {
        const double mid = 0.5 * (iv.lo.to_double() + iv.hi.to_double());
        arr.push_back({{"lo", iv.lo.str()}, {"hi", iv.hi.str()}, {"mid", mid}});
    }
    return Json{{"intervals", arr}};
}

}  // namespace npstein
