// Linear differential operators with polynomial coefficients,
// f ↦ Σ_j c_j(x) f^(j)(x). Term list is sorted by derivative order and holds
// no zero coefficient polynomials.
#pragma once

#include "npstein/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace npstein {

template <class T>
class DiffOp {
public:
    using Term = std::pair<int, Poly<T>>;

    DiffOp() = default;
    explicit DiffOp(std::vector<Term> terms) {
        std::map<int, Poly<T>> merged;
        for (auto& [j, c] : terms) {
            if (j < 0) throw std::invalid_argument("DiffOp: negative derivative order");
            auto it = merged.find(j);
            if (it == merged.end())
                merged.emplace(j, std::move(c));
            else
                it->second += c;
        }
        for (auto& [j, c] : merged)
            if (!c.is_zero()) terms_.emplace_back(j, std::move(c));
    }

    static DiffOp multiply_by(const Poly<T>& c) { return DiffOp({{0, c}}); }
    static DiffOp term(int order, const Poly<T>& c) { return DiffOp({{order, c}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_order() const { return terms_.empty() ? -1 : terms_.back().first; }

    Poly<T> apply(const Poly<T>& p) const {
        Poly<T> out;
        for (const auto& [j, c] : terms_) out += c * p.derivative(j);
        return out;
    }

    DiffOp operator-() const {
        DiffOp r = *this;
        for (auto& [j, c] : r.terms_) c = -c;
        return r;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        std::vector<Term> t = a.terms_;
        t.insert(t.end(), b.terms_.begin(), b.terms_.end());
        return DiffOp(std::move(t));
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

    friend DiffOp operator*(const DiffOp& a, const T& s) {
        std::vector<Term> t = a.terms_;
        for (auto& [j, c] : t) c = c * s;
        return DiffOp(std::move(t));
    }
    friend DiffOp operator*(const T& s, const DiffOp& a) { return a * s; }

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string pretty(const std::string& var = "x") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << it->second.pretty(var) << ")";
            if (it->first > 0) os << "*D^" << it->first;
        }
        return os.str();
    }

private:
    std::vector<Term> terms_;
};

template <class T>
Poly<T> diffop_apply(const DiffOp<T>& op, const Poly<T>& p) {
    return op.apply(p);
}

// Operator composition (A ∘ B)(p) = A(B(p)), expanded with the Leibniz rule.
template <class T>
DiffOp<T> compose(const DiffOp<T>& a, const DiffOp<T>& b) {
    std::vector<typename DiffOp<T>::Term> t;
    for (const auto& [i, ai] : a.terms()) {
        for (const auto& [j, cj] : b.terms()) {
            for (int m = 0; m <= i; ++m) {
                Poly<T> coeff = ai * cj.derivative(m) *
                                from_rational<T>(binomial(i, m));
                if (!coeff.is_zero()) t.emplace_back(j + i - m, std::move(coeff));
            }
        }
    }
    return DiffOp<T>(std::move(t));
}

// True iff both operators agree on every monomial x^k, k <= deg. For operators
// with polynomial coefficients of bounded degree this decides equality.
template <class T>
bool agree_on_monomials(const DiffOp<T>& lhs, const DiffOp<T>& rhs, int deg) {
    if (deg < 0) throw std::invalid_argument("agree_on_monomials: negative degree");
    for (int k = 0; k <= deg; ++k) {
        Poly<T> m = Poly<T>::monomial(k);
        if (lhs.apply(m) != rhs.apply(m)) return false;
    }
    return true;
}

}  // namespace npstein
