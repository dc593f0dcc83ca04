// Exact real-root counting and isolation over the rationals: Sturm chains,
// Descartes/Budan-Fourier sign-change counts, and bisection-based isolating
// intervals. Multiple roots are counted once (square-free reduction first).
#pragma once

#include "npstein/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace npstein {

using PolyQ = Poly<Rational>;

inline PolyQ squarefree_part(const PolyQ& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    if (p.degree() == 0) return PolyQ(1);
    PolyQ g = poly_gcd(p, p.derivative());
    return divmod(p, g).first;
}

// Signed-remainder chain starting from the square-free part of the source.
struct SturmChain {
    PolyQ source;
    std::vector<PolyQ> chain;
};

inline SturmChain sturm_chain(const PolyQ& p) {
    SturmChain s;
    s.source = p;
    PolyQ f = squarefree_part(p);
    s.chain.push_back(f);
    if (f.degree() >= 1) {
        s.chain.push_back(f.derivative());
        while (s.chain.back().degree() >= 1) {
            const PolyQ& a = s.chain[s.chain.size() - 2];
            const PolyQ& b = s.chain.back();
            PolyQ r = -divmod(a, b).second;
            if (r.is_zero()) break;  // cannot happen after square-free reduction
            s.chain.push_back(r);
        }
    }
    return s;
}

inline int sign_variations(const std::vector<int>& signs) {
    int count = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

inline int sturm_variations_at(const SturmChain& s, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(s.chain.size());
    for (const PolyQ& q : s.chain) signs.push_back(q.eval(x).sign());
    return sign_variations(signs);
}

// Number of distinct real roots in the interval. Open intervals deflate any
// root sitting exactly on an endpoint; closed intervals add endpoint roots
// back in.
inline int sturm_count(const PolyQ& p, const Rational& lo, const Rational& hi, bool open = true) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("sturm_count: needs lo < hi");
    PolyQ f = squarefree_part(p);
    int endpoint_roots = 0;
    for (const Rational& e : {lo, hi}) {
        while (f.degree() >= 1 && f.eval(e).is_zero()) {
            f = divmod(f, PolyQ({-e, Rational(1)})).first;
            ++endpoint_roots;
        }
    }
    if (f.degree() < 1) return open ? 0 : endpoint_roots;
    SturmChain s = sturm_chain(f);
    int inside = sturm_variations_at(s, lo) - sturm_variations_at(s, hi);
    return open ? inside : inside + endpoint_roots;
}

// Strict sign alternations in a coefficient list, zeros skipped.
inline int sign_changes(const std::vector<Rational>& coeffs) {
    std::vector<int> signs;
    signs.reserve(coeffs.size());
    for (const Rational& c : coeffs) signs.push_back(c.sign());
    return sign_variations(signs);
}

// Budan-Fourier bound on the number of roots in (lo, hi]: an upper bound on
// the root count (with multiplicity) matching it in parity.
inline int budan_fourier_count(const PolyQ& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("budan_fourier_count: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("budan_fourier_count: needs lo < hi");
    auto variations = [&](const Rational& x) {
        std::vector<int> signs;
        PolyQ d = p;
        while (!d.is_zero()) {
            signs.push_back(d.eval(x).sign());
            d = d.derivative();
        }
        return sign_variations(signs);
    };
    return variations(lo) - variations(hi);
}

struct IsolatingInterval {
    Rational lo, hi;  // lo < hi, exactly one distinct root of the source inside
};

// Disjoint intervals of width <= eps, one distinct root each, jointly covering
// every root in the open interval (lo, hi).
inline std::vector<IsolatingInterval> isolate_roots(const PolyQ& p, const Rational& lo,
                                                    const Rational& hi,
                                                    const Rational& eps = Rational(1, 65536)) {
    if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
    if (!(lo < hi)) throw std::invalid_argument("isolate_roots: needs lo < hi");
    if (eps <= Rational(0)) throw std::invalid_argument("isolate_roots: eps must be positive");

    PolyQ f = squarefree_part(p);
    for (const Rational& e : {lo, hi})
        while (f.degree() >= 1 && f.eval(e).is_zero())
            f = divmod(f, PolyQ({-e, Rational(1)})).first;
    if (f.degree() < 1) return {};
    SturmChain s = sturm_chain(f);

    auto count_in = [&](const Rational& a, const Rational& b) {
        return sturm_variations_at(s, a) - sturm_variations_at(s, b);
    };

    std::vector<IsolatingInterval> out;
    // Work queue of half-open cells (a, b] with their root counts.
    struct Cell {
        Rational a, b;
        int roots;
    };
    std::vector<Cell> todo{{lo, hi, count_in(lo, hi)}};
    while (!todo.empty()) {
        Cell cell = todo.back();
        todo.pop_back();
        if (cell.roots == 0) continue;
        if (cell.roots == 1 && cell.b - cell.a <= eps) {
            out.push_back({cell.a, cell.b});
            continue;
        }
        Rational mid = (cell.a + cell.b) / Rational(2);
        if (f.eval(mid).is_zero()) {
            // Root exactly on the split point: carve out a tiny cell around it.
            Rational delta = std::min(eps, cell.b - cell.a) / Rational(4);
            Rational a = mid - delta, b = mid + delta;
            while (count_in(a, b) > 1) {
                delta = delta / Rational(2);
                a = mid - delta;
                b = mid + delta;
            }
            out.push_back({a, b});
            int left = count_in(cell.a, a);
            int right = count_in(b, cell.b);
            if (left > 0) todo.push_back({cell.a, a, left});
            if (right > 0) todo.push_back({b, cell.b, right});
        } else {
            int left = count_in(cell.a, mid);
            if (left > 0) todo.push_back({cell.a, mid, left});
            int right = cell.roots - left;
            if (right > 0) todo.push_back({mid, cell.b, right});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatingInterval& x, const IsolatingInterval& y) { return x.lo < y.lo; });
    return out;
}

}  // namespace npstein
