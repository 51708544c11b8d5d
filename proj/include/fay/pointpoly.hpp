#pragma once

// Polynomials in a finite set of point coordinates z_0..z_{nv-1}, truncated at
// a joint (total) degree. Used for series-in-the-points Fay/Hirota residuals.

#include <map>
#include <vector>

#include "fay/core.hpp"

namespace fay {

template <class C>
struct PointPoly {
    int nv = 0;
    long trunc = 0;  // max total degree
    std::map<std::vector<int>, C> terms;

    PointPoly() = default;
    PointPoly(int nvars, long n) : nv(nvars), trunc(n) {}

    static PointPoly constant(int nv, long n, const C& c) {
        PointPoly p(nv, n);
        if (!is_zero(c)) p.terms[std::vector<int>(nv, 0)] = c;
        return p;
    }
    static PointPoly one(int nv, long n) { return constant(nv, n, C(1)); }
    static PointPoly var(int i, int nv, long n) {
        PointPoly p(nv, n);
        std::vector<int> e(nv, 0);
        e[i] = 1;
        if (n >= 1) p.terms[e] = C(1);
        return p;
    }

    static long total(const std::vector<int>& e) {
        long d = 0;
        for (int x : e) d += x;
        return d;
    }

    void add_term(const std::vector<int>& e, const C& c) {
        if (total(e) > trunc || is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    PointPoly operator+(const PointPoly& o) const {
        PointPoly r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    PointPoly operator-() const {
        PointPoly r(nv, trunc);
        for (auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    PointPoly operator-(const PointPoly& o) const { return *this + (-o); }
    PointPoly operator*(const PointPoly& o) const {
        PointPoly r(nv, trunc);
        for (auto& [e1, c1] : terms) {
            long d1 = total(e1);
            for (auto& [e2, c2] : o.terms) {
                if (d1 + total(e2) > trunc) continue;
                std::vector<int> e(nv);
                for (int i = 0; i < nv; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        }
        return r;
    }
    PointPoly scaled(const C& c) const {
        PointPoly r(nv, trunc);
        if (is_zero(c)) return r;
        for (auto& [e, cc] : terms) r.terms[e] = cc * c;
        return r;
    }

    C coeff(const std::vector<int>& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? C(0) : it->second;
    }

    // evaluate at a concrete point vector
    C eval(const std::vector<C>& z) const {
        C acc(0);
        for (auto& [e, c] : terms) {
            C p = c;
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < e[i]; ++j) p *= z[i];
            acc += p;
        }
        return acc;
    }
};

template <class C>
bool is_zero(const PointPoly<C>& p) {
    return p.terms.empty();
}

inline double max_abs_coeff(const PointPoly<cplx>& p) {
    double m = 0;
    for (auto& [e, c] : p.terms) m = std::max(m, std::abs(c));
    return m;
}

using ZPoly = PointPoly<cplx>;

}  // namespace fay
