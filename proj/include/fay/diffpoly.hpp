#pragma once

// Differential polynomials in an unknown function F of the times: exact
// rational algebra on products of partial derivatives of F. Used to expand
// T D_mu T with T = e^F symbolically (KP derivation).

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "fay/bilinear.hpp"
#include "fay/core.hpp"

namespace fay {

// monomial: sorted multiset of derivative multi-indices of F
using DiffMono = std::vector<Multi>;

struct DiffPoly {
    std::map<DiffMono, Rational> terms;

    static DiffPoly one() {
        DiffPoly p;
        p.terms[{}] = 1;
        return p;
    }
    static DiffPoly deriv_of_F(const Multi& m) {
        DiffPoly p;
        p.terms[{m}] = 1;
        return p;
    }

    void add(DiffMono m, const Rational& c) {
        if (c == 0) return;
        std::sort(m.begin(), m.end());
        auto [it, fresh] = terms.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    DiffPoly operator+(const DiffPoly& o) const {
        DiffPoly r = *this;
        for (auto& [m, c] : o.terms) r.add(m, c);
        return r;
    }
    DiffPoly operator-(const DiffPoly& o) const {
        DiffPoly r = *this;
        for (auto& [m, c] : o.terms) r.add(m, -c);
        return r;
    }
    DiffPoly operator*(const DiffPoly& o) const {
        DiffPoly r;
        for (auto& [m1, c1] : terms)
            for (auto& [m2, c2] : o.terms) {
                DiffMono m = m1;
                m.insert(m.end(), m2.begin(), m2.end());
                r.add(std::move(m), c1 * c2);
            }
        return r;
    }
    DiffPoly scaled(const Rational& c) const {
        DiffPoly r;
        for (auto& [m, cc] : terms) r.add(m, cc * c);
        return r;
    }
    // d/dt_k by the Leibniz rule (each factor's multi-index is bumped)
    DiffPoly derivative(int k) const {
        DiffPoly r;
        for (auto& [m, c] : terms)
            for (size_t i = 0; i < m.size(); ++i) {
                DiffMono nm = m;
                nm[i] = nm[i].plus(k);
                r.add(std::move(nm), c);
            }
        return r;
    }
    bool operator==(const DiffPoly& o) const { return terms == o.terms; }
};

// E(alpha) = e^{-F} d^alpha e^{F} as a differential polynomial, built by the
// recursion E(alpha + e_k) = d/dt_k E(alpha) + (d_k F) E(alpha).
inline DiffPoly bell_poly(const Multi& alpha) {
    DiffPoly e = DiffPoly::one();
    for (auto& [k, mult] : alpha.e)
        for (int q = 0; q < mult; ++q)
            e = e.derivative(k) + DiffPoly::deriv_of_F(Multi::unit(k)) * e;
    return e;
}

// e^{-2F} (e^F B e^F): symbolic bilinear expansion
inline DiffPoly apply_bilinear_expF(const BilinearOp& op) {
    DiffPoly res;
    for (auto& [m, c] : op.terms) {
        std::vector<std::pair<int, int>> km(m.e.begin(), m.e.end());
        std::vector<int> a(km.size(), 0);
        while (true) {
            Rational bc = c;
            long bsum = 0;
            Multi left, right;
            for (size_t i = 0; i < km.size(); ++i) {
                auto [k, mm] = km[i];
                int ai = a[i], bi = mm - ai;
                bsum += bi;
                bc *= factorial(mm) / (factorial(ai) * factorial(bi));
                if (ai) left = left + Multi::unit(k, ai);
                if (bi) right = right + Multi::unit(k, bi);
            }
            if (bsum % 2 == 1) bc = -bc;
            res = res + (bell_poly(left) * bell_poly(right)).scaled(bc);
            size_t i = 0;
            for (; i < km.size(); ++i) {
                if (a[i] < km[i].second) {
                    ++a[i];
                    break;
                }
                a[i] = 0;
            }
            if (i == km.size()) break;
        }
    }
    return res;
}

inline std::string to_string(const DiffPoly& p) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : p.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        for (auto& mi : m) {
            os << "*F";
            for (auto& [k, e] : mi.e)
                for (int q = 0; q < e; ++q) os << "_" << k;
        }
    }
    return os.str();
}

}  // namespace fay
