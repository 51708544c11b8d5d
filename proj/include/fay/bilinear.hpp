#pragma once

// Hirota bilinear operators D_1, D_2, ... with exact rational coefficients:
// the generator D_mu, canonical printing, and application to pairs of series.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fay/core.hpp"
#include "fay/series.hpp"

namespace fay {

struct BilinearOp {
    // multi-index over symbols D_k -> exact rational coefficient
    std::map<Multi, Rational> terms;

    void add(const Multi& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    BilinearOp even_part() const {
        BilinearOp r;
        for (auto& [m, c] : terms)
            if (m.order() % 2 == 0) r.add(m, c);
        return r;
    }
    long graded_degree() const {  // deg D_k = k; 0 for the zero operator
        long d = 0;
        for (auto& [m, c] : terms) d = std::max(d, m.weighted_degree());
        return d;
    }
};

// enumerate multi-indices m with sum k*m_k == s (partitions of s)
inline void partitions_rec(int s, int kmin, Multi cur,
                           std::vector<Multi>& out) {
    if (s == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = kmin; k <= s; ++k)
        partitions_rec(s - k, k, cur.plus(k), out);
}
inline std::vector<Multi> partitions(int s) {
    std::vector<Multi> out;
    partitions_rec(s, 1, Multi{}, out);
    return out;
}

// D_mu = Res_{xi->0} dxi/xi^2 e^{sum_k xi^k D_k}
//        prod_j (D_j - (2/j) xi^{-j})^{mu_j} / mu_j!
// mu is given as mu[j-1] = mu_j.
inline BilinearOp dmu(const std::vector<int>& mu, bool even_reduce = false) {
    BilinearOp op;
    size_t nj = mu.size();
    // enumerate choices a_j in [0, mu_j] of how many D_j factors are taken
    std::vector<int> a(nj, 0);
    auto emit = [&]() {
        // remaining factors contribute prod_j (-2/j)^{mu_j-a_j} xi^{-j(mu_j-a_j)}
        long s = 1;  // required xi power from the exponential: 1 + sum j(mu_j-a_j)
        Rational coef = 1;
        Multi base;
        for (size_t idx = 0; idx < nj; ++idx) {
            int j = static_cast<int>(idx) + 1;
            int b = mu[idx] - a[idx];
            s += static_cast<long>(j) * b;
            Rational f = Rational(-2) / j;
            for (int q = 0; q < b; ++q) coef *= f;
            coef /= factorial(a[idx]) * factorial(b);
            if (a[idx] > 0) base = base + Multi::unit(j, a[idx]);
        }
        for (auto& m : partitions(static_cast<int>(s))) {
            Rational c = coef;
            for (auto& [k, e] : m.e) c /= factorial(e);
            op.add(base + m, c);
        }
    };
    // odometer over a
    while (true) {
        emit();
        size_t i = 0;
        for (; i < nj; ++i) {
            if (a[i] < mu[i]) {
                ++a[i];
                break;
            }
            a[i] = 0;
        }
        if (i == nj) break;
    }
    return even_reduce ? op.even_part() : op;
}

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// canonical text form: terms sorted by graded degree then lexicographic
// multi-index (descending exponent of D_1, then D_2, ...), e.g.
// "-1/6*D1^3 - D3"
inline std::string to_string(const BilinearOp& op) {
    if (op.terms.empty()) return "0";
    std::vector<std::pair<Multi, Rational>> v(op.terms.begin(), op.terms.end());
    auto dense = [](const Multi& m) {
        std::vector<int> d;
        for (auto& [k, e] : m.e) {
            if (static_cast<int>(d.size()) < k) d.resize(k, 0);
            d[k - 1] = e;
        }
        return d;
    };
    std::sort(v.begin(), v.end(), [&](auto& x, auto& y) {
        long dx = x.first.weighted_degree(), dy = y.first.weighted_degree();
        if (dx != dy) return dx < dy;
        return dense(x.first) > dense(y.first);
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : v) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string mono;
        {
            std::ostringstream ms;
            bool mf = true;
            for (auto& [k, e] : m.e) {
                if (!mf) ms << "*";
                mf = false;
                ms << "D" << k;
                if (e > 1) ms << "^" << e;
            }
            mono = ms.str();
        }
        if (mono.empty()) {
            os << rational_str(ac);
        } else if (ac == 1) {
            os << mono;
        } else {
            os << rational_str(ac) << "*" << mono;
        }
    }
    return os.str();
}

template <class C>
C rational_to(const Rational& r);
template <>
inline cplx rational_to<cplx>(const Rational& r) {
    return cplx(r.convert_to<double>());
}
template <>
inline Rational rational_to<Rational>(const Rational& r) {
    return r;
}

// f B g with D_k = (left d/dt_k) - (right d/dt_k):
//   prod D_k^{m_k} (f,g) = sum_{a<=m} prod C(m_k,a_k)(-1)^{m_k-a_k}
//                          (d^a f)(d^{m-a} g)
template <class C>
Series<C> apply_bilinear(const BilinearOp& op, const Series<C>& f,
                         const Series<C>& g) {
    f.require_same_trunc(g);
    Series<C> res = Series<C>::zero(f.trunc);
    for (auto& [m, c] : op.terms) {
        // enumerate splittings a <= m
        std::vector<std::pair<int, int>> km(m.e.begin(), m.e.end());
        std::vector<int> a(km.size(), 0);
        while (true) {
            Rational bc = 1;
            long bsum = 0;
            Series<C> df = f, dg = g;
            for (size_t i = 0; i < km.size(); ++i) {
                auto [k, mm] = km[i];
                int ai = a[i], bi = mm - ai;
                bsum += bi;
                bc *= factorial(mm) / (factorial(ai) * factorial(bi));
                for (int q = 0; q < ai; ++q) df = df.derivative(k);
                for (int q = 0; q < bi; ++q) dg = dg.derivative(k);
            }
            Rational cc = c * bc;
            if (bsum % 2 == 1) cc = -cc;
            res = res + (df * dg).scaled(rational_to<C>(cc));
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

}  // namespace fay
