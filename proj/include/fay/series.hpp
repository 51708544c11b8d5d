#pragma once

// Truncated graded formal series in the times t_1, t_2, ... with deg t_k = k.
// Coefficients C are either exact rationals or complex doubles; all operations
// truncate at an explicit degree N carried by the value.

#include <functional>
#include <map>

#include "fay/core.hpp"

namespace fay {

template <class C>
struct Series {
    long trunc = 0;               // max weighted degree kept
    std::map<Multi, C> terms;     // canonical sparse form: no zero coefficients

    Series() = default;
    explicit Series(long n) : trunc(n) {}

    static Series zero(long n) { return Series(n); }
    static Series constant(long n, const C& c) {
        Series s(n);
        if (!is_zero(c)) s.terms[Multi{}] = c;
        return s;
    }
    static Series one(long n) { return constant(n, C(1)); }
    // the series t_k
    static Series time_var(int k, long n) {
        Series s(n);
        if (k <= n) s.terms[Multi::unit(k)] = C(1);
        return s;
    }

    bool is_zero_series() const { return terms.empty(); }
    C coeff(const Multi& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? C(0) : it->second;
    }
    C constant_term() const { return coeff(Multi{}); }

    void add_term(const Multi& m, const C& c) {
        if (m.weighted_degree() > trunc || is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    Series retruncated(long n) const {
        Series r(n);
        for (auto& [m, c] : terms)
            if (m.weighted_degree() <= n) r.terms[m] = c;
        return r;
    }

    Series operator+(const Series& o) const {
        require_same_trunc(o);
        Series r = *this;
        for (auto& [m, c] : o.terms) r.add_term(m, c);
        return r;
    }
    Series operator-() const {
        Series r(trunc);
        for (auto& [m, c] : terms) r.terms[m] = -c;
        return r;
    }
    Series operator-(const Series& o) const { return *this + (-o); }
    Series operator*(const Series& o) const {
        require_same_trunc(o);
        Series r(trunc);
        for (auto& [m1, c1] : terms) {
            long d1 = m1.weighted_degree();
            for (auto& [m2, c2] : o.terms) {
                if (d1 + m2.weighted_degree() > trunc) continue;
                r.add_term(m1 + m2, c1 * c2);
            }
        }
        return r;
    }
    Series scaled(const C& c) const {
        Series r(trunc);
        if (is_zero(c)) return r;
        for (auto& [m, cc] : terms) r.terms[m] = cc * c;
        return r;
    }

    // d/dt_k
    Series derivative(int k) const {
        Series r(trunc);
        for (auto& [m, c] : terms) {
            int e = m.exponent(k);
            if (e == 0) continue;
            r.add_term(m.plus(k, -1), c * C(e));
        }
        return r;
    }

    // exp of a series with zero constant term (finite because val >= 1)
    Series exp0() const {
        if (!is_zero(constant_term()))
            throw fay_error("exp0: nonzero constant term");
        Series r = one(trunc), p = one(trunc);
        C f(1);
        for (long j = 1; j <= trunc; ++j) {
            p = p * (*this);
            if (p.is_zero_series()) break;
            f *= C(static_cast<double>(j));
            // divide by j!: multiply by 1/f — needs field C
            r = r + p.scaled(C(1) / f);
        }
        return r;
    }
    // log of a series with constant term 1
    Series log1() const {
        if (constant_term() != C(1))
            throw fay_error("log1: constant term must be 1");
        Series g = *this - one(trunc);
        Series r = zero(trunc), p = one(trunc);
        for (long j = 1; j <= trunc; ++j) {
            p = p * g;
            if (p.is_zero_series()) break;
            C sgn = (j % 2 == 1) ? C(1) : C(-1);
            r = r + p.scaled(sgn / C(static_cast<double>(j)));
        }
        return r;
    }
    // multiplicative inverse; requires nonzero constant term
    Series inverse() const {
        C c = constant_term();
        if (is_zero(c)) throw fay_error("inverse: zero constant term");
        Series g = scaled(C(1) / c) - one(trunc);  // val >= 1
        Series r = zero(trunc), p = one(trunc);
        r = r + p;
        for (long j = 1; j <= trunc; ++j) {
            p = p * g;
            if (p.is_zero_series()) break;
            r = r + p.scaled((j % 2 == 1) ? C(-1) : C(1));
        }
        return r.scaled(C(1) / c);
    }

    // Substitute t_k -> s(k) in a ring R. `one` supplies R's multiplicative
    // identity (carrying any truncation configuration R values need).
    template <class R, class S>
    R subst(S s, const R& one_r) const {
        R acc = one_r.scaled(C(0));
        std::map<std::pair<int, int>, R> pw;
        for (auto& [m, c] : terms) {
            R prod = one_r;
            for (auto& [k, e] : m.e) {
                auto key = std::make_pair(k, e);
                auto it = pw.find(key);
                if (it == pw.end()) {
                    R p = one_r;
                    R base = s(k);
                    for (int i = 0; i < e; ++i) p = p * base;
                    it = pw.emplace(key, std::move(p)).first;
                }
                prod = prod * it->second;
            }
            acc = acc + prod.scaled(c);
        }
        return acc;
    }

    void require_same_trunc(const Series& o) const {
        if (trunc != o.trunc) throw fay_error("series truncation degree mismatch");
    }
};

template <class C>
bool is_zero(const Series<C>& s) {
    return s.terms.empty();
}

// max |coefficient| of a complex series (for residual assertions)
inline double max_abs_coeff(const Series<cplx>& s) {
    double m = 0;
    for (auto& [mi, c] : s.terms) m = std::max(m, std::abs(c));
    return m;
}

using CSeries = Series<cplx>;
using QSeries = Series<Rational>;

}  // namespace fay
