#pragma once

// Formal-core operations: Sato shifts, the insertion operator Delta, the
// potential dV, residue extraction and correlators W_n, on truncated graded
// series with Laurent objects in local variables xi_i.

#include "fay/mlaurent.hpp"
#include "fay/series.hpp"

namespace fay {

template <class C>
using LSeries = MLaurent<Series<C>>;  // Laurent in xi over times-series

// log/exp with general constant term (complex coefficients)
inline CSeries log_full(const CSeries& f) {
    cplx c = f.constant_term();
    if (is_zero(c)) throw fay_error("log of series with zero constant term");
    CSeries r = f.scaled(1.0 / c).log1();
    r.add_term(Multi{}, std::log(c));
    return r;
}
inline CSeries exp_full(const CSeries& f) {
    cplx c = f.constant_term();
    CSeries g = f;
    g.terms.erase(Multi{});
    return g.exp0().scaled(std::exp(c));
}

// f(t + sign*alpha*[xi]) as a Laurent object with non-negative xi powers.
template <class C>
LSeries<C> sato_shift(const Series<C>& f, const C& alpha, int sign) {
    long n = f.trunc;
    LWindow w(1, 0, static_cast<int>(n));
    Series<C> zp = Series<C>::zero(n);
    LSeries<C> one_l =
        LSeries<C>::monomial(w, zp, {0}, Series<C>::one(n));
    C a = alpha * C(sign);
    auto s = [&](int k) {
        LSeries<C> r(w, zp);
        r.add_term({0}, Series<C>::time_var(k, n));
        if (k <= n) r.add_term({k}, Series<C>::constant(n, a));
        return r;
    };
    return f.template subst<LSeries<C>>(s, one_l);
}

// Delta_{xi_v} acting on a Laurent object (differentiate coefficients):
// Delta_xi = d(xi) * sum_k k xi^{k-1} d/dt_k. kmax bounds the sum; for a
// series truncated at N only k <= N contribute.
template <class C>
LSeries<C> apply_insertion(const LSeries<C>& L, int v, long kmax) {
    LSeries<C> r(L.w, L.proto);
    r.diff = L.diff;
    if (r.diff[v]) throw fay_error("insertion: variable already differential");
    r.diff[v] = true;
    for (auto& [e, c] : L.terms)
        for (int k = 1; k <= kmax; ++k) {
            Series<C> d = c.derivative(k);
            if (is_zero(d)) continue;
            std::vector<int> ne = e;
            ne[v] += k - 1;
            r.add_term(ne, d.scaled(C(k)));
        }
    return r;
}

// Delta_xi f for a plain series, as a 1-variable Laurent object.
template <class C>
LSeries<C> insertion(const Series<C>& f, int lo = 0, int hi = -1) {
    long n = f.trunc;
    if (hi < 0) hi = static_cast<int>(n);
    LWindow w(1, lo, hi);
    LSeries<C> L(w, Series<C>::zero(n));
    L.add_term({0}, f);
    return apply_insertion(L, 0, n);
}

// embed a series into an nv-variable Laurent ring (xi-independent)
template <class C>
LSeries<C> embed(const Series<C>& f, const LWindow& w) {
    LSeries<C> L(w, Series<C>::zero(f.trunc));
    L.add_term(std::vector<int>(w.nv, 0), f);
    return L;
}

// dV_t(xi_v) = -sum_k t_k xi_v^{-k-1} d(xi_v), with symbolic times, within
// the window (only finitely many k appear).
template <class C>
LSeries<C> dV_symbolic(const LWindow& w, long n, int v) {
    LSeries<C> r(w, Series<C>::zero(n));
    r.diff[v] = true;
    for (int k = 1; -k - 1 >= w.lo[v]; ++k) {
        std::vector<int> e(w.nv, 0);
        e[v] = -k - 1;
        r.add_term(e, Series<C>::time_var(k, n).scaled(C(-1)));
    }
    return r;
}

// expansion of d(xi_a) d(xi_b) / (xi_a - xi_b)^2 in |xi_b| < |xi_a|:
// sum_{k>=1} k xi_b^{k-1} xi_a^{-k-1}
template <class C>
LSeries<C> double_pole_counterterm(const LWindow& w, long n, int a, int b) {
    LSeries<C> r(w, Series<C>::zero(n));
    r.diff[a] = r.diff[b] = true;
    for (int k = 1; k - 1 <= w.hi[b] && -k - 1 >= w.lo[a]; ++k) {
        std::vector<int> e(w.nv, 0);
        e[a] = -k - 1;
        e[b] = k - 1;
        r.add_term(e, Series<C>::constant(n, C(k)));
    }
    return r;
}

// Correlators W_n of ln T:
//   W_1 = Delta ln T - dV, W_2 = Delta Delta ln T + double-pole counterterm,
//   W_n = Delta^n ln T for n >= 3.  include_counterterms switches the dV and
//   double-pole corrections (the "connected" normalization of the paper).
inline LSeries<cplx> correlator(const CSeries& T, int n, const LWindow& w,
                                bool include_counterterms = true) {
    CSeries lnT = log_full(T);
    LSeries<cplx> r = embed(lnT, w);
    for (int v = 0; v < n; ++v) r = apply_insertion(r, v, T.trunc);
    if (include_counterterms) {
        if (n == 1) r = r - dV_symbolic<cplx>(w, T.trunc, 0);
        if (n == 2) r = r + double_pole_counterterm<cplx>(w, T.trunc, 0, 1);
    }
    return r;
}

}  // namespace fay
