#pragma once

// Laurent objects in one or several local variables xi_1..xi_nv over a
// coefficient ring R (complex series in times, point polynomials, ...).
// Exponent windows [lo_i, hi_i] are explicit truncation parameters: products
// silently drop exponents outside the window, so callers size windows so that
// every asserted coefficient is exact. A per-variable boolean marks an
// attached d(xi_i) factor (residue extraction requires it).

#include <map>
#include <vector>

#include "fay/core.hpp"

namespace fay {

struct LWindow {
    int nv = 1;
    std::vector<int> lo, hi;
    LWindow() = default;
    LWindow(int n, int l, int h) : nv(n), lo(n, l), hi(n, h) {}
    bool operator==(const LWindow&) const = default;
};

template <class R>
struct MLaurent {
    LWindow w;
    std::vector<bool> diff;          // carries d(xi_i)
    R proto;                         // a zero of R carrying R's configuration
    std::map<std::vector<int>, R> terms;

    MLaurent() = default;
    MLaurent(const LWindow& win, const R& zero_proto)
        : w(win), diff(win.nv, false), proto(zero_proto) {}

    static MLaurent zero(const LWindow& win, const R& zp) { return MLaurent(win, zp); }
    static MLaurent monomial(const LWindow& win, const R& zp,
                             const std::vector<int>& e, const R& c) {
        MLaurent m(win, zp);
        m.add_term(e, c);
        return m;
    }
    // xi_v^p with unit coefficient
    static MLaurent xi_pow(const LWindow& win, const R& zp, const R& one_r,
                           int v, int p) {
        std::vector<int> e(win.nv, 0);
        e[v] = p;
        return monomial(win, zp, e, one_r);
    }

    bool in_window(const std::vector<int>& e) const {
        for (int i = 0; i < w.nv; ++i)
            if (e[i] < w.lo[i] || e[i] > w.hi[i]) return false;
        return true;
    }

    void add_term(const std::vector<int>& e, const R& c) {
        if (!in_window(e) || is_zero(c)) return;
        auto it = terms.find(e);
        if (it == terms.end())
            terms.emplace(e, c);
        else {
            it->second = it->second + c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    MLaurent operator+(const MLaurent& o) const {
        require_compat(o);
        MLaurent r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    MLaurent operator-() const {
        MLaurent r(w, proto);
        r.diff = diff;
        for (auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    MLaurent operator-(const MLaurent& o) const { return *this + (-o); }
    MLaurent operator*(const MLaurent& o) const {
        require_compat_mul(o);
        MLaurent r(w, proto);
        for (int i = 0; i < w.nv; ++i)
            r.diff[i] = diff[i] || o.diff[i];
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) {
                std::vector<int> e(w.nv);
                for (int i = 0; i < w.nv; ++i) e[i] = e1[i] + e2[i];
                if (!in_window(e)) continue;
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    template <class S>
    MLaurent scaled(const S& c) const {
        MLaurent r(w, proto);
        r.diff = diff;
        for (auto& [e, cc] : terms) r.add_term(e, cc.scaled(c));
        return r;
    }
    MLaurent scaled_ring(const R& c) const {
        MLaurent r(w, proto);
        r.diff = diff;
        for (auto& [e, cc] : terms) r.add_term(e, cc * c);
        return r;
    }

    R coeff(const std::vector<int>& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? proto : it->second;
    }

    // coefficient of xi_v^p, returned as an (nv-1)-variable object
    MLaurent extract(int v, int p) const {
        LWindow nw;
        nw.nv = w.nv - 1;
        for (int i = 0; i < w.nv; ++i)
            if (i != v) {
                nw.lo.push_back(w.lo[i]);
                nw.hi.push_back(w.hi[i]);
            }
        MLaurent r(nw, proto);
        for (int i = 0, j = 0; i < w.nv; ++i)
            if (i != v) r.diff[j++] = diff[i];
        for (auto& [e, c] : terms) {
            if (e[v] != p) continue;
            std::vector<int> ne;
            for (int i = 0; i < w.nv; ++i)
                if (i != v) ne.push_back(e[i]);
            r.add_term(ne, c);
        }
        return r;
    }

    // Res_{xi_v -> 0}: coefficient of xi_v^{-1}; requires the d(xi_v) tag
    MLaurent residue(int v) const {
        if (!diff[v]) throw fay_error("residue of a non-differential object");
        return extract(v, -1);
    }

    // R-valued residue for single-variable objects
    R residue1() const {
        if (w.nv != 1) throw fay_error("residue1: not a 1-variable object");
        if (!diff[0]) throw fay_error("residue of a non-differential object");
        std::vector<int> e{-1};
        return coeff(e);
    }

    MLaurent with_diff(int v, bool on = true) const {
        MLaurent r = *this;
        r.diff[v] = on;
        return r;
    }

    void require_compat(const MLaurent& o) const {
        if (!(w == o.w)) throw fay_error("laurent window mismatch");
        if (diff != o.diff) throw fay_error("laurent differential-tag mismatch");
    }
    void require_compat_mul(const MLaurent& o) const {
        if (!(w == o.w)) throw fay_error("laurent window mismatch");
        for (int i = 0; i < w.nv; ++i)
            if (diff[i] && o.diff[i])
                throw fay_error("product would square a differential d(xi)");
    }
};

template <class R>
bool is_zero(const MLaurent<R>& m) {
    return m.terms.empty();
}

template <class R>
double max_abs_coeff(const MLaurent<R>& m) {
    double x = 0;
    for (auto& [e, c] : m.terms) x = std::max(x, max_abs_coeff(c));
    return x;
}

// Integer power (possibly negative) of (1 - u) where u is nilpotent under the
// ambient truncation (e.g. z_j/xi with bounded z-degree): (1-u)^p exactly
// within the window, via binomial series for p < 0.
template <class T>
T one_minus_pow(const T& u, int p, const T& one_t, int nilpotency_bound) {
    if (p >= 0) {
        T r = one_t, base = one_t - u;
        for (int i = 0; i < p; ++i) r = r * base;
        return r;
    }
    int n = -p;
    // (1-u)^{-n} = sum_j C(n-1+j, j) u^j
    T r = one_t, upow = one_t;
    double binom = 1.0;
    for (int j = 1; j <= nilpotency_bound; ++j) {
        upow = upow * u;
        if (is_zero(upow)) break;
        binom = binom * static_cast<double>(n - 1 + j) / static_cast<double>(j);
        r = r + upow.scaled(cplx(binom));
    }
    return r;
}

}  // namespace fay
