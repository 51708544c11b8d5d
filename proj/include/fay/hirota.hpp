#pragma once

// Hirota bilinear residuals (operator route and direct residue route), the
// divisor-weighted Hirota identity over point polynomials, cocycle-dressed
// tau-section ratios and the Fay determinant / three-term identities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "fay/bilinear.hpp"
#include "fay/divisor.hpp"
#include "fay/formal.hpp"
#include "fay/pointpoly.hpp"

namespace fay {

// determinant of a complex matrix (partial-pivot elimination)
inline cplx cdet(std::vector<std::vector<cplx>> a) {
    size_t n = a.size();
    cplx d = 1.0;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        if (is_zero(a[c][c])) return 0.0;
        d *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            cplx f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

// evaluate a times-series at a concrete vector (tv[k-1] is the value of t_k;
// missing entries count as zero)
inline cplx eval_times(const CSeries& s, const std::vector<cplx>& tv) {
    cplx r = 0.0;
    for (auto& [m, c] : s.terms) {
        cplx p = c;
        bool drop = false;
        for (auto& [k, e] : m.e) {
            if (k > static_cast<int>(tv.size()) || is_zero(tv[k - 1])) {
                drop = true;
                break;
            }
            p *= ipow(tv[k - 1], e);
        }
        if (!drop) r += p;
    }
    return r;
}

// KP residual of F = ln T:
//   d2^2 F + (1/12)(d1^4 F + 6 (d1^2 F)^2) - d1 d3 F
inline CSeries kp_residual(const CSeries& T) {
    CSeries F = log_full(T);
    auto d = [&](std::initializer_list<int> ks) {
        CSeries r = F;
        for (int k : ks) r = r.derivative(k);
        return r;
    };
    CSeries d11 = d({1, 1});
    return d({2, 2}) +
           (d({1, 1, 1, 1}) + (d11 * d11).scaled(6.0)).scaled(1.0 / 12.0) -
           d({1, 3});
}

// D_mu(T, T) through the expanded bilinear operator. out_trunc limits the
// degree of the result; derivatives are taken from the full-precision series
// first, so every kept coefficient is exact when T.trunc >= out_trunc +
// graded degree of D_mu.
inline CSeries hirota_residual(const std::vector<int>& mu, const CSeries& T,
                               long out_trunc = -1) {
    long out = out_trunc < 0 ? T.trunc : out_trunc;
    BilinearOp op = dmu(mu);
    std::map<Multi, CSeries> dcache;
    auto deriv = [&](const Multi& a) -> const CSeries& {
        auto it = dcache.find(a);
        if (it == dcache.end()) {
            CSeries d = T;
            for (auto& [k, e] : a.e)
                for (int q = 0; q < e; ++q) d = d.derivative(k);
            it = dcache.emplace(a, d.retruncated(out)).first;
        }
        return it->second;
    };
    CSeries res = CSeries::zero(out);
    for (auto& [m, c] : op.terms) {
        std::vector<std::pair<int, int>> km(m.e.begin(), m.e.end());
        std::vector<int> a(km.size(), 0);
        while (true) {
            Rational bc = c;
            long bsum = 0;
            Multi am, bm;
            for (size_t i = 0; i < km.size(); ++i) {
                auto [k, mm] = km[i];
                int ai = a[i], bi = mm - ai;
                bsum += bi;
                bc *= factorial(mm) / (factorial(ai) * factorial(bi));
                if (ai) am = am + Multi::unit(k, ai);
                if (bi) bm = bm + Multi::unit(k, bi);
            }
            if (bsum % 2) bc = -bc;
            res = res + (deriv(am) * deriv(bm)).scaled(rational_to<cplx>(bc));
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

// D_mu(T, T) through the residue definition:
//   sum_{a+b+c=mu} prod_k [1/a_k! (-1)^{b_k}/b_k! (-2/k)^{c_k}/c_k!]
//     Res dxi xi^{-2 - sum k c_k} (d^a T)(t+[xi]) (d^b T)(t-[xi])
inline CSeries hirota_residual_direct(const std::vector<int>& mu,
                                      const CSeries& T, long out_trunc = -1) {
    long N = T.trunc;
    long out = out_trunc < 0 ? N : out_trunc;
    int g = 1;
    for (size_t i = 0; i < mu.size(); ++i)
        g += static_cast<int>(i + 1) * mu[i];
    if (g > N) throw fay_error("hirota: series truncation below operator degree");

    // shifted derivative series with xi powers capped at g and coefficient
    // degree capped at out (both exact within those caps)
    auto shifted = [&](const Multi& a, int sign) {
        CSeries d = T;
        for (auto& [k, e] : a.e)
            for (int q = 0; q < e; ++q) d = d.derivative(k);
        LWindow w(1, 0, g);
        LSeries<cplx> full(w, CSeries::zero(N));
        {
            LSeries<cplx> one_l =
                LSeries<cplx>::monomial(w, CSeries::zero(N), {0}, CSeries::one(N));
            cplx al(sign);
            auto s = [&](int k) {
                LSeries<cplx> r(w, CSeries::zero(N));
                r.add_term({0}, CSeries::time_var(k, N));
                if (k <= g) r.add_term({k}, CSeries::constant(N, al));
                return r;
            };
            full = d.subst<LSeries<cplx>>(s, one_l);
        }
        LSeries<cplx> capped(full.w, CSeries::zero(out));
        for (auto& [e, c] : full.terms) capped.add_term(e, c.retruncated(out));
        return capped;
    };
    std::map<std::pair<Multi, int>, LSeries<cplx>> cache;
    auto shifted_cached = [&](const Multi& a, int sign) -> const LSeries<cplx>& {
        auto key = std::make_pair(a, sign);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, shifted(a, sign)).first;
        return it->second;
    };

    size_t nj = mu.size();
    CSeries res = CSeries::zero(out);
    std::vector<int> a(nj, 0), b(nj, 0);
    auto odometer = [](std::vector<int>& v, const auto& cap) {
        size_t i = 0;
        for (; i < v.size(); ++i) {
            if (v[i] < cap(i)) {
                ++v[i];
                return true;
            }
            v[i] = 0;
        }
        return false;
    };
    while (true) {
        std::fill(b.begin(), b.end(), 0);
        while (true) {
            Rational coef = 1;
            long p = 1;
            Multi am, bm;
            for (size_t i = 0; i < nj; ++i) {
                int j = static_cast<int>(i) + 1;
                int ci = mu[i] - a[i] - b[i];
                coef /= factorial(a[i]) * factorial(b[i]) * factorial(ci);
                if (b[i] % 2) coef = -coef;
                Rational f = Rational(-2) / j;
                for (int q = 0; q < ci; ++q) coef *= f;
                p += static_cast<long>(j) * ci;
                if (a[i]) am = am + Multi::unit(j, a[i]);
                if (b[i]) bm = bm + Multi::unit(j, b[i]);
            }
            const LSeries<cplx>& L = shifted_cached(am, +1);
            const LSeries<cplx>& R = shifted_cached(bm, -1);
            CSeries cp = CSeries::zero(out);
            for (auto& [e1, c1] : L.terms) {
                int need = static_cast<int>(p) - e1[0];
                if (need < 0 || need > g) continue;
                cp = cp + c1 * R.coeff({need});
            }
            res = res + cp.scaled(rational_to<cplx>(coef));
            if (!odometer(b, [&](size_t i) { return mu[i] - a[i]; })) break;
        }
        if (!odometer(a, [&](size_t i) { return mu[i]; })) break;
    }
    return res;
}

// divisor-weighted Hirota residual with symbolic points z_j of integer
// weights alpha_j, exact through joint z-degree nz (requires nz + 1 <=
// T.trunc):
//   Res dxi/xi^2 T(t+[D]+[xi]) T(t-[D]-[xi]) prod_j (1 - z_j/xi)^{2 alpha_j}
inline ZPoly hirota_divisor_residual(const CSeries& T,
                                     const std::vector<int>& alpha, long nz) {
    int nv = static_cast<int>(alpha.size());
    if (nz + 1 > T.trunc)
        throw fay_error("hirota divisor: truncation below z-degree");
    LWindow w(1, -static_cast<int>(nz) - 2, static_cast<int>(nz) + 2);
    ZPoly zp(nv, nz);
    using L = MLaurent<ZPoly>;
    L one_l = L::monomial(w, zp, {0}, ZPoly::one(nv, nz));
    auto shift = [&](int sign) {
        auto s = [&](int k) {
            L r(w, zp);
            ZPoly zs(nv, nz);
            for (int j = 0; j < nv; ++j) {
                std::vector<int> e(nv, 0);
                e[j] = k;
                zs.add_term(e, cplx(static_cast<double>(sign * alpha[j])));
            }
            r.add_term({0}, zs);
            if (k <= w.hi[0])
                r.add_term({k}, ZPoly::constant(nv, nz, cplx(sign)));
            return r;
        };
        return T.subst<L>(s, one_l);
    };
    L prod = shift(+1) * shift(-1);
    for (int j = 0; j < nv; ++j) {
        L u = L::monomial(w, zp, {-1}, ZPoly::var(j, nv, nz));
        prod = prod * one_minus_pow(u, 2 * alpha[j], one_l, static_cast<int>(nz));
    }
    return prod.coeff({1});
}

// A tau section over divisors: the plain times-function ratio
// hat T(t0 + [D]) / hat T(t0) plus the base times entering the exponential
// cocycle. ratio() is the dressed section ratio in the stored (interleaved)
// divisor order.
struct TauContext {
    std::function<cplx(const Divisor&)> that_ratio;
    std::map<int, cplx> t0;

    static TauContext trivial() {
        return {[](const Divisor&) { return cplx(1.0); }, {}};
    }

    cplx efactor(const Divisor& d) const {
        cplx s = 0.0;
        for (auto& [k, tk] : t0)
            s += tk * d.trace_inverse_power(k) / static_cast<double>(k);
        return std::exp(-s);
    }
    cplx ratio(const Divisor& d) const {
        return efactor(d) * prime_weight(d) * that_ratio(d);
    }
    // Szego-type kernel K(w, z) = dressed ratio of [z] - [w]
    cplx kernel(cplx w, cplx z) const {
        return ratio(Divisor{{z, cplx(1.0)}, {w, cplx(-1.0)}});
    }
};

// context whose plain ratio evaluates a times-series at the Sato vector of D
inline TauContext series_context(CSeries That, std::map<int, cplx> t0) {
    int n = static_cast<int>(That.trunc);
    return {[That = std::move(That), n](const Divisor& d) {
                return eval_times(That, d.sato_vector(n));
            },
            std::move(t0)};
}

// | ratio(interleaved full divisor) - det K(w_i, z_j) |, relative
inline double fay_det_residual(const TauContext& ctx, const std::vector<cplx>& z,
                               const std::vector<cplx>& w) {
    size_t n = z.size();
    Divisor full;
    for (size_t j = 0; j < n; ++j) {
        full.points.push_back({z[j], cplx(1.0)});
        full.points.push_back({w[j], cplx(-1.0)});
    }
    full.check_distinct();
    cplx lhs = ctx.ratio(full);
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = ctx.kernel(w[i], z[j]);
    cplx rhs = cdet(std::move(m));
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

// three-term (n = 2) Fay identity with polynomial denominators cleared; the
// prime weights and exponential cocycles cancel, so only the plain ratio
// enters:
//   -(z1-z2)(w1-w2) R([z1]+[z2]-[w1]-[w2])
//     = R([z1]-[w1]) R([z2]-[w2]) (z1-w2)(z2-w1)
//     - R([z2]-[w1]) R([z1]-[w2]) (z1-w1)(z2-w2)
inline double fay_n2_residual(const TauContext& ctx, cplx z1, cplx z2, cplx w1,
                              cplx w2) {
    auto R = [&](const Divisor& d) { return ctx.that_ratio(d); };
    cplx lhs = -(z1 - z2) * (w1 - w2) *
               R(Divisor{{z1, cplx(1.0)},
                         {z2, cplx(1.0)},
                         {w1, cplx(-1.0)},
                         {w2, cplx(-1.0)}});
    cplx rhs = R(Divisor{{z1, cplx(1.0)}, {w1, cplx(-1.0)}}) *
                   R(Divisor{{z2, cplx(1.0)}, {w2, cplx(-1.0)}}) * (z1 - w2) *
                   (z2 - w1) -
               R(Divisor{{z2, cplx(1.0)}, {w1, cplx(-1.0)}}) *
                   R(Divisor{{z1, cplx(1.0)}, {w2, cplx(-1.0)}}) * (z1 - w1) *
                   (z2 - w2);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

// the same identity with the four points symbolic, exact through joint
// degree nz (requires That.trunc >= nz); returns the max coefficient of the
// polynomial residual. Variables: z1, z2, w1, w2.
inline double fay_n2_formal_residual(const CSeries& That, long nz) {
    const int nv = 4;
    if (That.trunc < nz)
        throw fay_error("fay_n2_formal: truncation below z-degree");
    ZPoly one = ZPoly::one(nv, nz);
    auto zv = [&](int i) { return ZPoly::var(i, nv, nz); };
    auto Rh = [&](std::initializer_list<std::pair<int, double>> pts) {
        auto s = [&](int k) {
            ZPoly acc(nv, nz);
            for (auto& [i, al] : pts) {
                std::vector<int> e(nv, 0);
                e[i] = k;
                acc.add_term(e, cplx(al));
            }
            return acc;
        };
        return That.subst<ZPoly>(s, one);
    };
    ZPoly rfull = Rh({{0, 1.0}, {1, 1.0}, {2, -1.0}, {3, -1.0}});
    ZPoly r11 = Rh({{0, 1.0}, {2, -1.0}}), r22 = Rh({{1, 1.0}, {3, -1.0}});
    ZPoly r12 = Rh({{1, 1.0}, {2, -1.0}}), r21 = Rh({{0, 1.0}, {3, -1.0}});
    ZPoly lhs = -((zv(0) - zv(1)) * (zv(2) - zv(3)) * rfull);
    ZPoly rhs = r11 * r22 * (zv(0) - zv(3)) * (zv(1) - zv(2)) -
                r12 * r21 * (zv(0) - zv(2)) * (zv(1) - zv(3));
    return max_abs_coeff(lhs - rhs);
}

// T(t + [xi_vb] - [xi_va]) as a multivariate Laurent object over times-series
// (positive powers only; powers above the window are dropped consistently
// with the joint grading)
inline LSeries<cplx> pair_shift(const CSeries& T, const LWindow& w, int va,
                                int vb) {
    long n = T.trunc;
    CSeries zp = CSeries::zero(n);
    std::vector<int> z0(w.nv, 0);
    LSeries<cplx> one_l =
        LSeries<cplx>::monomial(w, zp, z0, CSeries::one(n));
    auto s = [&](int k) {
        LSeries<cplx> r(w, zp);
        r.add_term(z0, CSeries::time_var(k, n));
        std::vector<int> e = z0;
        e[vb] = k;
        r.add_term(e, CSeries::constant(n, cplx(1.0)));
        e[vb] = 0;
        e[va] = k;
        r.add_term(e, CSeries::constant(n, cplx(-1.0)));
        return r;
    };
    return T.subst<LSeries<cplx>>(s, one_l);
}

// Reproducing-kernel residual in formal-series mode, denominators cleared.
// With K(a,b) = e^{-sum t_k (b^{-k}-a^{-k})/k} (b-a)^{-1} H(a,b) and
// H(a,b) = T(t+[b]-[a])/T(t), the identity
//   Delta_xi K(xi',xi'') + K(xi',xi) K(xi,xi'') = 0   (|xi|<|xi''|<|xi'|)
// is multiplied by (xi''-xi')(xi-xi')(xi''-xi) and the common exponential
// cocycle (which cancels) is stripped:
//   (xi-xi')(xi''-xi)[Delta_xi H(xi',xi'') - H(xi',xi'') S dxi]
//     + (xi''-xi') H(xi',xi) H(xi,xi'') dxi = 0,
//   S = sum_k xi^{k-1} (xi''^{-k} - xi'^{-k}).
// Returns the max residual coefficient; exact within the chosen window.
inline double reproducing_residual(const CSeries& That) {
    int N = static_cast<int>(That.trunc);
    int hi = N + 2, lo = -(2 * N + 6);
    LWindow w(3, lo, hi);  // variables: 0 = xi', 1 = xi'', 2 = xi
    CSeries zp = CSeries::zero(N);
    LSeries<cplx> tinv = embed(That.inverse(), w);
    auto mono = [&](int v, int p) {
        return LSeries<cplx>::xi_pow(w, zp, CSeries::one(N), v, p);
    };
    LSeries<cplx> H = pair_shift(That, w, 0, 1) * tinv;
    LSeries<cplx> dH = apply_insertion(H, 2, N);
    LSeries<cplx> S(w, zp);
    S.diff[2] = true;
    for (int k = 1; k <= N + 2 - lo; ++k) {
        std::vector<int> e(3, 0);
        e[2] = k - 1;
        e[1] = -k;
        S.add_term(e, CSeries::one(N));
        e[1] = 0;
        e[0] = -k;
        S.add_term(e, CSeries::one(N).scaled(cplx(-1.0)));
    }
    LSeries<cplx> a = (mono(2, 1) - mono(0, 1)) * (mono(1, 1) - mono(2, 1));
    LSeries<cplx> b = mono(1, 1) - mono(0, 1);
    LSeries<cplx> hh =
        (pair_shift(That, w, 0, 2) * tinv) * (pair_shift(That, w, 2, 1) * tinv);
    LSeries<cplx> r = a * (dH - H * S) + (b * hh).with_diff(2);
    // a residual monomial of total graded degree g (times weight plus signed
    // xi exponents) draws on tau coefficients up to degree g + 3, so only
    // g <= N - 3 is exact at truncation N; window-edge monomials can also
    // miss contributions dropped before the polynomial prefactors applied
    long gmax = N - 3;
    double m = 0;
    for (auto& [e, c] : r.terms) {
        bool interior = true;
        long s = 0;
        for (int v = 0; v < 3; ++v) {
            if (e[v] < lo + 2 || e[v] > hi - 2) interior = false;
            s += e[v];
        }
        if (!interior) continue;
        for (auto& [mi, cc] : c.terms)
            if (mi.weighted_degree() + s <= gmax)
                m = std::max(m, std::abs(cc));
    }
    return m;
}

// W_n from the kernel cycle sum minus the correlator, n in {2, 3}:
//   W_n = sum over n-cycles sigma of (-1)^sigma prod_i K(xi_sigma(i), xi_i),
// expanded in |xi_n| < ... < |xi_1|; the exponential cocycles cancel around
// each cycle, leaving prime weights times plain shifted ratios.
inline double wn_determinantal_residual(const CSeries& That, int n) {
    if (n < 2 || n > 3) throw fay_error("wn determinantal: n must be 2 or 3");
    int N = static_cast<int>(That.trunc);
    // the window covers every exponent any factor product can reach, so no
    // monomial is dropped mid-product; only u-powers above `bound` in the
    // geometric expansions are cut, which affects per-variable exponents
    // above `bound` only — the final max is restricted to that exact region
    int bound = 2 * N + 2;
    LWindow w(n, -(4 * N + 6), 6 * N + 4);
    CSeries zp = CSeries::zero(N);
    LSeries<cplx> one_l = LSeries<cplx>::monomial(
        w, zp, std::vector<int>(n, 0), CSeries::one(N));
    LSeries<cplx> tinv = embed(That.inverse(), w);
    // 1/(xi_a - xi_b): the lower variable index has the larger modulus
    auto invd = [&](int a, int b) {
        int big = std::min(a, b), small = std::max(a, b);
        std::vector<int> e(n, 0);
        e[big] = -1;
        e[small] = 1;
        LSeries<cplx> u =
            LSeries<cplx>::monomial(w, zp, e, CSeries::one(N));
        e[small] = 0;
        LSeries<cplx> r =
            LSeries<cplx>::monomial(w, zp, e, CSeries::one(N)) *
            one_minus_pow(u, -1, one_l, bound);
        return a == big ? r : -r;
    };
    LSeries<cplx> rhs(w, zp);
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = i;
    do {
        // keep single n-cycles only
        int steps = 0, at = 0;
        do {
            at = sigma[at];
            ++steps;
        } while (at != 0);
        if (steps != n) continue;
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (sigma[i] > sigma[j]) ++inv;
        LSeries<cplx> term = one_l;
        for (int i = 0; i < n; ++i)
            term = term * invd(i, sigma[i]) *
                   (pair_shift(That, w, sigma[i], i) * tinv);
        rhs = rhs + (inv % 2 ? -term : term);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    for (int v = 0; v < n; ++v) rhs = rhs.with_diff(v);
    LSeries<cplx> diff = correlator(That, n, w) - rhs;
    // a monomial of total graded degree g draws on tau coefficients up to
    // degree g + n, so only g <= N - n - 1 is exact at truncation N
    long gmax = N - n - 1;
    double m = 0;
    for (auto& [e, c] : diff.terms) {
        bool exact = true;
        long s = 0;
        for (int v = 0; v < n; ++v) {
            if (e[v] > bound) exact = false;
            s += e[v];
        }
        if (!exact) continue;
        for (auto& [mi, cc] : c.terms)
            if (mi.weighted_degree() + s <= gmax)
                m = std::max(m, std::abs(cc));
    }
    return m;
}

}  // namespace fay
