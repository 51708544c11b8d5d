#include "fay/matrix_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fay/bilinear.hpp"
#include "fay/quadrature.hpp"

namespace fay {

cplx Potential::V(cplx x) const {
    cplx v = 0.0;
    for (auto& [k, tk] : t) v += tk * ipow(x, k) / static_cast<double>(k);
    return v;
}

int Potential::max_k() const { return t.empty() ? 0 : t.rbegin()->first; }

double Potential::domain_halfwidth(double p) const {
    // sized so that x^p e^{-Re V} < 1e-18 at the endpoints: moments up to
    // order p are resolved, not just the bare density
    double L = 1.0;
    auto small = [&](double x) {
        return V(cplx(x)).real() - p * std::log(std::max(std::abs(x), 1.0)) >
               42.0;
    };
    while (!small(L) || !small(-L)) {
        L *= 1.25;
        if (L > 1e6) throw fay_error("potential: e^{-V} does not decay");
    }
    return L;
}

nlohmann::json to_json(const Potential& p) {
    nlohmann::json t = nlohmann::json::object();
    for (auto& [k, tk] : p.t)
        t[std::to_string(k)] = {tk.real(), tk.imag()};
    return {{"t", t}};
}

Potential potential_from_json(const nlohmann::json& j) {
    Potential p;
    for (auto& [key, val] : j.at("t").items())
        p.t[std::stoi(key)] = cplx(val.at(0).get<double>(), val.at(1).get<double>());
    return p;
}

cplx gaussian_moment(int j) {
    if (j % 2) return 0.0;
    double r = std::sqrt(2.0 * std::numbers::pi);
    for (int k = 1; k < j; k += 2) r *= k;
    return r;
}

namespace {

long require_int_weight(cplx a) {
    double ar = a.real();
    if (std::abs(a.imag()) > 1e-9 || std::abs(ar - std::round(ar)) > 1e-9)
        throw fay_error("weighted moments need integer divisor weights");
    return std::lround(ar);
}

cplx det(std::vector<std::vector<cplx>> a) {
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

// fixed quadrature grid for the measure e^{-V} dx on [-L, L]: abscissas and
// weights w_q e^{-V(x_q)}, validated per model by panel doubling on a high
// polynomial moment
struct Grid {
    std::vector<double> x;
    std::vector<cplx> w;
};

Grid build_grid(const Potential& pot) {
    double L = pot.domain_halfwidth();
    const GaussLegendre& g = gl_rule(24);
    auto make = [&](int panels) {
        Grid gr;
        double step = 2.0 * L / panels;
        for (int p = 0; p < panels; ++p) {
            double mid = -L + step * (p + 0.5);
            for (size_t i = 0; i < g.x.size(); ++i) {
                double xq = mid + 0.5 * step * g.x[i];
                gr.x.push_back(xq);
                gr.w.push_back(g.w[i] * 0.5 * step * std::exp(-pot.V(cplx(xq))));
            }
        }
        return gr;
    };
    auto probe = [](const Grid& gr, int j) {
        cplx s = 0.0;
        for (size_t q = 0; q < gr.x.size(); ++q)
            s += gr.w[q] * ipow(cplx(gr.x[q]), j);
        return s;
    };
    int panels = 16;
    Grid prev = make(panels);
    for (panels *= 2; panels <= 1 << 12; panels *= 2) {
        Grid cur = make(panels);
        double err = 0.0;
        // even moments are bounded away from zero: use per-moment relative
        // agreement so large high moments are resolved too
        for (int j : {0, 8, 20})
            err = std::max(err, std::abs(probe(cur, j) - probe(prev, j)) /
                                    std::abs(probe(cur, j)));
        if (err < 1e-14) return cur;
        prev = std::move(cur);
    }
    throw fay_error("moment grid did not converge");
}

const Grid& grid_for(const Potential& pot) {
    // keyed by the time map; few distinct potentials per run
    static std::map<std::string, Grid> cache;
    std::string key;
    for (auto& [k, tk] : pot.t) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%d:%.17g,%.17g;", k, tk.real(),
                      tk.imag());
        key += buf;
    }
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_grid(pot)).first;
    return it->second;
}

}  // namespace

cplx MatrixModel::moment(int j) const {
    auto it = moment_cache_.find(j);
    if (it != moment_cache_.end()) return it->second;
    const Grid& g = grid_for(pot);
    cplx s = 0.0;
    for (size_t q = 0; q < g.x.size(); ++q)
        s += g.w[q] * ipow(cplx(g.x[q]), j);
    moment_cache_[j] = s;
    return s;
}

std::vector<cplx> MatrixModel::weighted_moments(int jmax,
                                                const Divisor& d) const {
    std::vector<long> al(d.size());
    for (size_t p = 0; p < d.size(); ++p) {
        al[p] = require_int_weight(d.alpha(p));
        if (al[p] < 0 && std::abs(d.z(p).imag()) < 1e-12 &&
            std::abs(d.z(p)) > 1e-300)
            throw fay_error("weighted moments: pole on the integration contour");
    }
    const Grid& g = grid_for(pot);
    std::vector<cplx> m(jmax + 1, 0.0);
    for (size_t q = 0; q < g.x.size(); ++q) {
        cplx lam(g.x[q]);
        cplx wq = g.w[q];
        for (size_t p = 0; p < d.size(); ++p)
            wq *= ipow(1.0 - d.z(p) * lam, al[p]);
        cplx pw = 1.0;
        for (int j = 0; j <= jmax; ++j) {
            m[j] += wq * pw;
            pw *= lam;
        }
    }
    return m;
}

cplx MatrixModel::tau(int N) const {
    if (N == 0) return 1.0;
    std::vector<std::vector<cplx>> h(N, std::vector<cplx>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) h[i][j] = moment(i + j);
    return factorial(N).convert_to<double>() * det(std::move(h));
}

cplx MatrixModel::tau_shifted(int N, const Divisor& d) const {
    if (N == 0) return 1.0;
    auto m = weighted_moments(2 * N - 2, d);
    std::vector<std::vector<cplx>> h(N, std::vector<cplx>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) h[i][j] = m[i + j];
    return factorial(N).convert_to<double>() * det(std::move(h));
}

cplx MatrixModel::tau_ratio(int N, const Divisor& d) const {
    return tau_shifted(N, d) / tau(N);
}

cplx MatrixModel::tau_eigenvalue(int N, const Divisor& d) const {
    if (N < 1 || N > 3) throw fay_error("tau_eigenvalue: N must be 1..3");
    std::vector<long> al(d.size());
    for (size_t p = 0; p < d.size(); ++p) al[p] = require_int_weight(d.alpha(p));
    // only a handful of powers of lambda appear: a tight domain keeps the
    // fixed node count accurate
    double L = pot.domain_halfwidth(12.0);
    int nodes = N == 3 ? 170 : 320;
    const GaussLegendre& g = gl_rule(nodes);
    std::vector<cplx> x(nodes), f(nodes);
    for (int i = 0; i < nodes; ++i) {
        x[i] = cplx(L * g.x[i]);
        f[i] = L * g.w[i] * std::exp(-pot.V(x[i]));
        for (size_t p = 0; p < d.size(); ++p)
            f[i] *= ipow(1.0 - d.z(p) * x[i], al[p]);
    }
    cplx s = 0.0;
    std::vector<int> idx(N, 0);
    while (true) {
        cplx term = 1.0;
        for (int a = 0; a < N; ++a) term *= f[idx[a]];
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b) {
                cplx dd = x[idx[a]] - x[idx[b]];
                term *= dd * dd;
            }
        s += term;
        int a = N - 1;
        while (a >= 0 && ++idx[a] == nodes) idx[a--] = 0;
        if (a < 0) break;
    }
    return s;
}

CSeries MatrixModel::tau_series(int N, long n) const {
    if (N == 0) return CSeries::one(n);
    // moments as series in the time shifts dt around the base potential:
    // m_j(dt) = sum_nu prod_k (-1/k)^{nu_k}/nu_k! dt^nu m_{j + |nu|_w}
    std::vector<CSeries> ms;
    for (int j = 0; j <= 2 * N - 2; ++j) {
        CSeries s(n);
        for (long w = 0; w <= n; ++w)
            for (auto& nu : partitions(static_cast<int>(w))) {
                cplx c = moment(j + static_cast<int>(w));
                if (is_zero(c)) continue;
                Rational fac = 1;
                cplx sign = 1.0;
                for (auto& [k, e] : nu.e) {
                    fac *= factorial(e);
                    for (int q = 0; q < e; ++q) fac *= k;
                    if (e % 2) sign = -sign;
                }
                s.add_term(nu, c * sign / fac.convert_to<double>());
            }
        ms.push_back(std::move(s));
    }
    // N x N Hankel determinant over the series ring (Leibniz; N is small)
    std::vector<size_t> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    CSeries dsum = CSeries::zero(n);
    do {
        int inv = 0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                if (perm[i] > perm[j]) ++inv;
        CSeries term = CSeries::one(n);
        for (int i = 0; i < N; ++i) term = term * ms[i + perm[i]];
        dsum = dsum + (inv % 2 ? -term : term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return dsum.scaled(1.0 / dsum.constant_term());
}

cplx MatrixModel::psi(int N, cplx x) const {
    if (N == 0) return 1.0;
    // p_N(x) = det[[m_{i+j}]_{i<N, j<=N}; [x^j]] / det[m_{i+j}]_{N x N}
    std::vector<std::vector<cplx>> a(N + 1, std::vector<cplx>(N + 1));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j <= N; ++j) a[i][j] = moment(i + j);
    for (int j = 0; j <= N; ++j) a[N][j] = ipow(x, j);
    std::vector<std::vector<cplx>> h(N, std::vector<cplx>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) h[i][j] = moment(i + j);
    return det(std::move(a)) / det(std::move(h));
}

cplx MatrixModel::phi(int m, cplx x) const {
    if (std::abs(x.imag()) < 1e-12)
        throw fay_error("phi: x must be off the real axis");
    Divisor d{{1.0 / x, cplx(-1.0)}};
    return ipow(x, -(m + 1)) * tau_ratio(m + 1, d);
}

cplx MatrixModel::pairing(int n, int m) const {
    // closed rectangle around the support of the measure, counterclockwise;
    // the vertical ends matter whenever psi_n phi_m grows along the real axis
    double Lp = pot.domain_halfwidth() + 2.0;
    auto g = [&](cplx s) { return psi(n, s) * phi(m, s); };
    cplx v = integrate_segment(g, cplx(-Lp, -1.0), cplx(Lp, -1.0), 1e-11) +
             integrate_segment(g, cplx(Lp, -1.0), cplx(Lp, 1.0), 1e-11) +
             integrate_segment(g, cplx(Lp, 1.0), cplx(-Lp, 1.0), 1e-11) +
             integrate_segment(g, cplx(-Lp, 1.0), cplx(-Lp, -1.0), 1e-11);
    return v / (2.0 * std::numbers::pi * cplx(0.0, 1.0));
}

}  // namespace fay
