#include "fay/theta_tau.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fay/hirota.hpp"

namespace fay {

namespace {

const cplx II(0.0, 1.0);
constexpr double pi = std::numbers::pi;

bool same_pt(cplx a, cplx b) { return std::abs(a - b) < 1e-13; }

// torus distance between two points, minimized over nearby lattice shifts
double tdist(cplx a, cplx b, cplx tau) {
    double d = 1e300;
    for (int n = -1; n <= 1; ++n)
        for (int m = -1; m <= 1; ++m)
            d = std::min(d, std::abs(a - b - (static_cast<double>(n) +
                                              static_cast<double>(m) * tau)));
    return d;
}

// safe contour radius around pole i: stay clear of every other pole
double safe_radius(const std::vector<cplx>& poles, size_t i, cplx tau) {
    double d = 0.3;
    for (size_t j = 0; j < poles.size(); ++j)
        if (j != i) d = std::min(d, tdist(poles[i], poles[j], tau));
    return 0.4 * d;
}

// e^{pi i u} Theta(u + chi): the twist matching the odd-normalized prime form
cplx twist(const Torus& t, cplx u) {
    return std::exp(pi * II * u) * theta(u + t.chi(), t.tau, t.tail);
}

}  // namespace

CFun CanonicalForm::build(double tol) const {
    std::vector<CFun> parts;
    std::vector<cplx> coef;
    for (auto& s : second) {
        parts.push_back(omega2(torus, s.p, s.k, tol));
        coef.push_back(s.c);
    }
    for (auto& th : third) {
        parts.push_back(omega3(torus, th.p, th.q));
        coef.push_back(th.c);
    }
    cplx c0 = 2.0 * pi * II * first;
    return [parts, coef, c0](cplx z) {
        cplx s = c0;
        for (size_t i = 0; i < parts.size(); ++i) s += coef[i] * parts[i](z);
        return s;
    };
}

std::vector<cplx> CanonicalForm::poles() const {
    std::vector<cplx> ps;
    auto add = [&](cplx p) {
        for (cplx q : ps)
            if (same_pt(p, q)) return;
        ps.push_back(p);
    };
    for (auto& s : second) add(s.p);
    for (auto& th : third) add(th.p), add(th.q);
    return ps;
}

cplx CanonicalForm::residue(cplx p) const {
    cplx r = 0.0;
    for (auto& th : third) {
        if (same_pt(th.p, p)) r += th.c;
        if (same_pt(th.q, p)) r -= th.c;
    }
    return r;
}

cplx CanonicalForm::time(cplx p, int k) const {
    cplx r = 0.0;
    for (auto& s : second)
        if (s.k == k && same_pt(s.p, p)) r += s.c;
    return r;
}

int CanonicalForm::max_order(cplx p) const {
    int m = 0;
    for (auto& s : second)
        if (same_pt(s.p, p)) m = std::max(m, s.k);
    return m;
}

nlohmann::json to_json(const CanonicalForm& cf) {
    auto c = [](cplx v) {
        return nlohmann::json{{"re", v.real()}, {"im", v.imag()}};
    };
    nlohmann::json sec = nlohmann::json::array();
    for (auto& s : cf.second)
        sec.push_back({{"p", c(s.p)}, {"k", s.k}, {"c", c(s.c)}});
    nlohmann::json thi = nlohmann::json::array();
    for (auto& t : cf.third)
        thi.push_back({{"p", c(t.p)}, {"q", c(t.q)}, {"c", c(t.c)}});
    return {{"surface", to_json(cf.torus)},
            {"second", sec},
            {"third", thi},
            {"first", c(cf.first)}};
}

CanonicalForm form_from_json(const Torus& t, const nlohmann::json& j) {
    auto c = [](const nlohmann::json& v) {
        return cplx(v.at("re").get<double>(), v.at("im").get<double>());
    };
    CanonicalForm cf;
    cf.torus = t;
    for (auto& s : j.value("second", nlohmann::json::array()))
        cf.second.push_back({c(s.at("p")), s.at("k").get<int>(), c(s.at("c"))});
    for (auto& x : j.value("third", nlohmann::json::array()))
        cf.third.push_back({c(x.at("p")), c(x.at("q")), c(x.at("c"))});
    if (j.contains("first")) cf.first = c(j["first"]);
    return cf;
}

cplx reg_integral_to_pole(const Torus& t, const CFun& f, cplx o, cplx p,
                          cplx r, double tol) {
    // d ln E(z,p) = (pi i + tlog(z-p)) dz in the odd normalization
    cplx tau = t.tau, chi = t.chi();
    double tail = t.tail;
    auto tlog = [tau, chi, tail](cplx w) {
        return theta_du(w + chi, tau, tail) / theta(w + chi, tau, tail);
    };
    cplx body = integrate_segment(
        [&](cplx z) { return f(z) - r * (pi * II + tlog(z - p)); }, o, p, tol);
    return body - r * std::log(t.prime(o, p));
}

cplx q_form(const CanonicalForm& cf, double tol) {
    CFun f = cf.build(tol);
    std::vector<cplx> ps = cf.poles();
    cplx q = 0.0;
    for (size_t i = 0; i < ps.size(); ++i) {
        double rad = safe_radius(ps, i, cf.torus.tau);
        for (int k = 1; k <= cf.max_order(ps[i]); ++k) {
            cplx tk = cf.time(ps[i], k);
            if (!is_zero(tk))
                q += tk / static_cast<double>(k) *
                     form_time(f, ps[i], -k, rad);
        }
        if (std::abs(cf.residue(ps[i])) > 1e-14 && cf.max_order(ps[i]) > 0)
            throw fay_error(
                "q_form: a pole carrying both a residue and higher-order "
                "times is not supported");
    }
    // residue sector. The third-kind part is handled in closed form so the
    // prime-form self-pairing is accumulated once per unordered pole pair,
    // matching the kernel's prod_{i<j} E^{a_i a_j} (the ordered-sum variant
    // lnE(x,y) + lnE(y,x) differs by the i pi of E(y,x) = -E(x,y)).
    std::vector<cplx> rp;  // poles with nonzero residue
    std::vector<cplx> rv;
    for (cplx p : ps) {
        cplx r = cf.residue(p);
        if (std::abs(r) > 1e-14) {
            rp.push_back(p);
            rv.push_back(r);
        }
    }
    if (!rp.empty()) {
        for (size_t i = 0; i < rp.size(); ++i)
            for (size_t j = i + 1; j < rp.size(); ++j)
                q += 2.0 * rv[i] * rv[j] *
                     std::log(cf.torus.prime(rp[i], rp[j]));
        // A-period normalization constant of the third-kind part:
        // h(z) = sum_y r_y d ln E(z,y) + C
        CanonicalForm thirds;
        thirds.torus = cf.torus;
        thirds.third = cf.third;
        CFun h = thirds.build(tol);
        cplx tau = cf.torus.tau, chi = cf.torus.chi();
        double tail = cf.torus.tail;
        cplx z0 = cf.torus.base;
        for (int step = 0; step < 64; ++step) {
            bool clear = tdist(z0, cf.torus.origin, tau) > 0.1;
            for (cplx p : ps) clear = clear && tdist(z0, p, tau) > 0.1;
            if (clear) break;
            z0 += cplx(0.05, 0.08);
        }
        cplx c0 = h(z0);
        for (size_t i = 0; i < rp.size(); ++i)
            c0 -= rv[i] * (pi * II + theta_du(z0 - rp[i] + chi, tau, tail) /
                                         theta(z0 - rp[i] + chi, tau, tail));
        // the ln E(origin, y) terms sum to (sum_x r_x)(...) = 0 by neutrality
        for (size_t i = 0; i < rp.size(); ++i)
            q += rv[i] * c0 * (rp[i] - cf.torus.origin);
        // remainder (second-kind plus first-kind) is regular at these poles
        CanonicalForm rest;
        rest.torus = cf.torus;
        rest.second = cf.second;
        rest.first = cf.first;
        if (!rest.second.empty() || !is_zero(rest.first)) {
            CFun g = rest.build(tol);
            for (size_t i = 0; i < rp.size(); ++i)
                q += rv[i] * path_integral(g, cf.torus.origin, rp[i], tol);
        }
    }
    if (!is_zero(cf.first)) q += cf.first * b_period(cf.torus, f, tol);
    return q;
}

cplx tau_theta(const CanonicalForm& cf, double tol) {
    CFun f = cf.build(tol);
    cplx zeta = zeta_vector(cf.torus, f, tol);
    cplx eps = cf.first;
    return twist(cf.torus, zeta) * std::exp(0.5 * q_form(cf, tol)) *
           std::exp(-2.0 * pi * II * eps * zeta) *
           std::exp(-pi * II * cf.torus.tau * eps * eps);
}

cplx tau_theta_ratio(const CanonicalForm& cf, const std::vector<cplx>& z,
                     const std::vector<cplx>& w, double tol) {
    CFun f = cf.build(tol);
    cplx zeta = zeta_vector(cf.torus, f, tol);
    if (std::abs(theta(zeta + cf.torus.chi(), cf.torus.tau, cf.torus.tail)) <
        1e-10)
        throw fay_error(
            "tau_theta_ratio: theta singular at zeta + chi; the ratio needs "
            "a generic form (zeta away from the theta divisor)");
    CanonicalForm shifted = cf;
    for (size_t i = 0; i < z.size(); ++i)
        shifted.third.push_back({z[i], w[i], cplx(1.0)});
    return tau_theta(shifted, tol) / tau_theta(cf, tol);
}

double fay_surface_residual(const Torus& t, const FormData& om,
                            const std::vector<cplx>& z,
                            const std::vector<cplx>& w, double tol) {
    size_t n = z.size();
    Divisor full;
    for (size_t i = 0; i < n; ++i) {
        full.points.push_back({z[i], cplx(1.0)});
        full.points.push_back({w[i], cplx(-1.0)});
    }
    cplx lhs = szego(t, full, om, tol);
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m[i][j] = szego(t, Divisor{{z[j], cplx(1.0)}, {w[i], cplx(-1.0)}},
                            om, tol);
    return std::abs(lhs - cdet(m)) / (1.0 + std::abs(lhs));
}

double reproducing_g1_residual(const Torus& t, const CFun& om, cplx xi,
                               cplx xi1, cplx xi2, cplx o2, double tol) {
    auto base_f = [&om](cplx z) { return om ? om(z) : cplx(0.0); };
    FormData fd0 = FormData::on_torus(t, base_f, tol);
    auto kern = [&](cplx a, cplx b) {
        return szego(t, Divisor{{b, cplx(1.0)}, {a, cplx(-1.0)}}, fd0, tol);
    };
    auto dGda = [&](cplx xp) {
        CFun w3 = omega3(t, xp, o2);
        auto g = [&](cplx alpha) {
            CFun f = [&](cplx z) { return base_f(z) + alpha * w3(z); };
            FormData fd = FormData::on_torus(t, f, tol);
            return szego(t, Divisor{{xi2, cplx(1.0)}, {xi1, cplx(-1.0)}}, fd,
                         tol);
        };
        return cauchy_derivative(g, 0.0, 1, 0.25, 32);
    };
    cplx delta = cauchy_derivative(dGda, xi, 1, 0.05, 32);
    return std::abs(delta + kern(xi1, xi) * kern(xi, xi2)) /
           (1.0 + std::abs(delta));
}

double reproducing_g0_residual(const CFun& om, cplx base, cplx xi, cplx xi1,
                               cplx xi2, cplx o2, double tol) {
    auto kern = [&](cplx a, cplx b) {
        return szego_g0(Divisor{{b, cplx(1.0)}, {a, cplx(-1.0)}}, om, base,
                        tol);
    };
    auto dGda = [&](cplx xp) {
        CFun w3 = omega3_g0(xp, o2);
        auto g = [&](cplx alpha) {
            CFun f = [&](cplx z) {
                return (om ? om(z) : cplx(0.0)) + alpha * w3(z);
            };
            return szego_g0(Divisor{{xi2, cplx(1.0)}, {xi1, cplx(-1.0)}}, f,
                            base, tol);
        };
        return cauchy_derivative(g, 0.0, 1, 0.25, 32);
    };
    cplx delta = cauchy_derivative(dGda, xi, 1, 0.05, 32);
    return std::abs(delta + kern(xi1, xi) * kern(xi, xi2)) /
           (1.0 + std::abs(delta));
}

cplx szego_g0(const Divisor& d, const CFun& om, cplx base, double tol) {
    cplx v = prime_weight(d);
    if (om) {
        cplx e = 0.0;
        for (auto& [z, a] : d.points)
            e += a * integrate_segment(om, base, z, tol);
        v *= std::exp(e);
    }
    return v;
}

double fay_g0_residual(const CFun& om, cplx base, const std::vector<cplx>& z,
                       const std::vector<cplx>& w, double tol) {
    size_t n = z.size();
    Divisor full;
    for (size_t i = 0; i < n; ++i) {
        full.points.push_back({z[i], cplx(1.0)});
        full.points.push_back({w[i], cplx(-1.0)});
    }
    cplx lhs = szego_g0(full, om, base, tol);
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m[i][j] = szego_g0(Divisor{{z[j], cplx(1.0)}, {w[i], cplx(-1.0)}},
                               om, base, tol);
    return std::abs(lhs - cdet(m)) / (1.0 + std::abs(lhs));
}

}  // namespace fay
