#include "fay/riemann.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace fay {

namespace {

const cplx II(0.0, 1.0);
constexpr double pi = std::numbers::pi;

double tail_radius(cplx tau, double tail) {
    if (tau.imag() <= 0.0) throw fay_error("theta: Im tau must be positive");
    if (!(tail > 0.0)) throw fay_error("theta: tail bound must be positive");
    return std::sqrt(-std::log(tail) / (pi * tau.imag())) + 2.0;
}

// sum weight(n) e^{2 pi i u n + pi i tau n^2} over the window where the terms
// are above the tail, centered on the peak of the Gaussian envelope
template <class W>
cplx lattice_sum(cplx u, cplx tau, double radius, W weight) {
    if (tau.imag() <= 0.0) throw fay_error("theta: Im tau must be positive");
    double n0 = -u.imag() / tau.imag();
    long lo = std::lround(std::floor(n0 - radius));
    long hi = std::lround(std::ceil(n0 + radius));
    cplx s = 0.0;
    for (long n = lo; n <= hi; ++n) {
        double x = static_cast<double>(n);
        s += weight(x) *
             std::exp(2.0 * pi * II * u * x + pi * II * tau * (x * x));
    }
    return s;
}

// Theta'/Theta shifted by the odd characteristic: the simple-pole building
// block of the third-kind forms (simple pole, residue +1, at each lattice
// point; quasi-periodic by -2 pi i under the tau shift)
CFun torus_tlog(const Torus& t) {
    cplx tau = t.tau, chi = t.chi();
    double tail = t.tail;
    return [tau, chi, tail](cplx w) {
        return theta_du(w + chi, tau, tail) / theta(w + chi, tau, tail);
    };
}

// distance from w to the nearest point of Z + tau Z
double lattice_distance(cplx w, cplx tau) {
    double y = w.imag() / tau.imag();
    double x = w.real() - y * tau.real();
    long nx = std::lround(x), ny = std::lround(y);
    double d = 1e300;
    for (long n = nx - 1; n <= nx + 1; ++n)
        for (long m = ny - 1; m <= ny + 1; ++m)
            d = std::min(d, std::abs(w - (static_cast<double>(n) +
                                          static_cast<double>(m) * tau)));
    return d;
}

}  // namespace

cplx theta_truncated(cplx u, cplx tau, double radius) {
    return lattice_sum(u, tau, radius, [](double) { return cplx(1.0); });
}

cplx theta(cplx u, cplx tau, double tail) {
    return theta_truncated(u, tau, tail_radius(tau, tail));
}

cplx theta_du(cplx u, cplx tau, double tail) {
    return lattice_sum(u, tau, tail_radius(tau, tail),
                       [](double n) { return 2.0 * pi * II * n; });
}

cplx Torus::prime(cplx z1, cplx z2) const {
    // odd-characteristic normalization: the e^{pi i w} prefactor makes E an
    // odd function of w = z1 - z2, so E/w - 1 vanishes to second order
    cplx w = z1 - z2;
    return std::exp(pi * II * w) * theta(w + chi(), tau, tail) /
           theta_du(chi(), tau, tail);
}

nlohmann::json to_json(const Torus& t) {
    return {{"genus", 1},
            {"tau", {{"re", t.tau.real()}, {"im", t.tau.imag()}}},
            {"chi", {{"n", 1}, {"m", 1}}},
            {"origin", {{"re", t.origin.real()}, {"im", t.origin.imag()}}},
            {"base", {{"re", t.base.real()}, {"im", t.base.imag()}}},
            {"tail", t.tail}};
}

Torus torus_from_json(const nlohmann::json& j) {
    if (j.value("genus", 1) != 1)
        throw fay_error("torus: only genus 1 is serialized");
    auto c = [](const nlohmann::json& v) {
        return cplx(v.at("re").get<double>(), v.at("im").get<double>());
    };
    Torus t;
    t.tau = c(j.at("tau"));
    if (t.tau.imag() <= 0.0) throw fay_error("torus: Im tau must be positive");
    if (j.contains("chi") &&
        (j["chi"].value("n", 1) != 1 || j["chi"].value("m", 1) != 1))
        throw fay_error("torus: only the odd characteristic (1,1) is used");
    if (j.contains("origin")) t.origin = c(j["origin"]);
    if (j.contains("base")) t.base = c(j["base"]);
    t.tail = j.value("tail", 1e-12);
    return t;
}

CFun omega3(const Torus& t, cplx p, cplx q) {
    CFun tlog = torus_tlog(t);
    auto raw = [tlog, p, q](cplx z) { return tlog(z - p) - tlog(z - q); };
    // shift by a constant so the A-period vanishes
    cplx c = -integrate_segment(raw, t.base, t.base + 1.0);
    return [raw, c](cplx z) { return raw(z) + c; };
}

CFun omega2(const Torus& t, cplx p, int k, double tol) {
    if (k < 1) throw fay_error("omega2: order k must be >= 1");
    CFun tlog = torus_tlog(t);
    cplx tau = t.tau;
    double kfac = std::tgamma(k + 1.0);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    // (1/k!) d^k/dp^k tlog(z - p), elliptic for k >= 1; the z-derivative is
    // taken on a Cauchy circle shrunk to stay inside the pole-free region
    CFun deriv = [tlog, tau, p, k, kfac, sign](cplx z) {
        cplx w = z - p;
        double rho = std::min(0.45 * lattice_distance(w, tau), 0.25);
        return sign / kfac * cauchy_derivative(tlog, w, k, rho);
    };
    // shift by a constant so the A-period vanishes exactly in quadrature
    cplx ck = -integrate_segment(deriv, t.base, t.base + 1.0, tol);
    return [deriv, ck](cplx z) { return deriv(z) + ck; };
}

CFun omega3_g0(cplx p, cplx q) {
    return [p, q](cplx z) { return 1.0 / (z - p) - 1.0 / (z - q); };
}

CFun omega2_g0(cplx p, int k) {
    return [p, k](cplx z) { return ipow(z - p, -(k + 1)); };
}

cplx a_period(const Torus& t, const CFun& f, double tol) {
    return integrate_segment(f, t.base, t.base + 1.0, tol);
}

cplx b_period(const Torus& t, const CFun& f, double tol) {
    return integrate_segment(f, t.base, t.base + t.tau, tol);
}

cplx path_integral(const CFun& f, cplx from, cplx to, double tol) {
    return integrate_segment(f, from, to, tol);
}

cplx form_time(const CFun& f, cplx p, int k, double r) {
    return contour_residue([&f, p, k](cplx z) { return ipow(z - p, k) * f(z); },
                           p, r);
}

cplx zeta_vector(const Torus& t, const CFun& f, double tol) {
    return (b_period(t, f, tol) - t.tau * a_period(t, f, tol)) /
           (2.0 * pi * II);
}

FormData FormData::on_torus(const Torus& t, CFun f, double tol) {
    FormData d;
    d.eps = a_period(t, f, tol) / (2.0 * pi * II);
    d.zeta = zeta_vector(t, f, tol);
    d.f = std::move(f);
    return d;
}

cplx szego(const Torus& t, const Divisor& d, const FormData& om, double tol) {
    if (std::abs(d.degree()) > 1e-10)
        throw fay_error("szego: divisor must be neutral");
    // twist: the odd characteristic with its e^{pi i u} prefactor (matching
    // the odd-normalized prime form, so both lattice monodromies cancel)
    // unless the denominator theta vanishes there (as it does for Omega = 0),
    // then the plain even characteristic 1/2
    cplx chi_e = t.chi();
    bool odd = std::abs(theta(om.zeta + chi_e, t.tau, t.tail)) >= 1e-10;
    if (!odd) chi_e = 0.5;
    auto twist = [&](cplx u) {
        cplx v = theta(u + chi_e, t.tau, t.tail);
        return odd ? std::exp(pi * II * u) * v : v;
    };
    cplx den = twist(om.zeta);
    if (std::abs(den) < 1e-10)
        throw fay_error("szego: theta zero in the denominator");
    cplx aD = 0.0;
    for (auto& [z, a] : d.points) aD += a * t.abel(z);
    cplx val = twist(om.zeta + aD) / den;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            cplx e = d.alpha(i) * d.alpha(j);
            cplx base = t.prime(d.z(i), d.z(j));
            double er = e.real();
            if (std::abs(e.imag()) < 1e-14 &&
                std::abs(er - std::round(er)) < 1e-14)
                val *= ipow(base, std::lround(er));
            else
                val *= std::pow(base, e);
        }
    if (om.f) {
        cplx ex = 0.0;
        for (auto& [z, a] : d.points)
            ex += a * path_integral(om.f, t.base, z, tol);
        val *= std::exp(ex);
    }
    return val * std::exp(-2.0 * pi * II * om.eps * aD);
}

FormTimes extract_times(const Torus& t, const CFun& f,
                        const std::vector<cplx>& poles, int kmax, double r,
                        double tol) {
    FormTimes ft;
    ft.poles = poles;
    for (cplx p : poles) {
        std::vector<cplx> row;
        for (int k = 0; k <= kmax; ++k) row.push_back(form_time(f, p, k, r));
        ft.t.push_back(std::move(row));
    }
    ft.eps = a_period(t, f, tol) / (2.0 * pi * II);
    return ft;
}

CFun rebuild_form(const Torus& t, const FormTimes& ft, double tol) {
    std::vector<CFun> parts;
    std::vector<cplx> coef;
    for (size_t i = 0; i < ft.poles.size(); ++i) {
        for (size_t k = 1; k < ft.t[i].size(); ++k)
            if (std::abs(ft.t[i][k]) > 1e-13) {
                parts.push_back(
                    omega2(t, ft.poles[i], static_cast<int>(k), tol));
                coef.push_back(ft.t[i][k]);
            }
        if (std::abs(ft.t[i][0]) > 1e-13) {
            parts.push_back(omega3(t, ft.poles[i], t.origin));
            coef.push_back(ft.t[i][0]);
        }
    }
    cplx c0 = 2.0 * pi * II * ft.eps;
    return [parts, coef, c0](cplx z) {
        cplx s = c0;
        for (size_t i = 0; i < parts.size(); ++i) s += coef[i] * parts[i](z);
        return s;
    };
}

}  // namespace fay
