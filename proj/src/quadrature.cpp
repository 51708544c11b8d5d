#include "fay/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace fay {

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
    // Newton iteration on P_n from Chebyshev initial guesses
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

const GaussLegendre& gl_rule(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
    return it->second;
}

namespace {

cplx gl_panels(const CFun& f, cplx a, cplx b, int panels, const GaussLegendre& g) {
    cplx sum = 0.0;
    cplx step = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
        cplx lo = a + step * static_cast<double>(p);
        cplx mid = lo + step * 0.5;
        for (size_t i = 0; i < g.x.size(); ++i)
            sum += g.w[i] * f(mid + step * (0.5 * g.x[i]));
    }
    return sum * step * 0.5;
}

}  // namespace

cplx integrate_segment(const CFun& f, cplx a, cplx b, double tol,
                       int max_panels) {
    const GaussLegendre& g = gl_rule(24);
    cplx prev = gl_panels(f, a, b, 1, g);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        cplx cur = gl_panels(f, a, b, panels, g);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw fay_error("integrate_segment: tolerance not reached");
}

cplx integrate_real(const CFun& f, double L, double tol, int max_panels) {
    return integrate_segment(f, cplx(-L), cplx(L), tol, max_panels);
}

cplx integrate_circle(const CFun& f, cplx c, double r, double tol,
                      int max_nodes) {
    auto sum_n = [&](int n) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) {
            double th = 2.0 * std::numbers::pi * j / n;
            cplx z = c + r * cplx(std::cos(th), std::sin(th));
            s += f(z) * (z - c);  // f(z) * i r e^{i th}, with i folded in below
        }
        return s * cplx(0, 1) * (2.0 * std::numbers::pi / n);
    };
    int n = 16;
    cplx prev = sum_n(n);
    for (n *= 2; n <= max_nodes; n *= 2) {
        cplx cur = sum_n(n);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw fay_error("integrate_circle: tolerance not reached");
}

cplx contour_residue(const CFun& f, cplx c, double r, double tol) {
    return integrate_circle(f, c, r, tol) / (2.0 * std::numbers::pi * cplx(0, 1));
}

cplx cauchy_derivative(const CFun& f, cplx c, int order, double r, int nodes) {
    cplx s = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double th = 2.0 * std::numbers::pi * j / nodes;
        cplx e(std::cos(th), std::sin(th));
        // k!/(2pi i) \oint f/(z-c)^{k+1} dz via the uniform angular grid
        s += f(c + r * e) / ipow(r * e, order);
    }
    double fac = 1.0;
    for (int k = 2; k <= order; ++k) fac *= k;
    return s * (fac / nodes);
}

}  // namespace fay
