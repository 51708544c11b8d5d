#include "fay/spectral.hpp"

#include <cmath>
#include <string>

namespace fay {

namespace {

// Gaussian elimination with partial pivoting for the small Newton systems
std::vector<cplx> lin_solve(std::vector<std::vector<cplx>> a,
                            std::vector<cplx> b) {
    size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (std::abs(a[c][c]) < 1e-300)
            throw fay_error("solve_shift: singular Newton system");
        for (size_t r = c + 1; r < n; ++r) {
            cplx m = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= m * a[c][k];
            b[r] -= m * b[c];
        }
    }
    std::vector<cplx> x(n);
    for (size_t r = n; r-- > 0;) {
        cplx s = b[r];
        for (size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

// one Newton stage at fixed u; returns the residual norm reached
double newton_stage(std::vector<cplx>& zeta, const std::vector<cplx>& z,
                    const std::vector<cplx>& alpha, cplx u, double tol) {
    size_t n = z.size();
    double res = 0.0;
    for (int it = 0; it < 60; ++it) {
        cplx c = 0.0;
        for (size_t j = 0; j < n; ++j) c += alpha[j] / zeta[j];
        std::vector<cplx> f(n);
        res = 0.0;
        for (size_t i = 0; i < n; ++i) {
            f[i] = zeta[i] * zeta[i] + u * c - z[i] * z[i];
            res = std::max(res, std::abs(f[i]));
        }
        if (res < tol) return res;
        std::vector<std::vector<cplx>> jac(n, std::vector<cplx>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                jac[i][j] = -u * alpha[j] / (zeta[j] * zeta[j]);
                if (i == j) jac[i][j] += 2.0 * zeta[i];
            }
        std::vector<cplx> d = lin_solve(std::move(jac), f);
        for (size_t i = 0; i < n; ++i) zeta[i] -= d[i];
    }
    return res;
}

}  // namespace

cplx ShiftSolution::y_density(cplx zz) const {
    cplx s = zz;
    for (size_t i = 0; i < z.size(); ++i)
        s += 0.5 * u * alpha[i] / (zetas[i] * (zz - zetas[i]));
    return 2.0 * zz * s;
}

ShiftSolution solve_shift(const std::vector<cplx>& z,
                          const std::vector<cplx>& alpha, cplx u,
                          int path_steps, double tol) {
    if (z.empty() || z.size() != alpha.size())
        throw fay_error("solve_shift: divisor points and weights mismatch");
    for (cplx zi : z)
        if (std::abs(zi) < 1e-12)
            throw fay_error("solve_shift: divisor point at the branch point");
    if (path_steps < 1) path_steps = 1;
    ShiftSolution sol;
    sol.u = u;
    sol.z = z;
    sol.alpha = alpha;
    sol.zetas = z;  // u = 0 seed
    double res = 0.0;
    for (int s = 1; s <= path_steps; ++s) {
        cplx us = u * (static_cast<double>(s) / path_steps);
        res = newton_stage(sol.zetas, z, alpha, us, tol);
        if (res > 1e-8)
            throw fay_error("solve_shift: Newton diverged, residual " +
                            std::to_string(res));
    }
    if (res > tol)
        throw fay_error("solve_shift: residual above tolerance, " +
                        std::to_string(res));
    sol.residual = res;
    sol.c = 0.0;
    for (size_t j = 0; j < z.size(); ++j) sol.c += alpha[j] / sol.zetas[j];
    return sol;
}

std::vector<cplx> zeta_series(cplx z1, int k_max) {
    std::vector<cplx> c;
    for (int k = 1; k <= k_max; ++k) {
        // -(1/2) (3(k-1)/2)! / (k! ((k-1)/2)!) z1^{1-3k}, (.)! = Gamma(.+1)
        double num = std::tgamma(1.5 * (k - 1) + 1.0);
        double den = std::tgamma(k + 1.0) * std::tgamma(0.5 * (k - 1) + 1.0);
        c.push_back(-0.5 * num / den * ipow(z1, 1 - 3 * k));
    }
    return c;
}

double zeta_radius(cplx z1) {
    return 2.0 * std::pow(std::abs(z1), 3) / (3.0 * std::sqrt(3.0));
}

cplx curve_equation_residual(const ShiftSolution& sol, cplx z) {
    if (sol.z.size() != 1)
        throw fay_error("curve_equation_residual: single-point shifts only");
    cplx zeta = sol.zetas[0];
    cplx x = sol.x_map(z);
    cplx y = z + 0.5 * sol.u / (zeta * (z - zeta));  // y_u = y d x_u
    cplx x1 = sol.z[0] * sol.z[0];
    // the sign of the u/(4 zeta^2) term is fixed by expanding
    // (y^2-x)(x-X1) = u(z+zeta) + u^2 (z+zeta) / (4 zeta^2 (z-zeta))
    return (y * y - x) * (x - x1) -
           sol.u * (y + zeta + sol.u / (4.0 * zeta * zeta));
}

cplx finite_time(const ShiftSolution& sol, size_t i) {
    double r = 0.5 * std::abs(sol.zetas[i]);
    for (size_t j = 0; j < sol.zetas.size(); ++j)
        if (j != i)
            r = std::min(r, 0.5 * std::abs(sol.zetas[i] - sol.zetas[j]));
    auto f = [&](cplx z) { return sol.y_density(z); };
    return contour_residue(f, sol.zetas[i], r);
}

cplx infinity_time(const ShiftSolution& sol, int k) {
    double rad = 2.0;
    for (cplx zeta : sol.zetas) rad = std::max(rad, 3.0 * std::abs(zeta));
    // local coordinate at the puncture: xi = x_u^{-1/2}; on the large circle
    // the correction (1 + uC/z^2)^{-k/2} stays near 1, so no branch issue
    cplx uc = sol.u * sol.c;
    auto f = [&, uc](cplx z) {
        cplx corr = std::pow(1.0 + uc / (z * z), -0.5 * k);
        return ipow(z, -k) * corr * sol.y_density(z);
    };
    return -contour_residue(f, 0.0, rad);
}

}  // namespace fay
