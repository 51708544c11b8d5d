#pragma once

// The Airy spectral curve x = z^2, y = 2 z^2 dz and its shift family
// S + u D: Newton/homotopy solve of the coupled (zeta_u, C_u) system,
// closed-form series for the single-point shift, shifted-curve algebraic
// equation residuals, and times extraction by contour quadrature.

#include <vector>

#include "fay/core.hpp"
#include "fay/quadrature.hpp"

namespace fay {

struct ShiftSolution {
    cplx u = 0.0;
    std::vector<cplx> z;      // divisor points z_i
    std::vector<cplx> alpha;  // weights alpha'_i
    std::vector<cplx> zetas;  // solved zeta_u(z_i), branch continuous from u=0
    cplx c = 0.0;             // C_u = sum alpha'_i / zeta_u(z_i)
    double residual = 0.0;    // final Newton residual norm

    // scalar part of y_u (the form is y_u(z) dz)
    cplx y_density(cplx zz) const;
    // x_u(z) = z^2 + u C_u
    cplx x_map(cplx zz) const { return zz * zz + u * c; }
};

// solve zeta_i^2 = z_i^2 - u C_u, C_u = sum alpha'_i / zeta_i by homotopy
// continuation from the u = 0 seed zeta_i = z_i; throws on divergence
ShiftSolution solve_shift(const std::vector<cplx>& z,
                          const std::vector<cplx>& alpha, cplx u,
                          int path_steps = 8, double tol = 1e-12);

// series coefficients c_k, k = 1..k_max, of
// zeta_u(z1) = z1 + sum_k c_k u^k (half-integer factorials via Gamma)
std::vector<cplx> zeta_series(cplx z1, int k_max);

// radius of convergence 2 |z1|^3 / (3 sqrt 3)
double zeta_radius(cplx z1);

// (y^2 - x)(x - X1) - u (y + zeta_u - u / (4 zeta_u^2)) for a single-point
// shift, evaluated at the sample z
cplx curve_equation_residual(const ShiftSolution& sol, cplx z);

// residue of y_u at the finite pole zeta_u(z_i)
cplx finite_time(const ShiftSolution& sol, size_t i);

// t_{infty,k} = -Res_infty z^{-k} y_u by a large-circle quadrature
cplx infinity_time(const ShiftSolution& sol, int k);

}  // namespace fay
