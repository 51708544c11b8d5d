#pragma once

// Numerical integration: composite Gauss-Legendre on segments and the real
// line with tolerance-driven refinement, and spectrally accurate trapezoid
// quadrature on circles (contour residues, Cauchy derivatives).

#include <functional>
#include <vector>

#include "fay/core.hpp"

namespace fay {

struct GaussLegendre {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
    explicit GaussLegendre(int n);
};

// cached rule
const GaussLegendre& gl_rule(int n);

using CFun = std::function<cplx(cplx)>;

// straight-segment integral with composite GL, panels doubled until the
// change is below tol (absolute + relative)
cplx integrate_segment(const CFun& f, cplx a, cplx b, double tol = 1e-12,
                       int max_panels = 1 << 12);

// real-line integral of f on [-L, L]
cplx integrate_real(const CFun& f, double L, double tol = 1e-13,
                    int max_panels = 1 << 14);

// contour integral over the positively oriented circle |z - c| = r via
// trapezoid sums with node doubling until successive values agree to tol
cplx integrate_circle(const CFun& f, cplx c, double r, double tol = 1e-12,
                      int max_nodes = 1 << 15);

// Res_{z->c} f = (1/2pi i) circle integral
cplx contour_residue(const CFun& f, cplx c, double r, double tol = 1e-12);

// f^{(order)}(c) via Cauchy's formula on a circle of radius r
cplx cauchy_derivative(const CFun& f, cplx c, int order, double r,
                       int nodes = 64);

}  // namespace fay
