#pragma once

// Reconstruction-formula tau function on the space of meromorphic forms:
// canonical-form composition with exact time bookkeeping, the Q quadratic
// form (with prime-form-regularized integrals to simple poles), theta tau
// ratios under third-kind shifts, and surface-level Fay determinant checks.

#include <nlohmann/json.hpp>

#include <vector>

#include "fay/divisor.hpp"
#include "fay/riemann.hpp"

namespace fay {

// a meromorphic 1-form on the torus assembled from canonical components,
// so all times and periods are known exactly from the coefficients
struct CanonicalForm {
    struct Second {  // c * omega''_{p,k}
        cplx p;
        int k = 1;
        cplx c;
    };
    struct Third {  // c * omega'''_{p,q}
        cplx p, q;
        cplx c;
    };
    Torus torus;
    std::vector<Second> second;
    std::vector<Third> third;
    cplx first = 0.0;  // first * 2 pi i dz (so eps = first)

    CFun build(double tol = 1e-12) const;
    std::vector<cplx> poles() const;  // distinct pole support
    cplx residue(cplx p) const;       // exact t_{p,0}
    cplx time(cplx p, int k) const;   // exact t_{p,k}, k >= 1
    int max_order(cplx p) const;      // largest k with t_{p,k} possibly != 0
};

nlohmann::json to_json(const CanonicalForm& cf);
CanonicalForm form_from_json(const Torus& t, const nlohmann::json& j);

// regularized integral to a simple pole p of Omega with residue r:
//   lim_{z->p} [ int_o^z Omega - r ln E(z,p) ]
// computed by subtracting r d ln E(z,p) under the integral; the straight
// path o -> p must avoid the other poles
cplx reg_integral_to_pole(const Torus& t, const CFun& f, cplx o, cplx p,
                          cplx r, double tol = 1e-12);

// Q(Omega,Omega) = sum_p sum_k (1/k) t_{p,k} Res_p xi_p^{-k} Omega
//                + sum_p t_{p,0} int_origin^p Omega + eps oint_B Omega
// (the middle integrals regularized as above when p carries a residue)
cplx q_form(const CanonicalForm& cf, double tol = 1e-12);

// T(Omega) = twist(zeta) e^{Q/2} e^{-2 pi i eps zeta} e^{-pi i tau eps^2},
// twist(u) = e^{pi i u} Theta(u + chi) (the characteristic-normalized odd
// theta, matching the prime form and szego conventions)
cplx tau_theta(const CanonicalForm& cf, double tol = 1e-12);

// T(Omega + omega'''_D)/T(Omega) for D = sum_i [z_i] - [w_i]; throws when
// the denominator theta is singular (|Theta(zeta + chi)| < 1e-10)
cplx tau_theta_ratio(const CanonicalForm& cf, const std::vector<cplx>& z,
                     const std::vector<cplx>& w, double tol = 1e-12);

// |psi(D;Omega) - det_{i,j} psi([z_j]-[w_i];Omega)| / (1 + |psi(D)|) with
// D = (z_1, w_1, z_2, w_2, ...) interleaved
double fay_surface_residual(const Torus& t, const FormData& om,
                            const std::vector<cplx>& z,
                            const std::vector<cplx>& w, double tol = 1e-12);

// reproducing-kernel residual |Delta_xi K(xi1,xi2) + K(xi1,xi) K(xi,xi2)|
// / (1 + |Delta_xi K|), with K(a,b) the kernel of [b]-[a] against the base
// form and the insertion operator realized as
//   Delta_xi G = d/dxi [ d/dalpha G(Omega + alpha omega'''_{xi,o2}) ]_0
// by nested Cauchy-circle derivatives (alpha radius 0.25, xi radius 0.05);
// o2 is the auxiliary anchor of the inserted third-kind form
double reproducing_g1_residual(const Torus& t, const CFun& om, cplx xi,
                               cplx xi1, cplx xi2, cplx o2,
                               double tol = 1e-12);
double reproducing_g0_residual(const CFun& om, cplx base, cplx xi, cplx xi1,
                               cplx xi2, cplx o2, double tol = 1e-12);

// genus-0 kernel: prod_{i<j} (x_i-x_j)^{a_i a_j} e^{sum_i a_i int_base^{x_i} Omega}
cplx szego_g0(const Divisor& d, const CFun& om, cplx base, double tol = 1e-12);
double fay_g0_residual(const CFun& om, cplx base, const std::vector<cplx>& z,
                       const std::vector<cplx>& w, double tol = 1e-12);

}  // namespace fay
