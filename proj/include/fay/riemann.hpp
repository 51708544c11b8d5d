#pragma once

// Genus-0/1 surface backend: Riemann theta with a tail-bounded lattice sum,
// the flat torus model with its odd characteristic, Abel map, prime form,
// canonical differentials of the three kinds, time/period extraction and the
// Szego kernel.

#include <functional>
#include <nlohmann/json.hpp>

#include "fay/divisor.hpp"
#include "fay/quadrature.hpp"

namespace fay {

// genus-1 theta: sum over n of e^{2 pi i u n + pi i tau n^2}; the truncation
// radius is chosen from the Gaussian tail so the discarded part is < tail
cplx theta(cplx u, cplx tau, double tail = 1e-12);
cplx theta_du(cplx u, cplx tau, double tail = 1e-12);  // d/du
// lattice sum with an explicit truncation radius (tail-convergence studies)
cplx theta_truncated(cplx u, cplx tau, double radius);

// flat torus C / (Z + tau Z); A-cycle = unit horizontal loop, B-cycle = tau
struct Torus {
    cplx tau;
    cplx origin = 0.0;
    // basepoint for A/B loop contours and path integrals; callers place it
    // away from the poles of the forms they integrate
    cplx base = 0.0;
    double tail = 1e-12;

    cplx chi() const { return 0.5 + 0.5 * tau; }  // the odd characteristic
    cplx abel(cplx z) const { return z - origin; }
    // prime form in the flat coordinate: Theta(z1-z2+chi) / Theta'(chi)
    cplx prime(cplx z1, cplx z2) const;
};

nlohmann::json to_json(const Torus& t);
Torus torus_from_json(const nlohmann::json& j);

// 1-forms are stored by their coefficient function: Omega = f(z) dz
// first kind: omega' = dz (A-period 1)
// third kind omega'''_{p,q}: simple poles at p (+1) and q (-1), A-null
CFun omega3(const Torus& t, cplx p, cplx q);
// second kind omega''_{p,k}: pole 1/(z-p)^{k+1} (+ regular), A-null; built as
// (1/k!) d^k/dp^k of tlog(z-p) via a Cauchy circle whose radius adapts to
// the nearest lattice translate of the pole, plus a constant zeroing the
// A-period (quadratured to tol)
CFun omega2(const Torus& t, cplx p, int k, double tol = 1e-12);
// genus-0 counterparts (rational algebra)
CFun omega3_g0(cplx p, cplx q);
CFun omega2_g0(cplx p, int k);

// loop and path integrals of a form
cplx a_period(const Torus& t, const CFun& f, double tol = 1e-12);
cplx b_period(const Torus& t, const CFun& f, double tol = 1e-12);
cplx path_integral(const CFun& f, cplx from, cplx to, double tol = 1e-12);
// residue data: t_{p,k} = Res_p (z-p)^k Omega
cplx form_time(const CFun& f, cplx p, int k, double r = 0.1);
// zeta(Omega) = (1/2 pi i) (oint_B - tau oint_A) Omega
cplx zeta_vector(const Torus& t, const CFun& f, double tol = 1e-12);

// canonical decomposition data: t[i][k] = Res_{p_i} (z - p_i)^k Omega for
// k = 0..kmax, plus the first-kind period eps = (1/2 pi i) oint_A Omega
struct FormTimes {
    std::vector<cplx> poles;
    std::vector<std::vector<cplx>> t;
    cplx eps = 0.0;
};
FormTimes extract_times(const Torus& t, const CFun& f,
                        const std::vector<cplx>& poles, int kmax,
                        double r = 0.09, double tol = 1e-12);
// Omega = sum_{i,k>=1} t[i][k] omega''_{p_i,k}
//       + sum_i t[i][0] omega'''_{p_i, origin} + 2 pi i eps dz
CFun rebuild_form(const Torus& t, const FormTimes& ft, double tol = 1e-12);

// a form plus its precomputed invariants entering the Szego kernel
struct FormData {
    CFun f;           // empty: Omega = 0
    cplx eps = 0.0;   // (1/2 pi i) oint_A Omega
    cplx zeta = 0.0;  // zeta(Omega)

    static FormData none() { return {}; }
    static FormData on_torus(const Torus& t, CFun f, double tol = 1e-12);
};

// Szego kernel for a neutral divisor:
//   psi(D; Omega) = Theta(zeta + a(D) + chi_e) / Theta(zeta + chi_e)
//                   * prod_{i<j} E(z_i, z_j)^{alpha_i alpha_j}
//                   * e^{sum_i alpha_i int_base^{z_i} Omega}
//                   * e^{-2 pi i eps a(D)}
// chi_e is the odd characteristic unless Theta(zeta + chi) is (near) zero --
// in particular at Omega = 0 -- in which case the even characteristic 1/2 is
// used (the determinantal identities hold for any non-singular twist).
cplx szego(const Torus& t, const Divisor& d, const FormData& om,
           double tol = 1e-12);

}  // namespace fay
