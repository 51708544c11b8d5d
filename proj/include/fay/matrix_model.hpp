#pragma once

// One-matrix-model tau functions: Hankel/Heine determinants of moments of
// e^{-V} on the real line, divisor-shifted variants via characteristic-
// polynomial weights, wavefunctions, and the tau value as a formal series in
// the times around the base potential.

#include <map>
#include <nlohmann/json.hpp>
#include <vector>

#include "fay/divisor.hpp"
#include "fay/series.hpp"

namespace fay {

// V(x) = sum_k t_k x^k / k
struct Potential {
    std::map<int, cplx> t;

    static Potential gaussian() { return Potential{{{2, cplx(1.0)}}}; }
    static Potential quartic() {
        return Potential{{{2, cplx(1.0)}, {4, cplx(1.0)}}};
    }

    cplx V(cplx x) const;
    int max_k() const;
    // [-L, L] outside of which |x|^p e^{-Re V} < 1e-18
    double domain_halfwidth(double p = 48.0) const;
};

nlohmann::json to_json(const Potential& p);
Potential potential_from_json(const nlohmann::json& j);

// (2k-1)!! sqrt(2 pi) for even j, 0 for odd: moments of e^{-x^2/2}
cplx gaussian_moment(int j);

struct MatrixModel {
    Potential pot;

    explicit MatrixModel(Potential p) : pot(std::move(p)) {}

    // m_j = \int x^j e^{-V} dx (cached)
    cplx moment(int j) const;

    // moments of e^{-V} prod_p (1 - z_p x)^{alpha_p}; weights must be
    // integers (branch-unambiguous along the contour), poles off the real
    // axis for negative weights
    std::vector<cplx> weighted_moments(int jmax, const Divisor& d) const;

    // tau_N = N! det(m_{i+j})_{0..N-1}; tau_0 = 1
    cplx tau(int N) const;
    // tau_N at times shifted by the Sato vector of D (integer divisor)
    cplx tau_shifted(int N, const Divisor& d) const;
    // tau ratio tau_N(t0 + [D]) / tau_N(t0)
    cplx tau_ratio(int N, const Divisor& d) const;

    // direct N-fold eigenvalue integral \int prod dl_i Delta^2 prod e^{-V}
    // (equals tau(N)); N <= 3
    cplx tau_eigenvalue(int N, const Divisor& d = Divisor{}) const;

    // tau_N(t0 + dt)/tau_N(t0) as a series in dt, truncation n
    CSeries tau_series(int N, long n) const;

    // monic orthogonal polynomial p_N(x) = <det(x - M)>
    cplx psi(int N, cplx x) const;
    // Cauchy-transform partner <1/det(x - M)> from the size-(m+1) model;
    // x must be off the real axis
    cplx phi(int m, cplx x) const;

    // contour pairing (1/2pi i) \oint psi_n phi_m around the real axis;
    // proportional to delta_{nm}
    cplx pairing(int n, int m) const;

  private:
    mutable std::map<int, cplx> moment_cache_;
};

}  // namespace fay
