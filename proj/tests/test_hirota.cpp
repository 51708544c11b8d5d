#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fay/hirota.hpp"
#include "fay/matrix_model.hpp"

using namespace fay;

namespace {

std::vector<int> dense(const Multi& m) {
    std::vector<int> v;
    for (auto& [k, e] : m.e) {
        if (static_cast<int>(v.size()) < k) v.resize(k, 0);
        v[k - 1] = e;
    }
    return v;
}

// all mu with sum j*mu_j <= s (including the empty mu)
std::vector<std::vector<int>> all_mu(int s) {
    std::vector<std::vector<int>> out{{}};
    for (int d = 1; d <= s; ++d)
        for (auto& m : partitions(d)) out.push_back(dense(m));
    return out;
}

// a generic series with unit constant term and random coefficients on every
// monomial: definitely not a tau function
CSeries generic_series(long n, unsigned seed) {
    CSeries s = CSeries::one(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int d = 1; d <= static_cast<int>(n); ++d)
        for (auto& m : partitions(d)) s.add_term(m, cplx(u(rng), u(rng)));
    return s;
}

}  // namespace

TEST_CASE("operator route and residue route agree on a generic series") {
    CSeries T = generic_series(8, 3);
    std::vector<std::vector<int>> mus{{},     {1},    {2},    {0, 1},
                                      {1, 1}, {0, 0, 1}, {3},  {2, 1}};
    for (auto& mu : mus) {
        CSeries a = hirota_residual(mu, T);
        CSeries b = hirota_residual_direct(mu, T);
        CHECK(max_abs_coeff(a - b) < 1e-12 * (1.0 + max_abs_coeff(a)));
    }
    // for a non-tau series the first genuinely even residual (the KP
    // operator) does not vanish; mu = (0,1) reduces to odd monomials
    // -D1^3/6 - D3 which annihilate (T,T) identically
    CHECK(max_abs_coeff(hirota_residual({0, 0, 1}, T)) > 1e-4);
}

TEST_CASE("Hirota residuals vanish on one-matrix tau series") {
    MatrixModel mm(Potential::gaussian());
    // truncation 13 = 6 (asserted residual degree) + 7 (max operator degree)
    CSeries t1 = mm.tau_series(1, 13);
    for (auto& mu : all_mu(6))
        CHECK(max_abs_coeff(hirota_residual(mu, t1, 6)) < 1e-10);
    // residue route on a couple of representatives
    for (auto& mu : std::vector<std::vector<int>>{{0, 1}, {2, 1}}) {
        CSeries a = hirota_residual(mu, t1, 6);
        CSeries b = hirota_residual_direct(mu, t1, 6);
        CHECK(max_abs_coeff(a - b) < 1e-12);
    }
    // two-eigenvalue model as well, at lower depth
    CSeries t2 = mm.tau_series(2, 9);
    for (auto& mu : all_mu(4))
        CHECK(max_abs_coeff(hirota_residual(mu, t2, 4)) < 1e-10);
    // control: a generic series of the same shape fails clearly
    CSeries g = generic_series(13, 5);
    CHECK(max_abs_coeff(hirota_residual({0, 0, 1}, g, 6)) > 1e-4);
}

TEST_CASE("KP equation from the cubic-weight Hirota operator") {
    // D_{mu=(0,0,1)}(T,T) = -(2/3) T^2 [d2^2 F + (d1^4 F + 6 (d1^2 F)^2)/12
    //                                   - d1 d3 F],  F = ln T
    // truncation 10 so that degree-6 coefficients of d1^4 F are exact
    CSeries T = generic_series(10, 11);
    CSeries lhs = hirota_residual({0, 0, 1}, T, 6);
    CSeries rhs = (kp_residual(T) * T * T).scaled(-2.0 / 3.0).retruncated(6);
    CHECK(max_abs_coeff(lhs) > 1e-3);
    CHECK(max_abs_coeff(lhs - rhs) < 1e-11 * (1.0 + max_abs_coeff(lhs)));
    // and the KP residual itself vanishes on a tau series
    MatrixModel mm(Potential::gaussian());
    CSeries kp = kp_residual(mm.tau_series(1, 13));
    CHECK(max_abs_coeff(kp.retruncated(6)) < 1e-10);
}

TEST_CASE("divisor-weighted Hirota residual vanishes on tau series") {
    MatrixModel mm(Potential::gaussian());
    CSeries t1 = mm.tau_series(1, 8);
    CHECK(max_abs_coeff(hirota_divisor_residual(t1, {1, -1}, 6)) < 1e-9);
    CHECK(max_abs_coeff(hirota_divisor_residual(t1, {1}, 5)) < 1e-9);
    CHECK(max_abs_coeff(hirota_divisor_residual(t1, {2}, 4)) < 1e-9);
    CSeries t2 = MatrixModel(Potential::quartic()).tau_series(2, 8);
    CHECK(max_abs_coeff(hirota_divisor_residual(t2, {1, -1}, 6)) < 1e-9);
    // control
    CHECK(max_abs_coeff(hirota_divisor_residual(generic_series(8, 7), {1, -1},
                                                6)) > 1e-4);
}

TEST_CASE("formal three-term Fay identity for matrix tau series") {
    // joint degree 6 is the first with nontrivial content: through degree 5
    // the identity holds for an arbitrary series
    for (auto pot : {Potential::gaussian(), Potential::quartic()}) {
        MatrixModel mm(pot);
        for (int N : {1, 2})
            CHECK(fay_n2_formal_residual(mm.tau_series(N, 6), 6) < 1e-9);
    }
    // control
    CHECK(fay_n2_formal_residual(generic_series(6, 9), 6) > 1e-3);
}

TEST_CASE("genus-zero Fay: trivial context") {
    TauContext ctx = TauContext::trivial();
    // hand value: z = (2, 3), w = (0, 1) gives ratio = det = -1/12
    std::vector<cplx> zh{cplx(2.0), cplx(3.0)}, wh{cplx(0.0), cplx(1.0)};
    Divisor full{{cplx(2.0), cplx(1.0)},
                 {cplx(0.0), cplx(-1.0)},
                 {cplx(3.0), cplx(1.0)},
                 {cplx(1.0), cplx(-1.0)}};
    CHECK(std::abs(ctx.ratio(full) - cplx(-1.0 / 12.0)) < 1e-15);
    CHECK(fay_det_residual(ctx, zh, wh) < 1e-15);
    // seeded random configurations, n = 2..4
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto pt = [&] { return cplx(u(rng), u(rng)) + cplx(0.2, 0.1); };
    for (int rep = 0; rep < 20; ++rep)
        for (int n : {2, 3, 4}) {
            std::vector<cplx> z(n), w(n);
            for (int j = 0; j < n; ++j) {
                z[j] = pt() + cplx(2.0 * j, 0.0);
                w[j] = pt() + cplx(2.0 * j, 1.5);
            }
            CHECK(fay_det_residual(ctx, z, w) < 1e-12);
            if (n == 2)
                CHECK(fay_n2_residual(ctx, z[0], z[1], w[0], w[1]) < 1e-12);
        }
}

TEST_CASE("Fay identities through the matrix-model context") {
    MatrixModel mm(Potential::gaussian());
    TauContext ctx{[&](const Divisor& d) { return mm.tau_ratio(2, d); },
                   mm.pot.t};
    std::vector<cplx> z{{0.2, 0.3}, {-0.15, 0.25}};
    std::vector<cplx> w{{0.1, -0.2}, {-0.2, -0.15}};
    CHECK(fay_det_residual(ctx, z, w) < 1e-6);
    CHECK(fay_n2_residual(ctx, z[0], z[1], w[0], w[1]) < 1e-6);
}

TEST_CASE("reproducing kernel residual in formal mode") {
    // constant tau: pure prime-form cancellation
    CHECK(reproducing_residual(CSeries::one(6)) < 1e-14);
    MatrixModel mm(Potential::gaussian());
    CHECK(reproducing_residual(mm.tau_series(2, 8)) < 1e-10);
    CHECK(reproducing_residual(mm.tau_series(1, 8)) < 1e-10);
    // control
    CHECK(reproducing_residual(generic_series(8, 13)) > 1e-4);
}

TEST_CASE("W_n determinantal formulas match correlators") {
    MatrixModel mm(Potential::gaussian());
    CHECK(wn_determinantal_residual(mm.tau_series(2, 8), 2) < 1e-10);
    CHECK(wn_determinantal_residual(mm.tau_series(2, 6), 3) < 1e-10);
    CHECK(wn_determinantal_residual(CSeries::one(6), 2) < 1e-14);
    // control
    CHECK(wn_determinantal_residual(generic_series(8, 15), 2) > 1e-4);
}

TEST_CASE("series-backed context matches near the base point") {
    // small points: the resummed series only converges for 1/|z| outside the
    // support of the measure
    MatrixModel mm(Potential::gaussian());
    TauContext ctx = series_context(mm.tau_series(2, 12), mm.pot.t);
    CHECK(fay_n2_residual(ctx, cplx(0.06, 0.02), cplx(-0.05, 0.03),
                          cplx(0.02, -0.05), cplx(-0.03, -0.04)) < 1e-5);
    // kernel agrees with the exact weighted-Heine ratio
    TauContext exact{[&](const Divisor& d) { return mm.tau_ratio(2, d); },
                     mm.pot.t};
    cplx a(0.05, 0.04), b(-0.04, 0.05);
    CHECK(std::abs(ctx.kernel(b, a) - exact.kernel(b, a)) <
          1e-6 * std::abs(exact.kernel(b, a)));
}
