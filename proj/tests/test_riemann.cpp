#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fay/riemann.hpp"

using namespace fay;

namespace {

const cplx II(0.0, 1.0);
const double pi = std::numbers::pi;

// distance from z to the nearest lattice translate of p
double torus_dist(cplx z, cplx p, cplx tau) {
    double d = 1e300;
    for (int n = -1; n <= 1; ++n)
        for (int m = -1; m <= 1; ++m)
            d = std::min(d, std::abs(z - p - (double(n) + double(m) * tau)));
    return d;
}

}  // namespace

TEST_CASE("theta: parity, periodicity, quasi-periodicity, odd zero") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    for (cplx tau : {cplx(0.0, 1.0), cplx(0.3, 0.8)}) {
        cplx chi = 0.5 + 0.5 * tau;
        CHECK(std::abs(theta(chi, tau)) < 1e-12);
        for (int rep = 0; rep < 10; ++rep) {
            cplx z(u(rng), u(rng));
            CHECK(std::abs(theta(-z, tau) - theta(z, tau)) < 1e-12);
            CHECK(std::abs(theta(z + 1.0, tau) - theta(z, tau)) < 1e-12);
            cplx lhs = theta(z + tau, tau);
            cplx rhs = theta(z, tau) * std::exp(-pi * II * tau - 2.0 * pi * II * z);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
    // direct-sum oracle at tau = i
    cplx oracle = 0.0;
    for (int n = -10; n <= 10; ++n) oracle += std::exp(-pi * double(n) * double(n));
    CHECK(std::abs(theta(0.0, cplx(0.0, 1.0)) - oracle) < 1e-12);
    CHECK(std::abs(oracle - 1.08643481) < 1e-7);
    // tail bound honored: tightening the bound moves the value by less than it
    cplx z(0.23, -0.31), tau(0.3, 0.8);
    CHECK(std::abs(theta(z, tau, 1e-8) - theta(z, tau, 1e-15)) < 1e-8);
    // explicit-radius sum converges to the tail-bounded value
    CHECK(std::abs(theta_truncated(z, tau, 8.0) - theta(z, tau, 1e-15)) < 1e-14);
    CHECK_THROWS_AS(theta(0.0, cplx(0.0, -1.0)), fay_error);
    CHECK_THROWS_AS(theta(0.0, cplx(1.0, 0.0)), fay_error);
}

TEST_CASE("prime form: linear vanishing, antisymmetry phase, no other zeros") {
    Torus t{cplx(0.0, 1.0)};
    cplx a(0.21, 0.13);
    // second-order vanishing of E/w - 1 in the odd normalization
    for (double sep : {1e-2, 1e-4})
        CHECK(std::abs(t.prime(a + sep, a) / sep - 1.0) < 20.0 * sep * sep + 1e-11);
    // exact antisymmetry
    cplx b(-0.35, 0.42);
    CHECK(std::abs(t.prime(b, a) + t.prime(a, b)) < 1e-12);
    // no zeros away from the diagonal's lattice translates
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            cplx w(0.17 * i - 0.4, 0.19 * j - 0.35);
            if (torus_dist(w, 0.0, t.tau) < 0.05) continue;
            CHECK(std::abs(theta(w + t.chi(), t.tau)) > 1e-3);
        }
}

TEST_CASE("canonical differentials on the torus") {
    Torus t{cplx(0.3, 0.8)};
    t.base = cplx(-0.37, -0.21);
    cplx p(0.15, 0.3), q(-0.28, 0.5);
    // first kind: constant 1 has unit A-period
    CFun w1 = [](cplx) { return cplx(1.0); };
    CHECK(std::abs(a_period(t, w1) - 1.0) < 1e-12);

    CFun w3 = omega3(t, p, q);
    CHECK(std::abs(a_period(t, w3)) < 1e-12);
    CHECK(std::abs(form_time(w3, p, 0, 0.1) - 1.0) < 1e-10);
    CHECK(std::abs(form_time(w3, q, 0, 0.1) + 1.0) < 1e-10);
    CHECK(std::abs(form_time(w3, p, 1, 0.1)) < 1e-10);
    CHECK(std::abs(form_time(w3, p, 2, 0.1)) < 1e-10);
    // zeta of a third-kind form is the Abel image of its divisor, up to a
    // lattice vector from how the B contour threads between the poles
    CHECK(torus_dist(zeta_vector(t, w3), p - q, t.tau) < 1e-10);
    // ellipticity
    for (cplx z : {cplx(0.4, -0.05), cplx(-0.1, 0.12)}) {
        CHECK(std::abs(w3(z + 1.0) - w3(z)) < 1e-11);
        CHECK(std::abs(w3(z + t.tau) - w3(z)) < 1e-11);
    }
    // independence of the auxiliary point for a neutral combination
    cplx o2(0.45, -0.12);
    CFun w3a = omega3(t, p, o2), w3b = omega3(t, q, o2);
    for (cplx z : {cplx(0.4, -0.05), cplx(-0.1, 0.12), cplx(0.05, 0.7)})
        CHECK(std::abs(w3(z) - (w3a(z) - w3b(z))) < 1e-10);

    for (int k : {1, 2}) {
        CFun w2 = omega2(t, p, k);
        CHECK(std::abs(a_period(t, w2)) < 1e-10);
        for (int j = 0; j <= 2; ++j) {
            cplx want = (j == k) ? cplx(1.0) : cplx(0.0);
            CHECK(std::abs(form_time(w2, p, j, 0.08) - want) < 1e-9);
        }
        for (cplx z : {cplx(0.4, -0.05), cplx(-0.1, 0.12)}) {
            CHECK(std::abs(w2(z + 1.0) - w2(z)) < 1e-9);
            CHECK(std::abs(w2(z + t.tau) - w2(z)) < 1e-9);
        }
    }
    // genus-0 counterparts are the bare rational kernels
    CHECK(std::abs(omega3_g0(p, q)(cplx(2.0)) -
                   (1.0 / (2.0 - p) - 1.0 / (2.0 - q))) < 1e-15);
    CHECK(std::abs(omega2_g0(p, 2)(cplx(2.0)) - ipow(2.0 - p, -3)) < 1e-15);
}

TEST_CASE("canonical decomposition round trip") {
    Torus t{cplx(0.3, 0.8)};
    t.base = cplx(-0.37, -0.21);
    cplx p(0.15, 0.3), q(-0.28, 0.5), s(0.3, 0.45);
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(0.3, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * pi);
    auto coef = [&] { return u(rng) * std::exp(II * ph(rng)); };
    cplx c1 = coef(), c2 = coef(), c3 = coef(), c4 = coef(), c5 = coef(),
         c6 = coef();
    CFun p1 = omega2(t, p, 1), p2 = omega2(t, p, 2), q1 = omega2(t, q, 1);
    CFun pq = omega3(t, p, q), qs = omega3(t, q, s);
    CFun omega = [&](cplx z) {
        return c1 * p1(z) + c2 * p2(z) + c3 * q1(z) + c4 * pq(z) +
               c5 * qs(z) + c6 * 2.0 * pi * II;
    };
    FormTimes ft = extract_times(t, omega, {p, q, s}, 2, 0.09);
    CHECK(std::abs(ft.t[0][1] - c1) < 1e-10);
    CHECK(std::abs(ft.t[0][2] - c2) < 1e-10);
    CHECK(std::abs(ft.t[1][1] - c3) < 1e-10);
    CHECK(std::abs(ft.t[0][0] - c4) < 1e-10);
    CHECK(std::abs(ft.t[1][0] - (c5 - c4)) < 1e-10);
    CHECK(std::abs(ft.t[2][0] + c5) < 1e-10);
    CHECK(std::abs(ft.eps - c6) < 1e-10);
    CHECK(std::abs(ft.t[0][0] + ft.t[1][0] + ft.t[2][0]) < 1e-10);

    CFun rebuilt = rebuild_form(t, ft);
    std::uniform_real_distribution<double> cell(-0.5, 0.5);
    int done = 0;
    while (done < 100) {
        cplx z = cell(rng) + cell(rng) * t.tau;
        bool ok = torus_dist(z, t.origin, t.tau) > 0.15;
        for (cplx pp : {p, q, s}) ok = ok && torus_dist(z, pp, t.tau) > 0.15;
        if (!ok) continue;
        CHECK(std::abs(omega(z) - rebuilt(z)) < 1e-9);
        ++done;
    }
}

TEST_CASE("trivial decompositions") {
    Torus t{cplx(0.3, 0.8)};
    t.base = cplx(-0.37, -0.21);
    cplx p(0.15, 0.3), q(-0.28, 0.5);
    // a pure third-kind form: residues +1/-1, no higher times, no period
    FormTimes ft = extract_times(t, omega3(t, p, q), {p, q}, 2, 0.09);
    CHECK(std::abs(ft.t[0][0] - 1.0) < 1e-10);
    CHECK(std::abs(ft.t[1][0] + 1.0) < 1e-10);
    for (size_t i : {0, 1})
        for (size_t k : {1, 2}) CHECK(std::abs(ft.t[i][k]) < 1e-10);
    CHECK(std::abs(ft.eps) < 1e-12);
    // 2 pi i times the first-kind form: eps = 1, no times
    CFun w1 = [](cplx) { return 2.0 * pi * II; };
    FormTimes f1 = extract_times(t, w1, {p}, 2, 0.09);
    CHECK(std::abs(f1.eps - 1.0) < 1e-12);
    for (size_t k : {0, 1, 2}) CHECK(std::abs(f1.t[0][k]) < 1e-12);
}

TEST_CASE("Szego kernel: short-distance behavior and monodromy") {
    Torus t{cplx(0.3, 0.8)};
    t.base = cplx(-0.2, -0.35);
    // Omega = 0: even-twist fallback; psi ~ 1/(z1-z2) at coinciding points
    cplx z2(-0.15, 0.15);
    double prev = 1.0;
    for (double sep : {1e-2, 1e-3, 1e-4}) {
        Divisor d{{z2 + sep, cplx(1.0)}, {z2, cplx(-1.0)}};
        double err = std::abs(szego(t, d, FormData::none()) * sep - 1.0);
        CHECK(err < 50.0 * sep * sep + 1e-10);
        CHECK(err < prev);
        prev = err;
    }

    // integer-residue form: psi is invariant under both lattice shifts of z1
    cplx p(0.5, -0.15), q(-0.3, 0.35), z1(0.2, 0.4);
    FormData om = FormData::on_torus(t, omega3(t, p, q));
    CHECK(std::abs(om.eps) < 1e-11);
    CHECK(torus_dist(om.zeta, p - q, t.tau) < 1e-10);
    Divisor d{{z1, cplx(1.0)}, {z2, cplx(-1.0)}};
    cplx base_val = szego(t, d, om);
    Divisor dA{{z1 + 1.0, cplx(1.0)}, {z2, cplx(-1.0)}};
    Divisor dB{{z1 + t.tau, cplx(1.0)}, {z2, cplx(-1.0)}};
    CHECK(std::abs(szego(t, dA, om) / base_val - 1.0) < 1e-8);
    CHECK(std::abs(szego(t, dB, om) / base_val - 1.0) < 1e-8);

    // control: non-integer residues break the A-shift invariance (the path
    // sweep across the pole at p contributes e^{2 pi i 0.37} != 1)
    FormData omc = FormData::on_torus(
        t, [f = omega3(t, p, q)](cplx z) { return 0.37 * f(z); });
    cplx cv = szego(t, d, omc);
    CHECK(std::abs(szego(t, dA, omc) / cv - 1.0) > 0.5);

    // A-cycle derivation chain: e^{oint_A Omega} e^{-2 pi i eps} = 1, with
    // the loop requadratured at a different height
    cplx shift(0.0, -0.05);
    cplx loop = path_integral(om.f, t.base + shift, t.base + shift + 1.0);
    CHECK(std::abs(std::exp(loop) * std::exp(-2.0 * pi * II * om.eps) - 1.0) <
          1e-10);

    CHECK_THROWS_AS(szego(t, Divisor{{z1, cplx(1.0)}}, om), fay_error);
}

TEST_CASE("torus json round trip") {
    Torus t{cplx(0.3, 0.8)};
    t.origin = cplx(0.1, -0.05);
    t.base = cplx(-0.25, -0.3);
    Torus r = torus_from_json(to_json(t));
    CHECK(r.tau == t.tau);
    CHECK(r.origin == t.origin);
    CHECK(r.base == t.base);
    CHECK(r.tail == t.tail);
    CHECK_THROWS_AS(torus_from_json({{"genus", 2}, {"tau", {{"re", 0.0}, {"im", 1.0}}}}),
                    fay_error);
}
