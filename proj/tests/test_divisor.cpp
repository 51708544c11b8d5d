#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fay/divisor.hpp"

using namespace fay;

TEST_CASE("degree / support / classify") {
    cplx z1(0.3, 1.2), z2(-0.5, 0.1);
    Divisor d{{z1, 1.0}, {z2, -1.0}};
    CHECK(std::abs(d.degree()) == 0.0);
    auto f = d.classify();
    CHECK(f.neutral);
    CHECK(f.supersymmetric);
    CHECK(f.unitary);

    Divisor half{{cplx(1), 0.5}, {cplx(2), -0.5}, {cplx(3), -0.5}, {cplx(4), -0.5}};
    CHECK(half.degree() == cplx(-1.0));
    CHECK(!half.classify().integer);
    CHECK(!half.classify().supersymmetric);

    Divisor pos{{cplx(1.5), 2.0}, {cplx(-2), 3.0}};
    auto fp = pos.classify();
    CHECK(fp.positive);
    CHECK(fp.integer);
    CHECK(!fp.unitary);
    CHECK(pos.degree() == cplx(5.0));

    CHECK_THROWS_AS((Divisor{{cplx(1), 1.0}, {cplx(1), 2.0}}), fay_error);
}

TEST_CASE("sato_vector") {
    cplx z(0.4, -0.3);
    Divisor d{{z, 1.0}};
    auto v = d.sato_vector(5);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(v[k - 1] - ipow(z, k)) < 1e-15);

    // point at origin: zero vector
    Divisor o{{cplx(0), 1.0}};
    for (auto& c : o.sato_vector(4)) CHECK(is_zero(c));

    // D = a + (-a): odd power sums vanish
    cplx a(0.7, 0.2);
    Divisor pm{{a, 1.0}, {-a, 1.0}};
    auto vp = pm.sato_vector(4);
    CHECK(std::abs(vp[0]) < 1e-15);
    CHECK(std::abs(vp[2]) < 1e-15);
    CHECK(std::abs(vp[1] - 2.0 * ipow(a, 2)) < 1e-15);
    CHECK(std::abs(vp[3] - 2.0 * ipow(a, 4)) < 1e-15);

    // additivity under concatenation
    Divisor d2{{cplx(1.0, 1.0), cplx(0, 2)}};
    auto vc = d.concat(d2).sato_vector(5);
    auto vb = d2.sato_vector(5);
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(vc[k] - (v[k] + vb[k])) < 1e-13);
}

TEST_CASE("screening") {
    Divisor d{{cplx(2.0, 0.5), 2.0}, {cplx(-1), 1.0}};
    Divisor s = d.screened();
    CHECK(std::abs(s.degree()) < 1e-15);
    auto v1 = d.sato_vector(6), v2 = s.sato_vector(6);
    for (int k = 0; k < 6; ++k) CHECK(v1[k] == v2[k]);

    // neutral divisor unchanged
    Divisor n{{cplx(1), 1.0}, {cplx(2), -1.0}};
    CHECK(n.screened().size() == 2);

    Divisor bad{{cplx(0), 1.0}};
    CHECK_THROWS_AS(bad.screened(), fay_error);
}

TEST_CASE("prime_weight") {
    // one pair
    cplx a(2.0, 1.0), b(0.5, -0.3);
    Divisor d{{a, 1.0}, {b, -1.0}};
    CHECK(std::abs(prime_weight(d) - 1.0 / (a - b)) < 1e-15);

    // hand case [2]+[3]-[0]-[1] -> 1/12
    Divisor h{{cplx(2), 1.0}, {cplx(3), 1.0}, {cplx(0), -1.0}, {cplx(1), -1.0}};
    CHECK(std::abs(prime_weight(h) - cplx(1.0 / 12.0)) < 1e-15);

    // transposition of two weight +1 points flips the sign
    Divisor hs{{cplx(3), 1.0}, {cplx(2), 1.0}, {cplx(0), -1.0}, {cplx(1), -1.0}};
    CHECK(std::abs(prime_weight(hs) + cplx(1.0 / 12.0)) < 1e-15);
}

TEST_CASE("permutation_sign") {
    Divisor d{{cplx(1), 1.0}, {cplx(2), 1.0}, {cplx(3), -1.0}};
    std::vector<size_t> id{0, 1, 2};
    CHECK(std::abs(permutation_sign(d, id) - 1.0) < 1e-15);

    std::vector<size_t> swap01{1, 0, 2};
    CHECK(std::abs(permutation_sign(d, swap01) + 1.0) < 1e-15);

    // alpha = (2,3): swap -> e^{6 pi i} = 1
    Divisor w{{cplx(1), 2.0}, {cplx(2), 3.0}};
    std::vector<size_t> sw{1, 0};
    CHECK(std::abs(permutation_sign(w, sw) - 1.0) < 1e-12);

    // group morphism on S3 for all-odd integer weights: equals signature
    Divisor u{{cplx(1), 1.0}, {cplx(2), -1.0}, {cplx(3), 1.0}};
    std::vector<std::vector<size_t>> s3{{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                        {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    auto signature = [](const std::vector<size_t>& s) {
        int inv = 0;
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (s[i] > s[j]) ++inv;
        return inv % 2 ? -1.0 : 1.0;
    };
    for (auto& s : s3)
        CHECK(std::abs(permutation_sign(u, s) - signature(s)) < 1e-12);
    // morphism property under composition
    for (auto& s : s3)
        for (auto& r : s3) {
            std::vector<size_t> comp(3);
            for (size_t i = 0; i < 3; ++i) comp[i] = s[r[i]];
            cplx lhs = permutation_sign(u, comp);
            cplx rhs = permutation_sign(u.permuted(r), s) * permutation_sign(u, r);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
}

TEST_CASE("json round trip") {
    Divisor d{{cplx(1.25, -0.5), cplx(0.5, 0.0)}, {cplx(0, 2), cplx(-1, 1)}};
    Divisor e = divisor_from_json(to_json(d));
    REQUIRE(e.size() == d.size());
    for (size_t i = 0; i < d.size(); ++i) {
        CHECK(e.z(i) == d.z(i));
        CHECK(e.alpha(i) == d.alpha(i));
    }
}
