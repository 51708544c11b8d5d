#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <compare>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fay {

using cplx = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const cplx& c) { return c == 0.0; }
inline bool is_zero(double c) { return c == 0.0; }
inline bool is_zero(const Rational& r) { return r == 0; }

// Sparse exponent multi-index over the times t_1, t_2, ...
// Stored as sorted (index, multiplicity) pairs, multiplicities > 0.
struct Multi {
    std::vector<std::pair<int, int>> e;

    Multi() = default;
    static Multi unit(int k, int m = 1) {
        Multi r;
        if (m != 0) r.e.push_back({k, m});
        return r;
    }

    // weighted degree with deg t_k = k
    long weighted_degree() const {
        long d = 0;
        for (auto& [k, m] : e) d += static_cast<long>(k) * m;
        return d;
    }
    long order() const {  // total multiplicity (count of derivatives etc.)
        long d = 0;
        for (auto& [k, m] : e) d += m;
        return d;
    }
    int exponent(int k) const {
        for (auto& [kk, m] : e)
            if (kk == k) return m;
        return 0;
    }
    Multi plus(int k, int dm = 1) const {
        Multi r;
        bool placed = false;
        for (auto& [kk, m] : e) {
            if (kk == k) {
                if (m + dm != 0) r.e.push_back({kk, m + dm});
                placed = true;
            } else {
                if (!placed && kk > k && dm != 0) {
                    r.e.push_back({k, dm});
                    placed = true;
                }
                r.e.push_back({kk, m});
            }
        }
        if (!placed && dm != 0) {
            r.e.clear();
            bool ins = false;
            for (auto& [kk, m] : e) {
                if (!ins && kk > k) {
                    r.e.push_back({k, dm});
                    ins = true;
                }
                r.e.push_back({kk, m});
            }
            if (!ins) r.e.push_back({k, dm});
        }
        return r;
    }
    Multi operator+(const Multi& o) const {
        Multi r;
        size_t i = 0, j = 0;
        while (i < e.size() || j < o.e.size()) {
            if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first))
                r.e.push_back(e[i++]);
            else if (i == e.size() || o.e[j].first < e[i].first)
                r.e.push_back(o.e[j++]);
            else {
                int m = e[i].second + o.e[j].second;
                if (m != 0) r.e.push_back({e[i].first, m});
                ++i, ++j;
            }
        }
        return r;
    }
    auto operator<=>(const Multi&) const = default;
};

// n!
inline Rational factorial(long n) {
    Rational r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline cplx ipow(cplx z, long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0;
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

struct fay_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fay
