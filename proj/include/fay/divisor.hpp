#pragma once

// Divisor algebra: ordered weighted point sets, degree/support/supersymmetry
// predicates, Sato vectors, screening, genus-0 prime-form weights and
// permutation signs.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fay/core.hpp"

namespace fay {

struct Divisor {
    // ordered (z, alpha) pairs
    std::vector<std::pair<cplx, cplx>> points;

    Divisor() = default;
    Divisor(std::initializer_list<std::pair<cplx, cplx>> p) : points(p) {
        check_distinct();
    }
    explicit Divisor(std::vector<std::pair<cplx, cplx>> p)
        : points(std::move(p)) {
        check_distinct();
    }

    void check_distinct() const {
        for (size_t i = 0; i < points.size(); ++i)
            for (size_t j = i + 1; j < points.size(); ++j)
                if (points[i].first == points[j].first)
                    throw fay_error("divisor: coincident points");
    }

    size_t size() const { return points.size(); }
    cplx z(size_t i) const { return points[i].first; }
    cplx alpha(size_t i) const { return points[i].second; }

    cplx degree() const {
        cplx d = 0;
        for (auto& [z, a] : points) d += a;
        return d;
    }
    std::vector<cplx> support() const {
        std::vector<cplx> s;
        for (auto& [z, a] : points)
            if (!is_zero(a)) s.push_back(z);
        return s;
    }

    struct Flags {
        bool neutral, integer, unitary, positive, negative, supersymmetric;
    };
    Flags classify(double tol = 1e-12) const {
        Flags f{};
        auto near_int = [&](cplx a) {
            return std::abs(a.imag()) < tol &&
                   std::abs(a.real() - std::round(a.real())) < tol;
        };
        f.neutral = std::abs(degree()) < tol;
        f.integer = true;
        f.unitary = true;
        f.positive = true;
        f.negative = true;
        for (auto& [z, a] : points) {
            if (!near_int(a)) f.integer = false;
            if (!(near_int(a) && std::abs(std::abs(a.real()) - 1.0) < tol))
                f.unitary = false;
            if (!(a.imag() == 0 && a.real() > 0)) f.positive = false;
            if (!(a.imag() == 0 && a.real() < 0)) f.negative = false;
        }
        f.supersymmetric = f.neutral && f.unitary;
        return f;
    }

    // Sato vector: component k = sum alpha_i z_i^k = Tr D^k
    std::vector<cplx> sato_vector(int k_max) const {
        std::vector<cplx> v(k_max);
        for (int k = 1; k <= k_max; ++k) {
            cplx s = 0;
            for (auto& [z, a] : points) s += a * ipow(z, k);
            v[k - 1] = s;
        }
        return v;
    }
    // Tr D^{-k}
    cplx trace_inverse_power(int k) const {
        cplx s = 0;
        for (auto& [z, a] : points) s += a * ipow(z, -k);
        return s;
    }

    // screening charge: append origin with weight -deg D
    Divisor screened() const {
        for (auto& [z, a] : points)
            if (is_zero(z)) throw fay_error("screen: origin already in support");
        cplx d = degree();
        Divisor r = *this;
        if (!is_zero(d)) r.points.push_back({cplx(0.0), -d});
        return r;
    }

    Divisor reversed_sign() const {  // -D
        Divisor r = *this;
        for (auto& [z, a] : r.points) a = -a;
        return r;
    }
    Divisor concat(const Divisor& o) const {
        Divisor r;
        r.points = points;
        for (auto& p : o.points) r.points.push_back(p);
        r.check_distinct();
        return r;
    }
    Divisor permuted(const std::vector<size_t>& sigma) const {
        Divisor r;
        r.points.resize(points.size());
        for (size_t i = 0; i < points.size(); ++i)
            r.points[sigma[i]] = points[i];
        return r;
    }
};

// genus-0 prime-form weight prod_{i<j} (z_i - z_j)^{alpha_i alpha_j} in the
// stored order; principal branch for non-integer exponents.
inline cplx prime_weight(const Divisor& d) {
    d.check_distinct();
    cplx r = 1.0;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            cplx e = d.alpha(i) * d.alpha(j);
            cplx base = d.z(i) - d.z(j);
            double er = e.real();
            if (std::abs(e.imag()) < 1e-14 &&
                std::abs(er - std::round(er)) < 1e-14)
                r *= ipow(base, std::lround(er));
            else
                r *= std::pow(base, e);
        }
    return r;
}

// e^{pi i sum_{i<j, sigma(i)>sigma(j)} alpha_i alpha_j}
inline cplx permutation_sign(const Divisor& d, const std::vector<size_t>& sigma) {
    cplx s = 0;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j)
            if (sigma[i] > sigma[j]) s += d.alpha(i) * d.alpha(j);
    const cplx ipi(0.0, std::numbers::pi);
    return std::exp(ipi * s);
}

inline nlohmann::json to_json(const Divisor& d) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& [z, al] : d.points)
        a.push_back({{"re", z.real()},
                     {"im", z.imag()},
                     {"alpha_re", al.real()},
                     {"alpha_im", al.imag()}});
    return a;
}
inline Divisor divisor_from_json(const nlohmann::json& a) {
    Divisor d;
    for (auto& r : a)
        d.points.push_back({cplx(r.at("re").get<double>(), r.at("im").get<double>()),
                            cplx(r.at("alpha_re").get<double>(),
                                 r.at("alpha_im").get<double>())});
    d.check_distinct();
    return d;
}

}  // namespace fay
