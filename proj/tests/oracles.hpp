#pragma once

// Slow, independent reference implementations used to cross-check the
// library. They share only the Polynomial container with the code under test.

#include "multcount/poly.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using multcount::Polynomial;

// Odometer over [-B, B]^k; calls visit(tuple) for every tuple.
template <class F>
void box(std::size_t k, std::int64_t B, F&& visit) {
    std::vector<std::int64_t> t(k, -B);
    while (true) {
        visit(t);
        std::size_t i = 0;
        while (i < k && t[i] == B) t[i++] = -B;
        if (i == k) return;
        ++t[i];
    }
}

inline bool canonical_primitive(const std::vector<std::int64_t>& t) {
    std::int64_t g = 0;
    for (auto v : t) g = std::gcd(g, v);
    if (g != 1) return false;
    for (auto v : t)
        if (v != 0) return v > 0;
    return false;
}

inline std::uint64_t projective_count(std::size_t n, std::int64_t B) {
    std::uint64_t c = 0;
    box(n + 1, B, [&](const std::vector<std::int64_t>& t) { c += canonical_primitive(t); });
    return c;
}

inline int moebius(std::int64_t d) {
    int mu = 1;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p) continue;
        d /= p;
        if (d % p == 0) return 0;
        mu = -mu;
    }
    if (d > 1) mu = -mu;
    return mu;
}

// (1/2) sum_d mu(d) ((2 floor(B/d) + 1)^{n+1} - 1)
inline mpz_class moebius_formula(std::size_t n, std::int64_t B) {
    mpz_class s = 0;
    for (std::int64_t d = 1; d <= B; ++d) {
        const int mu = moebius(d);
        if (!mu) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(2 * (B / d) + 1), n + 1);
        s += mu * (t - 1);
    }
    return s / 2;
}

// Term-by-term evaluation with exact rationals.
inline mpq_class eval(const Polynomial& f, const std::vector<mpq_class>& x) {
    mpq_class s = 0;
    for (const auto& [m, c] : f.terms()) {
        mpq_class t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= x[i];
        s += t;
    }
    return s;
}

inline mpq_class eval_int(const Polynomial& f, const std::vector<std::int64_t>& x) {
    std::vector<mpq_class> q;
    for (auto v : x) q.emplace_back(static_cast<long>(v));
    return eval(f, q);
}

inline std::uint64_t box_zero_count(const Polynomial& f, std::int64_t B) {
    std::uint64_t c = 0;
    box(f.variable_count(), B, [&](const std::vector<std::int64_t>& t) { c += eval_int(f, t) == 0; });
    return c;
}

inline std::vector<std::vector<std::int64_t>> projective_zeros(const Polynomial& f, std::int64_t B) {
    std::vector<std::vector<std::int64_t>> out;
    box(f.variable_count(), B, [&](const std::vector<std::int64_t>& t) {
        if (canonical_primitive(t) && eval_int(f, t) == 0) out.push_back(t);
    });
    return out;
}

// Univariate coefficient vectors (index = power of t).
using Uni = std::vector<mpq_class>;

inline Uni uni_mul(const Uni& a, const Uni& b) {
    Uni r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// f(base + t * dir) as a polynomial in t; each image is given as a univariate.
inline Uni restrict_to_curve(const Polynomial& f, const std::vector<Uni>& images) {
    Uni total{0};
    for (const auto& [m, c] : f.terms()) {
        Uni t{c};
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t = uni_mul(t, images[i]);
        if (t.size() > total.size()) total.resize(t.size(), 0);
        for (std::size_t k = 0; k < t.size(); ++k) total[k] += t[k];
    }
    return total;
}

// Order of vanishing at t = 0; -1 for the zero polynomial.
inline int order(const Uni& u) {
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] != 0) return static_cast<int>(k);
    return -1;
}

// Multiplicity at an integer point as the order of f along lines through it:
// the minimum over several pseudo-random directions equals the multiplicity
// unless every direction lies in the tangent cone, which the spread of the
// directions makes practically impossible.
inline int line_multiplicity(const Polynomial& f, const std::vector<mpz_class>& xi) {
    static const long dirs[4][6] = {{7919, -104729, 1299709, 31, -611953, 57},
                                    {-15485863, 2, 32452843, -49979687, 17, 3},
                                    {1, 982451653, -5, 86028121, 11, -7},
                                    {-3, 13, 1000003, -104723, 999983, 27644437}};
    int best = -1;
    for (const auto& d : dirs) {
        std::vector<Uni> images;
        for (std::size_t i = 0; i < xi.size(); ++i) images.push_back({mpq_class(xi[i]), mpq_class(d[i % 6])});
        const int o = order(restrict_to_curve(f, images));
        if (o >= 0 && (best < 0 || o < best)) best = o;
    }
    return best;
}

// I_0(y - p(x), g) = ord_t g(t, p(t)), for p(0) = 0 given as coefficients.
inline int graph_intersection(const Uni& p, const Polynomial& g) {
    return order(restrict_to_curve(g, {Uni{0, 1}, p}));
}

}  // namespace oracle
