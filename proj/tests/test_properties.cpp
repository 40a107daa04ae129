#include "multcount/errors.hpp"
#include "multcount/harness.hpp"
#include "oracles.hpp"
#include "random_inputs.hpp"

#include <doctest.h>

using namespace multcount;

TEST_CASE("parse and format round trip") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
        const auto f = random_affine_poly(rng, n, static_cast<unsigned>(gen::uniform(rng, 0, 5)), 9, 0.5);
        CAPTURE(f.to_string());
        CHECK(parse_poly(f.to_string(), n) == f);
    }
}

TEST_CASE("Euler relation for forms") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 4));
        const unsigned d = static_cast<unsigned>(gen::uniform(rng, 1, 5));
        const auto f = random_form(rng, n, d);
        Polynomial sum(n);
        for (std::size_t k = 0; k < n; ++k) sum += Polynomial::variable(n, k) * partial_derivative(f, k);
        CHECK(sum == Rational(d) * f);
    }
}

TEST_CASE("gcd divides both inputs and recovers planted factors") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const auto h = random_affine_poly(rng, 2, static_cast<unsigned>(gen::uniform(rng, 1, 2)), 3, 0.8);
        const auto a = random_affine_poly(rng, 2, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 3, 0.8);
        const auto b = random_affine_poly(rng, 2, static_cast<unsigned>(gen::uniform(rng, 0, 3)), 3, 0.8);
        if (h.degree() < 1 || a.is_zero() || b.is_zero()) continue;
        const auto f = a * h, g = b * h;
        const auto d = gcd_poly(f, g);
        CHECK(divide_exact(f, d).has_value());
        CHECK(divide_exact(g, d).has_value());
        CHECK(divide_exact(d, h).has_value());
    }
}

TEST_CASE("canonical representatives are scale invariant") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        std::vector<long> raw(3);
        for (auto& c : raw) c = gen::uniform(rng, -20, 20);
        if (raw == std::vector<long>{0, 0, 0}) continue;
        const long lambda = gen::uniform(rng, 1, 9) * (gen::uniform(rng, 0, 1) ? 1 : -1);
        std::vector<Integer> a, b;
        for (long c : raw) {
            a.emplace_back(c);
            b.emplace_back(c * lambda);
        }
        const auto p = ProjPoint::canonicalize(std::span<const Integer>(a));
        CHECK(p == ProjPoint::canonicalize(std::span<const Integer>(b)));
        CHECK(ProjPoint::canonicalize(std::span<const Integer>(p.coords())) == p);
        CHECK(height(p).multiplicative == height(ProjPoint::canonicalize(std::span<const Integer>(b))).multiplicative);
    }
}

TEST_CASE("enumeration counts agree with the odometer oracle") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (long B = 1; B <= (n == 3 ? 3 : 8); ++B) {
            CHECK(enumerate_projective(n, B).size() == oracle::projective_count(n, B));
            CHECK(count_projective_moebius(n, B).count == oracle::moebius_formula(n, B));
        }
}

TEST_CASE("points on hypersurfaces agree with the zero oracle") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        const auto f = random_form(rng, 3, static_cast<unsigned>(gen::uniform(rng, 1, 3)), 2);
        if (f.is_zero()) continue;
        CHECK(points_on_hypersurface(f, 4).size() == oracle::projective_zeros(f, 4).size());
    }
}

TEST_CASE("slicing agrees with the box count") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        const auto f = gen::box_poly(rng, n, 4);
        const long B = gen::uniform(rng, 1, n == 3 ? 4 : 8);
        CAPTURE(f.to_string());
        CHECK(slice_count(f, B).count == count_affine_box(f, B).count);
        CHECK(count_affine_box(f, B).count == oracle::box_zero_count(f, B));
    }
}

TEST_CASE("multiplicity does not depend on the chart") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60; ++i) {
        std::vector<long> c(3);
        for (auto& x : c) x = gen::uniform(rng, -2, 2);
        if (c == std::vector<long>{0, 0, 0}) c[2] = 1;
        const auto p = ProjPoint::canonicalize(c);
        const auto X = gen::curve_through(rng, static_cast<unsigned>(gen::uniform(rng, 2, 5)), p);
        const unsigned mu = multiplicity_at(X, p);
        for (std::size_t k = 0; k < 3; ++k)
            if (p[k] != 0) CHECK(multiplicity_oracle(X, p, k) == mu);
        CHECK(static_cast<int>(mu) == oracle::line_multiplicity(X.f, p.coords()));
    }
}

TEST_CASE("intersection number axioms") {
    std::mt19937_64 rng(8);
    const auto x = parse_poly("x0", 2), y = parse_poly("x1", 2);
    CHECK(gen::at_origin(x, y) == IntersectionNumber::finite(1));
    for (int i = 0; i < 80; ++i) {
        const auto f = gen::local_curve(rng), g = gen::local_curve(rng), h = gen::local_curve(rng, 2);
        const auto a = random_affine_poly(rng, 2, 1, 3, 0.8);
        CAPTURE(f.to_string());
        CAPTURE(g.to_string());
        CAPTURE(h.to_string());
        const auto fg = gen::at_origin(f, g);
        CHECK(fg == gen::at_origin(g, f));
        CHECK(gen::at_origin(f, g * h) == gen::add(fg, gen::at_origin(f, h)));
        CHECK(gen::at_origin(f, g + a * f) == fg);
        const bool both_vanish = f.constant_term() == 0 && g.constant_term() == 0;
        CHECK((fg == IntersectionNumber::finite(0)) == !both_vanish);
        if (!fg.is_infinite() && both_vanish)
            CHECK(*fg.value >= static_cast<std::uint64_t>(f.lowest_degree() * g.lowest_degree()));

        // translation: move the origin to (u, v)
        const int u = gen::uniform(rng, -3, 3), v = gen::uniform(rng, -3, 3);
        const Polynomial shift[] = {x - Polynomial::constant(2, u), y - Polynomial::constant(2, v)};
        const Rational P[] = {u, v};
        CHECK(intersection_number(std::span<const Rational>(P), f.compose(shift), g.compose(shift)) == fg);
    }
}

TEST_CASE("bezout bound on random pairs") {
    std::mt19937_64 rng(9);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
        std::vector<long> c{gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2), 1};
        const auto p = ProjPoint::canonicalize(c);
        const auto F = gen::curve_through(rng, static_cast<unsigned>(gen::uniform(rng, 1, 4)), p);
        const auto G = gen::curve_through(rng, static_cast<unsigned>(gen::uniform(rng, 1, 4)), p);
        if (!gcd_poly(F.f, G.f).is_constant()) continue;
        const auto r = bezout_check(F, G, 4);
        CHECK(r.report.pass);
        CHECK(r.report.lhs >= 1);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("multiplicity sum split is consistent") {
    std::mt19937_64 rng(10);
    const CountingFunction g = [](unsigned mu) -> Integer { return Integer(mu) * mu; };
    for (int i = 0; i < 15; ++i) {
        const auto X = random_plane_curve(rng, static_cast<unsigned>(gen::uniform(rng, 2, 5)));
        const auto s = mult_sum_split(X, 4, g);
        Integer total = 0;
        for (const auto& p : points_on_hypersurface(X.f, 4).points) total += g(multiplicity_at(X, p));
        CHECK(s.regular_part + s.excess == total);
    }
}

TEST_CASE("curve-tree weight inequality on a random corpus") {
    const ContainmentOracle oracle(3);
    for (const auto& X : plane_curve_corpus(25, 2, 5, 11)) {
        const auto t = build_curve_tree(X, 6);
        CHECK(t.mass <= t.expected_mass);
        for (const auto& r : curve_tree_inequalities(X, t, 6)) CHECK(r.pass);
        CHECK(zs_class(t.family, 0, oracle).members.size() == t.roots.size());
        CHECK(family_from_json(family_to_json(t.family)) == t.family);
    }
}
