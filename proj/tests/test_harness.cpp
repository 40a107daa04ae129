#include "multcount/errors.hpp"
#include "multcount/harness.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace multcount;

TEST_CASE("zeta") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(zeta(2) - pi * pi / 6) < 1e-9);
    CHECK(std::abs(zeta(3) - 1.2020569031595942) < 1e-9);
    CHECK(std::abs(zeta(4) - std::pow(pi, 4) / 90) < 1e-9);
    CHECK(std::abs(zeta(2, 1e-6) - pi * pi / 6) < 1e-6);
    CHECK_THROWS_AS(zeta(1), DomainError);
}

TEST_CASE("schanuel experiment") {
    const auto r1 = schanuel_experiment(1, 1000);
    CHECK(r1.count == 1216768);
    CHECK(r1.limit == doctest::Approx(12 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-9));
    CHECK(r1.rel_err < 0.01);
    const auto r2 = schanuel_experiment(2, 200);
    CHECK(r2.limit == doctest::Approx(4 / 1.2020569031595942).epsilon(1e-9));
    CHECK(r2.rel_err < 0.02);
    const auto small = schanuel_experiment(1, 1);
    CHECK(small.count == 4);
    CHECK(small.ratio == doctest::Approx(4.0));

    // non-strict decrease with noise: the late error never exceeds twice the early one
    const double e100 = schanuel_experiment(1, 100).rel_err;
    const double e300 = schanuel_experiment(1, 300).rel_err;
    const double e1000 = schanuel_experiment(1, 1000).rel_err;
    CHECK(e300 <= 2 * e100);
    CHECK(e1000 <= e100);
}

TEST_CASE("proposition bound sweep") {
    const auto reports = check_projective_bound(2, 10);
    CHECK(reports.size() == 20);
    auto find = [&](int n, int B) {
        for (const auto& r : reports) {
            bool nm = false, bm = false;
            for (const auto& [k, v] : r.context) {
                nm |= k == "n" && v == std::to_string(n);
                bm |= k == "B" && v == std::to_string(B);
            }
            if (nm && bm) return r;
        }
        FAIL("missing report");
        return BoundReport{};
    };
    CHECK(find(1, 1).lhs == 4);
    CHECK(find(1, 1).rhs == 9);
    CHECK(find(2, 1).lhs == 13);
    CHECK(find(2, 1).rhs == 27);
    CHECK(find(1, 10).lhs == 128);
    CHECK(find(1, 10).rhs == 900);
    for (const auto& r : reports) CHECK(r.pass);
}

TEST_CASE("fulton check on plane curves") {
    const auto nodal = Hypersurface::parse("x1^2*x2 - x0^2*(x0 + x2)", 2, 0);
    const auto r = check_fulton(nodal, 10);
    CHECK(r.lhs == 2);
    CHECK(r.rhs == 6);
    CHECK(r.pass);
    const auto lines = check_fulton(Hypersurface::parse("x1*x2*(x1 - x2)", 2, 0), 5);
    CHECK(lines.lhs == 6);
    CHECK(lines.rhs == 6);
    CHECK_THROWS_AS(check_fulton(Hypersurface::parse("x1*x2*(x1 - x2)", 3, 1), 5), DomainError);
}

TEST_CASE("cylinder generator") {
    const auto c3 = gen_cylinder(3, 3);
    CHECK(c3.X.f == parse_poly("x1*x2*(x1 - x2)", 4));
    CHECK(c3.sing_dim == 1);
    CHECK(c3.mu == 3);
    CHECK(gen_cylinder(2, 3).X.f == parse_poly("x1*(x1 - x2)", 4));
    for (unsigned d = 2; d <= 5; ++d)
        for (std::size_t n = 3; n <= 4; ++n) {
            const auto c = gen_cylinder(d, n);
            CAPTURE(d);
            CAPTURE(n);
            CHECK(is_squarefree(c.X.f));
            CHECK(c.X.degree_delta == d);
            const long B = n == 3 ? 3 : 1;
            const auto sing = singular_points(c.X, B);
            std::size_t expected = 0;
            for (const auto& p : enumerate_projective(n, B).points)
                if (c.is_expected_singular(p)) ++expected;
            CHECK(sing.size() == expected);
            for (const auto& s : sing) {
                CHECK(c.is_expected_singular(s.point));
                CHECK(s.mu == d);
            }
        }
    CHECK_THROWS_AS(gen_cylinder(1, 3), DomainError);
    CHECK_THROWS_AS(gen_cylinder(3, 2), DomainError);
}

TEST_CASE("cylinder multiplicity sum equals delta (delta - 1) N(P^{n-2};B)") {
    for (unsigned d = 2; d <= 4; ++d) {
        const auto c = gen_cylinder(d, 3);
        CHECK(mult_sum(c.X, 10, 1).sum == Integer(d * (d - 1)) * 128);
    }
    const auto c4 = gen_cylinder(3, 4);
    CHECK(mult_sum(c4.X, 3, 1).sum == 6 * count_projective_moebius(2, 3).count);
}

TEST_CASE("deformation generator") {
    const auto f = parse_poly("x0^2 + x1^2 - x2^2", 3);
    const auto d = gen_deformation(3, f);
    CHECK(d.X.ambient_n == 4);
    CHECK(d.X.degree_delta == 3);
    CHECK(d.sing_dim == 1);
    REQUIRE(d.extra_singular_points.size() == 1);
    CHECK(d.extra_singular_points[0] == ProjPoint::canonicalize({1, 0, 0, 0, 0}));
    const auto sing = singular_points(d.X, 5);
    CHECK(sing.size() == 13);
    for (const auto& s : sing) {
        if (s.point == d.extra_singular_points[0]) {
            CHECK(s.mu == 2);  // delta - 1 at the vertex
            continue;
        }
        CHECK(d.on_expected_locus(s.point));
        CHECK(s.mu == 2);
    }
    // 12 conic points and the vertex, each contributing 2 (2 - 1)^2
    CHECK(mult_sum(d.X, 5, 2).sum == 26);

    const auto empty = gen_deformation(3, parse_poly("x0^2 + x1^2 + x2^2", 3));
    CHECK(mult_sum(empty.X, 5, 2).sum == 2);

    // the vertex has multiplicity delta - 1, so it exceeds 2 once delta >= 4
    const auto d4 = gen_deformation(4, parse_poly("x0^3 + x1^3 - x2^3", 3));
    CHECK(multiplicity_at(d4.X, d4.extra_singular_points[0]) == 3);

    CHECK_THROWS_AS(gen_deformation(3, parse_poly("x0^2", 3)), DomainError);
    CHECK_THROWS_AS(gen_deformation(3, parse_poly("x0^3 + x1^3 + x2^3", 3)), DomainError);
    CHECK_THROWS_AS(gen_deformation(2, parse_poly("x0 + x1", 3)), DomainError);
}

TEST_CASE("main theorem on the curated families") {
    const auto c = gen_cylinder(3, 3);
    const auto fam = cylinder_tree_family(c, 10);
    const auto m = check_main_theorem(c.X, 10, fam.family, fam.z_data, fam.oracle);
    CHECK(m.lhs.sum == 768);
    CHECK(m.report.rhs == 768);
    CHECK(m.report.pass);
    REQUIRE_FALSE(m.terms.empty());
    CHECK(m.terms[0] == 768);

    const auto d = gen_deformation(3, parse_poly("x0^2 + x1^2 - x2^2", 3));
    const auto df = deformation_tree_family(d, 5);
    const auto md = check_main_theorem(d.X, 5, df.family, df.z_data, df.oracle);
    CHECK(md.lhs.sum == 26);
    CHECK(md.report.pass);
    CHECK_FALSE(df.notes.empty());

    // a z_data table missing the root is refused
    CHECK_THROWS_AS(check_main_theorem(c.X, 10, fam.family, ZData{}, fam.oracle), DomainError);
}

TEST_CASE("main theorem on plane curves") {
    const auto nodal = check_main_theorem_curve(Hypersurface::parse("x1^2*x2 - x0^2*(x0 + x2)", 2, 0), 10);
    CHECK(nodal.lhs.sum == 2);
    CHECK(nodal.report.rhs == 6);
    CHECK(nodal.report.pass);
    const auto smooth = check_main_theorem_curve(Hypersurface::parse("x0^2 + x1^2 - x2^2", 2, -1), 10);
    CHECK(smooth.lhs.sum == 0);
    CHECK(smooth.report.pass);
}

TEST_CASE("corollary") {
    CHECK(check_corollary({}, {5, 10}).entries.empty());

    std::vector<CorpusMember> cyl;
    for (unsigned d = 2; d <= 4; ++d) cyl.push_back({gen_cylinder(d, 3).X, 1, "cylinder"});
    const auto rc = check_corollary(cyl, {5, 10, 20});
    CHECK(rc.entries.size() == 9);
    CHECK(rc.bound == doctest::Approx(81.0));
    CHECK(rc.pass);
    for (const auto& e : rc.entries) CHECK(e.ratio <= 9.0);

    std::vector<CorpusMember> plane;
    for (auto& X : plane_curve_corpus(20, 2, 5, 3)) plane.push_back({X, 0, "plane"});
    const auto rp = check_corollary(plane, {5, 10}, 1.0);
    CHECK(rp.pass);
    CHECK(rp.sup_ratio <= 1.0);
}

TEST_CASE("random generators are deterministic and well formed") {
    std::mt19937_64 a(11), b(11);
    CHECK(random_affine_poly(a, 3, 4) == random_affine_poly(b, 3, 4));
    const auto f = random_form(a, 3, 4);
    CHECK((f.is_zero() || (f.is_homogeneous() && f.degree() == 4)));
    for (unsigned m = 1; m <= 3; ++m) {
        const auto p = ProjPoint::canonicalize({1, -1, 2});
        const auto X = plane_curve_with_point(a, 4, m, p);
        CHECK(is_squarefree(X.f));
        CHECK(multiplicity_at(X, p) == m);
    }
    const auto c1 = plane_curve_corpus(15, 2, 6, 99);
    const auto c2 = plane_curve_corpus(15, 2, 6, 99);
    REQUIRE(c1.size() == 15);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].f == c2[i].f);
        CHECK(is_squarefree(c1[i].f));
        CHECK(c1[i].degree_delta >= 2);
        CHECK(c1[i].degree_delta <= 6);
    }
}

TEST_CASE("experiment driver") {
    const auto cfg = R"([
        {"experiment": "projective_bound", "params": {"n_max": 2, "B_max": 5}},
        {"experiment": "cylinder", "params": {"delta": 3, "n": 3, "B": 10}},
        {"experiment": "main_theorem_curve", "params": {"poly": "x1^2*x2 - x0^3", "B": 5}},
        {"experiment": "nonsense"}
    ])";
    const auto out = nlohmann::json::parse(run_experiments(cfg, true));
    REQUIRE(out.size() == 4);
    CHECK(out[0]["pass"] == true);
    CHECK(out[0]["checked"] == 10);
    CHECK(out[1]["pass"] == true);
    CHECK(out[2]["pass"] == true);
    CHECK(out[3]["pass"] == false);
    CHECK(out[3].contains("error"));
    CHECK_FALSE(out[0].contains("elapsed_ms"));
    CHECK(run_experiments(cfg, true) == run_experiments(cfg, true));
    CHECK(nlohmann::json::parse(run_experiments(R"({"experiment": "schanuel"})"))[0].contains("elapsed_ms"));
    CHECK_THROWS_AS(run_experiments("{"), ParseError);
}
