#include "multcount/curves2d.hpp"
#include "multcount/errors.hpp"
#include "multcount/itree.hpp"

#include <doctest.h>

using namespace multcount;

namespace {
VertexData leaf(std::string key, int dim = 0, unsigned deg = 1) { return VertexData{std::move(key), dim, deg, std::nullopt}; }
VertexData inner(std::string key, int dim, unsigned deg, std::string label, unsigned label_deg, int label_dim = 1) {
    return VertexData{std::move(key), dim, deg, SchemeLabel{std::move(label), label_deg, label_dim}};
}

// root R (curve) -2-> A (curve) -3-> p, and R -5-> q; plus a second tree with root p
TreeFamily chain_family() {
    TreeBuilder b(inner("R", 1, 2, "L1", 2), 1);
    const auto a = b.add_child(1, 2, inner("A", 1, 1, "L2", 1), 2);
    b.add_child(a, 3, leaf("p"), 3);
    b.add_child(1, 5, leaf("q"), 4);
    TreeBuilder c(leaf("p"), 10);
    std::vector<IntersectionTree> trees;
    trees.push_back(std::move(b).build());
    trees.push_back(std::move(c).build());
    return TreeFamily(2, std::move(trees), {1, 1});
}
}  // namespace

TEST_CASE("vertex weights multiply along the root path") {
    const auto fam = chain_family();
    CHECK(vertex_weight(fam, 1) == 1);
    CHECK(vertex_weight(fam, 3) == 6);
    CHECK(vertex_weight(fam, 4) == 5);
    CHECK(vertex_weight(fam, 10) == 1);
    CHECK_THROWS_AS(vertex_weight(fam, 99), DomainError);
    const auto& t = fam.trees()[0];
    for (const auto& v : t.vertices())
        if (v.parent) CHECK(vertex_weight(t, v.occurrence_id) == vertex_weight(t, t.at(*v.parent).occurrence_id) * v.edge_weight);
}

TEST_CASE("subscheme weights sum occurrences") {
    const auto fam = chain_family();
    CHECK(subscheme_weight(fam, "absent") == 0);
    CHECK(subscheme_weight(fam, "p") == 7);
    CHECK(subscheme_weight(fam, "R") == 1);
    CHECK(subscheme_weight(fam.trees()[0], "p") == 6);
}

TEST_CASE("depth classes") {
    const auto fam = chain_family();
    const auto c0 = depth_class(fam, 0);
    CHECK(c0.occurrences == std::vector<std::uint64_t>{1, 10});
    REQUIRE(c0.labels.size() == 1);
    CHECK(c0.labels[0].defining == "L1");
    CHECK(depth_class(fam, 1).occurrences == std::vector<std::uint64_t>{2, 4});
    CHECK(depth_class(fam, 2).occurrences == std::vector<std::uint64_t>{3});
    CHECK(depth_class(fam, 7).occurrences.empty());

    TreeBuilder b(inner("R", 1, 1, "L", 1), 1);
    for (const char* k : {"c", "a", "b"}) b.add_child(1, 1, leaf(k));
    const TreeFamily star(1, {std::move(b).build()}, {1});
    CHECK(depth_class(star, 1).occurrences.size() == 3);
}

TEST_CASE("children are ordered by scheme key and laid out in preorder") {
    TreeBuilder b(inner("R", 1, 1, "L", 1), 1);
    b.add_child(1, 1, leaf("z"), 2);
    b.add_child(1, 1, leaf("a"), 3);
    const auto t1 = std::move(b).build();
    TreeBuilder c(inner("R", 1, 1, "L", 1), 1);
    c.add_child(1, 1, leaf("a"), 3);
    c.add_child(1, 1, leaf("z"), 2);
    const auto t2 = std::move(c).build();
    CHECK(t1 == t2);
    CHECK(t1.at(1).data.scheme_key == "a");
    CHECK(t1.max_depth() == 1);
    CHECK(t1.is_strict_descendant(0, 2));
    CHECK_FALSE(t1.is_strict_descendant(1, 2));
}

TEST_CASE("builder and family validation") {
    TreeBuilder b(inner("R", 1, 1, "L", 1), 1);
    CHECK_THROWS_AS(b.add_child(42, 1, leaf("p")), DomainError);
    CHECK_THROWS_AS(b.add_child(1, 0, leaf("p")), DomainError);
    b.add_child(1, 1, leaf("p"), 2);
    CHECK_THROWS_AS(b.add_child(1, 1, leaf("q"), 2), DomainError);

    // a labelled leaf, an unlabelled inner vertex, label degree above the level
    auto one = [](VertexData d) {
        std::vector<IntersectionTree> v;
        v.push_back(TreeBuilder(std::move(d), 1).build());
        return v;
    };
    CHECK_THROWS_AS(TreeFamily(1, one(inner("R", 1, 1, "L", 1)), {1}), DomainError);
    {
        TreeBuilder u(leaf("R", 1), 1);
        u.add_child(1, 1, leaf("p"));
        std::vector<IntersectionTree> v;
        v.push_back(std::move(u).build());
        CHECK_THROWS_AS(TreeFamily(1, std::move(v), {1}), DomainError);
    }
    {
        TreeBuilder u(inner("R", 1, 1, "L", 3), 1);
        u.add_child(1, 1, leaf("p"));
        std::vector<IntersectionTree> v;
        v.push_back(std::move(u).build());
        CHECK_THROWS_AS(TreeFamily(2, std::move(v), {1}), DomainError);
    }
    CHECK_THROWS_AS(TreeFamily(1, one(leaf("p")), {0}), DomainError);
    CHECK_THROWS_AS(TreeFamily(1, one(leaf("p")), {1, 1}), DomainError);
    CHECK_THROWS_AS(TreeFamily(0, one(leaf("p")), {1}), DomainError);
    std::vector<IntersectionTree> dup = one(leaf("p"));
    dup.push_back(TreeBuilder(leaf("q"), 1).build());
    CHECK_THROWS_AS(TreeFamily(1, std::move(dup), {1, 1}), DomainError);
}

TEST_CASE("containment oracle") {
    const ContainmentOracle o(3);
    const auto line = VertexData{"V:x0", 1, 1, std::nullopt};
    const auto conic = VertexData{"V:x0*x1", 1, 2, std::nullopt};
    CHECK(o.properly_contains(line, leaf("pt:[0:1:1]")) == true);
    CHECK(o.properly_contains(line, leaf("pt:[1:1:1]")) == false);
    CHECK(o.properly_contains(conic, line) == true);
    CHECK(o.properly_contains(line, conic) == false);
    CHECK(o.properly_contains(line, line) == false);
    CHECK(o.properly_contains(leaf("pt:[0:0:1]"), leaf("pt:[0:1:0]")) == false);
    CHECK_FALSE(o.properly_contains(leaf("opaque", 1), leaf("other")).has_value());
    ContainmentOracle d(3);
    d.declare("other", "opaque", true);
    CHECK(d.properly_contains(leaf("opaque", 1), leaf("other")) == true);
}

TEST_CASE("Z_s classes") {
    // isolated roots: the condition is vacuous
    std::vector<IntersectionTree> roots;
    roots.push_back(TreeBuilder(leaf("pt:[0:0:1]"), 1).build());
    roots.push_back(TreeBuilder(leaf("pt:[0:1:0]"), 2).build());
    const TreeFamily iso(1, std::move(roots), {1, 1});
    const ContainmentOracle o(3);
    CHECK(zs_class(iso, 0, o).members == depth_class(iso, 0).occurrences);

    // a point lying on a curve root, but with no occurrence below it
    std::vector<IntersectionTree> mixed;
    mixed.push_back(TreeBuilder(leaf("V:x0", 1), 1).build());
    mixed.push_back(TreeBuilder(leaf("pt:[0:0:1]"), 2).build());
    const TreeFamily bad(1, std::move(mixed), {1, 1});
    CHECK(zs_class(bad, 0, o).members == std::vector<std::uint64_t>{1});
    CHECK_THROWS_AS(verify_weight_inequality(bad, "pt:[0:0:1]", {1}, o), DomainError);

    // the same point, now also a descendant of the curve
    TreeBuilder b(inner("V:x0", 1, 1, "V:x1", 1), 1);
    b.add_child(1, 2, leaf("pt:[0:0:1]"), 3);
    std::vector<IntersectionTree> fixed;
    fixed.push_back(std::move(b).build());
    fixed.push_back(TreeBuilder(leaf("pt:[0:0:1]"), 2).build());
    const TreeFamily good(1, std::move(fixed), {1, 1});
    CHECK(zs_class(good, 0, o).members == std::vector<std::uint64_t>{1, 2});
    CHECK(zs_class(good, 1, o).members == std::vector<std::uint64_t>{3});
    const auto w = verify_weight_inequality(good, "pt:[0:0:1]", {3}, o);
    CHECK(w.lhs == 3);
    CHECK(w.pass);

    // undecidable pairs exclude with a warning
    std::vector<IntersectionTree> opaque;
    opaque.push_back(TreeBuilder(leaf("blob", 1), 1).build());
    opaque.push_back(TreeBuilder(leaf("pt:[0:0:1]"), 2).build());
    const TreeFamily unk(1, std::move(opaque), {1, 1});
    const auto z = zs_class(unk, 0, o);
    CHECK(z.members == std::vector<std::uint64_t>{1});
    CHECK_FALSE(z.warnings.empty());
}

TEST_CASE("weight inequality on curve trees") {
    const auto nodal = Hypersurface::parse("x1^2*x2 - x0^2*(x0 + x2)", 2, 0);
    const auto t = build_curve_tree(nodal, 5);
    const ContainmentOracle o(3);
    CHECK(zs_class(t.family, 0, o).members == depth_class(t.family, 0).occurrences);
    CHECK(verify_weight_inequality(t.family, "pt:[0:0:1]", {2, 1}, o).pass);

    const auto lines = Hypersurface::parse("x1*x2*(x1 - x2)", 2, 0);
    const auto tl = build_curve_tree(lines, 5);
    const auto r = verify_weight_inequality(tl.family, "pt:[1:0:0]", {3, 2}, o);
    CHECK(r.pass);
    CHECK(r.rhs == 6);
    CHECK(verify_weight_inequality(tl.family, "pt:[1:0:0]", {1, 1}, o).pass);
}

TEST_CASE("degree bound") {
    const ContainmentOracle o(3);
    const auto nodal = Hypersurface::parse("x1^2*x2 - x0^2*(x0 + x2)", 2, 0);
    const auto t = build_curve_tree(nodal, 5);
    std::map<std::string, std::vector<unsigned>> mu;
    for (const auto& v : t.family.trees())
        mu[v.root().data.scheme_key] = {v.root().data.scheme_key == "pt:[0:0:1]" ? 2u : 1u, 1u};
    const auto r = verify_degree_bound(t.family, 0, o, {3, 2}, mu);
    CHECK(r.pass);
    CHECK(r.rhs == 6);
    CHECK(r.lhs >= 2);

    // empty Z_s
    CHECK(verify_degree_bound(t.family, 3, o, {3, 2}, mu).lhs == 0);
    // single root with all mu = 1
    std::vector<IntersectionTree> one;
    one.push_back(TreeBuilder(leaf("V:x0;x1", 0, 1), 1).build());
    const TreeFamily single(1, std::move(one), {1});
    const auto b = verify_degree_bound(single, 0, o, {1, 1}, {{"V:x0;x1", {1, 1}}});
    CHECK(b.lhs == 1);
    CHECK(b.rhs == 1);
    CHECK_THROWS_AS(verify_degree_bound(single, 0, o, {1, 1}, {}), DomainError);

    // mixed label dimensions
    TreeBuilder m(inner("R", 2, 1, "L", 1, 1), 1);
    m.add_child(1, 1, inner("S", 1, 1, "L2", 1, 2), 2);
    m.add_child(2, 1, leaf("p"), 3);
    const TreeFamily mixed(1, {std::move(m).build()}, {1});
    CHECK_THROWS_AS(verify_degree_bound(mixed, 0, o, {1}, {}), DomainError);
}

TEST_CASE("family JSON round trip") {
    const auto fam = chain_family();
    const auto text = family_to_json(fam);
    const auto back = family_from_json(text);
    CHECK(back == fam);
    CHECK(family_to_json(back) == text);
    CHECK(vertex_weight(back, 3) == 6);
    CHECK(back.vertex(2).data.label->defining == "L2");

    const auto t = build_curve_tree(Hypersurface::parse("x1*x2*(x1 - x2)", 2, 0), 5);
    CHECK(family_from_json(family_to_json(t.family, 2)) == t.family);
    CHECK_THROWS(family_from_json("{\"level\": 1}"));
    CHECK_THROWS(family_from_json("not json"));
}
