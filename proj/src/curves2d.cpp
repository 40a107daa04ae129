#include "multcount/curves2d.hpp"

#include "multcount/errors.hpp"

#include <random>
#include <stdexcept>

namespace multcount {

namespace {

void require_plane(const Polynomial& f, const char* what) {
    if (f.variable_count() != 2) throw DomainError(std::string(what) + " must be a polynomial in two variables");
    if (f.is_zero()) throw DomainError(std::string(what) + " is zero");
}

// Intersection number at the origin; the caller has excluded common
// components through the origin.
std::uint64_t fulton_at_origin(Polynomial F, Polynomial G) {
    const Polynomial x = Polynomial::variable(2, 0);
    const Polynomial y = Polynomial::variable(2, 1);
    std::uint64_t acc = 0;
    while (true) {
        if (F.constant_term() != 0 || G.constant_term() != 0) return acc;
        Polynomial Fr = F.substitute(1, 0);
        Polynomial Gr = G.substitute(1, 0);
        if (Fr.is_zero() && Gr.is_zero()) throw std::logic_error("common factor y reached the Fulton loop");
        if (Fr.is_zero()) {
            std::swap(F, G);
            std::swap(Fr, Gr);
        }
        if (Gr.is_zero()) {
            // G = y H: I(F, y) is the order of F(x, 0) at 0.
            acc += static_cast<std::uint64_t>(Fr.lowest_degree());
            G = *divide_exact(G, y);
            continue;
        }
        if (Gr.degree() < Fr.degree()) {
            std::swap(F, G);
            std::swap(Fr, Gr);
        }
        const unsigned shift = static_cast<unsigned>(Gr.degree() - Fr.degree());
        G = normalize(Fr.leading_coefficient() * G - Gr.leading_coefficient() * (x.pow(shift) * F));
        if (G.is_zero()) throw std::logic_error("Fulton reduction produced zero");
    }
}

}  // namespace

IntersectionNumber intersection_number(std::span<const Rational> P, const Polynomial& f, const Polynomial& g) {
    require_plane(f, "f");
    require_plane(g, "g");
    if (P.size() != 2) throw DomainError("intersection point must have two coordinates");
    if (evaluate(f, P) != 0 || evaluate(g, P) != 0) return IntersectionNumber::finite(0);
    if (evaluate(gcd_poly(f, g), P) == 0) return IntersectionNumber::infinite();
    const Polynomial images[2] = {Polynomial::variable(2, 0) + Polynomial::constant(2, P[0]),
                                  Polynomial::variable(2, 1) + Polynomial::constant(2, P[1])};
    return IntersectionNumber::finite(fulton_at_origin(normalize(f.compose(images)), normalize(g.compose(images))));
}

IntersectionNumber intersection_number(const AffinePoint& P, const Polynomial& f, const Polynomial& g) {
    std::vector<Rational> q(P.coords.begin(), P.coords.end());
    return intersection_number(std::span<const Rational>(q), f, g);
}

IntersectionNumber intersection_number(const ProjPoint& xi, const Polynomial& F, const Polynomial& G) {
    if (F.variable_count() != 3 || G.variable_count() != 3 || xi.size() != 3)
        throw DomainError("projective intersection numbers need three homogeneous variables");
    const Rational origin[2] = {0, 0};
    return intersection_number(std::span<const Rational>(origin), chart_translate(F, xi), chart_translate(G, xi));
}

BezoutCheck bezout_check(const Hypersurface& F, const Hypersurface& G, const Integer& B, std::uint64_t budget) {
    if (F.ambient_n != 2 || G.ambient_n != 2) throw DomainError("Bezout check is for plane curves");
    if (!gcd_poly(F.f, G.f).is_constant()) throw DomainError("the curves share a common component");
    BezoutCheck out;
    Integer lhs = 0;
    for (const auto& p : points_on_hypersurface(F.f, B, budget).points) {
        if (evaluate(G.f, std::span<const Integer>(p.coords())) != 0) continue;
        const auto I = *intersection_number(p, F.f, G.f).value;
        out.points.push_back({p, I});
        lhs += static_cast<unsigned long>(I);
    }
    const Integer rhs = Integer(F.degree_delta) * G.degree_delta;
    out.deficit = rhs - lhs;
    out.equality = lhs == rhs;
    out.report = BoundReport::check("bezout", mpq_class(lhs), mpq_class(rhs), Relation::le)
                     .with("B", B.get_str())
                     .with("deficit", out.deficit.get_str());
    return out;
}

RootDerivative construct_root_derivative(const Hypersurface& X, std::uint64_t seed) {
    if (X.ambient_n != 2) throw DomainError("root derivatives are constructed for plane curves only");
    if (!is_squarefree(X.f)) throw DomainError("polynomial is not squarefree");
    const std::size_t nv = X.f.variable_count();
    std::vector<Polynomial> partials;
    for (std::size_t i = 0; i < nv; ++i) partials.push_back(partial_derivative(X.f, i));

    auto proper = [&](const Polynomial& g) { return !g.is_zero() && gcd_poly(X.f, g).is_constant(); };
    for (std::size_t i = 0; i < nv; ++i) {
        if (!proper(partials[i])) continue;
        RootDerivative r{partials[i], std::vector<int>(nv, 0), 0};
        r.coefficients[i] = 1;
        return r;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (unsigned attempt = 1; attempt <= 200; ++attempt) {
        std::vector<int> c(nv);
        Polynomial g(nv);
        for (std::size_t i = 0; i < nv; ++i) {
            c[i] = coeff(rng);
            if (c[i] != 0) g += Rational(c[i]) * partials[i];
        }
        if (proper(g)) return {std::move(g), std::move(c), attempt};
    }
    throw DomainError("no partial-derivative combination meets the curve properly after 200 attempts");
}

CurveTree build_curve_tree(const Hypersurface& X, const Integer& B, std::uint64_t seed, std::uint64_t budget) {
    RootDerivative root = construct_root_derivative(X, seed);
    CurveTree out;
    out.g = root.g;
    out.expected_mass = Integer(X.degree_delta) * (X.degree_delta - 1);

    std::vector<IntersectionTree> trees;
    std::vector<mpz_class> weights;
    std::uint64_t next_id = 0;
    if (!out.g.is_constant()) {
        for (const auto& p : points_on_hypersurface(X.f, B, budget).points) {
            if (evaluate(out.g, std::span<const Integer>(p.coords())) != 0) continue;
            const auto I = *intersection_number(p, X.f, out.g).value;
            trees.push_back(TreeBuilder(VertexData{"pt:" + p.to_string(), 0, 1, std::nullopt}, next_id++).build());
            weights.emplace_back(static_cast<unsigned long>(I));
            out.roots.push_back(p);
            out.mass += static_cast<unsigned long>(I);
        }
    }
    out.uncovered = out.mass < out.expected_mass;
    out.family = TreeFamily(std::max(1u, X.degree_delta), std::move(trees), std::move(weights));
    return out;
}

std::vector<BoundReport> curve_tree_inequalities(const Hypersurface& X, const CurveTree& tree, const Integer& B,
                                                 std::uint64_t budget) {
    std::vector<BoundReport> out;
    const auto singular = singular_points(X, B, budget);
    if (singular.empty()) return out;
    // g vanishes at every singular point, so it has positive degree here.
    const Hypersurface X1 = Hypersurface::make(tree.g);
    const ContainmentOracle oracle(X.f.variable_count());
    const auto zstar = zs_star_keys(tree.family, oracle);
    for (const auto& rec : singular) {
        const std::string key = "pt:" + rec.point.to_string();
        const unsigned mu1 = multiplicity_at(X1, rec.point);
        if (!zstar.contains(key)) {
            out.push_back(BoundReport::check("descendant_weight", 0, mpq_class(rec.mu * mu1), Relation::ge)
                              .with("scheme", key)
                              .with("note", "singular point missing from the tree family"));
            continue;
        }
        out.push_back(verify_weight_inequality(tree.family, key, {rec.mu, mu1}, oracle));
    }
    return out;
}

}  // namespace multcount
