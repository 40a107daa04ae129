#pragma once

#include "multcount/itree.hpp"
#include "multcount/mult.hpp"
#include "multcount/poly.hpp"
#include "multcount/report.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace multcount {

/// Local intersection number of two plane curves; empty value means infinite.
struct IntersectionNumber {
    std::optional<std::uint64_t> value;

    static IntersectionNumber infinite() { return {}; }
    static IntersectionNumber finite(std::uint64_t v) { return {v}; }
    bool is_infinite() const noexcept { return !value.has_value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "INFINITE"; }

    friend bool operator==(const IntersectionNumber&, const IntersectionNumber&) = default;
};

/// I_P(f, g) for affine f, g in two variables at a rational point P.
IntersectionNumber intersection_number(std::span<const Rational> P, const Polynomial& f, const Polynomial& g);
IntersectionNumber intersection_number(const AffinePoint& P, const Polynomial& f, const Polynomial& g);

/// I_xi(F, G) for homogeneous F, G in three variables, computed in the chart
/// of the first nonzero coordinate of xi.
IntersectionNumber intersection_number(const ProjPoint& xi, const Polynomial& F, const Polynomial& G);

struct BezoutCheck {
    struct Entry {
        ProjPoint point;
        std::uint64_t I;
    };
    std::vector<Entry> points;
    BoundReport report;        // lhs = sum of I over rational points, rhs = deg F * deg G
    Integer deficit = 0;       // rhs - lhs, carried by non-rational or higher points
    bool equality = false;
};

/// Sum of intersection numbers over common rational points of height <= B.
/// Throws DomainError when F and G share a component.
BezoutCheck bezout_check(const Hypersurface& F, const Hypersurface& G, const Integer& B,
                         std::uint64_t budget = default_budget());

/// Default seed for the random searches of this module.
inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RootDerivative {
    Polynomial g;
    std::vector<int> coefficients;  // g = sum c_i * df/dx_i
    unsigned attempts = 0;          // random attempts used; 0 when a pure partial worked
};

/// A combination g of the first partials of f with gcd(f, g) constant. Pure
/// partials are tried first, then up to 200 random combinations with
/// coefficients in [-5, 5]. Requires squarefree f.
RootDerivative construct_root_derivative(const Hypersurface& X, std::uint64_t seed = kDefaultSeed);

struct CurveTree {
    TreeFamily family;
    Polynomial g;
    std::vector<ProjPoint> roots;  // parallel to family.trees()
    Integer mass = 0;              // sum of root weights found
    Integer expected_mass = 0;     // delta (delta - 1)
    bool uncovered = false;        // mass < expected_mass
};

/// Root layer of the intersection trees of a plane curve with finite singular
/// locus: one leaf per rational point of V(f) n V(g) of height <= B.
CurveTree build_curve_tree(const Hypersurface& X, const Integer& B, std::uint64_t seed = kDefaultSeed,
                           std::uint64_t budget = default_budget());

/// For each rational singular point M of height <= B:
/// sum_C W(M) i(C) >= mu_M(X) mu_M(V(g)).
std::vector<BoundReport> curve_tree_inequalities(const Hypersurface& X, const CurveTree& tree, const Integer& B,
                                                 std::uint64_t budget = default_budget());

}  // namespace multcount
