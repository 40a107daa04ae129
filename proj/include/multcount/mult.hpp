#pragma once

#include "multcount/enumerate.hpp"
#include "multcount/points.hpp"
#include "multcount/poly.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace multcount {

/// Projective hypersurface V(f) in P^n with f homogeneous of degree delta.
///
/// The singular-locus dimension is declared by the caller; it is never
/// computed here.
struct Hypersurface {
    Polynomial f;
    std::size_t ambient_n = 0;
    unsigned degree_delta = 0;
    std::optional<int> declared_sing_dim;

    /// Validates that f is homogeneous of positive degree in at least two variables.
    static Hypersurface make(Polynomial f, std::optional<int> sing_dim = std::nullopt);
    static Hypersurface parse(const std::string& text, std::size_t ambient_n,
                              std::optional<int> sing_dim = std::nullopt);
};

struct MultiplicityRecord {
    ProjPoint point;
    unsigned mu = 0;
};

/// Least order of a partial derivative of f that does not vanish at xi.
/// Throws DomainError when xi is not on X.
unsigned multiplicity_at(const Hypersurface& X, const ProjPoint& xi);

/// Lowest total degree of f after moving xi to the origin of an affine chart.
/// Uses the first nonzero coordinate unless a chart is given.
unsigned multiplicity_oracle(const Hypersurface& X, const ProjPoint& xi);
unsigned multiplicity_oracle(const Hypersurface& X, const ProjPoint& xi, std::size_t chart);

/// Every first partial of f vanishes at xi (f(xi) = 0 follows by Euler's relation).
bool is_singular_at(const Hypersurface& X, const ProjPoint& xi);

/// Rational singular points of height <= B with their multiplicities (all >= 2).
std::vector<MultiplicityRecord> singular_points(const Hypersurface& X, const Integer& B,
                                                std::uint64_t budget = default_budget());

/// M^(a): multiplicity equal to mu_M; M^(b): multiplicity above it.
struct Stratification {
    PointSet equal;
    PointSet higher;
};
Stratification stratify(const Hypersurface& X, const PointSet& points, unsigned mu_M);

/// Counting function applied to multiplicities; it must send 1 to 0.
using CountingFunction = std::function<Integer(unsigned)>;

/// g(x) = x (x - 1)^e
CountingFunction power_counting_function(unsigned exponent_e);

struct MultSum {
    Integer sum = 0;
    std::vector<MultiplicityRecord> contributors;
};

/// Sum over S(X;B) of g(mu); g defaults to x (x - 1)^e. Only singular points
/// contribute since g(1) = 0, which is checked.
MultSum mult_sum(const Hypersurface& X, const Integer& B, unsigned exponent_e,
                 const std::optional<CountingFunction>& g = std::nullopt,
                 std::uint64_t budget = default_budget());

/// For a counting function with g(1) != 0: the two parts g(1) N(X;B) and
/// sum over S(X;B) of (g(mu) - g(1)), reported separately.
struct SplitMultSum {
    Integer regular_part = 0;
    Integer excess = 0;
};
SplitMultSum mult_sum_split(const Hypersurface& X, const Integer& B, const CountingFunction& g,
                            std::uint64_t budget = default_budget());

}  // namespace multcount
