#pragma once

#include "multcount/points.hpp"
#include "multcount/poly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace multcount {

/// Default cap on candidate tuples: 2e9, or MULTCOUNT_BUDGET when set.
std::uint64_t default_budget();

/// Canonical points of bounded height, sorted lexicographically.
struct PointSet {
    std::vector<ProjPoint> points;
    std::size_t ambient_n = 0;
    Integer bound_B = 0;

    std::size_t size() const noexcept { return points.size(); }
    bool contains(const ProjPoint& p) const;
};

enum class CountMethod { brute, moebius, slicing };
std::string to_string(CountMethod m);

struct CountResult {
    Integer count = 0;
    CountMethod method = CountMethod::brute;
};

/// Inclusive range of first-coordinate values, used to split an enumeration
/// into independent partitions. Canonical points always have x0 in [0, B].
struct LeadRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

/// Visits every canonical primitive point of P^n with max |coord| <= B in
/// lexicographic order. Only tuples whose first nonzero entry is positive are
/// generated, and the gcd is accumulated left to right.
void for_each_projective_point(std::size_t n, std::int64_t B,
                               const std::function<void(std::span<const std::int64_t>)>& visit,
                               std::optional<LeadRange> lead = std::nullopt,
                               std::uint64_t budget = default_budget());

PointSet enumerate_projective(std::size_t n, const Integer& B, std::uint64_t budget = default_budget(),
                              std::optional<LeadRange> lead = std::nullopt);

/// N(P^n; B) by visiting every point (no storage).
CountResult count_projective_brute(std::size_t n, const Integer& B, std::uint64_t budget = default_budget());

/// N(P^n; B) = 1/2 * sum_{d<=B} mu(d) ((2 floor(B/d) + 1)^{n+1} - 1).
CountResult count_projective_moebius(std::size_t n, const Integer& B);

/// Moebius function values mu(0..limit); mu(0) is unused and set to 0.
std::vector<int> moebius_table(std::size_t limit);

/// Points of V(f) with height <= B; f homogeneous and nonzero in n+1 variables.
PointSet points_on_hypersurface(const Polynomial& f, const Integer& B, std::uint64_t budget = default_budget(),
                                std::optional<LeadRange> lead = std::nullopt);

/// Splits [0, B] into `parts` first-coordinate ranges, runs them concurrently
/// and merges. The result equals a single pass.
PointSet points_on_hypersurface_partitioned(const Polynomial& f, const Integer& B, std::size_t parts,
                                            std::uint64_t budget = default_budget());
PointSet enumerate_projective_partitioned(std::size_t n, const Integer& B, std::size_t parts,
                                          std::uint64_t budget = default_budget());

/// Sorted union.
PointSet merge_point_sets(std::span<const PointSet> parts);

/// #{x in Z^m : max |x_i| <= B, f(x) = 0}.
CountResult count_affine_box(const Polynomial& f, const Integer& B, std::uint64_t budget = default_budget());

/// Same count as count_affine_box, computed by slicing with hyperplanes
/// x_alpha = a down to univariate root counting. The slicing variable is one
/// for which no slice in the box is identically zero; when every variable has
/// such a slice the current subproblem is counted by brute force and the
/// method is reported as brute.
CountResult slice_count(const Polynomial& f, const Integer& B, std::uint64_t budget = default_budget());

/// #M(affine cone of V(f); B): f read as an affine polynomial in n+1 variables.
CountResult affine_cone_count(const Polynomial& f, const Integer& B, std::uint64_t budget = default_budget());

/// Distinct integer roots in [-B, B] of a nonzero univariate polynomial.
std::vector<Integer> integer_roots_in_box(const Polynomial& f, const Integer& B);

}  // namespace multcount
