#pragma once

#include "multcount/curves2d.hpp"
#include "multcount/enumerate.hpp"
#include "multcount/itree.hpp"
#include "multcount/mult.hpp"
#include "multcount/report.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace multcount {

/// Riemann zeta at an integer s >= 2 with absolute error below tol.
double zeta(unsigned s, double tol = 1e-12);

struct AsymptoticsReport {
    std::size_t n = 0;
    Integer B = 0;
    Integer count = 0;
    double ratio = 0;    // count / B^{n+1}
    double limit = 0;    // 2^n / zeta(n+1)
    double rel_err = 0;  // |ratio - limit| / limit
};
AsymptoticsReport schanuel_experiment(std::size_t n, const Integer& B);

/// N(P^n;B) <= 3^{n+1} B^{n+1} for 1 <= n <= n_max, 1 <= B <= B_max.
std::vector<BoundReport> check_projective_bound(std::size_t n_max, std::int64_t B_max);

/// sum over S(X;B) of mu (mu - 1) <= delta (delta - 1), for plane curves.
BoundReport check_fulton(const Hypersurface& X, const Integer& B, std::uint64_t budget = default_budget());

struct CylinderFamily {
    Hypersurface X;
    /// f = prod (a x1 + b x2) over the pairs (a, b): x1 (x1 - x2) for delta = 2, and
    /// x2 x1 (x1 - x2) (x1 - 2 x2) ... for delta >= 3.
    std::vector<std::pair<long, long>> lines;
    int sing_dim = 0;  // n - 2
    unsigned mu = 0;   // delta at every singular point

    /// Singular points are exactly the ones with x1 = x2 = 0.
    bool is_expected_singular(const ProjPoint& p) const;
};
CylinderFamily gen_cylinder(unsigned delta, std::size_t n);

struct DeformationFamily {
    Hypersurface X;       // F = Y^delta + X f(T) with X = x0, Y = x1, T_i = x_{i+2}
    Polynomial f_smooth;  // in the T variables only
    unsigned delta = 0;
    int sing_dim = 0;
    /// Rational singular points off X = Y = 0: the vertex [1:0:...:0], where
    /// all partials vanish because deg f >= 2. Its multiplicity is delta - 1.
    std::vector<ProjPoint> extra_singular_points;

    bool on_expected_locus(const ProjPoint& p) const;  // X = Y = 0 and f(T) = 0
};
/// Throws DomainError when f_smooth and its partials share a rational zero of
/// height <= 10.
DeformationFamily gen_deformation(unsigned delta, const Polynomial& f_smooth);

struct ZDatum {
    Integer N = 0;  // N(Z;B)
    unsigned deg = 1;
};
using ZData = std::map<std::string, ZDatum>;

struct MainTheoremCheck {
    BoundReport report;
    std::vector<mpq_class> terms;  // t-th summand of the right-hand side
    MultSum lhs;
    std::vector<std::string> warnings;
};
/// lhs = mult_sum(X, B, n - s - 1) against
/// sum_t max_{Z in Z_t} N(Z;B)/deg Z * delta (delta - 1)^{n - s + t - 1}.
/// s is X.declared_sing_dim (-1 for a smooth X). Throws DomainError when
/// z_data lacks an entry for a member of some Z_t.
MainTheoremCheck check_main_theorem(const Hypersurface& X, const Integer& B, const TreeFamily& family,
                                    const ZData& z_data, const ContainmentOracle& oracle,
                                    std::uint64_t budget = default_budget());
/// Main theorem for a plane curve with the automatically built root layer.
MainTheoremCheck check_main_theorem_curve(const Hypersurface& X, const Integer& B,
                                          std::uint64_t seed = kDefaultSeed, std::uint64_t budget = default_budget());

struct CuratedFamily {
    TreeFamily family;
    ZData z_data;
    ContainmentOracle oracle{1};
    std::vector<std::string> notes;
};
/// One root V(x1, x2) of dimension n - 2, a leaf since every point of it has
/// multiplicity delta. The root weight is I(f, g) at [1:0:0] in the plane.
CuratedFamily cylinder_tree_family(const CylinderFamily& c, const Integer& B);
/// One root {Y = 0, f = 0}, the support of X n V(dF/dX) n V(dF/dY).
CuratedFamily deformation_tree_family(const DeformationFamily& d, const Integer& B,
                                      std::uint64_t budget = default_budget());

struct CorpusMember {
    Hypersurface X;
    int s = 0;
    std::string tag;
};
struct CorollaryEntry {
    std::size_t index = 0;
    Integer B = 0;
    Integer lhs = 0;
    Integer denominator = 0;
    double ratio = 0;
};
struct CorollaryReport {
    std::vector<CorollaryEntry> entries;
    double sup_ratio = 0;
    double bound = 0;
    bool pass = true;
};
/// Ratio lhs / (delta^{n-s} max(delta-1, B)^{s+1}) over corpus x B_list.
/// Passes when the sup is at most `bound` (default 3^{n+1} for the largest n).
CorollaryReport check_corollary(const std::vector<CorpusMember>& corpus, const std::vector<Integer>& B_list,
                                std::optional<double> bound = std::nullopt, std::uint64_t budget = default_budget());

// Random generators. All take the engine by reference and are deterministic for a seed.

/// Random affine polynomial in nvars variables of total degree <= degree,
/// coefficients in [-c, c]; each monomial is kept with probability `density`.
/// Nonconstant unless degree is 0.
Polynomial random_affine_poly(std::mt19937_64& rng, std::size_t nvars, unsigned degree, int c = 3,
                              double density = 1.0);
/// Random homogeneous form of the given degree.
Polynomial random_form(std::mt19937_64& rng, std::size_t nvars, unsigned degree, int c = 3);

/// Reduced plane curve of the given degree, drawn from one of: products of
/// lines and conics, a prescribed-multiplicity point, a generic curve forced
/// through a point.
Hypersurface random_plane_curve(std::mt19937_64& rng, unsigned degree);
/// Reduced curve with a point of multiplicity m >= 1 at `p`.
Hypersurface plane_curve_with_point(std::mt19937_64& rng, unsigned degree, unsigned m, const ProjPoint& p);
std::vector<Hypersurface> plane_curve_corpus(std::size_t count, unsigned deg_min, unsigned deg_max,
                                             std::uint64_t seed);

/// Runs a JSON experiment config (one object or an array) and returns the
/// report array as JSON text. Independent experiments run concurrently.
std::string run_experiments(const std::string& config_json, bool stable = false);

}  // namespace multcount
