#pragma once

#include "multcount/report.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace multcount {

/// Label attached to a non-leaf vertex: the subscheme intersected against it.
/// `defining` holds a polynomial in the x0.. grammar or an opaque key.
struct SchemeLabel {
    std::string defining;
    unsigned deg = 1;
    int dim = 0;

    friend bool operator==(const SchemeLabel&, const SchemeLabel&) = default;
};

/// Data of one occurrence of an integral subscheme.
///
/// Scheme keys in the `pt:[a:b:c]` form name rational points and keys in the
/// `V:p1;p2;...` form name the common zero set of the listed polynomials; any
/// other key is opaque to the automatic containment rules.
struct VertexData {
    std::string scheme_key;
    int dim = 0;
    unsigned deg = 1;
    std::optional<SchemeLabel> label;

    friend bool operator==(const VertexData&, const VertexData&) = default;
};

struct TreeVertex {
    std::uint64_t occurrence_id = 0;
    VertexData data;
    std::optional<std::size_t> parent;
    std::uint64_t edge_weight = 1;  // weight of the edge from the parent; 1 at the root
    std::size_t depth = 0;
    std::vector<std::size_t> children;  // indices into the owning tree, ordered by scheme key

    friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

/// Rooted tree with weighted edges; immutable once built.
class IntersectionTree {
public:
    const TreeVertex& root() const { return vertices_.front(); }
    const std::vector<TreeVertex>& vertices() const noexcept { return vertices_; }
    const TreeVertex& at(std::size_t index) const { return vertices_.at(index); }
    std::optional<std::size_t> find(std::uint64_t occurrence_id) const;
    bool is_strict_descendant(std::size_t ancestor, std::size_t index) const;
    std::size_t max_depth() const;

    friend bool operator==(const IntersectionTree&, const IntersectionTree&) = default;

private:
    friend class TreeBuilder;
    std::vector<TreeVertex> vertices_;
};

/// Builds one tree in a single pass. Occurrence ids are assigned from a
/// counter shared by all builders of a family, or given explicitly.
class TreeBuilder {
public:
    explicit TreeBuilder(VertexData root, std::uint64_t root_occurrence_id);

    /// Adds a child below the given occurrence and returns the child's id.
    std::uint64_t add_child(std::uint64_t parent_occurrence_id, std::uint64_t edge_weight, VertexData child,
                            std::optional<std::uint64_t> occurrence_id = std::nullopt);
    IntersectionTree build() &&;

private:
    IntersectionTree tree_;
    std::uint64_t next_id_;
};

/// A family {T_C} of trees of level delta, one per component C of the
/// intersection product, with the multiplicity i(C) of each root.
class TreeFamily {
public:
    TreeFamily() = default;
    /// Checks id uniqueness and the leaf/label invariants.
    TreeFamily(unsigned level, std::vector<IntersectionTree> trees, std::vector<mpz_class> root_weights);

    unsigned level() const noexcept { return level_; }
    const std::vector<IntersectionTree>& trees() const noexcept { return trees_; }
    const std::vector<mpz_class>& root_weights() const noexcept { return root_weights_; }

    struct Location {
        std::size_t tree;
        std::size_t index;
    };
    Location locate(std::uint64_t occurrence_id) const;
    const TreeVertex& vertex(std::uint64_t occurrence_id) const;

    friend bool operator==(const TreeFamily& a, const TreeFamily& b);

private:
    unsigned level_ = 1;
    std::vector<IntersectionTree> trees_;
    std::vector<mpz_class> root_weights_;
    std::map<std::uint64_t, Location> index_;
};

/// Decides whether `member` is a proper closed subscheme of `container`.
///
/// Declared pairs take precedence; otherwise points are tested against
/// `V:` keys by evaluation and single-polynomial `V:` keys by divisibility.
/// std::nullopt means the pair cannot be decided.
class ContainmentOracle {
public:
    explicit ContainmentOracle(std::size_t homogeneous_variables) : nvars_(homogeneous_variables) {}

    void declare(const std::string& member_key, const std::string& container_key, bool properly_contained);
    std::optional<bool> properly_contains(const VertexData& container, const VertexData& member) const;

private:
    std::size_t nvars_;
    std::map<std::pair<std::string, std::string>, bool> declared_;
};

mpz_class vertex_weight(const IntersectionTree& tree, std::uint64_t occurrence_id);
mpz_class vertex_weight(const TreeFamily& family, std::uint64_t occurrence_id);

mpz_class subscheme_weight(const IntersectionTree& tree, const std::string& scheme_key);
/// Sum over all trees of the family. Zero when the scheme never occurs.
mpz_class subscheme_weight(const TreeFamily& family, const std::string& scheme_key);

struct DepthClass {
    std::vector<std::uint64_t> occurrences;  // C_s
    std::vector<SchemeLabel> labels;         // C'_s
};
DepthClass depth_class(const TreeFamily& family, std::size_t s);

struct ZsClass {
    std::vector<std::uint64_t> members;
    std::vector<std::string> warnings;
};
/// Members M of C_s such that every vertex properly containing M has a
/// descendant occurrence of M. Undecidable pairs exclude M with a warning.
ZsClass zs_class(const TreeFamily& family, std::size_t s, const ContainmentOracle& oracle);

/// Scheme keys occurring in some Z_s.
std::set<std::string> zs_star_keys(const TreeFamily& family, const ContainmentOracle& oracle);

/// sum_C W_{T_C}(M) i(C) >= prod mu_M(X_i). Throws DomainError when M is not
/// in Z_*, where the inequality is not guaranteed.
BoundReport verify_weight_inequality(const TreeFamily& family, const std::string& scheme_key,
                                     const std::vector<unsigned>& mu_products, const ContainmentOracle& oracle);

/// sum_{Z in Z_s} (prod_i mu_Z(X_i)) deg Z <= prod_i deg X_i * prod_{j<s} max deg of C'_j.
/// Distinct schemes of Z_s are counted once. `mu_by_key` gives mu_Z(X_i)
/// for each Z; missing entries are an error.
BoundReport verify_degree_bound(const TreeFamily& family, std::size_t s, const ContainmentOracle& oracle,
                                const std::vector<unsigned>& input_degrees,
                                const std::map<std::string, std::vector<unsigned>>& mu_by_key);

/// Canonical JSON text of a family: {"level", "trees", "root_weights"}.
std::string family_to_json(const TreeFamily& family, int indent = -1);
TreeFamily family_from_json(const std::string& text);

}  // namespace multcount
