#include "multcount/itree.hpp"

#include "multcount/errors.hpp"
#include "multcount/points.hpp"
#include "multcount/poly.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace multcount {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// IntersectionTree

std::optional<std::size_t> IntersectionTree::find(std::uint64_t occurrence_id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].occurrence_id == occurrence_id) return i;
    return std::nullopt;
}

bool IntersectionTree::is_strict_descendant(std::size_t ancestor, std::size_t index) const {
    auto p = vertices_.at(index).parent;
    while (p) {
        if (*p == ancestor) return true;
        p = vertices_[*p].parent;
    }
    return false;
}

std::size_t IntersectionTree::max_depth() const {
    std::size_t d = 0;
    for (const auto& v : vertices_) d = std::max(d, v.depth);
    return d;
}

TreeBuilder::TreeBuilder(VertexData root, std::uint64_t root_occurrence_id) : next_id_(root_occurrence_id + 1) {
    TreeVertex v;
    v.occurrence_id = root_occurrence_id;
    v.data = std::move(root);
    tree_.vertices_.push_back(std::move(v));
}

std::uint64_t TreeBuilder::add_child(std::uint64_t parent_occurrence_id, std::uint64_t edge_weight, VertexData child,
                                     std::optional<std::uint64_t> occurrence_id) {
    auto parent = tree_.find(parent_occurrence_id);
    if (!parent) throw DomainError("unknown parent occurrence " + std::to_string(parent_occurrence_id));
    if (edge_weight == 0) throw DomainError("edge weights must be positive");
    const std::uint64_t id = occurrence_id.value_or(next_id_);
    if (tree_.find(id)) throw DomainError("duplicate occurrence id " + std::to_string(id));
    next_id_ = std::max(next_id_, id + 1);
    TreeVertex v;
    v.occurrence_id = id;
    v.data = std::move(child);
    v.parent = *parent;
    v.edge_weight = edge_weight;
    v.depth = tree_.vertices_[*parent].depth + 1;
    tree_.vertices_.push_back(std::move(v));
    tree_.vertices_[*parent].children.push_back(tree_.vertices_.size() - 1);
    return id;
}

IntersectionTree TreeBuilder::build() && {
    // Re-lay the vertices out in preorder with children sorted by scheme key,
    // so that equal trees have equal storage regardless of insertion order.
    auto& old = tree_.vertices_;
    for (auto& v : old)
        std::sort(v.children.begin(), v.children.end(), [&](std::size_t a, std::size_t b) {
            if (old[a].data.scheme_key != old[b].data.scheme_key) return old[a].data.scheme_key < old[b].data.scheme_key;
            return old[a].occurrence_id < old[b].occurrence_id;
        });
    IntersectionTree out;
    std::function<void(std::size_t, std::optional<std::size_t>)> visit = [&](std::size_t i,
                                                                               std::optional<std::size_t> parent) {
        TreeVertex v = old[i];
        v.parent = parent;
        v.children.clear();
        const std::size_t here = out.vertices_.size();
        out.vertices_.push_back(std::move(v));
        if (parent) out.vertices_[*parent].children.push_back(here);
        for (std::size_t c : old[i].children) visit(c, here);
    };
    visit(0, std::nullopt);
    return out;
}

// ---------------------------------------------------------------------------
// TreeFamily

TreeFamily::TreeFamily(unsigned level, std::vector<IntersectionTree> trees, std::vector<mpz_class> root_weights)
    : level_(level), trees_(std::move(trees)), root_weights_(std::move(root_weights)) {
    if (level_ < 1) throw DomainError("tree level must be at least 1");
    if (trees_.size() != root_weights_.size()) throw DomainError("one root weight per tree is required");
    for (const auto& w : root_weights_)
        if (w < 1) throw DomainError("root weights must be positive");
    for (std::size_t t = 0; t < trees_.size(); ++t) {
        const auto& vs = trees_[t].vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const auto& v = vs[i];
            if (!index_.emplace(v.occurrence_id, Location{t, i}).second)
                throw DomainError("occurrence id " + std::to_string(v.occurrence_id) + " appears twice in the family");
            if (v.data.label.has_value() == v.children.empty())
                throw DomainError("occurrence " + std::to_string(v.occurrence_id) +
                                  ": a vertex is a leaf exactly when its label is empty");
            if (v.data.label && v.data.label->deg > level_)
                throw DomainError("occurrence " + std::to_string(v.occurrence_id) + ": label degree exceeds the tree level");
        }
    }
}

TreeFamily::Location TreeFamily::locate(std::uint64_t occurrence_id) const {
    auto it = index_.find(occurrence_id);
    if (it == index_.end()) throw DomainError("unknown occurrence " + std::to_string(occurrence_id));
    return it->second;
}

const TreeVertex& TreeFamily::vertex(std::uint64_t occurrence_id) const {
    auto loc = locate(occurrence_id);
    return trees_[loc.tree].at(loc.index);
}

bool operator==(const TreeFamily& a, const TreeFamily& b) {
    return a.level_ == b.level_ && a.trees_ == b.trees_ && a.root_weights_ == b.root_weights_;
}

// ---------------------------------------------------------------------------
// Containment

namespace {

std::optional<ProjPoint> key_point(const std::string& key) {
    if (key.rfind("pt:", 0) != 0) return std::nullopt;
    return parse_proj_point(key.substr(3));
}

std::optional<std::vector<Polynomial>> key_polys(const std::string& key, std::size_t nvars) {
    if (key.rfind("V:", 0) != 0) return std::nullopt;
    std::vector<Polynomial> out;
    std::size_t start = 2;
    while (true) {
        auto semi = key.find(';', start);
        out.push_back(parse_poly(key.substr(start, semi - start), nvars));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

}  // namespace

void ContainmentOracle::declare(const std::string& member_key, const std::string& container_key,
                                bool properly_contained) {
    declared_[{member_key, container_key}] = properly_contained;
}

std::optional<bool> ContainmentOracle::properly_contains(const VertexData& container, const VertexData& member) const {
    if (container.scheme_key == member.scheme_key) return false;
    if (member.dim > container.dim) return false;
    if (auto it = declared_.find({member.scheme_key, container.scheme_key}); it != declared_.end()) return it->second;

    const auto mp = key_point(member.scheme_key);
    const auto cp = key_point(container.scheme_key);
    if (mp && cp) return false;
    const auto cpolys = key_polys(container.scheme_key, nvars_);
    if (mp && cpolys) {
        if (container.dim == 0) return false;
        if (mp->size() != nvars_) return std::nullopt;
        return std::all_of(cpolys->begin(), cpolys->end(), [&](const Polynomial& p) {
            return evaluate(p, std::span<const Integer>(mp->coords())) == 0;
        });
    }
    const auto mpolys = key_polys(member.scheme_key, nvars_);
    if (mpolys && cpolys && mpolys->size() == 1 && cpolys->size() == 1) {
        const auto& fm = mpolys->front();
        const auto& fz = cpolys->front();
        return fm.degree() < fz.degree() && divide_exact(fz, fm).has_value();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Weights and classes

mpz_class vertex_weight(const IntersectionTree& tree, std::uint64_t occurrence_id) {
    auto idx = tree.find(occurrence_id);
    if (!idx) throw DomainError("unknown occurrence " + std::to_string(occurrence_id));
    mpz_class w = 1;
    std::optional<std::size_t> cur = *idx;
    while (cur) {
        w *= static_cast<unsigned long>(tree.at(*cur).edge_weight);
        cur = tree.at(*cur).parent;
    }
    return w;
}

mpz_class vertex_weight(const TreeFamily& family, std::uint64_t occurrence_id) {
    auto loc = family.locate(occurrence_id);
    return vertex_weight(family.trees()[loc.tree], occurrence_id);
}

mpz_class subscheme_weight(const IntersectionTree& tree, const std::string& scheme_key) {
    mpz_class total = 0;
    for (const auto& v : tree.vertices())
        if (v.data.scheme_key == scheme_key) total += vertex_weight(tree, v.occurrence_id);
    return total;
}

mpz_class subscheme_weight(const TreeFamily& family, const std::string& scheme_key) {
    mpz_class total = 0;
    for (const auto& t : family.trees()) total += subscheme_weight(t, scheme_key);
    return total;
}

DepthClass depth_class(const TreeFamily& family, std::size_t s) {
    DepthClass out;
    for (const auto& t : family.trees())
        for (const auto& v : t.vertices()) {
            if (v.depth != s) continue;
            out.occurrences.push_back(v.occurrence_id);
            if (v.data.label) out.labels.push_back(*v.data.label);
        }
    return out;
}

namespace {

// The descendant condition for the scheme of `member`: nullopt iff undecidable.
std::optional<bool> descendant_condition(const TreeFamily& family, const VertexData& member,
                                         const ContainmentOracle& oracle, std::vector<std::string>& warnings) {
    for (const auto& t : family.trees()) {
        const auto& vs = t.vertices();
        for (std::size_t z = 0; z < vs.size(); ++z) {
            const auto contained = oracle.properly_contains(vs[z].data, member);
            if (!contained) {
                warnings.push_back("containment of " + member.scheme_key + " in " + vs[z].data.scheme_key +
                                   " is undecided; excluded");
                return std::nullopt;
            }
            if (!*contained) continue;
            bool found = false;
            for (std::size_t d = 0; d < vs.size() && !found; ++d)
                found = vs[d].data.scheme_key == member.scheme_key && t.is_strict_descendant(z, d);
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace

ZsClass zs_class(const TreeFamily& family, std::size_t s, const ContainmentOracle& oracle) {
    ZsClass out;
    std::map<std::string, bool> cache;
    for (std::uint64_t id : depth_class(family, s).occurrences) {
        const auto& v = family.vertex(id);
        auto it = cache.find(v.data.scheme_key);
        if (it == cache.end()) {
            auto ok = descendant_condition(family, v.data, oracle, out.warnings);
            it = cache.emplace(v.data.scheme_key, ok.value_or(false)).first;
        }
        if (it->second) out.members.push_back(id);
    }
    return out;
}

std::set<std::string> zs_star_keys(const TreeFamily& family, const ContainmentOracle& oracle) {
    std::set<std::string> keys;
    std::size_t depth = 0;
    for (const auto& t : family.trees()) depth = std::max(depth, t.max_depth());
    for (std::size_t s = 0; s <= depth; ++s)
        for (auto id : zs_class(family, s, oracle).members) keys.insert(family.vertex(id).data.scheme_key);
    return keys;
}

BoundReport verify_weight_inequality(const TreeFamily& family, const std::string& scheme_key,
                                     const std::vector<unsigned>& mu_products, const ContainmentOracle& oracle) {
    if (!zs_star_keys(family, oracle).contains(scheme_key))
        throw DomainError("scheme " + scheme_key + " is not in Z_*; the weight inequality is not guaranteed");
    mpz_class lhs = 0;
    for (std::size_t c = 0; c < family.trees().size(); ++c)
        lhs += subscheme_weight(family.trees()[c], scheme_key) * family.root_weights()[c];
    mpz_class rhs = 1;
    for (unsigned mu : mu_products) rhs *= mu;
    return BoundReport::check("weight_inequality", mpq_class(lhs), mpq_class(rhs), Relation::ge)
        .with("scheme", scheme_key);
}

BoundReport verify_degree_bound(const TreeFamily& family, std::size_t s, const ContainmentOracle& oracle,
                                const std::vector<unsigned>& input_degrees,
                                const std::map<std::string, std::vector<unsigned>>& mu_by_key) {
    std::optional<int> label_dim;
    std::size_t depth = 0;
    for (const auto& t : family.trees()) {
        depth = std::max(depth, t.max_depth());
        for (const auto& v : t.vertices()) {
            if (!v.data.label) continue;
            if (label_dim && *label_dim != v.data.label->dim)
                throw DomainError("labels of the family have different dimensions");
            label_dim = v.data.label->dim;
        }
    }
    mpz_class lhs = 0;
    std::set<std::string> seen;
    for (std::uint64_t id : zs_class(family, s, oracle).members) {
        const auto& v = family.vertex(id);
        if (!seen.insert(v.data.scheme_key).second) continue;
        auto it = mu_by_key.find(v.data.scheme_key);
        if (it == mu_by_key.end()) throw DomainError("no multiplicities supplied for " + v.data.scheme_key);
        mpz_class term = v.data.deg;
        for (unsigned mu : it->second) term *= mu;
        lhs += term;
    }
    mpz_class rhs = 1;
    for (unsigned d : input_degrees) rhs *= d;
    for (std::size_t j = 0; j < s; ++j) {
        unsigned best = 0;
        for (const auto& label : depth_class(family, j).labels) best = std::max(best, label.deg);
        if (best > 0) rhs *= best;
    }
    return BoundReport::check("degree_bound", mpq_class(lhs), mpq_class(rhs), Relation::le)
        .with("s", std::to_string(s));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ordered_json vertex_json(const IntersectionTree& t, std::size_t i) {
    const auto& v = t.at(i);
    ordered_json j;
    j["occurrence_id"] = v.occurrence_id;
    j["scheme_key"] = v.data.scheme_key;
    j["dim"] = v.data.dim;
    j["deg"] = v.data.deg;
    if (v.data.label) {
        j["label"] = {{"poly", v.data.label->defining}, {"deg", v.data.label->deg}, {"dim", v.data.label->dim}};
    } else {
        j["label"] = nullptr;
    }
    ordered_json children = ordered_json::array();
    for (std::size_t c : v.children)
        children.push_back({{"weight", t.at(c).edge_weight}, {"vertex", vertex_json(t, c)}});
    j["children"] = std::move(children);
    return j;
}

VertexData vertex_data_from(const ordered_json& j) {
    VertexData d;
    d.scheme_key = j.at("scheme_key").get<std::string>();
    d.dim = j.at("dim").get<int>();
    d.deg = j.at("deg").get<unsigned>();
    if (j.contains("label") && !j.at("label").is_null()) {
        const auto& l = j.at("label");
        d.label = SchemeLabel{l.at("poly").get<std::string>(), l.at("deg").get<unsigned>(), l.value("dim", 0)};
    }
    return d;
}

void add_children(TreeBuilder& b, std::uint64_t parent, const ordered_json& j) {
    for (const auto& edge : j.at("children")) {
        const auto& cv = edge.at("vertex");
        auto id = b.add_child(parent, edge.at("weight").get<std::uint64_t>(), vertex_data_from(cv),
                              cv.at("occurrence_id").get<std::uint64_t>());
        add_children(b, id, cv);
    }
}

mpz_class weight_from(const ordered_json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
    return mpz_class(std::to_string(j.get<std::uint64_t>()), 10);
}

}  // namespace

std::string family_to_json(const TreeFamily& family, int indent) {
    ordered_json j;
    j["level"] = family.level();
    ordered_json trees = ordered_json::array();
    for (const auto& t : family.trees()) trees.push_back(vertex_json(t, 0));
    j["trees"] = std::move(trees);
    ordered_json weights = ordered_json::array();
    for (const auto& w : family.root_weights()) weights.push_back(w.get_str());
    j["root_weights"] = std::move(weights);
    return j.dump(indent);
}

TreeFamily family_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("tree family JSON: ") + e.what(), e.byte);
    }
    try {
        std::vector<IntersectionTree> trees;
        for (const auto& tj : j.at("trees")) {
            TreeBuilder b(vertex_data_from(tj), tj.at("occurrence_id").get<std::uint64_t>());
            add_children(b, tj.at("occurrence_id").get<std::uint64_t>(), tj);
            trees.push_back(std::move(b).build());
        }
        std::vector<mpz_class> weights;
        for (const auto& w : j.at("root_weights")) weights.push_back(weight_from(w));
        return TreeFamily(j.value("level", 1u), std::move(trees), std::move(weights));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("tree family JSON: ") + e.what(), 0);
    }
}

}  // namespace multcount
