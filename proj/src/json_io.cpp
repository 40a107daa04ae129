#include "multcount/json_io.hpp"

namespace multcount::jsonio {

json integer(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json rational(const mpq_class& v) {
    if (v.get_den() == 1) return integer(v.get_num());
    return v.get_str();
}

json point(const ProjPoint& p) {
    json a = json::array();
    for (const auto& c : p.coords()) a.push_back(c.get_str());
    return a;
}

json report(const BoundReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["lhs"] = rational(r.lhs);
    j["rhs"] = rational(r.rhs);
    j["relation"] = to_string(r.relation);
    j["pass"] = r.pass;
    json ctx = json::object();
    for (const auto& [k, v] : r.context) ctx[k] = v;
    j["context"] = std::move(ctx);
    return j;
}

json asymptotics(const AsymptoticsReport& r) {
    return {{"n", r.n},
            {"B", integer(r.B)},
            {"count", integer(r.count)},
            {"ratio", r.ratio},
            {"limit", r.limit},
            {"rel_err", r.rel_err}};
}

json bezout(const BezoutCheck& b) {
    json pts = json::array();
    for (const auto& e : b.points) pts.push_back({{"point", point(e.point)}, {"I", e.I}});
    json j = report(b.report);
    j["points"] = std::move(pts);
    j["deficit"] = integer(b.deficit);
    j["equality"] = b.equality;
    return j;
}

json main_theorem(const MainTheoremCheck& m) {
    json j = report(m.report);
    json terms = json::array();
    for (const auto& t : m.terms) terms.push_back(rational(t));
    j["terms"] = std::move(terms);
    json contrib = json::array();
    for (const auto& c : m.lhs.contributors) contrib.push_back({{"point", point(c.point)}, {"mu", c.mu}});
    j["singular_points"] = std::move(contrib);
    j["warnings"] = m.warnings;
    return j;
}

json corollary(const CorollaryReport& c) {
    json rows = json::array();
    for (const auto& e : c.entries)
        rows.push_back({{"index", e.index},
                        {"B", integer(e.B)},
                        {"lhs", integer(e.lhs)},
                        {"denominator", integer(e.denominator)},
                        {"ratio", e.ratio}});
    return {{"entries", std::move(rows)}, {"sup_ratio", c.sup_ratio}, {"bound", c.bound}, {"pass", c.pass}};
}

}  // namespace multcount::jsonio
