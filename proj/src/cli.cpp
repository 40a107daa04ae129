#include "multcount/cli.hpp"

#include "multcount/errors.hpp"
#include "multcount/harness.hpp"
#include "multcount/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace multcount {

namespace {

using jsonio::json;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    long n = -1;
    long B = -1;
    std::string poly, poly_file, point;
    std::string f, g, F, G;
    std::string method;
    std::string config, family_file, z_data_file, mu_table_file, scheme, example;
    std::vector<long> B_list, deltas, mu, degrees;
    long exponent = -1;
    long sing_dim = -2;
    long delta = 3;
    long depth = -1;
    long count = 50, deg_min = 2, deg_max = 6;
    double bound = -1;
    std::uint64_t seed = kDefaultSeed;
    long long budget = -1;
    std::string format = "json";
    bool stable = false;
};

struct Result {
    json body;
    bool pass = true;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string poly_text(const Options& o) {
    if (!o.poly.empty() && !o.poly_file.empty()) throw UsageError("give --poly or --poly-file, not both");
    if (!o.poly_file.empty()) {
        std::string t = read_file(o.poly_file);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
        return t;
    }
    if (o.poly.empty()) throw UsageError("a polynomial is required (--poly or --poly-file)");
    return o.poly;
}

// Number of variables mentioned in the text: one more than the largest index.
std::size_t inferred_vars(const std::string& text) {
    static const std::regex var(R"(x(\d+))");
    std::size_t nv = 1;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
        nv = std::max<std::size_t>(nv, std::stoul((*it)[1].str()) + 1);
    return nv;
}

// Homogeneous variable count: n + 1 when -n is given, inferred otherwise.
std::size_t projective_vars(const Options& o, const std::string& text) {
    if (o.n >= 0) {
        if (o.n < 1) throw UsageError("-n must be at least 1");
        return static_cast<std::size_t>(o.n) + 1;
    }
    return std::max<std::size_t>(2, inferred_vars(text));
}

Integer bound(const Options& o) {
    if (o.B < 1) throw UsageError("a height bound -B >= 1 is required");
    return Integer(o.B);
}

std::uint64_t budget(const Options& o) {
    if (o.budget == -1) return default_budget();
    if (o.budget <= 0) throw UsageError("--budget must be positive");
    return static_cast<std::uint64_t>(o.budget);
}

std::optional<int> sing_dim(const Options& o) {
    if (o.sing_dim == -2) return std::nullopt;
    return static_cast<int>(o.sing_dim);
}

std::vector<Integer> to_integers(const std::vector<long>& v) { return {v.begin(), v.end()}; }

json points_json(const PointSet& s) {
    json a = json::array();
    for (const auto& p : s.points) a.push_back(jsonio::point(p));
    return a;
}

// ---------------------------------------------------------------------------

Result cmd_count_projective(const Options& o) {
    if (o.n < 1) throw UsageError("-n must be at least 1");
    const Integer B = bound(o);
    const std::string method = o.method.empty() ? "moebius" : o.method;
    CountResult r;
    if (method == "moebius") r = count_projective_moebius(static_cast<std::size_t>(o.n), B);
    else if (method == "brute") r = count_projective_brute(static_cast<std::size_t>(o.n), B, budget(o));
    else throw UsageError("--method must be brute or moebius");
    return {{{"n", o.n}, {"B", o.B}, {"count", jsonio::integer(r.count)}, {"method", to_string(r.method)}}};
}

Result cmd_points_on(const Options& o) {
    const std::string text = poly_text(o);
    const Polynomial f = parse_poly(text, projective_vars(o, text));
    const PointSet s = points_on_hypersurface(f, bound(o), budget(o));
    return {{{"n", s.ambient_n}, {"B", o.B}, {"count", s.size()}, {"points", points_json(s)}}};
}

Result cmd_slice_count(const Options& o) {
    const std::string text = poly_text(o);
    const std::size_t nv = o.n >= 1 ? static_cast<std::size_t>(o.n) : inferred_vars(text);
    const Polynomial f = parse_poly(text, nv);
    const Integer B = bound(o);
    const std::string method = o.method.empty() ? "slicing" : o.method;
    json body{{"variables", nv}, {"B", o.B}};
    bool pass = true;
    if (method == "slicing" || method == "both") {
        const auto r = slice_count(f, B, budget(o));
        body["count"] = jsonio::integer(r.count);
        body["method"] = to_string(r.method);
        if (method == "both") {
            const auto box = count_affine_box(f, B, budget(o));
            body["box_count"] = jsonio::integer(box.count);
            body["agree"] = pass = box.count == r.count;
        }
    } else if (method == "box") {
        const auto r = count_affine_box(f, B, budget(o));
        body["count"] = jsonio::integer(r.count);
        body["method"] = to_string(r.method);
    } else {
        throw UsageError("--method must be slicing, box or both");
    }
    return {body, pass};
}

Result cmd_cone_count(const Options& o) {
    const std::string text = poly_text(o);
    const Polynomial f = parse_poly(text, projective_vars(o, text));
    const auto r = affine_cone_count(f, bound(o), budget(o));
    return {{{"n", f.variable_count() - 1}, {"B", o.B}, {"count", jsonio::integer(r.count)},
             {"method", to_string(r.method)}}};
}

Result cmd_multiplicity(const Options& o) {
    if (o.point.empty()) throw UsageError("--point is required");
    const ProjPoint p = parse_proj_point(o.point);
    const Hypersurface X = Hypersurface::parse(poly_text(o), p.size() - 1);
    return {{{"point", jsonio::point(p)}, {"mu", multiplicity_at(X, p)}, {"oracle", multiplicity_oracle(X, p)}}};
}

Result cmd_singular_points(const Options& o) {
    const std::string text = poly_text(o);
    const Hypersurface X = Hypersurface::parse(text, projective_vars(o, text) - 1);
    json pts = json::array();
    const auto recs = singular_points(X, bound(o), budget(o));
    for (const auto& r : recs) pts.push_back({{"point", jsonio::point(r.point)}, {"mu", r.mu}});
    return {{{"n", X.ambient_n}, {"B", o.B}, {"count", recs.size()}, {"points", std::move(pts)}}};
}

Result cmd_mult_sum(const Options& o) {
    const std::string text = poly_text(o);
    const Hypersurface X = Hypersurface::parse(text, projective_vars(o, text) - 1, sing_dim(o));
    long e = o.exponent;
    if (e < 0) e = X.declared_sing_dim ? static_cast<long>(X.ambient_n) - *X.declared_sing_dim - 1 : 1;
    if (e < 0) throw UsageError("exponent must be non-negative");
    const auto m = mult_sum(X, bound(o), static_cast<unsigned>(e), std::nullopt, budget(o));
    json pts = json::array();
    for (const auto& r : m.contributors) pts.push_back({{"point", jsonio::point(r.point)}, {"mu", r.mu}});
    return {{{"n", X.ambient_n}, {"B", o.B}, {"exponent", e}, {"sum", jsonio::integer(m.sum)},
             {"contributors", std::move(pts)}}};
}

Result cmd_intersect(const Options& o) {
    if (o.f.empty() || o.g.empty() || o.point.empty()) throw UsageError("--f, --g and --point are required");
    std::vector<Rational> P;
    std::stringstream ss(o.point);
    for (std::string item; std::getline(ss, item, ',');) {
        Rational q;
        if (q.set_str(item, 10) != 0) throw UsageError("bad coordinate '" + item + "'");
        q.canonicalize();
        P.push_back(q);
    }
    const auto I = intersection_number(std::span<const Rational>(P), parse_poly(o.f, 2), parse_poly(o.g, 2));
    json pt = json::array();
    for (const auto& q : P) pt.push_back(q.get_str());
    return {{{"point", std::move(pt)}, {"I", I.is_infinite() ? json("INFINITE") : json(*I.value)}}};
}

Result cmd_bezout(const Options& o) {
    if (o.F.empty() || o.G.empty()) throw UsageError("--F and --G are required");
    const auto r = bezout_check(Hypersurface::parse(o.F, 2), Hypersurface::parse(o.G, 2), bound(o), budget(o));
    return {jsonio::bezout(r), r.report.pass};
}

Result cmd_tree_build(const Options& o) {
    const Hypersurface X = Hypersurface::parse(poly_text(o), 2, 0);
    const auto t = build_curve_tree(X, bound(o), o.seed, budget(o));
    json body{{"g", t.g.to_string()},
              {"mass", jsonio::integer(t.mass)},
              {"expected_mass", jsonio::integer(t.expected_mass)},
              {"uncovered", t.uncovered},
              {"family", json::parse(family_to_json(t.family))}};
    bool pass = true;
    json ineq = json::array();
    for (const auto& r : curve_tree_inequalities(X, t, bound(o), budget(o))) {
        pass = pass && r.pass;
        ineq.push_back(jsonio::report(r));
    }
    body["inequalities"] = std::move(ineq);
    return {body, pass};
}

Result cmd_tree_verify(const Options& o) {
    if (o.family_file.empty()) throw UsageError("--family is required");
    if (o.n < 1) throw UsageError("-n (ambient dimension) is required");
    const TreeFamily fam = family_from_json(read_file(o.family_file));
    const ContainmentOracle oracle(static_cast<std::size_t>(o.n) + 1);
    json body;
    body["roundtrip"] = family_from_json(family_to_json(fam)) == fam;
    std::size_t depth = 0;
    for (const auto& t : fam.trees()) depth = std::max(depth, t.max_depth());
    json classes = json::array();
    std::set<std::string> keys;
    for (std::size_t s = 0; s <= depth; ++s) {
        const auto z = zs_class(fam, s, oracle);
        json members = json::array();
        for (auto id : z.members) members.push_back(fam.vertex(id).data.scheme_key);
        classes.push_back({{"s", s}, {"C_s", depth_class(fam, s).occurrences.size()}, {"Z_s", std::move(members)},
                           {"warnings", z.warnings}});
    }
    for (const auto& t : fam.trees())
        for (const auto& v : t.vertices()) keys.insert(v.data.scheme_key);
    json weights = json::object();
    for (const auto& k : keys) weights[k] = jsonio::integer(subscheme_weight(fam, k));
    body["classes"] = std::move(classes);
    body["weights"] = std::move(weights);
    bool pass = body["roundtrip"].get<bool>();
    if (!o.scheme.empty()) {
        if (o.mu.empty()) throw UsageError("--scheme needs --mu");
        std::vector<unsigned> mu(o.mu.begin(), o.mu.end());
        const auto r = verify_weight_inequality(fam, o.scheme, mu, oracle);
        body["weight_inequality"] = jsonio::report(r);
        pass = pass && r.pass;
    }
    if (o.depth >= 0) {
        if (o.mu_table_file.empty() || o.degrees.empty()) throw UsageError("--depth needs --mu-table and --degrees");
        std::map<std::string, std::vector<unsigned>> table;
        for (const auto& [k, v] : json::parse(read_file(o.mu_table_file)).items())
            table[k] = v.get<std::vector<unsigned>>();
        std::vector<unsigned> degs(o.degrees.begin(), o.degrees.end());
        const auto r = verify_degree_bound(fam, static_cast<std::size_t>(o.depth), oracle, degs, table);
        body["degree_bound"] = jsonio::report(r);
        pass = pass && r.pass;
    }
    return {body, pass};
}

Result cmd_schanuel(const Options& o) {
    if (o.n < 1) throw UsageError("-n must be at least 1");
    std::vector<long> Bs = o.B_list;
    if (Bs.empty()) Bs.push_back(static_cast<long>(bound(o).get_si()));
    json rows = json::array();
    for (long b : Bs) {
        if (b < 1) throw UsageError("bounds must be at least 1");
        rows.push_back(jsonio::asymptotics(schanuel_experiment(static_cast<std::size_t>(o.n), Integer(b))));
    }
    return {{{"rows", std::move(rows)}}};
}

Result cmd_check_fulton(const Options& o) {
    const auto r = check_fulton(Hypersurface::parse(poly_text(o), 2, 0), bound(o), budget(o));
    return {jsonio::report(r), r.pass};
}

Result cmd_check_main_theorem(const Options& o) {
    const Integer B = bound(o);
    MainTheoremCheck m;
    if (o.example == "cylinder") {
        const auto c = gen_cylinder(static_cast<unsigned>(o.delta), o.n >= 1 ? static_cast<std::size_t>(o.n) : 3);
        const auto fam = cylinder_tree_family(c, B);
        m = check_main_theorem(c.X, B, fam.family, fam.z_data, fam.oracle, budget(o));
    } else if (o.example == "deformation") {
        const std::string text = o.f.empty() ? "x0^2 + x1^2 - x2^2" : o.f;
        const auto d = gen_deformation(static_cast<unsigned>(o.delta),
                                       parse_poly(text, o.n >= 1 ? o.n + 1 : std::max<std::size_t>(3, inferred_vars(text))));
        const auto fam = deformation_tree_family(d, B, budget(o));
        m = check_main_theorem(d.X, B, fam.family, fam.z_data, fam.oracle, budget(o));
    } else if (!o.example.empty()) {
        throw UsageError("--example must be cylinder or deformation");
    } else if (!o.family_file.empty()) {
        const std::string text = poly_text(o);
        const Hypersurface X = Hypersurface::parse(text, projective_vars(o, text) - 1, sing_dim(o));
        if (!X.declared_sing_dim) throw UsageError("--sing-dim is required with --family");
        if (o.z_data_file.empty()) throw UsageError("--z-data is required with --family");
        ZData z;
        for (const auto& [k, v] : json::parse(read_file(o.z_data_file)).items())
            z[k] = {Integer(v.at("N").is_string() ? v.at("N").get<std::string>() : std::to_string(v.at("N").get<long>())),
                    v.value("deg", 1u)};
        m = check_main_theorem(X, B, family_from_json(read_file(o.family_file)), z,
                               ContainmentOracle(X.f.variable_count()), budget(o));
    } else {
        const Hypersurface X = Hypersurface::parse(poly_text(o), 2, sing_dim(o).value_or(0));
        m = check_main_theorem_curve(X, B, o.seed, budget(o));
    }
    return {jsonio::main_theorem(m), m.report.pass};
}

Result cmd_check_corollary(const Options& o) {
    std::vector<CorpusMember> corpus;
    if (o.example.empty() || o.example == "plane") {
        for (auto& X : plane_curve_corpus(static_cast<std::size_t>(o.count), static_cast<unsigned>(o.deg_min),
                                          static_cast<unsigned>(o.deg_max), o.seed))
            corpus.push_back({std::move(X), 0, "plane"});
    } else if (o.example == "cylinder") {
        std::vector<long> ds = o.deltas.empty() ? std::vector<long>{2, 3, 4} : o.deltas;
        for (long d : ds) {
            auto c = gen_cylinder(static_cast<unsigned>(d), o.n >= 1 ? static_cast<std::size_t>(o.n) : 3);
            corpus.push_back({c.X, c.sing_dim, "cylinder delta=" + std::to_string(d)});
        }
    } else {
        throw UsageError("--example must be plane or cylinder");
    }
    std::vector<long> Bs = o.B_list.empty() ? std::vector<long>{5, 10, 20} : o.B_list;
    const auto r = check_corollary(corpus, to_integers(Bs), o.bound > 0 ? std::optional<double>(o.bound) : std::nullopt,
                                   budget(o));
    return {jsonio::corollary(r), r.pass};
}

Result cmd_gen_cylinder(const Options& o) {
    const auto c = gen_cylinder(static_cast<unsigned>(o.delta), o.n >= 1 ? static_cast<std::size_t>(o.n) : 3);
    return {{{"poly", c.X.f.to_string()},
             {"n", c.X.ambient_n},
             {"delta", c.X.degree_delta},
             {"sing_dim", c.sing_dim},
             {"mu", c.mu},
             {"singular_locus", "x1 = x2 = 0"}}};
}

Result cmd_gen_deformation(const Options& o) {
    const std::string text = o.f.empty() ? "x0^2 + x1^2 - x2^2" : o.f;
    const std::size_t m = o.n >= 1 ? static_cast<std::size_t>(o.n) + 1 : std::max<std::size_t>(3, inferred_vars(text));
    const auto d = gen_deformation(static_cast<unsigned>(o.delta), parse_poly(text, m));
    json extra = json::array();
    for (const auto& p : d.extra_singular_points) extra.push_back(jsonio::point(p));
    return {{{"poly", d.X.f.to_string()},
             {"n", d.X.ambient_n},
             {"delta", d.delta},
             {"sing_dim", d.sing_dim},
             {"singular_locus", "x0 = x1 = 0, f(x2..) = 0"},
             {"extra_singular_points", std::move(extra)}}};
}

Result cmd_run(const Options& o) {
    if (o.config.empty()) throw UsageError("--config is required");
    json reports = json::parse(run_experiments(read_file(o.config), o.stable));
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.value("pass", false) && !r.contains("error");
    return {{{"reports", std::move(reports)}}, pass};
}

// Streams one JSON line (or CSV row) per point.
int cmd_enumerate(const Options& o, std::ostream& out) {
    if (o.n < 1 && o.poly.empty() && o.poly_file.empty()) throw UsageError("-n must be at least 1");
    const Integer B = bound(o);
    std::optional<IntegerEvaluator> filter;
    std::size_t n = static_cast<std::size_t>(std::max(o.n, 1L));
    if (!o.poly.empty() || !o.poly_file.empty()) {
        const std::string text = poly_text(o);
        const Polynomial f = parse_poly(text, projective_vars(o, text));
        n = f.variable_count() - 1;
        filter.emplace(f, o.B);
    }
    std::uint64_t count = 0;
    const bool csv = o.format == "csv";
    for_each_projective_point(n, o.B, [&](std::span<const std::int64_t> c) {
        if (filter && !filter->vanishes_at(c)) return;
        ++count;
        if (csv) {
            for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
            out << '\n';
        } else {
            json a = json::array();
            for (auto v : c) a.push_back(std::to_string(v));
            out << json{{"point", std::move(a)}}.dump() << '\n';
        }
    }, std::nullopt, budget(o));
    if (!csv) out << json{{"count", count}, {"n", n}, {"B", B.get_si()}}.dump() << '\n';
    return kExitOk;
}

void emit(const Result& r, const Options& o, std::ostream& out) {
    if (o.format == "json") {
        out << r.body.dump() << '\n';
        return;
    }
    if (o.format == "csv") {
        const json* rows = nullptr;
        for (const char* k : {"rows", "points", "contributors", "entries"})
            if (r.body.contains(k) && r.body.at(k).is_array()) {
                rows = &r.body.at(k);
                break;
            }
        if (rows && !rows->empty() && rows->front().is_object()) {
            bool first = true;
            for (const auto& row : *rows) {
                if (first) {
                    bool f2 = true;
                    for (const auto& [k, v] : row.items()) out << (f2 ? "" : ",") << k, f2 = false;
                    out << '\n';
                    first = false;
                }
                bool f2 = true;
                for (const auto& [k, v] : row.items()) {
                    out << (f2 ? "" : ",");
                    f2 = false;
                    if (v.is_array()) {
                        std::string s;
                        for (const auto& x : v) s += (s.empty() ? "" : ":") + (x.is_string() ? x.get<std::string>() : x.dump());
                        out << s;
                    } else {
                        out << (v.is_string() ? v.get<std::string>() : v.dump());
                    }
                }
                out << '\n';
            }
            return;
        }
        if (rows) {
            for (const auto& row : *rows) {
                bool f2 = true;
                for (const auto& x : row) {
                    out << (f2 ? "" : ",") << (x.is_string() ? x.get<std::string>() : x.dump());
                    f2 = false;
                }
                out << '\n';
            }
            return;
        }
    }
    // text, and csv without a table: one key per line
    for (const auto& [k, v] : r.body.items())
        out << k << (o.format == "csv" ? "," : ": ") << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Height-bounded rational points and multiplicity sums on hypersurfaces", "multcount"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--budget", o.budget, "candidate budget (also MULTCOUNT_BUDGET)");
        s->add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_flag("--stable", o.stable, "omit timing fields");
    };
    auto with_n = [&](CLI::App* s) { s->add_option("-n", o.n, "ambient dimension (variable count for affine input)"); };
    auto with_B = [&](CLI::App* s) { s->add_option("-B,--bound", o.B, "height bound"); };
    auto with_poly = [&](CLI::App* s) {
        s->add_option("--poly", o.poly, "polynomial in x0, x1, ...");
        s->add_option("--poly-file", o.poly_file, "file holding the polynomial");
    };

    using Handler = std::function<Result(const Options&)>;
    std::vector<std::pair<CLI::App*, Handler>> cmds;
    auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        cmds.emplace_back(s, std::move(h));
        return s;
    };

    auto* s = add("count-projective", "count rational points of P^n of height <= B", cmd_count_projective);
    with_n(s), with_B(s), s->add_option("--method", o.method, "moebius | brute");
    CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "stream rational points of height <= B");
    common(enumerate_cmd), with_n(enumerate_cmd), with_B(enumerate_cmd), with_poly(enumerate_cmd);
    s = add("points-on", "rational points of V(f) of height <= B", cmd_points_on);
    with_n(s), with_B(s), with_poly(s);
    s = add("slice-count", "integer zeros of an affine polynomial in [-B, B]^k", cmd_slice_count);
    with_n(s), with_B(s), with_poly(s), s->add_option("--method", o.method, "slicing | box | both");
    s = add("cone-count", "integer points of the affine cone in [-B, B]^{n+1}", cmd_cone_count);
    with_n(s), with_B(s), with_poly(s);
    s = add("multiplicity", "multiplicity of V(f) at a point", cmd_multiplicity);
    with_poly(s), s->add_option("--point", o.point, "projective point, e.g. 0,0,1");
    s = add("singular-points", "rational singular points of height <= B", cmd_singular_points);
    with_n(s), with_B(s), with_poly(s);
    s = add("mult-sum", "sum of mu (mu - 1)^e over rational points of height <= B", cmd_mult_sum);
    with_n(s), with_B(s), with_poly(s), s->add_option("--exponent", o.exponent, "exponent e");
    s->add_option("--sing-dim", o.sing_dim, "declared singular-locus dimension");
    s = add("intersect", "intersection number of affine plane curves at a point", cmd_intersect);
    s->add_option("--f", o.f), s->add_option("--g", o.g), s->add_option("--point", o.point, "a,b (rationals allowed)");
    s = add("bezout-check", "rational part of the Bezout sum of two plane curves", cmd_bezout);
    s->add_option("--F", o.F), s->add_option("--G", o.G), with_B(s);
    s = add("tree-build", "root layer of the intersection trees of a plane curve", cmd_tree_build);
    with_B(s), with_poly(s);
    s = add("tree-verify", "classes, weights and inequalities of a tree family file", cmd_tree_verify);
    with_n(s), s->add_option("--family", o.family_file, "tree family JSON");
    s->add_option("--scheme", o.scheme, "scheme key for the weight inequality");
    s->add_option("--mu", o.mu, "multiplicities mu_M(X_i)")->delimiter(',');
    s->add_option("--depth", o.depth, "depth s for the degree bound");
    s->add_option("--degrees", o.degrees, "deg X_i")->delimiter(',');
    s->add_option("--mu-table", o.mu_table_file, "JSON {key: [mu...]} for the degree bound");
    s = add("schanuel", "N(P^n;B) / B^{n+1} against 2^n / zeta(n+1)", cmd_schanuel);
    with_n(s), with_B(s), s->add_option("--B-list", o.B_list)->delimiter(',');
    s = add("check-fulton", "sum mu (mu - 1) <= delta (delta - 1) for a plane curve", cmd_check_fulton);
    with_B(s), with_poly(s);
    s = add("check-main-theorem", "multiplicity sum against the tree bound", cmd_check_main_theorem);
    with_n(s), with_B(s), with_poly(s);
    s->add_option("--example", o.example, "cylinder | deformation");
    s->add_option("--delta", o.delta), s->add_option("--f", o.f, "smooth form for the deformation example");
    s->add_option("--sing-dim", o.sing_dim), s->add_option("--family", o.family_file);
    s->add_option("--z-data", o.z_data_file, "JSON {key: {N, deg}}");
    s = add("check-corollary", "bounded-ratio report over a corpus", cmd_check_corollary);
    with_n(s), s->add_option("--example", o.example, "plane | cylinder");
    s->add_option("--deltas", o.deltas)->delimiter(','), s->add_option("--B-list", o.B_list)->delimiter(',');
    s->add_option("--count", o.count), s->add_option("--deg-min", o.deg_min), s->add_option("--deg-max", o.deg_max);
    s->add_option("--bound", o.bound, "ratio bound (default 3^{n+1})");
    s = add("gen-cylinder", "cylinder over delta concurrent lines", cmd_gen_cylinder);
    with_n(s), s->add_option("--delta", o.delta);
    s = add("gen-deformation", "Y^delta + X f(T)", cmd_gen_deformation);
    with_n(s), s->add_option("--delta", o.delta), s->add_option("--f", o.f);
    s = add("run", "run a JSON experiment config", cmd_run);
    s->add_option("--config", o.config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (enumerate_cmd->parsed()) return cmd_enumerate(o, out);
        for (auto& [sub, handler] : cmds) {
            if (!sub->parsed()) continue;
            const auto t0 = std::chrono::steady_clock::now();
            Result r = handler(o);
            if (!o.stable && r.body.is_object())
                r.body["elapsed_ms"] =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            emit(r, o, out);
            return r.pass ? kExitOk : kExitViolation;
        }
    } catch (const BudgetExceeded& e) {
        err << json{{"error", "budget exceeded"}, {"detail", e.what()}}.dump() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << json{{"error", "parse error"}, {"detail", e.what()}, {"position", e.position()}}.dump() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << json{{"error", "invalid input"}, {"detail", e.what()}}.dump() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace multcount
