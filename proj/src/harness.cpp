#include "multcount/harness.hpp"

#include "multcount/errors.hpp"
#include "multcount/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <set>

namespace multcount {

double zeta(unsigned s, double tol) {
    if (s < 2) throw DomainError("zeta needs s >= 2");
    if (!(tol > 0)) throw DomainError("zeta tolerance must be positive");
    // The tail sum_{k>K} k^-s lies between the integrals from K+1 and from K;
    // taking the midpoint leaves an error of at most K^-s / 2.
    const double sd = s;
    const auto K = static_cast<std::uint64_t>(std::ceil(std::pow(0.5 / tol, 1.0 / sd))) + 1;
    double sum = 0;
    for (std::uint64_t k = K; k >= 1; --k) sum += std::pow(static_cast<double>(k), -sd);
    const double Kd = static_cast<double>(K);
    const double lo = std::pow(Kd + 1, 1 - sd) / (sd - 1);
    const double hi = std::pow(Kd, 1 - sd) / (sd - 1);
    return sum + 0.5 * (lo + hi);
}

AsymptoticsReport schanuel_experiment(std::size_t n, const Integer& B) {
    AsymptoticsReport r;
    r.n = n;
    r.B = B;
    r.count = count_projective_moebius(n, B).count;
    mpq_class ratio(r.count);
    Integer denom;
    mpz_pow_ui(denom.get_mpz_t(), B.get_mpz_t(), n + 1);
    ratio /= denom;
    r.ratio = ratio.get_d();
    r.limit = std::ldexp(1.0, static_cast<int>(n)) / zeta(static_cast<unsigned>(n + 1));
    r.rel_err = std::abs(r.ratio - r.limit) / r.limit;
    return r;
}

std::vector<BoundReport> check_projective_bound(std::size_t n_max, std::int64_t B_max) {
    std::vector<BoundReport> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::int64_t b = 1; b <= B_max; ++b) {
            const Integer B(static_cast<long>(b));
            Integer rhs;
            mpz_pow_ui(rhs.get_mpz_t(), Integer(3 * b).get_mpz_t(), n + 1);
            out.push_back(BoundReport::check("projective_bound", mpq_class(count_projective_moebius(n, B).count),
                                             mpq_class(rhs), Relation::le)
                              .with("n", std::to_string(n))
                              .with("B", std::to_string(b)));
        }
    }
    return out;
}

BoundReport check_fulton(const Hypersurface& X, const Integer& B, std::uint64_t budget) {
    if (X.ambient_n != 2) throw DomainError("the Fulton bound is for plane curves");
    const MultSum m = mult_sum(X, B, 1, std::nullopt, budget);
    const Integer rhs = Integer(X.degree_delta) * (X.degree_delta - 1);
    return BoundReport::check("fulton", mpq_class(m.sum), mpq_class(rhs), Relation::le)
        .with("poly", X.f.to_string())
        .with("B", B.get_str())
        .with("singular_points", std::to_string(m.contributors.size()));
}

// ---------------------------------------------------------------------------
// Example families

bool CylinderFamily::is_expected_singular(const ProjPoint& p) const { return p[1] == 0 && p[2] == 0; }

namespace {

std::vector<std::pair<long, long>> cylinder_lines(unsigned delta) {
    if (delta == 2) return {{1, 0}, {1, -1}};
    std::vector<std::pair<long, long>> lines{{0, 1}};
    for (unsigned i = 0; i + 1 < delta; ++i) lines.emplace_back(1, -static_cast<long>(i));
    return lines;
}

Polynomial lines_product(const std::vector<std::pair<long, long>>& lines, std::size_t nvars) {
    Polynomial f = Polynomial::constant(nvars, 1);
    for (auto [a, b] : lines)
        f = f * (Rational(a) * Polynomial::variable(nvars, 1) + Rational(b) * Polynomial::variable(nvars, 2));
    return f;
}

}  // namespace

CylinderFamily gen_cylinder(unsigned delta, std::size_t n) {
    if (delta < 2) throw DomainError("cylinder family needs delta >= 2");
    if (n < 3) throw DomainError("cylinder family needs n >= 3");
    CylinderFamily c;
    c.lines = cylinder_lines(delta);
    c.sing_dim = static_cast<int>(n) - 2;
    c.mu = delta;
    c.X = Hypersurface::make(lines_product(c.lines, n + 1), c.sing_dim);
    return c;
}

bool DeformationFamily::on_expected_locus(const ProjPoint& p) const {
    if (p[0] != 0 || p[1] != 0) return false;
    std::vector<Integer> t(p.coords().begin() + 2, p.coords().end());
    return evaluate(f_smooth, std::span<const Integer>(t)) == 0;
}

namespace {

// f(T_0..T_m) re-embedded with T_i sent to variable offset + i of nvars.
Polynomial shift_variables(const Polynomial& f, std::size_t offset, std::size_t nvars) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < f.variable_count(); ++i) images.push_back(Polynomial::variable(nvars, offset + i));
    return f.compose(images);
}

}  // namespace

DeformationFamily gen_deformation(unsigned delta, const Polynomial& f_smooth) {
    if (delta < 3) throw DomainError("deformation family needs delta >= 3");
    const std::size_t m = f_smooth.variable_count();
    if (m < 3) throw DomainError("the smooth hypersurface needs at least three variables");
    if (!f_smooth.is_homogeneous() || f_smooth.degree() != static_cast<int>(delta) - 1)
        throw DomainError("f must be homogeneous of degree delta - 1");

    std::vector<IntegerEvaluator> partials;
    for (std::size_t i = 0; i < m; ++i) partials.emplace_back(partial_derivative(f_smooth, i), 10);
    for (const auto& p : points_on_hypersurface(f_smooth, 10).points) {
        std::vector<std::int64_t> c;
        for (const auto& v : p.coords()) c.push_back(v.get_si());
        if (std::all_of(partials.begin(), partials.end(), [&](const IntegerEvaluator& e) { return e.vanishes_at(c); }))
            throw DomainError("f is singular at " + p.to_string());
    }

    DeformationFamily d;
    d.delta = delta;
    d.f_smooth = f_smooth;
    d.sing_dim = static_cast<int>(m) - 2;
    const std::size_t nv = m + 2;
    Polynomial F = Polynomial::variable(nv, 1).pow(delta) +
                   Polynomial::variable(nv, 0) * shift_variables(f_smooth, 2, nv);
    d.X = Hypersurface::make(std::move(F), d.sing_dim);
    std::vector<Integer> vertex(nv, 0);
    vertex[0] = 1;
    d.extra_singular_points.push_back(ProjPoint::canonicalize(std::span<const Integer>(vertex)));
    return d;
}

// ---------------------------------------------------------------------------
// Main theorem and corollary

MainTheoremCheck check_main_theorem(const Hypersurface& X, const Integer& B, const TreeFamily& family,
                                    const ZData& z_data, const ContainmentOracle& oracle, std::uint64_t budget) {
    if (!X.declared_sing_dim) throw DomainError("the singular-locus dimension must be declared");
    const int s = *X.declared_sing_dim;
    const int n = static_cast<int>(X.ambient_n);
    if (s < -1 || s >= n) throw DomainError("declared singular-locus dimension out of range");
    MainTheoremCheck out;
    out.lhs = mult_sum(X, B, static_cast<unsigned>(n - s - 1), std::nullopt, budget);

    const unsigned delta = X.degree_delta;
    mpq_class rhs = 0;
    for (int t = 0; t <= s; ++t) {
        const ZsClass zt = zs_class(family, static_cast<std::size_t>(t), oracle);
        out.warnings.insert(out.warnings.end(), zt.warnings.begin(), zt.warnings.end());
        std::optional<mpq_class> best;
        for (auto id : zt.members) {
            const auto& key = family.vertex(id).data.scheme_key;
            auto it = z_data.find(key);
            if (it == z_data.end()) throw DomainError("no point count supplied for " + key);
            mpq_class v(it->second.N, Integer(it->second.deg));
            v.canonicalize();
            if (!best || v > *best) best = v;
        }
        Integer factor;
        mpz_ui_pow_ui(factor.get_mpz_t(), delta - 1, static_cast<unsigned long>(n - s + t - 1));
        factor *= delta;
        const mpq_class term = best ? *best * factor : mpq_class(0);
        out.terms.push_back(term);
        rhs += term;
    }
    out.report = BoundReport::check("main_theorem", mpq_class(out.lhs.sum), rhs, Relation::le)
                     .with("n", std::to_string(n))
                     .with("delta", std::to_string(delta))
                     .with("s", std::to_string(s))
                     .with("B", B.get_str());
    return out;
}

MainTheoremCheck check_main_theorem_curve(const Hypersurface& X, const Integer& B, std::uint64_t seed,
                                          std::uint64_t budget) {
    Hypersurface Y = X;
    if (!Y.declared_sing_dim) Y.declared_sing_dim = 0;
    const CurveTree tree = build_curve_tree(Y, B, seed, budget);
    ZData z;
    for (const auto& p : tree.roots) z["pt:" + p.to_string()] = {1, 1};
    auto out = check_main_theorem(Y, B, tree.family, z, ContainmentOracle(3), budget);
    if (tree.uncovered) out.warnings.push_back("part of X n V(g) is not rational of height <= B");
    out.report.with("g", tree.g.to_string());
    return out;
}

CuratedFamily cylinder_tree_family(const CylinderFamily& c, const Integer& B) {
    const std::size_t nv = c.X.f.variable_count();
    const Hypersurface plane = Hypersurface::make(lines_product(c.lines, 3), 0);
    const RootDerivative root = construct_root_derivative(plane);
    const auto I = intersection_number(ProjPoint::canonicalize({1, 0, 0}), plane.f, root.g);

    CuratedFamily out{TreeFamily(), {}, ContainmentOracle(nv), {}};
    VertexData v{"V:x1;x2", static_cast<int>(nv) - 3, 1, std::nullopt};
    std::vector<IntersectionTree> trees;
    trees.push_back(TreeBuilder(v, 0).build());
    out.family = TreeFamily(c.mu, std::move(trees), {mpz_class(static_cast<unsigned long>(*I.value))});
    out.z_data["V:x1;x2"] = {count_projective_moebius(nv - 3, B).count, 1};
    out.notes.push_back("g = " + root.g.to_string());
    return out;
}

CuratedFamily deformation_tree_family(const DeformationFamily& d, const Integer& B, std::uint64_t budget) {
    const std::size_t nv = d.X.f.variable_count();
    const std::string key = "V:x1;" + shift_variables(d.f_smooth, 2, nv).to_string();
    CuratedFamily out{TreeFamily(), {}, ContainmentOracle(nv), {}};
    VertexData v{key, static_cast<int>(nv) - 3, d.delta - 1, std::nullopt};
    std::vector<IntersectionTree> trees;
    trees.push_back(TreeBuilder(v, 0).build());
    out.family = TreeFamily(d.delta, std::move(trees), {mpz_class(1)});
    // Points with Y = 0 and f(T) = 0 are points of V(f) in the coordinates (X, T).
    const Polynomial cone = shift_variables(d.f_smooth, 1, nv - 1);
    out.z_data[key] = {Integer(static_cast<unsigned long>(points_on_hypersurface(cone, B, budget).size())), d.delta - 1};
    out.notes.push_back("X n V(dF/dX) n V(dF/dY) has dimension " + std::to_string(nv - 3) +
                        ", one more than a proper intersection; the root weight 1 is a placeholder");
    return out;
}

CorollaryReport check_corollary(const std::vector<CorpusMember>& corpus, const std::vector<Integer>& B_list,
                                std::optional<double> bound, std::uint64_t budget) {
    CorollaryReport out;
    std::size_t n_max = 0;
    for (const auto& m : corpus) n_max = std::max(n_max, m.X.ambient_n);
    out.bound = bound.value_or(std::pow(3.0, static_cast<double>(n_max + 1)));
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& X = corpus[i].X;
        const int s = corpus[i].s;
        const int n = static_cast<int>(X.ambient_n);
        for (const auto& B : B_list) {
            CorollaryEntry e;
            e.index = i;
            e.B = B;
            e.lhs = mult_sum(X, B, static_cast<unsigned>(n - s - 1), std::nullopt, budget).sum;
            Integer a, b;
            mpz_ui_pow_ui(a.get_mpz_t(), X.degree_delta, static_cast<unsigned long>(n - s));
            const Integer base = std::max(Integer(X.degree_delta - 1), B);
            mpz_pow_ui(b.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(s + 1));
            e.denominator = a * b;
            e.ratio = mpq_class(e.lhs, e.denominator).get_d();
            out.sup_ratio = std::max(out.sup_ratio, e.ratio);
            out.entries.push_back(std::move(e));
        }
    }
    out.pass = out.sup_ratio <= out.bound;
    return out;
}

// ---------------------------------------------------------------------------
// Random generators

namespace {

void monomials_of_degree(std::size_t nvars, unsigned d, std::vector<std::uint32_t>& cur, std::size_t pos,
                         std::vector<Monomial>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = d;
        out.emplace_back(cur);
        return;
    }
    for (unsigned k = 0; k <= d; ++k) {
        cur[pos] = k;
        monomials_of_degree(nvars, d - k, cur, pos + 1, out);
    }
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> cur(nvars, 0);
    monomials_of_degree(nvars, d, cur, 0, out);
    return out;
}

ProjPoint random_point(std::mt19937_64& rng, int c) {
    std::uniform_int_distribution<int> u(-c, c);
    while (true) {
        std::int64_t raw[3] = {u(rng), u(rng), u(rng)};
        if (raw[0] || raw[1] || raw[2]) return ProjPoint::canonicalize(std::span<const std::int64_t>(raw));
    }
}

}  // namespace

Polynomial random_affine_poly(std::mt19937_64& rng, std::size_t nvars, unsigned degree, int c, double density) {
    std::uniform_int_distribution<int> coeff(-c, c);
    std::bernoulli_distribution keep(density);
    while (true) {
        Polynomial f(nvars);
        for (unsigned d = 0; d <= degree; ++d)
            for (const auto& m : monomials_of_degree(nvars, d))
                if (keep(rng)) f.add_term(m, coeff(rng));
        if (degree == 0 || !f.is_constant()) return f;
    }
}

Polynomial random_form(std::mt19937_64& rng, std::size_t nvars, unsigned degree, int c) {
    std::uniform_int_distribution<int> coeff(-c, c);
    const auto monos = monomials_of_degree(nvars, degree);
    while (true) {
        Polynomial f(nvars);
        for (const auto& m : monos) f.add_term(m, coeff(rng));
        if (!f.is_zero()) return f;
    }
}

Hypersurface plane_curve_with_point(std::mt19937_64& rng, unsigned degree, unsigned m, const ProjPoint& p) {
    if (m < 1 || m > degree) throw DomainError("multiplicity must be between 1 and the degree");
    const std::size_t k = p.first_nonzero();
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    const Polynomial xk = Polynomial::variable(3, k);
    // u and v vanish at p and are independent there.
    const Polynomial u = Rational(p[k]) * Polynomial::variable(3, i) - Rational(p[i]) * xk;
    const Polynomial v = Rational(p[k]) * Polynomial::variable(3, j) - Rational(p[j]) * xk;
    const Polynomial images[2] = {u, v};
    while (true) {
        Polynomial f(3);
        for (unsigned t = m; t <= degree; ++t)
            f += xk.pow(degree - t) * random_form(rng, 2, t).compose(images);
        if (f.is_zero()) continue;
        if (multiplicity_oracle(Hypersurface::make(f), p) != m) continue;  // h_m vanished after cancellation
        if (is_squarefree(f)) return Hypersurface::make(normalize(f), 0);
    }
}

Hypersurface random_plane_curve(std::mt19937_64& rng, unsigned degree) {
    if (degree < 1) throw DomainError("curve degree must be positive");
    std::uniform_int_distribution<int> strategy(0, 2);
    while (true) {
        Polynomial f(3);
        switch (strategy(rng)) {
            case 0: {
                f = Polynomial::constant(3, 1);
                unsigned left = degree;
                std::bernoulli_distribution conic(0.4);
                while (left > 0) {
                    const unsigned d = (left >= 2 && conic(rng)) ? 2 : 1;
                    f = f * random_form(rng, 3, d, 2);
                    left -= d;
                }
                break;
            }
            case 1: {
                std::uniform_int_distribution<unsigned> mult(1, degree);
                return plane_curve_with_point(rng, degree, mult(rng), random_point(rng, 3));
            }
            default: {
                f = random_form(rng, 3, degree, 3);
                const ProjPoint p = random_point(rng, 3);
                const std::size_t k = p.first_nonzero();
                Rational pk = p[k];
                Rational scale = 1;
                for (unsigned e = 0; e < degree; ++e) scale *= pk;
                f -= (evaluate(f, std::span<const Integer>(p.coords())) / scale) *
                     Polynomial::variable(3, k).pow(degree);
                break;
            }
        }
        if (f.degree() == static_cast<int>(degree) && is_squarefree(f)) return Hypersurface::make(normalize(f), 0);
    }
}

std::vector<Hypersurface> plane_curve_corpus(std::size_t count, unsigned deg_min, unsigned deg_max,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> deg(deg_min, deg_max);
    std::vector<Hypersurface> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_plane_curve(rng, deg(rng)));
    return out;
}

// ---------------------------------------------------------------------------
// Experiment driver

namespace {

using jsonio::json;

std::vector<Integer> integer_list(const json& j) {
    std::vector<Integer> out;
    for (const auto& v : j) out.emplace_back(v.get<long>());
    return out;
}

json run_one(const json& cfg, std::uint64_t seed, std::uint64_t budget) {
    const std::string exp = cfg.at("experiment").get<std::string>();
    const json params = cfg.value("params", json::object());
    json out;
    if (exp == "schanuel") {
        const auto n = params.value("n", 1u);
        std::vector<Integer> Bs = params.contains("B_list") ? integer_list(params.at("B_list"))
                                                            : std::vector<Integer>{Integer(params.value("B", 100L))};
        json rows = json::array();
        for (const auto& B : Bs) rows.push_back(jsonio::asymptotics(schanuel_experiment(n, B)));
        out["pass"] = true;
        out["rows"] = std::move(rows);
    } else if (exp == "projective_bound") {
        const auto reports = check_projective_bound(params.value("n_max", 3u), params.value("B_max", 100L));
        const auto violations = std::count_if(reports.begin(), reports.end(), [](auto& r) { return !r.pass; });
        out["pass"] = violations == 0;
        out["checked"] = reports.size();
        out["violations"] = violations;
    } else if (exp == "fulton") {
        const auto corpus = plane_curve_corpus(params.value("count", 200u), params.value("deg_min", 2u),
                                               params.value("deg_max", 6u), seed);
        const Integer B(params.value("B", 20L));
        std::size_t violations = 0;
        for (const auto& X : corpus) violations += check_fulton(X, B, budget).pass ? 0 : 1;
        out["pass"] = violations == 0;
        out["checked"] = corpus.size();
        out["violations"] = violations;
    } else if (exp == "cylinder") {
        const auto c = gen_cylinder(params.value("delta", 3u), params.value("n", 3u));
        const Integer B(params.value("B", 10L));
        const auto fam = cylinder_tree_family(c, B);
        const auto m = check_main_theorem(c.X, B, fam.family, fam.z_data, fam.oracle, budget);
        out["pass"] = m.report.pass;
        out["poly"] = c.X.f.to_string();
        out["main_theorem"] = jsonio::main_theorem(m);
    } else if (exp == "deformation") {
        const unsigned delta = params.value("delta", 3u);
        const auto f = parse_poly(params.value("f", std::string("x0^2 + x1^2 - x2^2")), params.value("vars", 3u));
        const auto d = gen_deformation(delta, f);
        const Integer B(params.value("B", 5L));
        const auto fam = deformation_tree_family(d, B, budget);
        const auto m = check_main_theorem(d.X, B, fam.family, fam.z_data, fam.oracle, budget);
        out["pass"] = m.report.pass;
        out["poly"] = d.X.f.to_string();
        out["main_theorem"] = jsonio::main_theorem(m);
    } else if (exp == "corollary_cylinder") {
        std::vector<CorpusMember> corpus;
        const auto n = params.value("n", 3u);
        for (const auto& d : params.value("deltas", json::array({2, 3, 4}))) {
            auto c = gen_cylinder(d.get<unsigned>(), n);
            corpus.push_back({c.X, c.sing_dim, "cylinder delta=" + std::to_string(d.get<unsigned>())});
        }
        const auto rep = check_corollary(corpus, integer_list(params.value("B_list", json::array({5, 10, 20}))),
                                         std::nullopt, budget);
        out["pass"] = rep.pass;
        out["corollary"] = jsonio::corollary(rep);
    } else if (exp == "corollary_plane") {
        std::vector<CorpusMember> corpus;
        for (auto& X : plane_curve_corpus(params.value("count", 50u), params.value("deg_min", 2u),
                                          params.value("deg_max", 6u), seed))
            corpus.push_back({std::move(X), 0, "plane"});
        const auto rep = check_corollary(corpus, integer_list(params.value("B_list", json::array({5, 10, 20}))),
                                         params.contains("bound") ? std::optional<double>(params.at("bound").get<double>())
                                                                  : std::nullopt,
                                         budget);
        out["pass"] = rep.pass;
        out["corollary"] = jsonio::corollary(rep);
    } else if (exp == "main_theorem_curve") {
        const auto X = Hypersurface::parse(params.at("poly").get<std::string>(), 2, 0);
        const auto m = check_main_theorem_curve(X, Integer(params.value("B", 10L)), seed, budget);
        out["pass"] = m.report.pass;
        out["main_theorem"] = jsonio::main_theorem(m);
    } else {
        throw DomainError("unknown experiment '" + exp + "'");
    }
    return out;
}

}  // namespace

std::string run_experiments(const std::string& config_json, bool stable) {
    json cfg;
    try {
        cfg = json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("experiment config: ") + e.what(), e.byte);
    }
    if (!cfg.is_array()) cfg = json::array({cfg});

    std::vector<std::future<json>> jobs;
    for (const auto& c : cfg) {
        jobs.push_back(std::async(std::launch::async, [c, stable] {
            const auto seed = c.value("seed", kDefaultSeed);
            const auto budget = c.value("budget", default_budget());
            const auto t0 = std::chrono::steady_clock::now();
            json r;
            r["experiment"] = c.at("experiment");
            r["seed"] = seed;
            try {
                r.update(run_one(c, seed, budget));
            } catch (const std::exception& e) {
                r["pass"] = false;
                r["error"] = e.what();
            }
            if (!stable)
                r["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return r;
        }));
    }
    json out = json::array();
    for (auto& j : jobs) out.push_back(j.get());
    return out.dump(2);
}

}  // namespace multcount
