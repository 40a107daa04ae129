#include "multcount/enumerate.hpp"

#include "multcount/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>

namespace multcount {

std::uint64_t default_budget() {
    if (const char* env = std::getenv("MULTCOUNT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 2'000'000'000ULL;
}

bool PointSet::contains(const ProjPoint& p) const { return std::binary_search(points.begin(), points.end(), p); }

std::string to_string(CountMethod m) {
    switch (m) {
        case CountMethod::brute: return "brute";
        case CountMethod::moebius: return "moebius";
        case CountMethod::slicing: return "slicing";
    }
    return "unknown";
}

namespace {

std::int64_t checked_bound(const Integer& B, std::size_t width, std::uint64_t budget, bool projective) {
    if (B < 0) throw DomainError("height bound must be non-negative");
    Integer side = 2 * B + 1;
    Integer candidates;
    mpz_pow_ui(candidates.get_mpz_t(), side.get_mpz_t(), width);
    if (projective) candidates = (candidates - 1) / 2;
    if (candidates > Integer(std::to_string(budget)))
        throw BudgetExceeded("enumeration would visit " + candidates.get_str() + " candidate tuples, budget is " +
                             std::to_string(budget));
    return B.get_si();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

// Canonical-first generation. prefix_gcd == 0 means every coordinate so far is zero.
template <class Visit>
void generate(std::vector<std::int64_t>& c, std::size_t pos, std::int64_t prefix_gcd, std::int64_t B,
              std::int64_t lo0, std::int64_t hi0, Visit& visit) {
    const std::size_t last = c.size() - 1;
    std::int64_t lo = prefix_gcd == 0 ? 0 : -B;
    std::int64_t hi = B;
    if (pos == 0) {
        lo = std::max(lo, lo0);
        hi = std::min(hi, hi0);
    }
    if (pos == last && prefix_gcd == 0) lo = std::max<std::int64_t>(lo, 1);
    if (pos == last) {
        if (prefix_gcd == 0) {
            // Only [0:...:0:1] is primitive.
            if (lo <= 1 && 1 <= hi) {
                c[pos] = 1;
                visit(c);
            }
            return;
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            if (prefix_gcd != 1 && gcd64(prefix_gcd, v) != 1) continue;
            c[pos] = v;
            visit(c);
        }
        return;
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
        c[pos] = v;
        const std::int64_t g = prefix_gcd == 1 ? 1 : gcd64(prefix_gcd, v);
        generate(c, pos + 1, g, B, lo0, hi0, visit);
    }
}

template <class Visit>
void generate_all(std::size_t n, std::int64_t B, std::optional<LeadRange> lead, Visit&& visit) {
    if (n < 1) throw DomainError("projective dimension must be at least 1");
    if (B < 1) throw DomainError("height bound must be at least 1");
    std::vector<std::int64_t> c(n + 1, 0);
    const std::int64_t lo0 = lead ? lead->lo : 0;
    const std::int64_t hi0 = lead ? lead->hi : B;
    generate(c, 0, 0, B, lo0, hi0, visit);
}

std::vector<LeadRange> split_leads(std::int64_t B, std::size_t parts) {
    parts = std::max<std::size_t>(1, std::min<std::size_t>(parts, static_cast<std::size_t>(B + 1)));
    std::vector<LeadRange> out;
    const std::int64_t total = B + 1;
    std::int64_t start = 0;
    for (std::size_t i = 0; i < parts; ++i) {
        std::int64_t len = total / static_cast<std::int64_t>(parts) + (static_cast<std::int64_t>(i) < total % static_cast<std::int64_t>(parts) ? 1 : 0);
        out.push_back({start, start + len - 1});
        start += len;
    }
    return out;
}

Integer eval_univariate(const std::vector<Integer>& coeffs, const Integer& x) {
    Integer acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

void for_each_projective_point(std::size_t n, std::int64_t B,
                               const std::function<void(std::span<const std::int64_t>)>& visit,
                               std::optional<LeadRange> lead, std::uint64_t budget) {
    checked_bound(Integer(static_cast<long>(B)), n + 1, budget, true);
    generate_all(n, B, lead, [&](const std::vector<std::int64_t>& c) { visit(std::span<const std::int64_t>(c)); });
}

PointSet enumerate_projective(std::size_t n, const Integer& B, std::uint64_t budget, std::optional<LeadRange> lead) {
    const std::int64_t b = checked_bound(B, n + 1, budget, true);
    PointSet out{{}, n, B};
    generate_all(n, b, lead, [&](const std::vector<std::int64_t>& c) {
        out.points.push_back(ProjPoint::canonicalize(std::span<const std::int64_t>(c)));
    });
    return out;
}

CountResult count_projective_brute(std::size_t n, const Integer& B, std::uint64_t budget) {
    const std::int64_t b = checked_bound(B, n + 1, budget, true);
    std::uint64_t count = 0;
    generate_all(n, b, std::nullopt, [&](const std::vector<std::int64_t>&) { ++count; });
    return {Integer(std::to_string(count)), CountMethod::brute};
}

std::vector<int> moebius_table(std::size_t limit) {
    std::vector<int> mu(limit + 1, 1);
    std::vector<bool> composite(limit + 1, false);
    mu[0] = 0;
    std::vector<std::size_t> primes;
    for (std::size_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::size_t p : primes) {
            if (p * i > limit) break;
            composite[p * i] = true;
            if (i % p == 0) {
                mu[p * i] = 0;
                break;
            }
            mu[p * i] = -mu[i];
        }
    }
    return mu;
}

CountResult count_projective_moebius(std::size_t n, const Integer& B) {
    if (n < 1) throw DomainError("projective dimension must be at least 1");
    if (B < 1) throw DomainError("height bound must be at least 1");
    if (B > 100'000'000) throw BudgetExceeded("Moebius counter supports B <= 1e8");
    const auto b = static_cast<std::size_t>(B.get_ui());
    const auto mu = moebius_table(b);
    Integer total = 0, term;
    for (std::size_t d = 1; d <= b; ++d) {
        if (mu[d] == 0) continue;
        Integer side = 2 * Integer(static_cast<unsigned long>(b / d)) + 1;
        mpz_pow_ui(term.get_mpz_t(), side.get_mpz_t(), n + 1);
        term -= 1;
        if (mu[d] > 0) total += term; else total -= term;
    }
    return {total / 2, CountMethod::moebius};
}

PointSet points_on_hypersurface(const Polynomial& f, const Integer& B, std::uint64_t budget,
                                std::optional<LeadRange> lead) {
    if (f.is_zero()) throw DomainError("points_on_hypersurface needs a nonzero polynomial");
    if (!f.is_homogeneous()) throw DomainError("points_on_hypersurface needs a homogeneous polynomial");
    if (f.variable_count() < 2) throw DomainError("projective hypersurface needs at least two variables");
    const std::size_t n = f.variable_count() - 1;
    const std::int64_t b = checked_bound(B, n + 1, budget, true);
    IntegerEvaluator eval(f, b);
    PointSet out{{}, n, B};
    generate_all(n, b, lead, [&](const std::vector<std::int64_t>& c) {
        if (eval.vanishes_at(c)) out.points.push_back(ProjPoint::canonicalize(std::span<const std::int64_t>(c)));
    });
    return out;
}

PointSet merge_point_sets(std::span<const PointSet> parts) {
    PointSet out;
    if (parts.empty()) return out;
    out.ambient_n = parts.front().ambient_n;
    out.bound_B = parts.front().bound_B;
    for (const auto& p : parts) {
        std::vector<ProjPoint> merged;
        merged.reserve(out.points.size() + p.points.size());
        std::merge(out.points.begin(), out.points.end(), p.points.begin(), p.points.end(), std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        out.points = std::move(merged);
    }
    return out;
}

PointSet points_on_hypersurface_partitioned(const Polynomial& f, const Integer& B, std::size_t parts,
                                            std::uint64_t budget) {
    const std::int64_t b = checked_bound(B, f.variable_count(), budget, true);
    std::vector<std::future<PointSet>> jobs;
    for (const auto& range : split_leads(b, parts))
        jobs.push_back(std::async(std::launch::async, [&f, &B, budget, range] {
            return points_on_hypersurface(f, B, budget, range);
        }));
    std::vector<PointSet> results;
    for (auto& j : jobs) results.push_back(j.get());
    return merge_point_sets(results);
}

PointSet enumerate_projective_partitioned(std::size_t n, const Integer& B, std::size_t parts, std::uint64_t budget) {
    const std::int64_t b = checked_bound(B, n + 1, budget, true);
    std::vector<std::future<PointSet>> jobs;
    for (const auto& range : split_leads(b, parts))
        jobs.push_back(std::async(std::launch::async, [n, &B, budget, range] {
            return enumerate_projective(n, B, budget, range);
        }));
    std::vector<PointSet> results;
    for (auto& j : jobs) results.push_back(j.get());
    return merge_point_sets(results);
}

CountResult count_affine_box(const Polynomial& f, const Integer& B, std::uint64_t budget) {
    if (f.is_zero()) throw DomainError("count_affine_box needs a nonzero polynomial");
    const std::size_t m = f.variable_count();
    const std::int64_t b = checked_bound(B, m, budget, false);
    IntegerEvaluator eval(f, b);
    std::vector<std::int64_t> x(m, -b);
    std::uint64_t count = 0;
    while (true) {
        if (eval.vanishes_at(x)) ++count;
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (x[i] < b) {
                ++x[i];
                break;
            }
            x[i] = -b;
            if (i == 0) return {Integer(std::to_string(count)), CountMethod::brute};
        }
    }
}

std::vector<Integer> integer_roots_in_box(const Polynomial& f, const Integer& B) {
    if (f.variable_count() != 1) throw DomainError("integer_roots_in_box needs a univariate polynomial");
    if (f.is_zero()) throw DomainError("integer_roots_in_box of the zero polynomial");
    if (f.is_constant()) return {};
    Polynomial g = normalize(f);
    std::vector<Integer> coeffs(static_cast<std::size_t>(g.degree()) + 1, 0);
    for (const auto& [mono, c] : g.terms()) coeffs[mono[0]] = c.get_num();
    std::vector<Integer> roots;
    // Strip the x^k factor: 0 is a root iff k > 0, and the rest has a nonzero constant term.
    std::size_t k = 0;
    while (coeffs[k] == 0) ++k;
    if (k > 0) roots.push_back(0);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(k));
    if (coeffs.size() > 1) {
        const Integer trailing = abs(coeffs.front());
        const Integer limit = std::min(trailing, B);
        for (Integer d = 1; d <= limit; ++d) {
            if (!mpz_divisible_p(trailing.get_mpz_t(), d.get_mpz_t())) continue;
            if (eval_univariate(coeffs, d) == 0) roots.push_back(d);
            Integer neg = -d;
            if (eval_univariate(coeffs, neg) == 0) roots.push_back(neg);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

struct SliceState {
    std::uint64_t budget;
    bool fell_back = false;
};

// Univariate content (in Q[x_var]) of f's coefficients over the remaining variables.
Polynomial slice_content(const Polynomial& f, std::size_t var) {
    std::map<Monomial, Polynomial> groups;
    for (const auto& [m, c] : f.terms()) {
        Monomial rest = m;
        rest[var] = 0;
        Monomial u(1);
        u[0] = m[var];
        auto [it, inserted] = groups.try_emplace(rest, Polynomial(1));
        it->second.add_term(u, c);
    }
    Polynomial content(1);
    for (const auto& [rest, coeff] : groups) {
        content = content.is_zero() ? normalize(coeff) : gcd_poly(content, coeff);
        if (content.is_constant()) break;
    }
    return content;
}

Integer slice_rec(const Polynomial& f, const Integer& B, SliceState& st) {
    if (f.is_zero()) throw DomainError("slice_count reached an identically zero slice");
    if (f.is_constant()) return 0;
    const std::size_t m = f.variable_count();
    if (m == 1) return Integer(static_cast<unsigned long>(integer_roots_in_box(f, B).size()));

    // A variable that does not occur multiplies the count by the box width.
    for (std::size_t v = 0; v < m; ++v)
        if (!f.involves(v)) return (2 * B + 1) * slice_rec(f.drop_variable(v), B, st);

    std::optional<std::size_t> chosen;
    for (std::size_t v = 0; v < m && !chosen; ++v)
        if (slice_content(f, v).is_constant()) chosen = v;
    for (std::size_t v = 0; v < m && !chosen; ++v)
        if (integer_roots_in_box(slice_content(f, v), B).empty()) chosen = v;
    if (!chosen) {
        st.fell_back = true;
        return count_affine_box(f, B, st.budget).count;
    }
    Integer total = 0;
    for (Integer a = -B; a <= B; ++a) {
        Polynomial slice = f.substitute(*chosen, Rational(a)).drop_variable(*chosen);
        total += slice_rec(slice, B, st);
    }
    return total;
}

}  // namespace

CountResult slice_count(const Polynomial& f, const Integer& B, std::uint64_t budget) {
    if (f.is_zero()) throw DomainError("slice_count needs a nonzero polynomial");
    checked_bound(B, 1, budget, false);
    SliceState st{budget};
    Integer c = slice_rec(f, B, st);
    return {c, st.fell_back ? CountMethod::brute : CountMethod::slicing};
}

CountResult affine_cone_count(const Polynomial& f, const Integer& B, std::uint64_t budget) {
    if (!f.is_homogeneous()) throw DomainError("affine_cone_count needs a homogeneous polynomial");
    return count_affine_box(f, B, budget);
}

}  // namespace multcount
