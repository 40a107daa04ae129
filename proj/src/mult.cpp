#include "multcount/mult.hpp"

#include "multcount/errors.hpp"

#include <algorithm>

namespace multcount {

Hypersurface Hypersurface::make(Polynomial f, std::optional<int> sing_dim) {
    if (f.is_zero()) throw DomainError("hypersurface polynomial is zero");
    if (!f.is_homogeneous()) throw DomainError("hypersurface polynomial is not homogeneous");
    if (f.degree() < 1) throw DomainError("hypersurface polynomial must have positive degree");
    if (f.variable_count() < 2) throw DomainError("hypersurface needs at least two homogeneous variables");
    Hypersurface X;
    X.ambient_n = f.variable_count() - 1;
    X.degree_delta = static_cast<unsigned>(f.degree());
    X.declared_sing_dim = sing_dim;
    X.f = std::move(f);
    return X;
}

Hypersurface Hypersurface::parse(const std::string& text, std::size_t ambient_n, std::optional<int> sing_dim) {
    return make(parse_poly(text, ambient_n + 1), sing_dim);
}

namespace {

void require_on(const Hypersurface& X, const ProjPoint& xi) {
    if (xi.size() != X.f.variable_count()) throw DomainError("point dimension does not match hypersurface");
    if (evaluate(X.f, std::span<const Integer>(xi.coords())) != 0)
        throw DomainError("point " + xi.to_string() + " is not on the hypersurface");
}

// Visits multi-indices of the given order until visit returns true.
bool any_multi_index(std::vector<std::uint32_t>& idx, std::size_t pos, unsigned left,
                     const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
    if (pos + 1 == idx.size()) {
        idx[pos] = left;
        return visit(idx);
    }
    for (int k = static_cast<int>(left); k >= 0; --k) {
        idx[pos] = static_cast<std::uint32_t>(k);
        if (any_multi_index(idx, pos + 1, left - static_cast<unsigned>(k), visit)) return true;
    }
    return false;
}

std::vector<std::int64_t> small_coords(const ProjPoint& p) {
    std::vector<std::int64_t> c;
    c.reserve(p.size());
    for (const auto& v : p.coords()) {
        if (!v.fits_slong_p()) throw DomainError("coordinate does not fit in 64 bits");
        c.push_back(v.get_si());
    }
    return c;
}

}  // namespace

unsigned multiplicity_at(const Hypersurface& X, const ProjPoint& xi) {
    require_on(X, xi);
    const std::span<const Integer> at(xi.coords());
    std::vector<std::uint32_t> idx(X.f.variable_count(), 0);
    for (unsigned order = 1; order <= X.degree_delta; ++order) {
        const bool found = any_multi_index(idx, 0, order, [&](const std::vector<std::uint32_t>& I) {
            Polynomial d = partial_derivative(X.f, std::span<const std::uint32_t>(I));
            return !d.is_zero() && evaluate(d, at) != 0;
        });
        if (found) return order;
    }
    // Order-delta partials are nonzero constants, so this is unreachable for valid X.
    throw DomainError("no nonvanishing partial derivative found");
}

unsigned multiplicity_oracle(const Hypersurface& X, const ProjPoint& xi, std::size_t chart) {
    require_on(X, xi);
    Polynomial local = chart_translate(X.f, xi, chart);
    return static_cast<unsigned>(local.lowest_degree());
}

unsigned multiplicity_oracle(const Hypersurface& X, const ProjPoint& xi) {
    return multiplicity_oracle(X, xi, xi.first_nonzero());
}

bool is_singular_at(const Hypersurface& X, const ProjPoint& xi) {
    const std::span<const Integer> at(xi.coords());
    for (std::size_t i = 0; i < X.f.variable_count(); ++i)
        if (evaluate(partial_derivative(X.f, i), at) != 0) return false;
    return true;
}

std::vector<MultiplicityRecord> singular_points(const Hypersurface& X, const Integer& B, std::uint64_t budget) {
    if (B < 1) throw DomainError("height bound must be at least 1");
    const PointSet on = points_on_hypersurface(X.f, B, budget);
    const std::int64_t b = B.get_si();
    std::vector<IntegerEvaluator> partials;
    for (std::size_t i = 0; i < X.f.variable_count(); ++i) {
        Polynomial d = partial_derivative(X.f, i);
        if (!d.is_zero()) partials.emplace_back(d, b);
    }
    std::vector<MultiplicityRecord> out;
    for (const auto& p : on.points) {
        const auto c = small_coords(p);
        const bool singular = std::all_of(partials.begin(), partials.end(),
                                          [&](const IntegerEvaluator& e) { return e.vanishes_at(c); });
        if (singular) out.push_back({p, multiplicity_at(X, p)});
    }
    return out;
}

Stratification stratify(const Hypersurface& X, const PointSet& points, unsigned mu_M) {
    Stratification s{{{}, points.ambient_n, points.bound_B}, {{}, points.ambient_n, points.bound_B}};
    for (const auto& p : points.points) {
        const unsigned mu = multiplicity_at(X, p);
        if (mu < mu_M)
            throw DomainError("point " + p.to_string() + " has multiplicity " + std::to_string(mu) +
                              " below the declared generic multiplicity " + std::to_string(mu_M));
        (mu == mu_M ? s.equal : s.higher).points.push_back(p);
    }
    return s;
}

CountingFunction power_counting_function(unsigned exponent_e) {
    return [exponent_e](unsigned mu) -> Integer {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), mu - 1, exponent_e);
        return Integer(mu) * r;
    };
}

MultSum mult_sum(const Hypersurface& X, const Integer& B, unsigned exponent_e,
                 const std::optional<CountingFunction>& g, std::uint64_t budget) {
    const CountingFunction fn = g ? *g : power_counting_function(exponent_e);
    if (fn(1) != 0)
        throw DomainError("counting function must satisfy g(1) = 0; use mult_sum_split for the general case");
    MultSum out;
    for (auto& rec : singular_points(X, B, budget)) {
        out.sum += fn(rec.mu);
        out.contributors.push_back(std::move(rec));
    }
    return out;
}

SplitMultSum mult_sum_split(const Hypersurface& X, const Integer& B, const CountingFunction& g,
                            std::uint64_t budget) {
    SplitMultSum out;
    const Integer g1 = g(1);
    const PointSet on = points_on_hypersurface(X.f, B, budget);
    out.regular_part = g1 * Integer(static_cast<unsigned long>(on.size()));
    for (const auto& rec : singular_points(X, B, budget)) out.excess += g(rec.mu) - g1;
    return out;
}

}  // namespace multcount
