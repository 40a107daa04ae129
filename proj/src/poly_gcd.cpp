#include "multcount/errors.hpp"
#include "multcount/poly.hpp"

namespace multcount {

Polynomial normalize(const Polynomial& f) {
    if (f.is_zero()) return f;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : f.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (f.leading_coefficient() < 0) scale = -scale;
    return f * scale;
}

DivisionResult divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    if (f.variable_count() != g.variable_count()) throw DomainError("variable count mismatch");
    const std::size_t n = f.variable_count();
    DivisionResult out{Polynomial(n), Polynomial(n)};
    Polynomial p = f;
    const Monomial& lm = g.leading_monomial();
    const Rational& lc = g.leading_coefficient();
    while (!p.is_zero()) {
        const Monomial m = p.leading_monomial();
        const Rational c = p.leading_coefficient();
        if (lm.divides(m)) {
            Polynomial t = Polynomial::monomial(m.quotient(lm), c / lc);
            out.quotient += t;
            p -= t * g;
        } else {
            out.remainder.add_term(m, c);
            p.add_term(m, -c);
        }
    }
    return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
    auto qr = divide(f, g);
    if (!qr.remainder.is_zero()) return std::nullopt;
    return qr.quotient;
}

namespace {

// Largest-index variable occurring in either polynomial, or -1.
int main_variable(const Polynomial& a, const Polynomial& b) {
    for (int v = static_cast<int>(a.variable_count()) - 1; v >= 0; --v)
        if (a.involves(static_cast<std::size_t>(v)) || b.involves(static_cast<std::size_t>(v))) return v;
    return -1;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

// gcd of the coefficients of a viewed in Q[rest][x_v]; normalized.
Polynomial content_in(const Polynomial& a, std::size_t v) {
    Polynomial c(a.variable_count());
    for (const auto& coeff : a.coefficients_in(v)) {
        if (coeff.is_zero()) continue;
        c = c.is_zero() ? normalize(coeff) : gcd_rec(c, coeff);
        if (c.is_constant()) break;
    }
    return c;
}

Polynomial primitive_part(const Polynomial& a, std::size_t v) {
    auto q = divide_exact(a, content_in(a, v));
    return normalize(*q);
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v) {
    const int db = b.degree_in(v);
    const Polynomial lb = b.coefficients_in(v).back();
    Polynomial r = a;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        const int dr = r.degree_in(v);
        const Polynomial lr = r.coefficients_in(v).back();
        Monomial shift(a.variable_count());
        shift[v] = static_cast<std::uint32_t>(dr - db);
        r = lb * r - lr * Polynomial::monomial(shift, 1) * b;
    }
    return r;
}

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
    const int mv = main_variable(a, b);
    if (mv < 0) return Polynomial::constant(a.variable_count(), 1);
    const auto v = static_cast<std::size_t>(mv);
    if (!a.involves(v)) return gcd_rec(a, content_in(b, v));
    if (!b.involves(v)) return gcd_rec(content_in(a, v), b);

    const Polynomial ca = content_in(a, v);
    const Polynomial cb = content_in(b, v);
    const Polynomial c = gcd_rec(ca, cb);
    Polynomial p = normalize(*divide_exact(a, ca));
    Polynomial q = normalize(*divide_exact(b, cb));
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (!q.is_zero()) {
        Polynomial r = pseudo_remainder(p, q, v);
        p = std::move(q);
        q = r.is_zero() ? Polynomial(a.variable_count()) : primitive_part(r, v);
    }
    return normalize(c * p);
}

}  // namespace

Polynomial gcd_poly(const Polynomial& f, const Polynomial& g) {
    if (f.variable_count() != g.variable_count()) throw DomainError("variable count mismatch");
    if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    return normalize(gcd_rec(normalize(f), normalize(g)));
}

bool is_squarefree(const Polynomial& f) {
    if (f.is_zero()) throw DomainError("squarefree test of the zero polynomial");
    Polynomial g = normalize(f);
    for (std::size_t i = 0; i < f.variable_count() && !g.is_constant(); ++i)
        g = gcd_poly(g, partial_derivative(f, i));
    return g.is_constant();
}

}  // namespace multcount
