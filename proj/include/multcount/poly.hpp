#pragma once

#include "multcount/points.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace multcount {

using Rational = mpq_class;

/// Exponent vector, one slot per variable. Ordered graded-lexicographically.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t variable_count) : exps_(variable_count, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

    std::uint32_t total_degree() const;
    bool divides(const Monomial& other) const;

    Monomial operator*(const Monomial& other) const;
    /// Requires divides(other).
    Monomial quotient(const Monomial& divisor) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Graded lexicographic: total degree first, then exponent of x0, x1, ...
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    std::vector<std::uint32_t> exps_;
};

/// Sparse multivariate polynomial over Q in the variables x0 .. x{n-1}.
///
/// Terms are kept in descending graded-lex order and never store a zero
/// coefficient, so structural equality is polynomial equality.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, std::greater<>>;

    explicit Polynomial(std::size_t variable_count = 1);

    static Polynomial constant(std::size_t variable_count, const Rational& c);
    static Polynomial variable(std::size_t variable_count, std::size_t index);
    static Polynomial monomial(const Monomial& m, const Rational& c);

    std::size_t variable_count() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int degree() const;
    /// Smallest total degree of a term; -1 for zero.
    int lowest_degree() const;
    bool is_homogeneous() const;
    int degree_in(std::size_t var) const;
    bool involves(std::size_t var) const;

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;
    /// Graded-lex largest term. Requires nonzero.
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Coefficients of f viewed as a polynomial in `var`; entry k multiplies var^k.
    std::vector<Polynomial> coefficients_in(std::size_t var) const;

    /// f with x_var := value. The variable count is unchanged.
    Polynomial substitute(std::size_t var, const Rational& value) const;
    /// Removes a variable that does not occur, shifting later indices down.
    Polynomial drop_variable(std::size_t var) const;
    /// Re-embeds into a ring with more variables (new ones appended).
    Polynomial extend_variables(std::size_t new_count) const;
    /// f(images[0], ..., images[n-1]); all images share one variable count.
    Polynomial compose(std::span<const Polynomial> images) const;

    std::string to_string() const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

/// Grammar: sums of terms `coeff`, `coeff*powerprod`, `powerprod`, where a
/// power product is `x<i>[^e]` factors joined by '*'. Parenthesised
/// subexpressions and integer powers of them are also accepted.
Polynomial parse_poly(const std::string& text, std::size_t variable_count);

Rational evaluate(const Polynomial& f, std::span<const Rational> coords);
Rational evaluate(const Polynomial& f, std::span<const Integer> coords);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);
/// Mixed partial of the given multi-index.
Polynomial partial_derivative(const Polynomial& f, std::span<const std::uint32_t> orders);

/// Nonzero order-`order` partials of f, one per multi-index, in graded-lex
/// order of the multi-index. Empty when order > degree(f).
std::vector<Polynomial> derivative_space(const Polynomial& f, unsigned order);

/// Multiplies by a rational so that coefficients are coprime integers with a
/// positive leading coefficient. Zero stays zero.
Polynomial normalize(const Polynomial& f);

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};
/// Multivariate division by a single divisor in graded-lex order.
DivisionResult divide(const Polynomial& f, const Polynomial& g);
/// f / g when g | f, otherwise std::nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// Normalized greatest common divisor. Throws DomainError when both are zero.
Polynomial gcd_poly(const Polynomial& f, const Polynomial& g);
/// f is nonzero and has no repeated factor.
bool is_squarefree(const Polynomial& f);

/// Dehomogenizes f at coordinate `chart` of xi (which must be nonzero) and
/// translates xi to the origin. The affine variables are the remaining
/// coordinates in their original order.
Polynomial chart_translate(const Polynomial& f, const ProjPoint& xi, std::size_t chart);
/// Uses the first nonzero coordinate of xi as the chart.
Polynomial chart_translate(const Polynomial& f, const ProjPoint& xi);

/// Exact zero tests and values at small integer points.
///
/// The polynomial is scaled to primitive integer coefficients (same zero set)
/// and evaluated in 128-bit arithmetic when every |coordinate| <= coord_bound
/// provably keeps intermediate values in range; otherwise GMP is used.
class IntegerEvaluator {
public:
    IntegerEvaluator(const Polynomial& f, std::int64_t coord_bound);

    bool vanishes_at(std::span<const std::int64_t> coords) const;
    /// Value of the scaled polynomial (a nonzero rational multiple of f).
    Integer scaled_value(std::span<const std::int64_t> coords) const;
    bool uses_fast_path() const noexcept { return fast_; }

private:
    struct Term {
        std::int64_t coeff;
        std::vector<std::uint32_t> exps;
    };
    std::size_t nvars_;
    std::uint32_t max_exp_ = 0;
    bool fast_ = false;
    std::vector<Term> fast_terms_;
    std::vector<std::pair<Integer, std::vector<std::uint32_t>>> big_terms_;
};

}  // namespace multcount
