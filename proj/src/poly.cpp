#include "multcount/poly.hpp"

#include "multcount/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace multcount {

// ---------------------------------------------------------------------------
// Monomial

std::uint32_t Monomial::total_degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    return a.exps_ <=> b.exps_;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t variable_count) : nvars_(variable_count) {}

Polynomial Polynomial::constant(std::size_t variable_count, const Rational& c) {
    Polynomial p(variable_count);
    p.add_term(Monomial(variable_count), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t variable_count, std::size_t index) {
    if (index >= variable_count) throw DomainError("variable index out of range");
    Monomial m(variable_count);
    m[index] = 1;
    return monomial(m, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

int Polynomial::degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.total_degree());
}

int Polynomial::lowest_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.total_degree());
}

bool Polynomial::is_homogeneous() const {
    return terms_.empty() || lowest_degree() == degree();
}

int Polynomial::degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
    return d;
}

bool Polynomial::involves(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] > 0; });
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw DomainError("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) throw DomainError("monomial arity does not match polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw DomainError("variable count mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw DomainError("variable count mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw DomainError("variable count mismatch");
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
    const int d = degree_in(var);
    std::vector<Polynomial> out(static_cast<std::size_t>(std::max(d + 1, 0)), Polynomial(nvars_));
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest[var] = 0;
        out[m[var]].add_term(rest, c);
    }
    return out;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest[var] = 0;
        Rational factor;
        mpz_pow_ui(factor.get_num_mpz_t(), value.get_num_mpz_t(), m[var]);
        mpz_pow_ui(factor.get_den_mpz_t(), value.get_den_mpz_t(), m[var]);
        r.add_term(rest, c * factor);
    }
    return r;
}

Polynomial Polynomial::drop_variable(std::size_t var) const {
    if (involves(var)) throw DomainError("cannot drop a variable that occurs");
    if (nvars_ <= 1) throw DomainError("cannot drop the last variable");
    Polynomial r(nvars_ - 1);
    for (const auto& [m, c] : terms_) {
        auto e = m.exponents();
        e.erase(e.begin() + static_cast<std::ptrdiff_t>(var));
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

Polynomial Polynomial::extend_variables(std::size_t new_count) const {
    if (new_count < nvars_) throw DomainError("extend_variables cannot shrink");
    Polynomial r(new_count);
    for (const auto& [m, c] : terms_) {
        auto e = m.exponents();
        e.resize(new_count, 0);
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
    if (images.size() != nvars_) throw DomainError("compose needs one image per variable");
    const std::size_t target = images.empty() ? 1 : images[0].variable_count();
    // powers[i][k] = images[i]^k, built lazily
    std::vector<std::vector<Polynomial>> powers(nvars_);
    auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
        auto& row = powers[i];
        if (row.empty()) row.push_back(constant(target, 1));
        while (row.size() <= k) row.push_back(row.back() * images[i]);
        return row[k];
    };
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
        Polynomial t = constant(target, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (m[i]) t = t * power(i, m[i]);
        r += t;
    }
    return r;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        Rational a = abs(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string pp;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!pp.empty()) pp += "*";
            pp += "x" + std::to_string(i);
            if (m[i] > 1) pp += "^" + std::to_string(m[i]);
        }
        if (pp.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += pp;
        } else {
            out += a.get_str() + "*" + pp;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(const std::string& text, std::size_t nvars) : text_(text), nvars_(nvars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // '+', '-', or the UTF-8 minus sign U+2212.
    int peek_sign() {
        skip_ws();
        if (pos_ >= text_.size()) return 0;
        if (text_[pos_] == '+') return 1;
        if (text_[pos_] == '-') return -1;
        if (text_.compare(pos_, 3, "\xE2\x88\x92") == 0) return -2;
        return 0;
    }

    void consume_sign(int s) { pos_ += (s == -2) ? 3 : 1; }

    Polynomial expr() {
        Polynomial acc(nvars_);
        int s = peek_sign();
        bool negate = false;
        if (s != 0) {
            negate = s < 0;
            consume_sign(s);
        }
        Polynomial t = term();
        acc += negate ? -t : t;
        while ((s = peek_sign()) != 0) {
            consume_sign(s);
            Polynomial u = term();
            acc += s < 0 ? -u : u;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = primary();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_ws();
            unsigned long e = read_uint();
            if (e > 4096) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    unsigned long read_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected unsigned integer");
        if (pos_ - start > 18) fail("integer too long");
        return std::stoul(text_.substr(start, pos_ - start));
    }

    Integer read_integer_literal() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(text_.substr(start, pos_ - start), 10);
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (ch == 'x') {
            ++pos_;
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected variable index after 'x'");
            unsigned long idx = read_uint();
            if (idx >= nvars_) {
                pos_ = at;
                fail("variable index x" + std::to_string(idx) + " >= variable count " + std::to_string(nvars_));
            }
            return Polynomial::variable(nvars_, idx);
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Integer num = read_integer_literal();
            Rational value(num);
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("expected positive integer denominator");
                Integer den = read_integer_literal();
                if (den == 0) fail("zero denominator");
                value = Rational(num, den);
                value.canonicalize();
            }
            return Polynomial::constant(nvars_, value);
        }
        fail("unexpected character '" + std::string(1, ch) + "'");
    }

    const std::string& text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(const std::string& text, std::size_t variable_count) {
    if (variable_count == 0) throw DomainError("variable count must be positive");
    return Parser(text, variable_count).parse();
}

// ---------------------------------------------------------------------------
// Evaluation and derivatives

Rational evaluate(const Polynomial& f, std::span<const Rational> coords) {
    if (coords.size() != f.variable_count()) throw DomainError("coordinate count does not match variable count");
    Rational total = 0;
    Rational t, p;
    for (const auto& [m, c] : f.terms()) {
        t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            mpz_pow_ui(p.get_num_mpz_t(), coords[i].get_num_mpz_t(), m[i]);
            mpz_pow_ui(p.get_den_mpz_t(), coords[i].get_den_mpz_t(), m[i]);
            t *= p;
        }
        total += t;
    }
    return total;
}

Rational evaluate(const Polynomial& f, std::span<const Integer> coords) {
    std::vector<Rational> q(coords.begin(), coords.end());
    return evaluate(f, std::span<const Rational>(q));
}

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
    if (var >= f.variable_count()) throw DomainError("derivative variable index out of range");
    Polynomial r(f.variable_count());
    for (const auto& [m, c] : f.terms()) {
        if (!m[var]) continue;
        Monomial d = m;
        d[var] -= 1;
        r.add_term(d, c * m[var]);
    }
    return r;
}

Polynomial partial_derivative(const Polynomial& f, std::span<const std::uint32_t> orders) {
    if (orders.size() != f.variable_count()) throw DomainError("multi-index arity does not match variable count");
    Polynomial r(f.variable_count());
    for (const auto& [m, c] : f.terms()) {
        Integer factor = 1;
        Monomial d = m;
        bool vanishes = false;
        for (std::size_t i = 0; i < m.size() && !vanishes; ++i) {
            if (orders[i] > m[i]) {
                vanishes = true;
                break;
            }
            for (std::uint32_t k = 0; k < orders[i]; ++k) factor *= (m[i] - k);
            d[i] -= orders[i];
        }
        if (!vanishes) r.add_term(d, c * Rational(factor));
    }
    return r;
}

namespace {

// Calls visit(index) for every multi-index of the given total order, in
// descending lexicographic order (graded-lex descending within the order).
void for_each_multi_index(std::size_t nvars, unsigned order,
                          const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
    std::vector<std::uint32_t> idx(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == nvars) {
            idx[pos] = left;
            visit(idx);
            return;
        }
        for (int k = static_cast<int>(left); k >= 0; --k) {
            idx[pos] = static_cast<std::uint32_t>(k);
            rec(pos + 1, left - static_cast<unsigned>(k));
        }
    };
    rec(0, order);
}

}  // namespace

std::vector<Polynomial> derivative_space(const Polynomial& f, unsigned order) {
    std::vector<Polynomial> out;
    if (f.is_zero() || static_cast<int>(order) > f.degree()) return out;
    for_each_multi_index(f.variable_count(), order, [&](const std::vector<std::uint32_t>& idx) {
        Polynomial d = partial_derivative(f, std::span<const std::uint32_t>(idx));
        if (!d.is_zero()) out.push_back(std::move(d));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Charts

Polynomial chart_translate(const Polynomial& f, const ProjPoint& xi, std::size_t chart) {
    const std::size_t n1 = f.variable_count();
    if (xi.size() != n1) throw DomainError("point dimension does not match polynomial");
    if (n1 < 2) throw DomainError("chart needs at least two homogeneous variables");
    if (chart >= n1 || xi[chart] == 0) throw DomainError("chart coordinate of the point is zero");
    const std::size_t n = n1 - 1;
    std::vector<Polynomial> images;
    images.reserve(n1);
    std::size_t next = 0;
    for (std::size_t j = 0; j < n1; ++j) {
        if (j == chart) {
            images.push_back(Polynomial::constant(n, 1));
            continue;
        }
        Rational shift(xi[j], xi[chart]);
        shift.canonicalize();
        images.push_back(Polynomial::variable(n, next++) + Polynomial::constant(n, shift));
    }
    return f.compose(images);
}

Polynomial chart_translate(const Polynomial& f, const ProjPoint& xi) {
    return chart_translate(f, xi, xi.first_nonzero());
}

// ---------------------------------------------------------------------------
// IntegerEvaluator

IntegerEvaluator::IntegerEvaluator(const Polynomial& f, std::int64_t coord_bound) : nvars_(f.variable_count()) {
    Polynomial g = normalize(f);
    // log2 of an upper bound on sum |c| * bound^deg; 126 bits leaves room for the sign and partial sums.
    double log_bound = 0.0;
    bool fits = coord_bound >= 0;
    const double lb = std::log2(static_cast<double>(std::max<std::int64_t>(coord_bound, 1)));
    double sum_abs = 0.0;
    for (const auto& [m, c] : g.terms()) {
        const Integer& num = c.get_num();
        if (!num.fits_slong_p()) fits = false;
        sum_abs += std::abs(num.get_d());
        log_bound = std::max(log_bound, static_cast<double>(m.total_degree()) * lb);
        for (std::size_t i = 0; i < nvars_; ++i) max_exp_ = std::max(max_exp_, m[i]);
        big_terms_.emplace_back(num, m.exponents());
    }
    if (fits && !g.is_zero()) {
        double total = std::log2(std::max(sum_abs, 1.0)) + log_bound;
        fits = total < 120.0;
    }
    fast_ = fits;
    if (fast_) {
        for (const auto& [c, e] : big_terms_) fast_terms_.push_back(Term{c.get_si(), e});
    }
}

bool IntegerEvaluator::vanishes_at(std::span<const std::int64_t> coords) const {
    if (!fast_) return scaled_value(coords) == 0;
    if (coords.size() != nvars_) throw DomainError("coordinate count does not match variable count");
    thread_local std::vector<__int128> pw;
    const std::size_t stride = max_exp_ + 1;
    pw.resize(nvars_ * stride);
    for (std::size_t i = 0; i < nvars_; ++i) {
        __int128 v = 1;
        pw[i * stride] = 1;
        for (std::uint32_t k = 1; k <= max_exp_; ++k) {
            v *= coords[i];
            pw[i * stride + k] = v;
        }
    }
    __int128 total = 0;
    for (const auto& t : fast_terms_) {
        __int128 v = t.coeff;
        for (std::size_t i = 0; i < nvars_; ++i)
            if (t.exps[i]) v *= pw[i * stride + t.exps[i]];
        total += v;
    }
    return total == 0;
}

Integer IntegerEvaluator::scaled_value(std::span<const std::int64_t> coords) const {
    if (coords.size() != nvars_) throw DomainError("coordinate count does not match variable count");
    Integer total = 0, t, p;
    for (const auto& [c, e] : big_terms_) {
        t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            p = static_cast<long>(coords[i]);
            mpz_pow_ui(p.get_mpz_t(), p.get_mpz_t(), e[i]);
            t *= p;
        }
        total += t;
    }
    return total;
}

}  // namespace multcount
