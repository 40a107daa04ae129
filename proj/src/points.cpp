#include "multcount/points.hpp"

#include "multcount/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace multcount {

namespace {

std::vector<Integer> primitive_signed(std::vector<Integer> v) {
    Integer g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw DomainError("projective point with all coordinates zero");
    auto lead = std::find_if(v.begin(), v.end(), [](const Integer& c) { return c != 0; });
    if (*lead < 0) g = -g;
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return v;
}

std::vector<std::string> split_coords(const std::string& text) {
    std::string body;
    for (char ch : text) {
        if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch))) continue;
        body.push_back(ch == ':' ? ',' : ch);
    }
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = body.find(',', start);
        parts.push_back(body.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

std::vector<Integer> parse_integers(const std::string& text) {
    std::vector<Integer> out;
    std::size_t offset = 0;
    for (const auto& part : split_coords(text)) {
        Integer value;
        if (part.empty() || value.set_str(part, 10) != 0) throw ParseError("bad integer coordinate '" + part + "'", offset);
        out.push_back(value);
        offset += part.size() + 1;
    }
    return out;
}

}  // namespace

ProjPoint ProjPoint::canonicalize(std::span<const Integer> raw) {
    return ProjPoint(primitive_signed(std::vector<Integer>(raw.begin(), raw.end())));
}

ProjPoint ProjPoint::canonicalize(std::span<const std::int64_t> raw) {
    std::vector<Integer> v;
    v.reserve(raw.size());
    for (auto c : raw) v.emplace_back(static_cast<long>(c));
    return ProjPoint(primitive_signed(std::move(v)));
}

ProjPoint ProjPoint::canonicalize(std::initializer_list<long> raw) {
    std::vector<Integer> v(raw.begin(), raw.end());
    return ProjPoint(primitive_signed(std::move(v)));
}

std::size_t ProjPoint::first_nonzero() const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != 0) return i;
    return coords_.size();
}

std::string ProjPoint::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ':';
        s += coords_[i].get_str();
    }
    return s + "]";
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    const auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a.coords_[i], b.coords_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

Height height(const ProjPoint& p) {
    Height h;
    h.multiplicative = 0;
    for (const auto& c : p.coords()) {
        Integer a = abs(c);
        if (a > h.multiplicative) h.multiplicative = a;
    }
    // mpz_get_d_2exp keeps precision for heights beyond double range.
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, h.multiplicative.get_mpz_t());
    h.logarithmic = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    if (h.logarithmic < 0) h.logarithmic = 0;
    return h;
}

ProjPoint parse_proj_point(const std::string& text) {
    auto v = parse_integers(text);
    return ProjPoint::canonicalize(std::span<const Integer>(v));
}

AffinePoint parse_affine_point(const std::string& text) {
    return AffinePoint{parse_integers(text)};
}

}  // namespace multcount
