#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace multcount {

using Integer = mpz_class;

/// Rational point of projective space in primitive integer coordinates.
///
/// The stored representative has gcd 1 and its first nonzero coordinate is
/// positive, so two points are equal exactly when their coordinate vectors are.
class ProjPoint {
public:
    static ProjPoint canonicalize(std::span<const Integer> raw);
    static ProjPoint canonicalize(std::span<const std::int64_t> raw);
    static ProjPoint canonicalize(std::initializer_list<long> raw);

    const std::vector<Integer>& coords() const noexcept { return coords_; }
    std::size_t size() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }

    /// Index of the first nonzero coordinate.
    std::size_t first_nonzero() const;

    /// "[a:b:c]"
    std::string to_string() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

private:
    explicit ProjPoint(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    std::vector<Integer> coords_;
};

struct AffinePoint {
    std::vector<Integer> coords;

    friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

struct Height {
    Integer multiplicative;
    double logarithmic = 0.0;
};

Height height(const ProjPoint& p);

/// Parses "0,0,1" or "[0:0:1]"; the result is canonicalized.
ProjPoint parse_proj_point(const std::string& text);

/// Parses a comma-separated integer list, e.g. "1,-2".
AffinePoint parse_affine_point(const std::string& text);

}  // namespace multcount
