#include "multcount/errors.hpp"
#include "multcount/points.hpp"

#include <doctest.h>

#include <cmath>

using namespace multcount;

TEST_CASE("canonicalize divides by the gcd and fixes the sign") {
    CHECK(ProjPoint::canonicalize({2, -4, 6}).to_string() == "[1:-2:3]");
    CHECK(ProjPoint::canonicalize({-2, 4}).to_string() == "[1:-2]");
    CHECK(ProjPoint::canonicalize({0, 0, 5}).to_string() == "[0:0:1]");
    CHECK(ProjPoint::canonicalize({0, -3, 6}).to_string() == "[0:1:-2]");
    CHECK_THROWS_AS(ProjPoint::canonicalize({0, 0, 0}), DomainError);
}

TEST_CASE("equal points have equal representatives") {
    CHECK(ProjPoint::canonicalize({3, 6, -9}) == ProjPoint::canonicalize({-1, -2, 3}));
    CHECK(ProjPoint::canonicalize({1, 0}) != ProjPoint::canonicalize({0, 1}));
    CHECK(ProjPoint::canonicalize({0, 1}) < ProjPoint::canonicalize({1, 0}));
}

TEST_CASE("height") {
    CHECK(height(ProjPoint::canonicalize({3, -7, 1})).multiplicative == 7);
    const auto h = height(ProjPoint::canonicalize({1, 0}));
    CHECK(h.multiplicative == 1);
    CHECK(h.logarithmic == doctest::Approx(0.0));
    CHECK(height(ProjPoint::canonicalize({2, -4, 6})).multiplicative == 3);
    CHECK(height(ProjPoint::canonicalize({1, 1000})).logarithmic == doctest::Approx(std::log(1000.0)));
}

TEST_CASE("big coordinates") {
    const Integer big("123456789012345678901234567890");
    std::vector<Integer> c{big * 2, big * 4};
    const auto p = ProjPoint::canonicalize(std::span<const Integer>(c));
    CHECK(p.to_string() == "[1:2]");
    std::vector<Integer> d{big, Integer(1)};
    CHECK(height(ProjPoint::canonicalize(std::span<const Integer>(d))).multiplicative == big);
}

TEST_CASE("point parsing") {
    CHECK(parse_proj_point("0,0,1").to_string() == "[0:0:1]");
    CHECK(parse_proj_point("[2:-4:6]").to_string() == "[1:-2:3]");
    CHECK(parse_proj_point(" 1 , -1 ").to_string() == "[1:-1]");
    CHECK_THROWS(parse_proj_point("1,a"));
    CHECK_THROWS(parse_proj_point(""));
    CHECK_THROWS(parse_proj_point("0,0"));
    CHECK(parse_affine_point("1,-2").coords == std::vector<Integer>{1, -2});
}
