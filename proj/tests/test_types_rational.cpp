#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rrc/types.hpp"

using namespace rrc;

TEST_CASE("rational arithmetic reduces to lowest terms") {
    Rational half(1, 2);
    Rational third(1, 3);
    Rational sum = half + third;
    CHECK(sum.num() == 5);
    CHECK(sum.den() == 6);
    CHECK((half - third) == Rational(1, 6));
    CHECK((half * third) == Rational(1, 6));
    CHECK((half / third) == Rational(3, 2));
    CHECK((Rational(2, 4)) == Rational(1, 2));
    CHECK((Rational(3, -6)) == Rational(-1, 2));
    CHECK(Rational(0, 7).den() == 1);
    CHECK(-Rational(2, 3) == Rational(-2, 3));
}

TEST_CASE("rational comparisons use exact cross products") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(7) > Rational(13, 2));
    CHECK(Rational() == Rational(0));
    CHECK(Rational(5).is_integer());
    CHECK_FALSE(Rational(5, 3).is_integer());
    CHECK(Rational(-1, 9).is_negative());
    CHECK(Rational(0).is_zero());
}

TEST_CASE("rational string round-trips") {
    CHECK(Rational(5).to_string() == "5");
    CHECK(Rational(-5).to_string() == "-5");
    CHECK(Rational(1, 2).to_string() == "1/2");
    CHECK(Rational(-3, 7).to_string() == "-3/7");
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("+5") == Rational(5));
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    for (const Rational& r :
         {Rational(0), Rational(17), Rational(-17), Rational(22, 7), Rational(-1, 1000)}) {
        CHECK(Rational::parse(r.to_string()) == r);
    }
}

TEST_CASE("rational rejects malformed or degenerate input") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("99999999999999999999"), std::overflow_error);
}

TEST_CASE("rational arithmetic overflow throws instead of wrapping") {
    Rational big(INT64_MAX / 2);
    CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
    CHECK_NOTHROW(big + big);  // exactly INT64_MAX - 1
}

TEST_CASE("mask helpers round-trip index lists") {
    Mask m = bit(0) | bit(3) | bit(63);
    CHECK(popcount(m) == 3);
    CHECK(has_bit(m, 3));
    CHECK_FALSE(has_bit(m, 2));
    CHECK(lowest_bit(m) == 0);
    CHECK(mask_to_indices(m) == std::vector<int>{0, 3, 63});
    CHECK(indices_to_mask({0, 3, 63}) == m);
    CHECK(indices_to_mask({}) == Mask{0});

    std::vector<int> seen;
    for_each_bit(bit(5) | bit(1), [&](int i) { seen.push_back(i); });
    CHECK(seen == std::vector<int>{1, 5});
}

TEST_CASE("set_weight sums the selected coordinates") {
    Weights w{Rational(3), Rational(1, 2), Rational(-2)};
    CHECK(set_weight(w, 0) == Rational(0));
    CHECK(set_weight(w, bit(0) | bit(2)) == Rational(1));
    CHECK(set_weight(w, bit(1)) == Rational(1, 2));
    CHECK(set_weight(w, bit(0) | bit(1) | bit(2)) == Rational(3, 2));
}
