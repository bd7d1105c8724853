#include "sdgjel/rational.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using sdgjel::rational;

TEST(Rational, ReducesOnConstruction) {
    rational r(6, 8);
    EXPECT_EQ(r.num(), 3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(rational(3, -6), rational(-1, 2));
    EXPECT_EQ(rational(0, 5).den(), 1);
}

TEST(Rational, Arithmetic) {
    EXPECT_EQ(rational(1, 2) + rational(1, 3), rational(5, 6));
    EXPECT_EQ(rational(1, 2) - rational(1, 3), rational(1, 6));
    EXPECT_EQ(rational(2, 3) * rational(3, 4), rational(1, 2));
    EXPECT_EQ(rational(1, 2) / rational(1, 4), rational(2));
    EXPECT_THROW(rational(1) / rational(0), std::domain_error);
    EXPECT_THROW(rational(1, 0), std::domain_error);
}

TEST(Rational, HarmonicSumIsExact) {
    rational s;
    for (int r = 1; r <= 20; ++r) s += rational(1, r);
    EXPECT_EQ(s, rational(55835135, 15519504));
}

TEST(Rational, OrderingIsExact) {
    EXPECT_LT(rational(1, 3), rational(1, 2));
    EXPECT_GT(rational(7, 6), rational(1));
    EXPECT_EQ(rational(2, 4) <=> rational(1, 2), std::strong_ordering::equal);
    // 1/3 + 1/3 + 1/3 has no float drift
    EXPECT_EQ(rational(1, 3) + rational(1, 3) + rational(1, 3), rational(1));
}

TEST(Rational, Printing) {
    EXPECT_EQ(rational(19, 6).str(), "19/6");
    EXPECT_EQ(rational(4).str(), "4");
    EXPECT_EQ(rational(-1, 2).str(), "-1/2");
}

TEST(Rational, OverflowIsReported) {
    rational big(INT64_MAX / 2 + 1);
    EXPECT_THROW(big + big, std::overflow_error);
}
