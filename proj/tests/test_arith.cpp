#include <gtest/gtest.h>

#include <algorithm>

#include "hardcore/arith.hpp"

using namespace hardcore;

namespace {

bool loeschian_scan(i64 n) {
    for (i64 a = 0; a * a <= n; ++a)
        for (i64 b = 0; a * a + a * b + b * b <= n; ++b)
            if (a * a + a * b + b * b == n) return true;
    return false;
}

bool squares_scan(i64 n) {
    for (i64 a = 0; a * a <= n; ++a)
        for (i64 b = a; a * a + b * b <= n; ++b)
            if (a * a + b * b == n) return true;
    return false;
}

// Exponent sum of primes 1 mod 3 by plain trial division.
int count_p1(i64 n) {
    int k = 0;
    for (i64 p = 2; n > 1; ++p)
        while (n % p == 0) {
            n /= p;
            if (p % 3 == 1) ++k;
        }
    return k;
}

}  // namespace

TEST(Forms, AgreeWithScanTo500) {
    for (i64 n = 1; n <= 500; ++n) {
        EXPECT_EQ(is_loeschian(n), loeschian_scan(n)) << n;
        EXPECT_EQ(is_sum_of_two_squares(n), squares_scan(n)) << n;
        EXPECT_EQ(attainable(LatticeKind::A2, n), loeschian_scan(n)) << n;
        EXPECT_EQ(attainable(LatticeKind::Z2, n), squares_scan(n)) << n;
    }
}

TEST(Classify, TriangularCasesTo500) {
    for (i64 n = 1; n <= 500; ++n) {
        const auto c = classify(LatticeKind::A2, n);
        if (!loeschian_scan(n)) {
            EXPECT_EQ(c.tag, CaseTag::NotAttainable);
            continue;
        }
        const int k = count_p1(n);
        EXPECT_EQ(c.tag, k == 0 ? CaseTag::TA1 : k == 1 ? CaseTag::TA2 : CaseTag::TB) << n;
    }
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(LatticeKind::A2, 13).tag, CaseTag::TA2);
    EXPECT_EQ(classify(LatticeKind::A2, 9).tag, CaseTag::TA1);
    EXPECT_EQ(classify(LatticeKind::A2, 49).tag, CaseTag::TB);
    EXPECT_EQ(classify(LatticeKind::H2, 48).tag, CaseTag::HA1);
    EXPECT_EQ(classify(LatticeKind::H2, 39).tag, CaseTag::HA2);
    EXPECT_EQ(classify(LatticeKind::H2, 13).tag, CaseTag::HExceptional);
    EXPECT_EQ(classify(LatticeKind::H2, 19), (CaseLabel{CaseTag::HC, 21}));
    EXPECT_EQ(classify(LatticeKind::Z2, 3).tag, CaseTag::NotAttainable);
    EXPECT_EQ(classify(LatticeKind::Z2, 25).tag, CaseTag::ZGeneric);
}

TEST(Dstar, Examples) {
    EXPECT_EQ(dstar(19), 21);
    EXPECT_EQ(dstar(61), 63);
    EXPECT_EQ(dstar(217), 219);
    EXPECT_THROW(dstar(21), DomainError);
    EXPECT_THROW(dstar(5), DomainError);
}

TEST(Dstar, MinimalTo500) {
    for (i64 n = 1; n <= 500; ++n) {
        if (!loeschian_scan(n) || n % 3 == 0) continue;
        const i64 d = dstar(n);
        EXPECT_EQ(d % 3, 0);
        EXPECT_TRUE(loeschian_scan(d));
        for (i64 m = n + 1; m < d; ++m) EXPECT_FALSE(m % 3 == 0 && loeschian_scan(m)) << n;
        const auto c = classify(LatticeKind::H2, n);
        if (c.tag == CaseTag::HC) {
            EXPECT_EQ(c.dstar2, d);
            EXPECT_GT(c.dstar2, n);
        }
    }
}

TEST(Sliding, Lists) {
    EXPECT_EQ(kZ2Sliding.size(), 39u);
    EXPECT_TRUE(std::is_sorted(kZ2Sliding.begin(), kZ2Sliding.end()));
    int h = 0, z = 0;
    for (i64 n = 1; n <= 40000; ++n) {
        h += sliding_status(LatticeKind::H2, n).sliding;
        z += sliding_status(LatticeKind::Z2, n).sliding;
        EXPECT_FALSE(sliding_status(LatticeKind::A2, n).sliding);
    }
    EXPECT_EQ(h, 4);
    EXPECT_EQ(z, 39);
    for (i64 v : kZ2Sliding) EXPECT_TRUE(squares_scan(v)) << v;
    for (i64 v : kH2Sliding) EXPECT_TRUE(loeschian_scan(v)) << v;
}
