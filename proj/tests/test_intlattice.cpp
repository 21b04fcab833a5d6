#include <gtest/gtest.h>

#include <random>

#include "hardcore/intlattice.hpp"

using namespace hardcore;

namespace {

// Brute-force membership in the span of u, w by solving with Cramer's rule.
bool in_span(Vec2 u, Vec2 w, Vec2 v) { return coordinates_in(u, w, v).has_value(); }

}  // namespace

TEST(Lattice2, HermiteFormIsCanonical) {
    const auto a = Lattice2::spanned_by({2, 1}, {-1, 3});
    const auto b = Lattice2::spanned_by({1, 4}, {0, 7});  // a1 + a2 and a1 + 2 a2
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.index(), 7);
    EXPECT_GT(a.h1().x, 0);
    EXPECT_EQ(a.h2().x, 0);
    EXPECT_THROW(Lattice2::spanned_by({1, 2}, {2, 4}), DomainError);
}

TEST(Lattice2, CosetsPartition) {
    const auto l = Lattice2::spanned_by({3, 1}, {1, 4});
    std::set<i64> idx;
    for (i64 x = -6; x <= 6; ++x)
        for (i64 y = -6; y <= 6; ++y) {
            const Vec2 v{x, y};
            const i64 c = l.coset_index(v);
            ASSERT_GE(c, 0);
            ASSERT_LT(c, l.index());
            EXPECT_TRUE(l.contains(v - l.coset_rep(c)));
            EXPECT_EQ(l.contains(v), in_span({3, 1}, {1, 4}, v));
            idx.insert(c);
        }
    EXPECT_EQ(static_cast<i64>(idx.size()), l.index());
}

TEST(Lattice2, IntersectionAgainstMembership) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> d(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 u1{d(rng), d(rng)}, w1{d(rng), d(rng)}, u2{d(rng), d(rng)}, w2{d(rng), d(rng)};
        if (cross(u1, w1) == 0 || cross(u2, w2) == 0) continue;
        const auto l1 = Lattice2::spanned_by(u1, w1), l2 = Lattice2::spanned_by(u2, w2);
        const auto m = lattice_intersection(l1, l2);
        for (i64 x = -12; x <= 12; ++x)
            for (i64 y = -12; y <= 12; ++y) {
                const Vec2 v{x, y};
                ASSERT_EQ(m.contains(v), l1.contains(v) && l2.contains(v));
            }
        const auto s = lattice_sum(l1, l2);
        EXPECT_TRUE(s.contains(l1));
        EXPECT_TRUE(s.contains(l2));
        EXPECT_EQ(s.index() * m.index(), l1.index() * l2.index());
    }
}

TEST(ReducedBasis, ShortestVector) {
    for (auto k : {LatticeKind::A2, LatticeKind::Z2}) {
        const auto l = Lattice2::spanned_by({7, 3}, {11, 5});
        const auto [u, v] = reduced_basis(k, l);
        EXPECT_EQ(Lattice2::spanned_by(u, v), l);
        EXPECT_GT(cross(u, v), 0);
        i64 best = -1;
        for (i64 x = -40; x <= 40; ++x)
            for (i64 y = -40; y <= 40; ++y)
                if ((x || y) && l.contains(Vec2{x, y})) {
                    const i64 n = norm2(k, {x, y});
                    if (best < 0 || n < best) best = n;
                }
        EXPECT_EQ(minimal_norm(k, l), best);
        EXPECT_LE(norm2(k, u), norm2(k, v));
    }
}

TEST(Lattice2, Exponent) {
    EXPECT_EQ(Lattice2::scaled(6).exponent(), 6);
    EXPECT_EQ(Lattice2::spanned_by({1, 3}, {0, 13}).exponent(), 13);
}
