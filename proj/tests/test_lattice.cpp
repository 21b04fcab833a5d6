#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hardcore/lattice.hpp"

using namespace hardcore;

namespace {

constexpr LatticeKind kAll[] = {LatticeKind::A2, LatticeKind::H2, LatticeKind::Z2};

}  // namespace

TEST(SquaredDistance, Examples) {
    EXPECT_EQ(squared_distance(LatticeKind::A2, {0, 0}, {1, 2}), 7);
    EXPECT_EQ(squared_distance(LatticeKind::Z2, {0, 0}, {3, 4}), 25);
    for (auto k : kAll) EXPECT_EQ(squared_distance(k, {5, -2}, {5, -2}), 0);
}

TEST(SquaredDistance, HoneycombNearestNeighbours) {
    // Each honeycomb site has three neighbours at distance 1, on the other parity.
    const Site s{0, 0, 0};
    int n1 = 0;
    for (i64 a = -3; a <= 3; ++a)
        for (i64 b = -3; b <= 3; ++b)
            for (int p = 0; p < 2; ++p) {
                const i64 d = squared_distance(LatticeKind::H2, s, {a, b, p});
                if (d == 1) {
                    ++n1;
                    EXPECT_EQ(p, 1);
                }
                EXPECT_NE(d, 2);
            }
    EXPECT_EQ(n1, 3);
}

TEST(SquaredDistance, MatchesCartesian) {
    for (auto k : kAll)
        for (i64 a = -4; a <= 4; ++a)
            for (i64 b = -4; b <= 4; ++b)
                for (int p = 0; p < (k == LatticeKind::H2 ? 2 : 1); ++p) {
                    const Site s{a, b, p};
                    const auto c0 = to_cartesian(k, embed(k, {0, 0, 0}));
                    const auto c1 = to_cartesian(k, embed(k, s));
                    const double dx = c1[0] - c0[0], dy = c1[1] - c0[1];
                    EXPECT_NEAR(double(squared_distance(k, {0, 0, 0}, s)), dx * dx + dy * dy, 1e-9);
                }
}

TEST(SquaredDistance, ParityOnNonHoneycombThrows) {
    EXPECT_THROW(squared_distance(LatticeKind::A2, {0, 0, 1}, {0, 0, 0}), InvalidSite);
    EXPECT_THROW(squared_distance(LatticeKind::Z2, {0, 0, 0}, {1, 0, 1}), InvalidSite);
}

TEST(SquaredDistance, SymmetricAndInvariant) {
    for (auto k : kAll)
        for (const auto& op : point_group(k))
            for (i64 a = -3; a <= 3; ++a)
                for (i64 b = -3; b <= 3; ++b) {
                    const Vec2 v{a, b};
                    EXPECT_EQ(norm2(k, op.apply(v)), norm2(k, v));
                    EXPECT_EQ(norm2(k, -v), norm2(k, v));
                }
}

TEST(Diophantine, Examples) {
    using P = std::vector<std::pair<i64, i64>>;
    EXPECT_EQ(diophantine_solutions(LatticeKind::A2, 49), (P{{0, 7}, {3, 5}}));
    EXPECT_EQ(diophantine_solutions(LatticeKind::A2, 13), (P{{1, 3}}));
    EXPECT_TRUE(diophantine_solutions(LatticeKind::Z2, 3).empty());
    EXPECT_EQ(diophantine_solutions(LatticeKind::Z2, 25), (P{{0, 5}, {3, 4}}));
}

TEST(Diophantine, AgreesWithSiteScan) {
    for (auto k : kAll) {
        std::set<i64> seen;
        const i64 r = 12;
        for (i64 a = -r; a <= r; ++a)
            for (i64 b = -r; b <= r; ++b)
                for (int p = 0; p < (k == LatticeKind::H2 ? 2 : 1); ++p)
                    seen.insert(squared_distance(k, {0, 0, 0}, {a, b, p}));
        for (i64 d2 = 1; d2 <= 60; ++d2) {
            // On H2 a squared distance of a translation or a cross-parity
            // vector is always Loeschian; both parities cover every value.
            EXPECT_EQ(!diophantine_solutions(k, d2).empty(), seen.count(d2) == 1) << to_string(k) << " " << d2;
        }
    }
}

TEST(DoubledArea, Examples) {
    const auto z = LatticeKind::Z2;
    EXPECT_EQ(doubled_area(z, {0, 0}, {1, 0}, {0, 1}), 1);
    EXPECT_EQ(doubled_area(z, {1, 3}, {4, 6}, {0, 7}), 15);
    EXPECT_EQ(doubled_area(z, {0, 0}, {2, 2}, {5, 5}), 0);
}

TEST(DoubledArea, InvariantAndAdditive) {
    const Vec2 p{0, 0}, q{7, 1}, r{2, 6}, x{3, 3};
    const i64 whole = doubled_area(p, q, r);
    for (const auto& op : point_group(LatticeKind::Z2))
        EXPECT_EQ(doubled_area(op.apply(p), op.apply(q), op.apply(r)), whole);
    EXPECT_EQ(doubled_area(p + Vec2{5, -9}, q + Vec2{5, -9}, r + Vec2{5, -9}), whole);
    EXPECT_EQ(doubled_area(p, q, x) + doubled_area(q, r, x) + doubled_area(r, p, x), whole);
}

TEST(Symmetry, GroupOrders) {
    EXPECT_EQ(point_group(LatticeKind::Z2).size(), 8u);
    EXPECT_EQ(point_group(LatticeKind::A2).size(), 12u);
    EXPECT_EQ(point_group(LatticeKind::H2).size(), 12u);
    for (auto k : kAll)
        for (const auto& op : point_group(k)) EXPECT_EQ(std::abs(op.det()), 1);
}

TEST(Symmetry, Orbits) {
    using S = std::set<Vec2i>;
    EXPECT_EQ(symmetry_images(LatticeKind::Z2, {1, 0}), (S{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
    EXPECT_EQ(symmetry_images(LatticeKind::Z2, {2, 1}).size(), 8u);
    EXPECT_EQ(symmetry_images(LatticeKind::A2, {1, 0}).size(), 6u);
    for (auto k : kAll)
        for (i64 a = -3; a <= 3; ++a)
            for (i64 b = -3; b <= 3; ++b) {
                const auto orb = symmetry_images(k, {a, b});
                EXPECT_EQ(point_group(k).size() % orb.size(), 0u);
                const i64 n = norm2(k, translation_vector(k, {a, b}));
                for (const auto& w : orb) EXPECT_EQ(norm2(k, translation_vector(k, w)), n);
            }
}

TEST(Symmetry, HoneycombSitesMapToSites) {
    for (const auto& op : point_group(LatticeKind::H2))
        for (i64 a = -3; a <= 3; ++a)
            for (i64 b = -3; b <= 3; ++b) {
                const Vec2 v{a, b};
                EXPECT_EQ(h2::is_site(v), h2::is_site(op.apply(v)));
            }
}

TEST(Site, RoundTrip) {
    for (auto k : kAll)
        for (i64 a = -3; a <= 3; ++a)
            for (i64 b = -3; b <= 3; ++b)
                for (int p = 0; p < (k == LatticeKind::H2 ? 2 : 1); ++p) {
                    const Site s{a, b, p};
                    EXPECT_EQ(site_of(k, embed(k, s)), s);
                }
    EXPECT_THROW(site_of(LatticeKind::H2, {0, 0}), InvalidSite);
}

TEST(ParseLattice, Names) {
    EXPECT_EQ(parse_lattice("a2"), LatticeKind::A2);
    EXPECT_EQ(parse_lattice("H2"), LatticeKind::H2);
    EXPECT_EQ(parse_lattice("z2"), LatticeKind::Z2);
    EXPECT_THROW(parse_lattice("b3"), DomainError);
}
