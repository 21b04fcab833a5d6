#include <gtest/gtest.h>

#include "hardcore/pgs.hpp"

using namespace hardcore;

namespace {

i64 count(LatticeKind k, i64 d2) { return pgs_catalog(k, d2).pgs_count; }

// Smallest squared distance between two distinct sites of a sublattice
// packing, by direct enumeration (including cross-parity differences).
i64 scan_min_distance(LatticeKind k, const Sublattice& s) {
    i64 best = -1;
    const Vec2 a = embed(k, s.anchor);
    for (i64 x = -30; x <= 30; ++x)
        for (i64 y = -30; y <= 30; ++y) {
            const Vec2 v{x, y};
            if ((x == 0 && y == 0) || !s.ambient.contains(v) || !is_lattice_point(k, a + v)) continue;
            const i64 n = norm2(k, v);
            if (best < 0 || n < best) best = n;
        }
    return best;
}

}  // namespace

TEST(Catalog, FigureCounts) {
    EXPECT_EQ(count(LatticeKind::A2, 9), 9);
    EXPECT_EQ(count(LatticeKind::A2, 13), 26);
    EXPECT_EQ(count(LatticeKind::H2, 48), 32);
    EXPECT_EQ(count(LatticeKind::H2, 39), 52);
    EXPECT_EQ(count(LatticeKind::Z2, 16), 30);
    EXPECT_EQ(count(LatticeKind::Z2, 25), 92);
}

TEST(Catalog, A2_49) {
    const auto c = pgs_catalog(LatticeKind::A2, 49);
    ASSERT_EQ(c.K, 2);
    EXPECT_EQ(c.sigma * c.m[0], 49);
    EXPECT_EQ(c.sigma * c.m[1], 98);
    EXPECT_EQ(c.pgs_count, 147);
}

TEST(Catalog, HoneycombCaseC) {
    const auto c = pgs_catalog(LatticeKind::H2, 19);
    EXPECT_EQ(c.case_label.tag, CaseTag::HC);
    EXPECT_EQ(c.target2, 21);
    EXPECT_EQ(c.sigma, 14);
}

TEST(Catalog, Errors) {
    EXPECT_THROW(pgs_catalog(LatticeKind::Z2, 3), DomainError);
    EXPECT_THROW(pgs_catalog(LatticeKind::Z2, 9), UnsupportedCase);
    EXPECT_THROW(pgs_catalog(LatticeKind::H2, 4), UnsupportedCase);
    EXPECT_THROW(pgs_catalog(LatticeKind::H2, 13), UnsupportedCase);
}

TEST(Catalog, SublatticesAreAdmissibleAndDistinct) {
    const std::pair<LatticeKind, i64> cases[] = {{LatticeKind::A2, 13}, {LatticeKind::A2, 49}, {LatticeKind::H2, 39},
                                                 {LatticeKind::H2, 19}, {LatticeKind::Z2, 16}, {LatticeKind::Z2, 65}};
    for (auto [k, d2] : cases) {
        const auto c = pgs_catalog(k, d2);
        const auto subs = c.all_sublattices();
        std::set<Lattice2> seen;
        for (const auto& s : subs) {
            EXPECT_GE(scan_min_distance(k, s), d2);
            EXPECT_EQ(sites_per_cell(k, s.ambient), c.sigma);
            seen.insert(s.ambient);
        }
        EXPECT_EQ(seen.size(), subs.size());
    }
}

TEST(Density, Exact) {
    const auto a = packing_density(LatticeKind::A2, 7);
    EXPECT_EQ(a.coeff, Rational(1, 2));
    EXPECT_EQ(a.radical_sq, 3);
    const auto h = packing_density(LatticeKind::H2, 19);
    EXPECT_EQ(h.coeff, Rational(19, 42));
    const auto z = packing_density(LatticeKind::Z2, 16);
    EXPECT_EQ(z.coeff, Rational(16, 60));
    EXPECT_EQ(z.preview(), "0.837758040957");
    EXPECT_THROW(packing_density(LatticeKind::Z2, 3), DomainError);
    EXPECT_THROW(packing_density(LatticeKind::H2, 13), UnsupportedCase);
}

TEST(Density, FromSites) {
    // Every PGS packs one disk per sigma sites.
    for (auto [k, d2] : {std::pair{LatticeKind::A2, i64{13}}, std::pair{LatticeKind::H2, i64{21}},
                         std::pair{LatticeKind::H2, i64{25}}, std::pair{LatticeKind::Z2, i64{25}}}) {
        const auto c = pgs_catalog(k, d2);
        EXPECT_EQ(density_from_sites(k, d2, Rational(c.sigma)).coeff, packing_density(k, d2).coeff);
    }
}

TEST(Template, ContainedInEverySublattice) {
    for (auto [k, d2] : {std::pair{LatticeKind::A2, i64{4}}, std::pair{LatticeKind::A2, i64{49}},
                         std::pair{LatticeKind::Z2, i64{16}}, std::pair{LatticeKind::H2, i64{12}}}) {
        const auto t = template_lattice(k, d2);
        for (const auto& s : pgs_catalog(k, d2).all_sublattices()) EXPECT_TRUE(s.ambient.contains(t.lattice.ambient));
        EXPECT_EQ(t.sites_per_template, sites_per_cell(k, t.lattice.ambient));
    }
}

TEST(Realize, PgsOnCommensurateTorus) {
    const auto cat = pgs_catalog(LatticeKind::A2, 13);
    const auto t = Torus::from_ambient(LatticeKind::A2, template_lattice(LatticeKind::A2, 13).lattice.ambient);
    const auto states = realize_pgs_on_torus(cat, t);
    EXPECT_EQ(static_cast<i64>(states.size()), cat.pgs_count);
    const TorusGraph g(t, 13);
    std::set<Configuration> distinct(states.begin(), states.end());
    EXPECT_EQ(distinct.size(), states.size());
    for (const auto& s : states) {
        EXPECT_TRUE(g.admissible(s));
        EXPECT_EQ(static_cast<i64>(s.size()) * cat.sigma, t.site_count);
    }
    EXPECT_THROW(realize_pgs_on_torus(cat, Torus::square(LatticeKind::A2, 5)), CommensurabilityError);
}
