#include <gtest/gtest.h>

#include "hardcore/contour.hpp"

using namespace hardcore;

namespace {

Torus cells_torus(const PgsCatalog& cat, i64 side) {
    const Template t = detail::template_of(cat);
    return Torus::from_ambient(cat.kind, Lattice2::spanned_by(side * t.u, side * t.v));
}

Configuration remove_sites(Configuration c, const std::vector<int>& drop) {
    std::erase_if(c, [&](int i) { return std::find(drop.begin(), drop.end(), i) != drop.end(); });
    return c;
}

}  // namespace

TEST(Contours, PgsHasNone) {
    const auto cat = pgs_catalog(LatticeKind::A2, 4);
    const TemplateGrid g(cat, cells_torus(cat, 5));
    EXPECT_TRUE(extract_contours(g, g.pgs(2).sites).empty());
}

TEST(Contours, SingleVacancy) {
    const auto cat = pgs_catalog(LatticeKind::A2, 4);
    const TemplateGrid g(cat, cells_torus(cat, 6));
    const auto& phi = g.pgs(0).sites;
    const auto cs = extract_contours(g, remove_sites(phi, {phi[5]}));
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].support.size(), 9u);
    EXPECT_EQ(cs[0].external_phase, 0);
    EXPECT_TRUE(cs[0].internal_phases.empty());
    EXPECT_FALSE(cs[0].malformed);
    EXPECT_EQ(weight_exponent(g, cs[0]), -1);
}

TEST(Contours, TwoDistantVacancies) {
    const auto cat = pgs_catalog(LatticeKind::A2, 4);
    const TemplateGrid g(cat, cells_torus(cat, 8));
    const auto& phi = g.pgs(1).sites;
    const int a = phi.front();
    // a particle four cells away in both directions
    const Vec2 far = g.graph().position(a) + 4 * g.templ().u + 4 * g.templ().v;
    const int b = g.graph().index_of(far);
    ASSERT_TRUE(std::binary_search(phi.begin(), phi.end(), b));
    const auto cs = extract_contours(g, remove_sites(phi, {a, b}));
    ASSERT_EQ(cs.size(), 2u);
    for (const auto& c : cs) {
        EXPECT_EQ(c.support.size(), 9u);
        EXPECT_EQ(weight_exponent(g, c), -1);
    }
}

TEST(Contours, NestedPhase) {
    // A 6 x 6 cell island of one PGS inside another, conflicts removed
    // from the island side.
    const auto cat = pgs_catalog(LatticeKind::A2, 4);
    const TemplateGrid g(cat, cells_torus(cat, 14));
    const TorusGraph& tg = g.graph();
    const int c0 = g.cell_at({0, 0});
    std::vector<bool> island(static_cast<std::size_t>(g.cell_count()), false);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) island[static_cast<std::size_t>(g.shifted(c0, a, b))] = true;
    Configuration outer, inner;
    for (int i : g.pgs(0).sites)
        if (!island[static_cast<std::size_t>(g.cell_of(i))]) outer.push_back(i);
    const Bits outer_bits = tg.to_bits(outer);
    for (int i : g.pgs(3).sites)
        if (island[static_cast<std::size_t>(g.cell_of(i))] && !tg.conflicts(i).intersects(outer_bits)) inner.push_back(i);
    Configuration config = outer;
    config.insert(config.end(), inner.begin(), inner.end());
    std::sort(config.begin(), config.end());
    ASSERT_TRUE(tg.admissible(config));

    const auto cs = extract_contours(g, config);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs[0].external_phase, 0);
    ASSERT_EQ(cs[0].internal_phases.size(), 1u);
    EXPECT_EQ(cs[0].internal_phases[0].second, 3);
    EXPECT_FALSE(cs[0].internal_phases[0].first.empty());
    EXPECT_FALSE(cs[0].malformed);
    EXPECT_LT(weight_exponent(g, cs[0]), 0);
}

TEST(Contours, InsertionHasWeightMinusTwo) {
    const auto ins = enumerate_u2_insertions(LatticeKind::A2, 9, 0);
    ASSERT_GT(ins.total(), 0);
    ASSERT_FALSE(ins.insertions.empty());
    const auto cat = pgs_catalog(LatticeKind::A2, 9);
    const TemplateGrid g(cat, cells_torus(cat, 7));
    const TorusGraph& tg = g.graph();
    int phi = -1;
    for (int j = 0; j < g.pgs_count(); ++j)
        if (g.pgs(j).sublattice == 0 && g.pgs(j).anchor == Vec2{0, 0}) phi = j;
    ASSERT_GE(phi, 0);
    for (std::size_t n = 0; n < ins.insertions.size(); n += 7) {
        const auto& x = ins.insertions[n];
        std::vector<int> drop;
        for (const Vec2& r : x.removed) drop.push_back(tg.index_of(r));
        Configuration c = remove_sites(g.pgs(phi).sites, drop);
        for (const Vec2& a : x.added) c.push_back(tg.index_of(a));
        std::sort(c.begin(), c.end());
        ASSERT_TRUE(tg.admissible(c));
        const auto cs = extract_contours(g, c);
        ASSERT_EQ(cs.size(), 1u);
        EXPECT_EQ(cs[0].external_phase, phi);
        EXPECT_EQ(weight_exponent(g, cs[0]), -2);
    }
}

TEST(ContourExpansion, ReproducesPartitionFunction) {
    const auto cat = pgs_catalog(LatticeKind::A2, 4);
    const TemplateGrid g(cat, cells_torus(cat, 2));
    const auto e = contour_expansion(g);
    EXPECT_TRUE(e.equal()) << e.direct.to_string() << " vs " << e.from_contours.to_string();
    EXPECT_GT(e.collections, 0);
}

TEST(Peierls, SmallSupports) {
    const auto r = peierls_scan(LatticeKind::A2, 4, 2);
    EXPECT_TRUE(r.holds());
    EXPECT_EQ(r.min_ratio, Rational(1, 2));
    EXPECT_GT(r.supports, 1);
    EXPECT_THROW(peierls_scan(LatticeKind::A2, 4, 0), DomainError);
    PeierlsOptions o;
    o.budget = 10;
    EXPECT_THROW(peierls_scan(LatticeKind::A2, 4, 2, o), BudgetError);
}

TEST(Peierls, Diagnostics) {
    PeierlsReport r;
    r.d2 = 4;
    r.min_ratio = Rational(1, 6);
    const auto d = peierls_diagnostics(r);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_TRUE(d[0].second);   // 1/16
    EXPECT_TRUE(d[1].second);   // 1/8
    EXPECT_FALSE(d[2].second);  // 1/4
}

TEST(Insertions, Orientation) {
    const auto cat = pgs_catalog(LatticeKind::A2, 49);
    EXPECT_EQ(class_orientation(LatticeKind::A2, cat.classes[0]), "horizontal");
    EXPECT_EQ(class_orientation(LatticeKind::A2, cat.classes[1]), "inclined");
    const auto c147 = pgs_catalog(LatticeKind::A2, 147);
    std::set<std::string> seen;
    for (const auto& c : c147.classes) seen.insert(class_orientation(LatticeKind::A2, c));
    EXPECT_EQ(seen, (std::set<std::string>{"vertical", "inclined"}));
}

TEST(Insertions, ListMatchesCounts) {
    const auto r = enumerate_u2_insertions(LatticeKind::A2, 9, 0);
    std::map<int, std::int64_t> listed;
    for (const auto& x : r.insertions) {
        ++listed[x.order()];
        EXPECT_EQ(x.removed.size(), x.added.size() + 2);
    }
    for (const auto& [n, c] : listed) EXPECT_EQ(c, r.count(n));
    EXPECT_EQ(r.anomalies, 0);
    EXPECT_THROW(enumerate_u2_insertions(LatticeKind::A2, 9, 3), DomainError);
}

TEST(Dominance, UniqueClass) {
    const auto d = dominance_decision(LatticeKind::A2, 9);
    EXPECT_EQ(d.K, 1);
    EXPECT_TRUE(d.resolved);
    EXPECT_EQ(d.egd_count, 9);
    EXPECT_EQ(d.dominant, std::vector<int>{0});
}
