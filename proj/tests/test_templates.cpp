#include <gtest/gtest.h>

#include "hardcore/templates.hpp"

using namespace hardcore;

namespace {

Torus cells_torus(const PgsCatalog& cat, i64 side) {
    const Template t = detail::template_of(cat);
    return Torus::from_ambient(cat.kind, Lattice2::spanned_by(side * t.u, side * t.v));
}

}  // namespace

TEST(TemplateGrid, CellsTileTheTorus) {
    for (auto [k, d2] : {std::pair{LatticeKind::A2, i64{4}}, std::pair{LatticeKind::A2, i64{13}},
                         std::pair{LatticeKind::H2, i64{12}}, std::pair{LatticeKind::Z2, i64{5}}}) {
        const auto cat = pgs_catalog(k, d2);
        const TemplateGrid g(cat, cells_torus(cat, 4));
        EXPECT_EQ(g.cell_count(), 16);
        int total = 0;
        for (int c = 0; c < g.cell_count(); ++c) {
            EXPECT_EQ(static_cast<i64>(g.cell_mask(c).count()), g.templ().sites_per_template);
            total += static_cast<int>(g.cell_mask(c).count());
            EXPECT_EQ(g.neighbours8(c).size(), 8u);
            EXPECT_EQ(g.neighbours4(c).size(), 4u);
            EXPECT_EQ(g.shifted(g.shifted(c, 1, -2), -1, 2), c);
        }
        EXPECT_EQ(total, g.graph().size());
        EXPECT_EQ(g.pgs_count(), cat.pgs_count);
    }
}

TEST(TemplateGrid, RejectsIncommensurateTorus) {
    const auto cat = pgs_catalog(LatticeKind::A2, 13);
    EXPECT_THROW(TemplateGrid(cat, Torus::square(LatticeKind::A2, 10)), CommensurabilityError);
}

TEST(CorrectTemplates, PgsHasNoFrustration) {
    const auto cat = pgs_catalog(LatticeKind::A2, 7);
    const TemplateGrid g(cat, cells_torus(cat, 3));
    for (int phi = 0; phi < g.pgs_count(); ++phi) {
        const auto ct = correct_templates(g, g.pgs(phi).sites);
        EXPECT_EQ(ct.frustrated_count, 0);
        const auto op = order_parameter(g, g.pgs(phi).sites);
        for (int j = 0; j < g.pgs_count(); ++j) EXPECT_DOUBLE_EQ(op[static_cast<std::size_t>(j)], j == phi ? 1.0 : 0.0);
    }
}

TEST(CorrectTemplates, EmptyConfigurationIsFullyFrustrated) {
    const auto cat = pgs_catalog(LatticeKind::Z2, 5);
    const TemplateGrid g(cat, cells_torus(cat, 3));
    EXPECT_EQ(correct_templates(g, {}).frustrated_count, g.cell_count());
}
