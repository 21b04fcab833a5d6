#include <gtest/gtest.h>

#include "hardcore/mtriangle.hpp"

using namespace hardcore;

namespace {

// Naive minimum of the doubled area over a fixed box, independent of the
// solver's search bound: vertices (0,0), u, v with |coords| <= r.
i64 naive_min_area(i64 d2, i64 r, int* classes_out = nullptr) {
    i64 best = -1;
    std::set<std::array<Vec2, 3>> reps;
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b)
            for (i64 c = -r; c <= r; ++c)
                for (i64 d = -r; d <= r; ++d) {
                    const Vec2 o{0, 0}, u{a, b}, v{c, d};
                    const i64 s = cross(u, v);
                    if (s <= 0 || (best >= 0 && s > best)) continue;
                    if (!feasible_triangle(d2, o, u, v)) continue;
                    if (s < best || best < 0) {
                        best = s;
                        reps.clear();
                    }
                    reps.insert(canonical(Triangle::from_vertices(o, u, v)).vertices);
                }
    if (classes_out) *classes_out = static_cast<int>(reps.size());
    return best;
}

}  // namespace

TEST(MTriangle, Examples) {
    const auto r16 = solve_problem5(16);
    EXPECT_EQ(r16.S, 15);
    const auto r25 = solve_problem5(25);
    EXPECT_EQ(r25.S, 23);
    const auto r65 = solve_problem5(65);
    EXPECT_EQ(r65.S, 60);
    EXPECT_EQ(r65.K, 2);
    EXPECT_EQ(r65.N1, 2);
    const auto r425 = solve_problem5(425);
    EXPECT_EQ(r425.S, 375);
    EXPECT_EQ(r425.K, 2);
    EXPECT_EQ(r425.N1, 1);  // same side lengths, so congruent in the plane
}

TEST(MTriangle, NotAttainable) {
    EXPECT_THROW(solve_problem5(3), DomainError);
    EXPECT_THROW(solve_problem5(21), DomainError);
}

TEST(MTriangle, NaiveSearchTo200) {
    for (i64 d2 = 2; d2 <= 200; ++d2) {
        if (!attainable(LatticeKind::Z2, d2)) continue;
        const auto rep = solve_problem5(d2);
        // every edge of an optimum fits in the box |coord| <= sqrt(bound2)
        const i64 r = detail::isqrt(rep.search_bound2) + 1;
        if (r > 13) continue;  // the quartic scan gets slow beyond this
        int k = 0;
        EXPECT_EQ(naive_min_area(d2, r, &k), rep.S) << d2;
        EXPECT_EQ(k, rep.K) << d2;
    }
}

TEST(MTriangle, ClassesAreFeasibleAndMinimal) {
    for (i64 d2 : {16, 25, 65, 85, 130}) {
        const auto rep = solve_problem5(d2);
        for (const auto& c : rep.classes) {
            const auto& v = c.representative.vertices;
            EXPECT_TRUE(feasible_triangle(d2, v[0], v[1], v[2]));
            EXPECT_EQ(c.representative.doubled_area, rep.S);
            EXPECT_GE(c.orbit_lattices, 1);
        }
    }
}
