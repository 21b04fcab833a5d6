#pragma once

// Minimal-area non-obtuse Z^2 triangles with all sides at least D
// ("M-triangles"), their congruence classes and multiplicities.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

#include "hardcore/intlattice.hpp"
#include "hardcore/lattice.hpp"

namespace hardcore {

struct Triangle {
    std::array<Vec2, 3> vertices{};
    std::array<i64, 3> sides2{};  // ascending
    i64 doubled_area = 0;

    static Triangle from_vertices(Vec2 p, Vec2 q, Vec2 r) {
        Triangle t;
        t.vertices = {p, q, r};
        t.sides2 = {norm2(LatticeKind::Z2, q - p), norm2(LatticeKind::Z2, r - q), norm2(LatticeKind::Z2, p - r)};
        std::sort(t.sides2.begin(), t.sides2.end());
        t.doubled_area = hardcore::doubled_area(p, q, r);
        return t;
    }

    bool isosceles() const { return sides2[0] == sides2[1] || sides2[1] == sides2[2]; }

    friend bool operator==(const Triangle& a, const Triangle& b) { return a.vertices == b.vertices; }
    friend bool operator<(const Triangle& a, const Triangle& b) { return a.vertices < b.vertices; }
};

/// Sides at least d2 and no obtuse angle (right angles allowed).
inline bool feasible_triangle(i64 d2, Vec2 p, Vec2 q, Vec2 r) {
    const Vec2 e[3] = {q - p, r - q, p - r};
    for (const Vec2& v : e)
        if (norm2(LatticeKind::Z2, v) < d2) return false;
    // angle at p is between q-p and r-p, etc.
    const auto dot = [](Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; };
    if (dot(q - p, r - p) < 0) return false;
    if (dot(p - q, r - q) < 0) return false;
    if (dot(p - r, q - r) < 0) return false;
    return cross(q - p, r - p) != 0;
}

/// Orbit-minimal representative under the Z^2 point group and translations.
inline Triangle canonical(const Triangle& t) {
    std::array<Vec2, 3> best{};
    bool first = true;
    for (const auto& op : point_group(LatticeKind::Z2)) {
        std::array<Vec2, 3> w{op.apply(t.vertices[0]), op.apply(t.vertices[1]), op.apply(t.vertices[2])};
        std::sort(w.begin(), w.end());
        const Vec2 o = w[0];
        for (auto& x : w) x -= o;
        if (first || w < best) best = w;
        first = false;
    }
    return Triangle::from_vertices(best[0], best[1], best[2]);
}

/// Sublattice spanned by the edge vectors of a triangle.
inline Lattice2 triangle_lattice(const Triangle& t) {
    return Lattice2::spanned_by(t.vertices[1] - t.vertices[0], t.vertices[2] - t.vertices[0]);
}

inline int multiplicity_m(const Triangle& t, i64 d2) {
    if (d2 == 2) return 1;
    return t.isosceles() ? 2 : 4;
}

/// Distinct images of a lattice under the Z^2 point group.
inline std::vector<Lattice2> lattice_orbit(LatticeKind k, const Lattice2& l) {
    std::set<Lattice2> out;
    for (const auto& op : point_group(k)) out.insert(l.transformed(op));
    return {out.begin(), out.end()};
}

struct TriangleClass {
    Triangle representative;
    int m = 0;              // multiplicity rule
    int orbit_lattices = 0; // distinct MDA sublattices generated by the class
};

struct CongruencePartition {
    std::vector<TriangleClass> classes;
    int K = 0;
    int N0 = 0;  // most classes sharing one side multiset
    int N1 = 0;  // distinct side multisets
};

struct MTriangleReport {
    i64 d2 = 0;
    i64 S = 0;
    i64 search_bound2 = 0;  // longest side^2 searched
    std::vector<TriangleClass> classes;
    int K = 0, N0 = 0, N1 = 0;
};

inline CongruencePartition congruence_partition(const std::vector<Triangle>& triangles, i64 d2) {
    std::set<Triangle> reps;
    for (const auto& t : triangles) reps.insert(canonical(t));
    CongruencePartition out;
    std::map<std::array<i64, 3>, int> by_sides;
    for (const auto& r : reps) {
        TriangleClass c;
        c.representative = r;
        c.m = multiplicity_m(r, d2);
        c.orbit_lattices = static_cast<int>(lattice_orbit(LatticeKind::Z2, triangle_lattice(r)).size());
        out.classes.push_back(c);
        ++by_sides[r.sides2];
    }
    out.K = static_cast<int>(out.classes.size());
    out.N1 = static_cast<int>(by_sides.size());
    for (const auto& [s, n] : by_sides) out.N0 = std::max(out.N0, n);
    return out;
}

/// Exhaustive solver. A feasible right triangle with legs ceil(sqrt d2) gives
/// an upper bound S_ub on the doubled area. For any feasible triangle the
/// altitude h onto the longest side l satisfies h >= D / sqrt 2 (one base
/// angle is at least 45 degrees and both adjacent sides are at least D), so
/// l^2 = S^2 / h^2 <= 2 S_ub^2 / d2 bounds every edge vector.
inline MTriangleReport solve_problem5(i64 d2) {
    if (d2 < 2 || !attainable(LatticeKind::Z2, d2))
        throw DomainError("d2 = " + std::to_string(d2) + " is not attainable on Z2 (or < 2)");
    i64 k = detail::isqrt(d2);
    if (k * k < d2) ++k;
    const i64 s_ub = k * k;
    const i64 bound2 = (2 * s_ub * s_ub + d2 - 1) / d2;
    const i64 r = detail::isqrt(bound2) + 1;

    std::vector<Vec2> disk;
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y) {
            const i64 n = x * x + y * y;
            if (n >= d2 && n <= bound2) disk.push_back({x, y});
        }

    i64 best = s_ub;
    std::vector<Triangle> found;
    const Vec2 o{0, 0};
    for (const Vec2& u : disk)
        for (const Vec2& v : disk) {
            const i64 a = cross(u, v);
            if (a <= 0 || a > best) continue;
            if (norm2(LatticeKind::Z2, v - u) > bound2) continue;
            if (!feasible_triangle(d2, o, u, v)) continue;
            if (a < best) {
                best = a;
                found.clear();
            }
            found.push_back(Triangle::from_vertices(o, u, v));
        }

    MTriangleReport rep;
    rep.d2 = d2;
    rep.S = best;
    rep.search_bound2 = bound2;
    auto part = congruence_partition(found, d2);
    rep.classes = std::move(part.classes);
    rep.K = part.K;
    rep.N0 = part.N0;
    rep.N1 = part.N1;
    return rep;
}

}  // namespace hardcore
