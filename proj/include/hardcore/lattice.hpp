#pragma once

// Exact geometry of the unit triangular (A2), honeycomb (H2) and square (Z2)
// lattices.
//
// Every lattice lives inside an "ambient" integer lattice: Z^2 with the form
// x^2 + y^2 for Z2, and the triangular Bravais lattice with basis
// e1 = (1, 0), e2 = (1/2, sqrt(3)/2) and form x^2 + xy + y^2 for A2 and H2.
// The honeycomb is the triangular lattice with the index-3 sublattice
// {x = y mod 3} (the hexagon centres) removed, so nearest neighbours sit at
// distance 1 and every squared distance is an exact integer.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hardcore/errors.hpp"

namespace hardcore {

using i64 = std::int64_t;

enum class LatticeKind { A2, H2, Z2 };

inline std::string_view to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::A2: return "A2";
        case LatticeKind::H2: return "H2";
        case LatticeKind::Z2: return "Z2";
    }
    return "?";
}

inline LatticeKind parse_lattice(std::string_view s) {
    std::string t(s);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "a2") return LatticeKind::A2;
    if (t == "h2") return LatticeKind::H2;
    if (t == "z2") return LatticeKind::Z2;
    throw DomainError("unknown lattice '" + std::string(s) + "' (expected a2, h2 or z2)");
}

struct Vec2 {
    i64 x = 0;
    i64 y = 0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(i64 k, Vec2 a) { return {k * a.x, k * a.y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    friend constexpr auto operator<=>(const Vec2&, const Vec2&) = default;
};

/// Displacement expressed in the lattice's own translation basis.
using Vec2i = Vec2;

constexpr i64 cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Squared Euclidean length of an ambient vector (unit edge length).
constexpr i64 norm2(LatticeKind k, Vec2 v) {
    return k == LatticeKind::Z2 ? v.x * v.x + v.y * v.y : v.x * v.x + v.x * v.y + v.y * v.y;
}

/// Euclidean inner product of two ambient vectors, doubled so that it stays
/// integral on the triangular lattice.
constexpr i64 dot2(LatticeKind k, Vec2 a, Vec2 b) {
    if (k == LatticeKind::Z2) return 2 * (a.x * b.x + a.y * b.y);
    return 2 * a.x * b.x + a.x * b.y + a.y * b.x + 2 * a.y * b.y;
}

/// Cartesian coordinates of an ambient vector, for rendering only.
inline std::array<double, 2> to_cartesian(LatticeKind k, Vec2 v) {
    if (k == LatticeKind::Z2) return {double(v.x), double(v.y)};
    return {double(v.x) + 0.5 * double(v.y), 0.86602540378443864676 * double(v.y)};
}

constexpr i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr i64 floor_mod(i64 a, i64 b) { return a - floor_div(a, b) * b; }

// ---------------------------------------------------------------------------
// Honeycomb embedding

namespace h2 {

/// Translation basis of the honeycomb in ambient coordinates.
inline constexpr Vec2 t1{2, -1};
inline constexpr Vec2 t2{1, 1};

/// Ambient offsets of the two basis sites.
inline constexpr std::array<Vec2, 2> offset{Vec2{1, 0}, Vec2{0, 1}};

/// Ambient point belongs to the honeycomb (is not a hexagon centre).
constexpr bool is_site(Vec2 v) { return floor_mod(v.x - v.y, 3) != 0; }

/// Ambient vector lies in the honeycomb translation lattice.
constexpr bool is_translation(Vec2 v) { return floor_mod(v.x - v.y, 3) == 0; }

constexpr int parity_of(Vec2 v) { return floor_mod(v.x - v.y, 3) == 1 ? 0 : 1; }

constexpr Vec2 translation_to_ambient(Vec2i t) { return t.x * t1 + t.y * t2; }

constexpr Vec2i ambient_to_translation(Vec2 v) {
    // a*(2,-1) + b*(1,1) = (x, y)  =>  a = (x - y) / 3, b = y + a
    const i64 a = (v.x - v.y) / 3;
    return {a, v.y + a};
}

}  // namespace h2

// ---------------------------------------------------------------------------
// Sites

struct Site {
    i64 a = 0;
    i64 b = 0;
    int parity = 0;

    friend constexpr auto operator<=>(const Site&, const Site&) = default;
};

inline void validate(LatticeKind k, const Site& s) {
    if (s.parity != 0 && s.parity != 1) throw InvalidSite("site parity must be 0 or 1");
    if (k != LatticeKind::H2 && s.parity != 0)
        throw InvalidSite(std::string("parity must be 0 on ") + std::string(to_string(k)));
}

inline Vec2 embed(LatticeKind k, const Site& s) {
    validate(k, s);
    if (k != LatticeKind::H2) return {s.a, s.b};
    return h2::translation_to_ambient({s.a, s.b}) + h2::offset[s.parity];
}

inline Site site_of(LatticeKind k, Vec2 v) {
    if (k != LatticeKind::H2) return {v.x, v.y, 0};
    if (!h2::is_site(v)) throw InvalidSite("ambient point is a hexagon centre, not a honeycomb site");
    const int p = h2::parity_of(v);
    const Vec2i t = h2::ambient_to_translation(v - h2::offset[p]);
    return {t.x, t.y, p};
}

/// Ambient points of the lattice kind (membership test).
inline bool is_lattice_point(LatticeKind k, Vec2 v) {
    return k != LatticeKind::H2 || h2::is_site(v);
}

/// Ambient vectors that are translation symmetries of the lattice.
inline bool is_translation(LatticeKind k, Vec2 v) {
    return k != LatticeKind::H2 || h2::is_translation(v);
}

/// Translation-basis displacement to ambient displacement.
inline Vec2 translation_vector(LatticeKind k, Vec2i t) {
    return k == LatticeKind::H2 ? h2::translation_to_ambient(t) : t;
}

inline i64 squared_distance(LatticeKind k, const Site& s, const Site& t) {
    return norm2(k, embed(k, t) - embed(k, s));
}

/// Twice the area of triangle pqr, in units of the ambient fundamental cell.
inline i64 doubled_area(Vec2 p, Vec2 q, Vec2 r) {
    const i64 c = cross(q - p, r - p);
    return c < 0 ? -c : c;
}

inline i64 doubled_area(LatticeKind k, const Site& p, const Site& q, const Site& r) {
    return doubled_area(embed(k, p), embed(k, q), embed(k, r));
}

// ---------------------------------------------------------------------------
// Point groups

/// Integer matrix acting on ambient column vectors: (m00 m01; m10 m11).
struct SymmetryOp {
    i64 m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    bool flips_parity = false;

    constexpr Vec2 apply(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
    constexpr i64 det() const { return m00 * m11 - m01 * m10; }

    friend constexpr SymmetryOp operator*(const SymmetryOp& a, const SymmetryOp& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11,
                a.flips_parity != b.flips_parity};
    }
    friend constexpr bool operator==(const SymmetryOp& a, const SymmetryOp& b) {
        return a.m00 == b.m00 && a.m01 == b.m01 && a.m10 == b.m10 && a.m11 == b.m11;
    }
};

namespace detail {

inline std::vector<SymmetryOp> close_group(std::vector<SymmetryOp> gens) {
    std::vector<SymmetryOp> g{SymmetryOp{}};
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& s : gens) {
            SymmetryOp p = s * g[i];
            if (std::find(g.begin(), g.end(), p) == g.end()) g.push_back(p);
        }
    }
    return g;
}

}  // namespace detail

/// Point group fixing the origin: order 8 on Z2, order 12 on A2 and H2. For
/// H2 the origin is a hexagon centre; rotations by odd multiples of 60 degrees
/// and the reflections through vertices swap the two sublattices.
inline const std::vector<SymmetryOp>& point_group(LatticeKind k) {
    static const std::vector<SymmetryOp> square = detail::close_group(
        {SymmetryOp{0, -1, 1, 0}, SymmetryOp{1, 0, 0, -1}});
    static const std::vector<SymmetryOp> tri = [] {
        auto g = detail::close_group({SymmetryOp{0, -1, 1, 1}, SymmetryOp{0, 1, 1, 0}});
        for (auto& op : g) {
            // (x - y) mod 3 is either preserved or negated.
            const Vec2 img = op.apply({1, 0});
            op.flips_parity = floor_mod(img.x - img.y, 3) != 1;
        }
        return g;
    }();
    return k == LatticeKind::Z2 ? square : tri;
}

/// Orbit of a displacement under the point group. For H2, v is in the
/// translation basis and so are the images.
inline std::set<Vec2i> symmetry_images(LatticeKind k, Vec2i v) {
    std::set<Vec2i> out;
    const Vec2 amb = translation_vector(k, v);
    for (const auto& op : point_group(k)) {
        const Vec2 w = op.apply(amb);
        out.insert(k == LatticeKind::H2 ? h2::ambient_to_translation(w) : w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Representable squared lengths

namespace detail {

inline i64 isqrt(i64 n) {
    if (n < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace detail

/// All (a, b) with 0 <= a <= b and a^2+ab+b^2 = d2 (A2, H2) or a^2+b^2 = d2
/// (Z2), sorted by a.
inline std::vector<std::pair<i64, i64>> diophantine_solutions(LatticeKind k, i64 d2) {
    std::vector<std::pair<i64, i64>> out;
    if (d2 < 1) return out;
    if (k == LatticeKind::Z2) {
        for (i64 a = 0; 2 * a * a <= d2; ++a) {
            const i64 r = d2 - a * a;
            const i64 b = detail::isqrt(r);
            if (b * b == r && b >= a) out.emplace_back(a, b);
        }
    } else {
        // b = (-a + sqrt(4 d2 - 3 a^2)) / 2
        for (i64 a = 0; 3 * a * a <= d2; ++a) {
            const i64 disc = 4 * d2 - 3 * a * a;
            const i64 s = detail::isqrt(disc);
            if (s * s != disc || (s - a) % 2 != 0) continue;
            const i64 b = (s - a) / 2;
            if (b >= a && a * a + a * b + b * b == d2) out.emplace_back(a, b);
        }
    }
    return out;
}

inline bool attainable(LatticeKind k, i64 d2) { return !diophantine_solutions(k, d2).empty(); }

// ---------------------------------------------------------------------------
// Geometry helpers shared by the enumerators

/// All nonzero ambient vectors with squared length strictly below d2: the
/// exclusion stencil of the hard-core constraint.
inline std::vector<Vec2> exclusion_stencil(LatticeKind k, i64 d2) {
    std::vector<Vec2> out;
    const i64 r = detail::isqrt(4 * d2) + 2;
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y) {
            const Vec2 v{x, y};
            const i64 n = norm2(k, v);
            if (n > 0 && n < d2) out.push_back(v);
        }
    return out;
}

/// Ambient vectors with squared length at most r2 (including zero).
inline std::vector<Vec2> ball(LatticeKind k, i64 r2) {
    std::vector<Vec2> out;
    const i64 r = detail::isqrt(4 * r2) + 2;
    for (i64 x = -r; x <= r; ++x)
        for (i64 y = -r; y <= r; ++y)
            if (norm2(k, {x, y}) <= r2) out.push_back({x, y});
    return out;
}

}  // namespace hardcore
