#pragma once

// Full-rank sublattices of Z^2 in Hermite normal form.

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardcore/lattice.hpp"

namespace hardcore {

/// A full-rank sublattice of Z^2 stored by its unique Hermite basis
/// h1 = (a, b), h2 = (0, c) with a > 0, c > 0 and 0 <= b < c.
class Lattice2 {
public:
    Lattice2() = default;

    static Lattice2 from_generators(std::vector<Vec2> rows) {
        // Euclid on the first column until a single row carries it.
        for (;;) {
            std::size_t pivot = rows.size();
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i].x != 0 && (pivot == rows.size() || std::llabs(rows[i].x) < std::llabs(rows[pivot].x)))
                    pivot = i;
            if (pivot == rows.size()) throw DomainError("generators do not span a full-rank lattice");
            bool done = true;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == pivot || rows[i].x == 0) continue;
                const i64 q = rows[i].x / rows[pivot].x;
                rows[i] -= q * rows[pivot];
                if (rows[i].x != 0) done = false;
            }
            if (done) {
                Vec2 h = rows[pivot];
                i64 c = 0;
                for (std::size_t i = 0; i < rows.size(); ++i)
                    if (i != pivot) c = std::gcd(c, std::llabs(rows[i].y));
                if (c == 0) throw DomainError("generators do not span a full-rank lattice");
                if (h.x < 0) h = -h;
                h.y = floor_mod(h.y, c);
                Lattice2 l;
                l.a_ = h.x;
                l.b_ = h.y;
                l.c_ = c;
                return l;
            }
        }
    }

    static Lattice2 spanned_by(Vec2 u, Vec2 v) { return from_generators({u, v}); }

    /// Z^2 scaled by n.
    static Lattice2 scaled(i64 n) { return from_generators({{n, 0}, {0, n}}); }

    Vec2 h1() const { return {a_, b_}; }
    Vec2 h2() const { return {0, c_}; }
    i64 index() const { return a_ * c_; }

    bool contains(Vec2 v) const {
        if (floor_mod(v.x, a_) != 0) return false;
        const Vec2 w = v - (v.x / a_) * h1();
        return floor_mod(w.y, c_) == 0;
    }

    bool contains(const Lattice2& other) const { return contains(other.h1()) && contains(other.h2()); }

    /// Canonical coset representative: 0 <= x < a, 0 <= y < c.
    Vec2 reduce(Vec2 v) const {
        const i64 k = floor_div(v.x, a_);
        Vec2 w = v - k * h1();
        w.y = floor_mod(w.y, c_);
        return w;
    }

    /// Dense index of a coset representative in [0, index()).
    i64 coset_index(Vec2 v) const {
        const Vec2 r = reduce(v);
        return r.x * c_ + r.y;
    }

    Vec2 coset_rep(i64 idx) const { return {idx / c_, idx % c_}; }

    Lattice2 transformed(const SymmetryOp& op) const {
        return from_generators({op.apply(h1()), op.apply(h2())});
    }

    /// Smallest positive e with e*Z^2 contained in the lattice.
    i64 exponent() const {
        for (i64 e = 1; e <= index(); ++e)
            if (contains(Vec2{e, 0}) && contains(Vec2{0, e})) return e;
        return index();
    }

    friend bool operator==(const Lattice2& l, const Lattice2& r) {
        return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_;
    }
    friend bool operator<(const Lattice2& l, const Lattice2& r) {
        if (l.a_ != r.a_) return l.a_ < r.a_;
        if (l.c_ != r.c_) return l.c_ < r.c_;
        return l.b_ < r.b_;
    }

private:
    i64 a_ = 1, b_ = 0, c_ = 1;
};

/// Sum L1 + L2.
inline Lattice2 lattice_sum(const Lattice2& l1, const Lattice2& l2) {
    return Lattice2::from_generators({l1.h1(), l1.h2(), l2.h1(), l2.h2()});
}

namespace detail {

// N * B^{-T} for the Hermite basis matrix B (rows h1, h2); integral when
// index(L) divides N. Rows of the result generate N * L^dual.
inline std::vector<Vec2> scaled_dual_rows(const Lattice2& l, i64 n) {
    const Vec2 h1 = l.h1(), h2 = l.h2();
    const i64 det = cross(h1, h2);
    const i64 s = n / det;
    // B = [[h1.x, h1.y], [h2.x, h2.y]] as rows; dual basis vectors d_i with
    // h_i . d_j = delta_ij: d1 = (h2.y, -h2.x)/det, d2 = (-h1.y, h1.x)/det.
    return {Vec2{s * h2.y, -s * h2.x}, Vec2{-s * h1.y, s * h1.x}};
}

}  // namespace detail

/// L1 ∩ L2 via the dual: (L1 ∩ L2)^dual = L1^dual + L2^dual, computed in
/// the integer scaling N = lcm of the indices.
inline Lattice2 lattice_intersection(const Lattice2& l1, const Lattice2& l2) {
    const i64 n = std::lcm(l1.index(), l2.index());
    auto rows = detail::scaled_dual_rows(l1, n);
    const auto more = detail::scaled_dual_rows(l2, n);
    rows.insert(rows.end(), more.begin(), more.end());
    const Lattice2 m = Lattice2::from_generators(rows);  // N * (L1* + L2*)
    // L1 ∩ L2 = (M/N)^dual = N * M^dual = (N/det M) * adj rows.
    const Vec2 g1 = m.h1(), g2 = m.h2();
    const i64 det = cross(g1, g2);
    const Vec2 d1{n * g2.y, -n * g2.x};
    const Vec2 d2{-n * g1.y, n * g1.x};
    if (d1.x % det || d1.y % det || d2.x % det || d2.y % det)
        throw std::logic_error("lattice_intersection: non-integral result");
    return Lattice2::spanned_by(Vec2{d1.x / det, d1.y / det}, Vec2{d2.x / det, d2.y / det});
}

/// Lagrange-Gauss reduced basis (shortest vectors first) under the lattice
/// kind's quadratic form. Returned basis has positive orientation.
inline std::pair<Vec2, Vec2> reduced_basis(LatticeKind k, const Lattice2& l) {
    Vec2 u = l.h1(), v = l.h2();
    if (norm2(k, u) > norm2(k, v)) std::swap(u, v);
    for (;;) {
        // v <- v - round(<u,v>/<u,u>) u
        const i64 num = dot2(k, u, v);
        const i64 den = 2 * norm2(k, u);
        const i64 q = floor_div(2 * num + den, 2 * den);
        v -= q * u;
        if (norm2(k, v) >= norm2(k, u)) break;
        std::swap(u, v);
    }
    if (cross(u, v) < 0) v = -v;
    return {u, v};
}

/// Minimal nonzero squared length of the lattice.
inline i64 minimal_norm(LatticeKind k, const Lattice2& l) {
    return norm2(k, reduced_basis(k, l).first);
}

/// Coordinates of v in the basis (u, w), if integral.
inline std::optional<std::pair<i64, i64>> coordinates_in(Vec2 u, Vec2 w, Vec2 v) {
    const i64 det = cross(u, w);
    const i64 p = cross(v, w), q = cross(u, v);
    if (p % det || q % det) return std::nullopt;
    return std::pair<i64, i64>{p / det, q / det};
}

}  // namespace hardcore
