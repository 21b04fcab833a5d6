#pragma once

// Periodic boxes and the hard-core conflict graph on them.

#include <algorithm>
#include <string>
#include <vector>

#include "hardcore/bits.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/intlattice.hpp"
#include "hardcore/lattice.hpp"

namespace hardcore {

/// Periods p1, p2 are given in the lattice's translation basis.
struct Torus {
    LatticeKind kind = LatticeKind::Z2;
    Vec2i p1{1, 0};
    Vec2i p2{0, 1};
    i64 site_count = 1;

    static Torus make(LatticeKind k, Vec2i p1, Vec2i p2) {
        const i64 det = cross(p1, p2);
        if (det == 0) throw DomainError("torus periods are linearly dependent");
        const i64 n = (det < 0 ? -det : det) * (k == LatticeKind::H2 ? 2 : 1);
        return Torus{k, p1, p2, n};
    }

    static Torus square(LatticeKind k, i64 l) { return make(k, {l, 0}, {0, l}); }

    /// Periods as a sublattice of the ambient integer lattice.
    Lattice2 ambient_periods() const {
        return Lattice2::spanned_by(translation_vector(kind, p1), translation_vector(kind, p2));
    }

    /// Torus whose ambient periods are the given lattice.
    static Torus from_ambient(LatticeKind k, const Lattice2& l) {
        Vec2 a = l.h1(), b = l.h2();
        if (k == LatticeKind::H2) {
            if (!h2::is_translation(a) || !h2::is_translation(b))
                throw CommensurabilityError("period lattice is not made of honeycomb translations");
            a = h2::ambient_to_translation(a);
            b = h2::ambient_to_translation(b);
        }
        return make(k, a, b);
    }
};

/// Lattice sites of a torus, indexed 0..n-1, with the D-exclusion graph.
class TorusGraph {
public:
    TorusGraph(const Torus& t, i64 d2) : torus_(t), d2_(d2), periods_(t.ambient_periods()) {
        const i64 cells = periods_.index();
        slot_.assign(static_cast<std::size_t>(cells), -1);
        // Index sites row by row in the reduced period basis (u, w) so that
        // consecutive indices are spatially close.
        const auto [u, w] = reduced_basis(t.kind, periods_);
        const i64 det = cross(u, w);
        std::vector<std::pair<std::pair<i64, i64>, Vec2>> keyed;
        for (i64 c = 0; c < cells; ++c) {
            const Vec2 v = periods_.coset_rep(c);
            if (!is_lattice_point(t.kind, v)) continue;
            // coordinates of v in (u, w), scaled by det and reduced mod det
            const i64 cu = floor_mod(cross(v, w), det), cw = floor_mod(cross(u, v), det);
            keyed.push_back({{cw, cu}, v});
        }
        std::sort(keyed.begin(), keyed.end());
        for (const auto& [key, v] : keyed) {
            slot_[static_cast<std::size_t>(periods_.coset_index(v))] = static_cast<int>(pos_.size());
            pos_.push_back(v);
        }
        const std::size_t n = pos_.size();
        adj_.assign(n, Bits(n));
        nbrs_.assign(n, {});
        const auto stencil = exclusion_stencil(t.kind, d2);
        for (std::size_t i = 0; i < n; ++i) {
            for (const Vec2& v : stencil) {
                const Vec2 w = pos_[i] + v;
                if (!is_lattice_point(t.kind, w)) continue;
                const int j = index_of(w);
                if (j == static_cast<int>(i))
                    throw DomainError("torus too small for d2 = " + std::to_string(d2) +
                                      ": a site excludes its own periodic image");
                adj_[i].set(static_cast<std::size_t>(j));
            }
            for (std::size_t j = adj_[i].first(); j < n; j = adj_[i].next(j)) nbrs_[i].push_back(static_cast<int>(j));
        }
    }

    const Torus& torus() const { return torus_; }
    LatticeKind kind() const { return torus_.kind; }
    i64 d2() const { return d2_; }
    const Lattice2& periods() const { return periods_; }
    int size() const { return static_cast<int>(pos_.size()); }

    Vec2 position(int i) const { return pos_[static_cast<std::size_t>(i)]; }
    Site site(int i) const { return site_of(torus_.kind, position(i)); }

    /// Index of the torus site represented by an ambient point; -1 for hexagon centres.
    int index_of(Vec2 ambient) const { return slot_[static_cast<std::size_t>(periods_.coset_index(ambient))]; }
    int index_of(const Site& s) const { return index_of(embed(torus_.kind, s)); }

    const Bits& conflicts(int i) const { return adj_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& neighbours(int i) const { return nbrs_[static_cast<std::size_t>(i)]; }

    /// Translation representatives of the torus (ambient vectors).
    std::vector<Vec2> translations() const {
        std::vector<Vec2> out;
        for (i64 c = 0; c < periods_.index(); ++c) {
            const Vec2 v = periods_.coset_rep(c);
            if (is_translation(torus_.kind, v)) out.push_back(v);
        }
        return out;
    }

    int translate(int i, Vec2 t) const { return index_of(position(i) + t); }

    /// Site permutation induced by the translation t.
    std::vector<int> permutation(Vec2 t) const {
        std::vector<int> p(pos_.size());
        for (int i = 0; i < size(); ++i) p[static_cast<std::size_t>(i)] = translate(i, t);
        return p;
    }

    /// x -> (1,1) - x on the honeycomb, a site-swapping symmetry; identity elsewhere.
    int edge_inversion(int i) const {
        if (torus_.kind != LatticeKind::H2) return i;
        return index_of(Vec2{1, 1} - position(i));
    }

    /// Minimum squared distance over periodic images.
    i64 torus_distance2(int i, int j) const {
        const auto [u, w] = reduced_basis(torus_.kind, periods_);
        Vec2 d = position(j) - position(i);
        const i64 det = cross(u, w);
        d -= floor_div(2 * cross(d, w) + det, 2 * det) * u;
        d -= floor_div(2 * cross(u, d) + det, 2 * det) * w;
        i64 best = -1;
        for (i64 a = -2; a <= 2; ++a)
            for (i64 b = -2; b <= 2; ++b) {
                const i64 n = norm2(torus_.kind, d + a * u + b * w);
                if (best < 0 || n < best) best = n;
            }
        return best;
    }

    bool admissible(const std::vector<int>& occupied) const {
        Bits occ(pos_.size());
        for (int i : occupied) {
            if (occ.test(static_cast<std::size_t>(i))) return false;
            occ.set(static_cast<std::size_t>(i));
        }
        for (int i : occupied)
            if (adj_[static_cast<std::size_t>(i)].intersects(occ)) return false;
        return true;
    }

    Bits to_bits(const std::vector<int>& occupied) const {
        Bits b(pos_.size());
        for (int i : occupied) b.set(static_cast<std::size_t>(i));
        return b;
    }

private:
    Torus torus_;
    i64 d2_;
    Lattice2 periods_;
    std::vector<Vec2> pos_;
    std::vector<int> slot_;
    std::vector<Bits> adj_;
    std::vector<std::vector<int>> nbrs_;
};

/// Occupied torus sites, sorted ascending.
using Configuration = std::vector<int>;

}  // namespace hardcore
