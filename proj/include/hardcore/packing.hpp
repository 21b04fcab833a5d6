#pragma once

// Oracle-backed checks: density formula on commensurate tori and band-shift
// sliding witnesses.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hardcore/oracle.hpp"
#include "hardcore/pgs.hpp"

namespace hardcore {

struct DensityTrial {
    Torus torus;
    int max_count = 0;
    Rational ratio{0};  // max_count / site_count
};

struct DensityCheck {
    bool ok = false;
    i64 sigma = 0;
    Rational expected{0};  // 1 / sigma
    std::vector<DensityTrial> trials;
};

/// Maximum packings on tori spanned by multiples (a l1, b l2) of a reduced
/// basis of one MDA sublattice. Every such torus carries a PGS, so the
/// maximum is at least n / sigma; equality on two sizes corroborates that no
/// denser periodic packing exists.
inline DensityCheck verify_density_formula(LatticeKind k, i64 d2, const OracleOptions& opt = {}) {
    const PgsCatalog cat = pgs_catalog(k, d2);
    const auto [l1, l2] = reduced_basis(k, cat.sublattice_reps.front().ambient);
    DensityCheck out;
    out.sigma = cat.sigma;
    out.expected = Rational(1, cat.sigma);
    const std::pair<i64, i64> shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}};
    std::set<i64> sizes;
    for (auto [a, b] : shapes) {
        const Torus t = Torus::from_ambient(k, Lattice2::spanned_by(a * l1, b * l2));
        if (t.site_count > opt.budget || sizes.count(t.site_count)) continue;
        const auto r = max_packing_torus(k, d2, t, false, opt);
        out.trials.push_back({t, r.max_count, Rational(r.max_count, t.site_count)});
        sizes.insert(t.site_count);
        if (out.trials.size() == 2) break;
    }
    out.ok = out.trials.size() >= 2;
    for (const auto& tr : out.trials)
        if (tr.ratio != out.expected) out.ok = false;
    return out;
}

// ---------------------------------------------------------------------------
// Sliding

struct SlidingWitness {
    Torus torus;
    int max_count = 0;
    Configuration base;     // a maximal packing
    Configuration shifted;  // the same packing with one row band moved
    Vec2 direction{};       // ambient row direction
    Vec2 shift{};           // ambient translation applied to the band
    std::vector<int> band;  // base sites forming the band
    int rows = 0;           // nonempty rows of the base packing
};

struct SlidingScan {
    Torus torus;
    int max_count = 0;
    int candidates = 0;  // maximal packings examined
    std::optional<SlidingWitness> witness;
};

namespace detail {

/// Row label of an ambient point for rows parallel to t on the torus.
inline i64 row_label(Vec2 t, Vec2 x, i64 modulus) { return floor_mod(cross(t, x), modulus); }

/// b = a + t for some torus translation t.
inline bool is_translate(const TorusGraph& g, const Configuration& a, const Configuration& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    const Bits target = g.to_bits(b);
    for (int j : b) {
        const Vec2 t = g.position(j) - g.position(a.front());
        if (!is_translation(g.kind(), t)) continue;
        bool all = true;
        for (int i : a) {
            const int k = g.translate(i, t);
            if (k < 0 || !target.test(static_cast<std::size_t>(k))) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

inline std::optional<SlidingWitness> try_shift(const TorusGraph& g, const Configuration& base, const Bits& occupied,
                                               const std::vector<int>& band, const std::vector<Vec2>& shifts) {
    Bits rest = occupied;
    for (int i : band) rest.reset(static_cast<std::size_t>(i));
    const Bits band_bits = g.to_bits(band);
    for (const Vec2& s : shifts) {
        Configuration moved;
        bool ok = true;
        Bits placed(static_cast<std::size_t>(g.size()));
        for (int i : band) {
            const int j = g.translate(i, s);
            if (j < 0 || rest.test(static_cast<std::size_t>(j)) || rest.intersects(g.conflicts(j)) ||
                placed.intersects(g.conflicts(j)) || placed.test(static_cast<std::size_t>(j))) {
                ok = false;
                break;
            }
            placed.set(static_cast<std::size_t>(j));
            moved.push_back(j);
        }
        if (!ok || placed == band_bits) continue;  // blocked, or band mapped onto itself
        Configuration shifted;
        for (std::size_t i = rest.first(); i < rest.size(); i = rest.next(i)) shifted.push_back(static_cast<int>(i));
        shifted.insert(shifted.end(), moved.begin(), moved.end());
        std::sort(shifted.begin(), shifted.end());
        if (shifted.size() != base.size() || !g.admissible(shifted)) continue;
        if (is_translate(g, base, shifted)) continue;  // a rigid motion of the whole packing
        SlidingWitness w;
        w.torus = g.torus();
        w.max_count = static_cast<int>(base.size());
        w.base = base;
        w.shifted = std::move(shifted);
        w.shift = s;
        w.band = band;
        return w;
    }
    return std::nullopt;
}

inline std::optional<SlidingWitness> band_shift(const TorusGraph& g, const Configuration& base, i64 reach2) {
    const LatticeKind k = g.kind();
    const Lattice2& p = g.periods();
    // Candidate row directions: primitive translations joining two particles.
    std::set<Vec2> dirs;
    for (int i : base)
        for (int j : base) {
            if (i == j) continue;
            Vec2 d = g.position(j) - g.position(i);
            d = p.reduce(d);
            // nearest image
            const auto [u, w] = reduced_basis(k, p);
            Vec2 best = d;
            for (i64 a = -2; a <= 2; ++a)
                for (i64 b = -2; b <= 2; ++b) {
                    const Vec2 c = d + a * u + b * w;
                    if (norm2(k, c) < norm2(k, best)) best = c;
                }
            if (!is_translation(k, best) || norm2(k, best) > reach2) continue;
            if (best < Vec2{0, 0}) best = -best;
            dirs.insert(best);
        }
    // Small translations used as band shifts.
    std::vector<Vec2> shifts;
    for (const Vec2& s : ball(k, reach2))
        if (s != Vec2{0, 0} && is_translation(k, s)) shifts.push_back(s);

    const Bits occupied = g.to_bits(base);
    for (const Vec2& t : dirs) {
        const i64 mod = std::gcd(std::llabs(cross(t, p.h1())), std::llabs(cross(t, p.h2())));
        if (mod == 0) continue;
        std::set<i64> label_set;
        for (int i : base) label_set.insert(row_label(t, g.position(i), mod));
        if (label_set.size() < 2) continue;
        // Rows in their cyclic order across the torus; a band is a cyclic
        // interval of consecutive rows.
        const std::vector<i64> labels(label_set.begin(), label_set.end());
        const std::size_t nr = labels.size();
        for (std::size_t len = 1; len < nr; ++len)
            for (std::size_t start = 0; start < nr; ++start) {
                if (len == nr - 1 && start > 0) break;  // complement of a single row: same as len 1
                std::set<i64> chosen;
                for (std::size_t q = 0; q < len; ++q) chosen.insert(labels[(start + q) % nr]);
                std::vector<int> band;
                for (int i : base)
                    if (chosen.count(row_label(t, g.position(i), mod))) band.push_back(i);
                if (auto w = try_shift(g, base, occupied, band, shifts)) {
                    w->direction = t;
                    w->rows = static_cast<int>(nr);
                    return w;
                }
            }
    }
    return std::nullopt;
}

}  // namespace detail

/// Default side length of the square witness torus: a multiple of the
/// exponent of the lattice-type packings, long enough for at least four rows
/// when the budget allows.
inline i64 default_strip_length(LatticeKind k, i64 d2, i64 budget = 600) {
    i64 e = 1;
    try {
        const PgsCatalog cat = detail::build_catalog(k, d2);
        Lattice2 t = cat.all_sublattices().front().ambient;
        for (const auto& s : cat.all_sublattices()) t = lattice_intersection(t, s.ambient);
        if (k == LatticeKind::H2)
            t = Lattice2::spanned_by(h2::ambient_to_translation(t.h1()), h2::ambient_to_translation(t.h2()));
        e = t.exponent();
    } catch (const DomainError&) {
    }
    const i64 per = k == LatticeKind::H2 ? 2 : 1;
    i64 r = detail::isqrt(d2);
    if (r * r < d2) ++r;
    i64 l = e;
    while (l < 4 * r && per * (l + e) * (l + e) <= budget) l += e;
    return l;
}

/// Searches maximal packings on an L x L torus for one whose particle rows
/// can be shifted independently: moving a single row band by a small
/// translation keeps the packing admissible and maximal. Candidates are the
/// lattice-type packings (when commensurate) plus the optimizer found by the
/// oracle.
inline SlidingScan sliding_witness(LatticeKind k, i64 d2, i64 strip_length = 0, const OracleOptions& opt = {}) {
    SlidingScan scan;
    if (strip_length > 0) {
        scan.torus = Torus::square(k, strip_length);
    } else {
        scan.torus = Torus::square(k, default_strip_length(k, d2, opt.budget));
        if (scan.torus.site_count > opt.budget) {
            // fall back to a single template cell when the square is too large
            try {
                const Torus t = Torus::from_ambient(k, detail::template_of(detail::build_catalog(k, d2)).lattice.ambient);
                if (t.site_count <= opt.budget) scan.torus = t;
            } catch (const DomainError&) {
            }
        }
    }
    if (scan.torus.site_count > opt.budget)
        throw BudgetError("witness torus exceeds the site budget", opt.budget);
    const TorusGraph g(scan.torus, d2);

    std::set<Configuration> candidates;
    {
        const auto r = max_packing_torus(k, d2, scan.torus, false, opt);
        scan.max_count = r.max_count;
        candidates.insert(r.example);
    }
    try {
        const PgsCatalog cat = detail::build_catalog(k, d2);
        const Lattice2 per = scan.torus.ambient_periods();
        for (const auto& c : cat.classes)
            for (const auto& s : c.sublattices) {
                if (!s.ambient.contains(per)) continue;
                Configuration conf;
                const Vec2 a = k == LatticeKind::H2 ? Vec2{1, 0} : Vec2{0, 0};
                for (int i = 0; i < g.size(); ++i)
                    if (s.ambient.contains(g.position(i) - a)) conf.push_back(i);
                if (static_cast<int>(conf.size()) == scan.max_count) candidates.insert(conf);
            }
    } catch (const DomainError&) {
    }
    const i64 reach2 = 4 * d2;
    for (const auto& c : candidates) {
        ++scan.candidates;
        if (auto w = detail::band_shift(g, c, reach2)) {
            scan.witness = std::move(w);
            break;
        }
    }
    return scan;
}

}  // namespace hardcore
