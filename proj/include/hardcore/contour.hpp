#pragma once

// Contours of configurations on template grids, Peierls scanning, and
// leading-order (u^-2) insertion counting for dominance.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hardcore/gibbs.hpp"
#include "hardcore/oracle.hpp"
#include "hardcore/pgs.hpp"
#include "hardcore/templates.hpp"

namespace hardcore {

struct ContourData {
    std::vector<int> support;  // template cells, ascending
    Configuration psi;         // occupied sites inside the support
    int external_phase = -1;   // PGS index on the grid, -1 when there is no exterior
    std::vector<std::pair<std::vector<int>, int>> internal_phases;  // (cells, PGS index)
    bool covers_torus = false;       // the support has empty complement
    bool ambiguous_exterior = false; // several largest complement components
    bool malformed = false;
    std::string problem;
};

namespace detail {

inline Bits cells_mask(const TemplateGrid& g, const std::vector<int>& cells) {
    Bits m(static_cast<std::size_t>(g.graph().size()));
    for (int c : cells) m |= g.cell_mask(c);
    return m;
}

inline std::vector<int> bits_to_sites(const Bits& b) {
    std::vector<int> out;
    for (std::size_t i = b.first(); i < b.size(); i = b.next(i)) out.push_back(static_cast<int>(i));
    return out;
}

/// Components of the cells flagged in `in`, under 8- or 4-adjacency.
inline std::vector<std::vector<int>> cell_components(const TemplateGrid& g, const std::vector<bool>& in, bool eight) {
    const int nc = g.cell_count();
    std::vector<int> comp(static_cast<std::size_t>(nc), -1);
    std::vector<std::vector<int>> out;
    for (int c = 0; c < nc; ++c) {
        if (!in[static_cast<std::size_t>(c)] || comp[static_cast<std::size_t>(c)] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{c};
        comp[static_cast<std::size_t>(c)] = id;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            out.back().push_back(x);
            for (int y : eight ? g.neighbours8(x) : g.neighbours4(x))
                if (in[static_cast<std::size_t>(y)] && comp[static_cast<std::size_t>(y)] < 0) {
                    comp[static_cast<std::size_t>(y)] = id;
                    stack.push_back(y);
                }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

/// The PGS correct on every cell of `comp` adjacent to the support, or -1.
inline int adjacent_phase(const TemplateGrid& g, const CorrectTemplates& ct, const std::vector<bool>& in_support,
                          const std::vector<int>& comp) {
    std::vector<int> border;
    for (int c : comp)
        for (int d : g.neighbours8(c))
            if (in_support[static_cast<std::size_t>(d)]) {
                border.push_back(c);
                break;
            }
    for (int phi = 0; phi < g.pgs_count(); ++phi) {
        bool ok = true;
        for (int c : border) ok = ok && ct.correct[static_cast<std::size_t>(phi)][static_cast<std::size_t>(c)];
        if (ok) return phi;
    }
    return -1;
}

}  // namespace detail

/// Connected components (8-adjacency) of the frustrated set with their
/// phases. The complement of a support splits into 4-connected components;
/// the exterior is the one with the most cells.
inline std::vector<ContourData> extract_contours(const TemplateGrid& g, const Configuration& config) {
    const CorrectTemplates ct = correct_templates(g, config);
    const Bits occ = g.graph().to_bits(config);
    const int nc = g.cell_count();
    std::vector<ContourData> out;
    for (const auto& support : detail::cell_components(g, ct.frustrated, true)) {
        ContourData gamma;
        gamma.support = support;
        gamma.psi = detail::bits_to_sites(occ & detail::cells_mask(g, support));
        std::vector<bool> in(static_cast<std::size_t>(nc), false), rest(static_cast<std::size_t>(nc), true);
        for (int c : support) {
            in[static_cast<std::size_t>(c)] = true;
            rest[static_cast<std::size_t>(c)] = false;
        }
        auto comps = detail::cell_components(g, rest, false);
        if (comps.empty()) {
            gamma.covers_torus = true;
            out.push_back(std::move(gamma));
            continue;
        }
        std::size_t ext = 0;
        for (std::size_t i = 1; i < comps.size(); ++i)
            if (comps[i].size() > comps[ext].size()) ext = i;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (i != ext && comps[i].size() == comps[ext].size()) gamma.ambiguous_exterior = true;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const int phi = detail::adjacent_phase(g, ct, in, comps[i]);
            if (phi < 0) {
                gamma.malformed = true;
                gamma.problem = "no PGS is correct on the templates adjacent to complement component " +
                                std::to_string(i);
            }
            if (i == ext)
                gamma.external_phase = phi;
            else
                gamma.internal_phases.emplace_back(comps[i], phi);
        }
        out.push_back(std::move(gamma));
    }
    return out;
}

/// #psi_Gamma - #(phi restricted to the support). phi < 0 selects the
/// external phase of the contour.
inline int weight_exponent(const TemplateGrid& g, const ContourData& gamma, int phi = -1) {
    if (phi < 0) phi = gamma.external_phase;
    if (phi < 0 || phi >= g.pgs_count()) throw DomainError("contour has no exterior phase; pass one explicitly");
    const Bits ref = g.pgs_bits(phi) & detail::cells_mask(g, gamma.support);
    return static_cast<int>(gamma.psi.size()) - static_cast<int>(ref.count());
}

// ---------------------------------------------------------------------------
// Contour representation of the partition function on a small torus

struct ContourExpansion {
    PartitionPolynomial from_contours;
    PartitionPolynomial direct;
    std::int64_t collections = 0;  // compatible contour collections with phase labels
    bool equal() const { return from_contours == direct; }
};

namespace detail {

inline void independent_subsets(const TorusGraph& g, const std::vector<int>& sites, std::size_t from, Bits& blocked,
                                Configuration& cur, std::vector<Configuration>& out, std::size_t limit) {
    out.push_back(cur);
    if (out.size() > limit) throw BudgetError("too many configurations on a contour support", static_cast<i64>(limit));
    for (std::size_t k = from; k < sites.size(); ++k) {
        const int s = sites[k];
        if (blocked.test(static_cast<std::size_t>(s))) continue;
        const Bits saved = blocked;
        blocked |= g.conflicts(s);
        blocked.set(static_cast<std::size_t>(s));
        cur.push_back(s);
        independent_subsets(g, sites, k + 1, blocked, cur, out, limit);
        cur.pop_back();
        blocked = saved;
    }
}

}  // namespace detail

/// Generates contour collections independently of configurations: a
/// frustrated set S, a configuration psi on S, and a PGS label for every
/// complement component. A collection is compatible when the configuration
/// it assembles is admissible and extracts back to exactly S, psi and the
/// labels. Its term is u^{#phi_ext} times prod w(Gamma) with the bookkeeping
/// factors for interior phases. A support covering the whole torus has no
/// exterior; its term u^{#psi} does not depend on phi and is counted once.
inline ContourExpansion contour_expansion(const TemplateGrid& g, std::size_t limit = 1u << 22) {
    const int nc = g.cell_count();
    if (nc > 16) throw BudgetError("contour expansion is limited to 16 template cells", 16);
    const TorusGraph& tg = g.graph();
    ContourExpansion out;
    out.direct = partition_polynomial(Region::torus(tg), GibbsOptions{1 << 20, 1 << 20});
    std::vector<BigInt>& acc = out.from_contours.c;
    auto add_term = [&](std::size_t e) {
        if (acc.size() <= e) acc.resize(e + 1, BigInt(0));
        acc[e] += 1;
        ++out.collections;
    };
    auto count_in = [&](int phi, const std::vector<int>& cells) {
        return static_cast<int>((g.pgs_bits(phi) & detail::cells_mask(g, cells)).count());
    };

    for (std::uint32_t mask = 0; mask < (1u << nc); ++mask) {
        std::vector<bool> in(static_cast<std::size_t>(nc)), rest(static_cast<std::size_t>(nc));
        std::vector<int> scells;
        for (int c = 0; c < nc; ++c) {
            in[static_cast<std::size_t>(c)] = (mask >> c) & 1U;
            rest[static_cast<std::size_t>(c)] = !in[static_cast<std::size_t>(c)];
            if (in[static_cast<std::size_t>(c)]) scells.push_back(c);
        }
        const Bits smask = detail::cells_mask(g, scells);
        const std::vector<int> ssites = detail::bits_to_sites(smask);
        std::vector<Configuration> psis;
        {
            Bits blocked(static_cast<std::size_t>(tg.size()));
            Configuration cur;
            detail::independent_subsets(tg, ssites, 0, blocked, cur, psis, limit);
        }
        const auto comps = detail::cell_components(g, rest, false);
        std::size_t ext = 0;
        for (std::size_t i = 1; i < comps.size(); ++i)
            if (comps[i].size() > comps[ext].size()) ext = i;
        std::size_t labelings = 1;
        for (std::size_t i = 0; i < comps.size(); ++i) labelings *= static_cast<std::size_t>(g.pgs_count());

        for (const auto& psi : psis) {
            for (std::size_t lab = 0; lab < labelings; ++lab) {
                std::vector<int> phase(comps.size());
                std::size_t r = lab;
                for (auto& p : phase) {
                    p = static_cast<int>(r % static_cast<std::size_t>(g.pgs_count()));
                    r /= static_cast<std::size_t>(g.pgs_count());
                }
                Bits conf = tg.to_bits(psi);
                for (std::size_t i = 0; i < comps.size(); ++i)
                    conf |= g.pgs_bits(phase[i]) & detail::cells_mask(g, comps[i]);
                const Configuration config = detail::bits_to_sites(conf);
                if (!tg.admissible(config)) continue;
                const CorrectTemplates ct = correct_templates(g, config);
                if (ct.frustrated != in) continue;
                bool labels_ok = true;
                for (std::size_t i = 0; i < comps.size() && labels_ok; ++i)
                    for (int c : comps[i])
                        labels_ok = labels_ok && ct.correct[static_cast<std::size_t>(phase[i])][static_cast<std::size_t>(c)];
                if (!labels_ok) continue;
                const auto contours = extract_contours(g, config);
                if (comps.empty()) {
                    add_term(psi.size());
                    continue;
                }
                const int phi = phase[ext];
                std::int64_t e = static_cast<std::int64_t>(g.pgs_bits(phi).count());
                for (const auto& gamma : contours) {
                    if (gamma.malformed || gamma.external_phase < 0) {
                        labels_ok = false;
                        break;
                    }
                    e += weight_exponent(g, gamma) + count_in(gamma.external_phase, gamma.support) -
                         count_in(phi, gamma.support);
                }
                if (!labels_ok) continue;
                for (std::size_t i = 0; i < comps.size(); ++i)
                    if (i != ext) e += count_in(phase[i], comps[i]) - count_in(phi, comps[i]);
                add_term(static_cast<std::size_t>(e));
            }
        }
    }
    while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Peierls scan

struct PeierlsOptions {
    i64 budget = 6000;  // torus sites
    int side = 0;       // template cells per torus side; 0 picks max(3, max_templates)
};

struct PeierlsDefect {
    std::vector<int> support;  // template cells
    int phase = -1;            // PGS index on the grid
    int deficit = 0;           // #(phi on support) - #psi
    Configuration psi;
};

struct PeierlsReport {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 0;
    int max_templates = 0;
    Torus torus;
    bool sliding = false;
    Rational min_ratio{0};
    PeierlsDefect worst;
    std::int64_t supports = 0;  // connected supports containing the origin cell
    std::int64_t checked = 0;   // (support, PGS) pairs
    bool holds() const { return min_ratio.numerator() > 0; }
};

namespace detail {

/// Connected (8-adjacency) cell sets of size <= k containing cell 0, one per
/// translation class.
inline std::vector<std::vector<int>> connected_supports(const TemplateGrid& g, int k) {
    std::set<std::vector<int>> seen{{0}};
    std::vector<std::vector<int>> frontier{{0}}, out{{0}};
    for (int size = 2; size <= k; ++size) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (int c : s)
                for (int d : g.neighbours8(c)) {
                    if (std::binary_search(s.begin(), s.end(), d)) continue;
                    auto t = s;
                    t.insert(std::upper_bound(t.begin(), t.end(), d), d);
                    if (seen.insert(t).second) next.push_back(t);
                }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    // keep a support only if it is the smallest of its translates through cell 0
    const Vec2 u = g.templ().u, v = g.templ().v;
    const i64 det = cross(u, v);
    std::vector<std::vector<int>> unique;
    for (const auto& s : out) {
        bool canonical = true;
        for (int c : s) {
            const Vec2 o = g.cell_origin(c);
            const i64 a = floor_div(cross(o, v), det), b = floor_div(cross(u, o), det);
            std::vector<int> t;
            for (int x : s) t.push_back(g.shifted(x, -a, -b));
            std::sort(t.begin(), t.end());
            if (t < s) {
                canonical = false;
                break;
            }
        }
        if (canonical) unique.push_back(s);
    }
    return unique;
}

/// Branch order for a support: sweep across the direction in which the
/// support is thinnest, so that suffixes of the order are short slabs. This
/// matters a lot for supports that wrap around the torus.
inline std::vector<int> sweep_order(const TemplateGrid& g, const std::vector<int>& support,
                                    const std::vector<int>& local) {
    const Vec2 u = g.templ().u, v = g.templ().v;
    const i64 det = cross(u, v);
    const i64 side = static_cast<i64>(std::llround(std::sqrt(double(g.cell_count()))));
    const Vec2 dirs[4] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    std::size_t best = 0, best_spread = 0;
    for (std::size_t d = 0; d < 4; ++d) {
        std::set<i64> perp;
        for (int c : support) {
            const Vec2 o = g.cell_origin(c);
            const i64 a = floor_div(cross(o, v), det), b = floor_div(cross(u, o), det);
            perp.insert(floor_mod(a * dirs[d].y - b * dirs[d].x, side));
        }
        if (d == 0 || perp.size() < best_spread) {
            best = d;
            best_spread = perp.size();
        }
    }
    const Vec2 e = dirs[best];
    std::vector<std::pair<std::pair<i64, i64>, int>> keyed;
    for (std::size_t i = 0; i < local.size(); ++i) {
        const Vec2 p = g.graph().position(local[i]);
        const i64 a = cross(p, v), b = cross(u, p);  // template coordinates scaled by det
        keyed.push_back({{a * e.x + b * e.y, a * e.y - b * e.x}, static_cast<int>(i)});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order;
    for (const auto& kv : keyed) order.push_back(kv.second);
    return order;
}

}  // namespace detail

/// For every connected support S of at most max_templates cells and every
/// PGS phi, the smallest loss #(phi on S) - #psi over configurations psi != phi
/// on S compatible with phi outside S. Removing one particle always costs 1,
/// so the loss is 0 exactly when phi on S is not the unique best filling.
inline PeierlsReport peierls_scan(LatticeKind k, i64 d2, int max_templates, const PeierlsOptions& opt = {}) {
    if (max_templates < 1) throw DomainError("max_templates must be positive");
    PeierlsReport rep;
    rep.kind = k;
    rep.d2 = d2;
    rep.max_templates = max_templates;
    rep.sliding = sliding_status(k, d2).sliding;
    const PgsCatalog cat = rep.sliding ? detail::build_catalog(k, d2) : pgs_catalog(k, d2);
    const Template t = detail::template_of(cat);
    const int side = opt.side > 0 ? opt.side : std::max(3, max_templates);
    rep.torus = Torus::from_ambient(k, Lattice2::spanned_by(side * t.u, side * t.v));
    if (rep.torus.site_count > opt.budget)
        throw BudgetError("Peierls torus has " + std::to_string(rep.torus.site_count) + " sites", opt.budget);
    const TemplateGrid g(cat, rep.torus);
    const TorusGraph& tg = g.graph();
    const auto supports = detail::connected_supports(g, max_templates);
    rep.supports = static_cast<std::int64_t>(supports.size());
    bool first = true;
    for (const auto& s : supports) {
        const Bits smask = detail::cells_mask(g, s);
        for (int phi = 0; phi < g.pgs_count(); ++phi) {
            ++rep.checked;
            Bits outside = g.pgs_bits(phi);
            outside.subtract(smask);
            Bits free = smask;
            for (std::size_t i = outside.first(); i < outside.size(); i = outside.next(i)) free.subtract(tg.conflicts(static_cast<int>(i)));
            const std::vector<int> local = detail::bits_to_sites(free);
            std::vector<int> slot(static_cast<std::size_t>(tg.size()), -1);
            for (std::size_t i = 0; i < local.size(); ++i) slot[static_cast<std::size_t>(local[i])] = static_cast<int>(i);
            std::vector<Bits> adj(local.size(), Bits(local.size()));
            for (std::size_t i = 0; i < local.size(); ++i)
                for (int j : tg.neighbours(local[i]))
                    if (slot[static_cast<std::size_t>(j)] >= 0) adj[i].set(static_cast<std::size_t>(slot[static_cast<std::size_t>(j)]));
            MisSolver mis(adj, detail::sweep_order(g, s, local));
            const Bits ref = g.pgs_bits(phi) & smask;
            const int have = static_cast<int>(ref.count());
            if (mis.max_size() > have)
                throw std::logic_error("a PGS is not a maximal filling of a contour support");
            PeierlsDefect d;
            d.support = s;
            d.phase = phi;
            std::vector<std::vector<int>> found;
            if (mis.count_all(&found, 2, 2) >= 2) {
                d.deficit = 0;
                for (const auto& f : found) {
                    Configuration psi;
                    for (int i : f) psi.push_back(local[static_cast<std::size_t>(i)]);
                    if (tg.to_bits(psi) != ref) d.psi = psi;
                }
            } else {
                d.deficit = 1;
                d.psi = detail::bits_to_sites(ref);
                if (!d.psi.empty()) d.psi.pop_back();
            }
            const Rational ratio(d.deficit, static_cast<i64>(s.size()));
            if (first || ratio < rep.min_ratio) {
                rep.min_ratio = ratio;
                rep.worst = d;
                first = false;
            }
        }
    }
    return rep;
}

/// min_ratio compared with c / D^2 for c in {1/4, 1/2, 1}; diagnostics only.
inline std::vector<std::pair<Rational, bool>> peierls_diagnostics(const PeierlsReport& r) {
    std::vector<std::pair<Rational, bool>> out;
    for (const Rational c : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
        const Rational bound = c / Rational(r.d2);
        out.emplace_back(bound, r.min_ratio >= bound);
    }
    return out;
}

// ---------------------------------------------------------------------------
// u^-2 insertions

struct Insertion {
    std::vector<Vec2> added;    // ambient positions
    std::vector<Vec2> removed;  // ambient positions, removed.size() == added.size() + 2
    int order() const { return static_cast<int>(added.size()); }
};

struct InsertionOptions {
    i64 diameter_factor2 = 4;     // removed sets have squared diameter <= factor * d2
    int n_max = 6;                // largest number of added particles searched
    std::size_t list_limit = 20000;
};

struct InsertionReport {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 0;
    int class_id = 0;
    std::string label;
    std::string orientation;
    InsertionOptions options;
    std::map<int, std::int64_t> counts;  // n -> insertions per fundamental domain
    std::vector<Insertion> insertions;   // possibly truncated
    std::int64_t anomalies = 0;          // rearrangements losing fewer than 2 particles
    int max_order = 0;                   // largest n with a nonzero count
    bool exhausted = false;              // no insertion of order n_max

    std::int64_t total() const {
        std::int64_t s = 0;
        for (const auto& [n, c] : counts) s += c;
        return s;
    }
    std::int64_t count(int n) const {
        const auto it = counts.find(n);
        return it == counts.end() ? 0 : it->second;
    }
};

/// horizontal / vertical / inclined for triangular-type classes (a, b).
inline std::string class_orientation(LatticeKind k, const PgsClass& c) {
    if (k == LatticeKind::Z2) return "";
    const auto [a, b] = c.solution;
    if (a == 0 || b == 0) return "horizontal";
    if (a == b) return "vertical";
    return "inclined";
}

namespace detail {

struct HoleSite {
    Vec2 y;               // offset from the anchor particle
    std::uint32_t mask;   // removed particles it repels, as bits over the cluster candidates
};

struct InsertionSearch {
    LatticeKind kind;
    i64 d2;
    const std::vector<HoleSite>* hole;
    std::vector<Bits> conflict;
    std::uint32_t target = 0;
    std::size_t want = 0;
    std::vector<std::size_t> chosen;
    std::int64_t found = 0;
    std::vector<std::vector<std::size_t>>* sink = nullptr;
    std::size_t sink_limit = 0;

    bool connected() const {
        std::vector<std::uint32_t> comp;
        for (std::size_t i : chosen) comp.push_back((*hole)[i].mask);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t a = 0; a < comp.size() && !changed; ++a)
                for (std::size_t b = a + 1; b < comp.size(); ++b)
                    if (comp[a] & comp[b]) {
                        comp[a] |= comp[b];
                        comp.erase(comp.begin() + static_cast<std::ptrdiff_t>(b));
                        changed = true;
                        break;
                    }
        }
        return comp.size() == 1;
    }

    void run(const Bits& allowed, std::uint32_t covered) {
        if (chosen.size() == want) {
            if (covered == target && connected()) {
                ++found;
                if (sink && sink->size() < sink_limit) sink->push_back(chosen);
            }
            return;
        }
        Bits rest = allowed;
        while (!rest.none()) {
            if (rest.count() < want - chosen.size()) return;
            const std::size_t i = rest.first();
            rest.reset(i);
            Bits next = rest;
            next.subtract(conflict[i]);
            chosen.push_back(i);
            run(next, covered | (*hole)[i].mask);
            chosen.pop_back();
        }
    }
};

}  // namespace detail

/// Insertions into the representative PGS of a class: add n sites, remove the
/// n + 2 particles they repel. Removed sets are anchored with their smallest
/// particle at the origin, so counts are per fundamental domain of the class
/// sublattice. Added sets must be linked through shared removed particles.
inline InsertionReport enumerate_u2_insertions(LatticeKind k, i64 d2, int class_id, const InsertionOptions& opt = {}) {
    const PgsCatalog cat = pgs_catalog(k, d2);
    if (class_id < 0 || class_id >= cat.K) throw DomainError("class id out of range");
    const PgsClass& cls = cat.classes[static_cast<std::size_t>(class_id)];
    InsertionReport rep;
    rep.kind = k;
    rep.d2 = d2;
    rep.class_id = class_id;
    rep.label = cls.label;
    rep.orientation = class_orientation(k, cls);
    rep.options = opt;
    const Lattice2& l = cls.sublattices.front().ambient;
    const Vec2 anchor = embed(k, Site{0, 0, 0});
    const i64 bound2 = opt.diameter_factor2 * d2;

    // Cluster candidates: lattice particles q >= 0 within the diameter bound.
    std::vector<Vec2> cand;
    for (const Vec2& q : ball(k, bound2))
        if (l.contains(q) && !(q < Vec2{0, 0})) cand.push_back(q);
    std::sort(cand.begin(), cand.end());  // origin first
    if (cand.size() > 32) throw BudgetError("too many cluster candidates for the diameter bound", 32);

    // Sites near the cluster region together with the particles they repel.
    i64 reach = detail::isqrt(bound2) + detail::isqrt(d2) + 2;
    std::vector<Vec2> near_particles;
    for (const Vec2& q : ball(k, (reach + detail::isqrt(d2) + 2) * (reach + detail::isqrt(d2) + 2)))
        if (l.contains(q)) near_particles.push_back(q);
    std::vector<detail::HoleSite> sites;
    for (const Vec2& y : ball(k, reach * reach)) {
        if (!is_lattice_point(k, anchor + y) || l.contains(y)) continue;
        std::uint32_t mask = 0;
        bool inside = true;
        for (const Vec2& q : near_particles) {
            if (norm2(k, y - q) >= d2) continue;
            const auto it = std::lower_bound(cand.begin(), cand.end(), q);
            if (it == cand.end() || *it != q) {
                inside = false;
                break;
            }
            mask |= std::uint32_t{1} << (it - cand.begin());
        }
        if (inside && mask) sites.push_back({y, mask});
    }

    std::vector<std::uint32_t> clusters;
    // Removed sets containing the origin, pairwise within the bound.
    std::vector<std::size_t> cur{0};
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() >= 3) {
            std::uint32_t m = 0;
            for (std::size_t i : cur) m |= std::uint32_t{1} << i;
            clusters.push_back(m);
        }
        if (static_cast<int>(cur.size()) >= opt.n_max + 2) return;
        for (std::size_t j = from; j < cand.size(); ++j) {
            bool ok = true;
            for (std::size_t i : cur) ok = ok && norm2(k, cand[j] - cand[i]) <= bound2;
            if (!ok) continue;
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);

    for (std::uint32_t r : clusters) {
        const int rsize = std::popcount(r);
        std::vector<detail::HoleSite> hole;
        for (const auto& s : sites)
            if ((s.mask & ~r) == 0) hole.push_back(s);
        if (hole.empty()) continue;
        detail::InsertionSearch search{k, d2, &hole, {}, r, 0, {}, 0, nullptr, 0};
        const std::size_t h = hole.size();
        search.conflict.assign(h, Bits(h));
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < h; ++j)
                if (i != j && norm2(k, hole[i].y - hole[j].y) < d2) search.conflict[i].set(j);
        Bits all(h);
        all.set_all();
        // losing at most one particle would contradict maximal density
        search.want = static_cast<std::size_t>(rsize - 1);
        search.run(all, 0);
        rep.anomalies += search.found;

        search.found = 0;
        search.want = static_cast<std::size_t>(rsize - 2);
        std::vector<std::vector<std::size_t>> picks;
        search.sink = &picks;
        search.sink_limit = opt.list_limit;
        search.run(all, 0);
        if (search.found == 0) continue;
        rep.counts[rsize - 2] += search.found;
        for (const auto& p : picks) {
            if (rep.insertions.size() >= opt.list_limit) break;
            Insertion ins;
            for (std::size_t i : p) ins.added.push_back(anchor + hole[i].y);
            for (std::size_t b = 0; b < cand.size(); ++b)
                if ((r >> b) & 1U) ins.removed.push_back(anchor + cand[b]);
            rep.insertions.push_back(std::move(ins));
        }
    }
    for (int n = 1; n <= opt.n_max; ++n) rep.counts.emplace(n, 0);
    for (const auto& [n, c] : rep.counts)
        if (c > 0) rep.max_order = std::max(rep.max_order, n);
    rep.exhausted = rep.count(opt.n_max) == 0;
    std::sort(rep.insertions.begin(), rep.insertions.end(), [](const Insertion& a, const Insertion& b) {
        return std::make_tuple(a.order(), a.removed, a.added) < std::make_tuple(b.order(), b.removed, b.added);
    });
    return rep;
}

struct DominanceReport {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 0;
    int K = 0;
    std::vector<InsertionReport> classes;  // empty when K = 1
    std::vector<int> dominant;             // class ids
    bool resolved = false;
    i64 egd_count = 0;                     // sigma * sum of m over dominant classes
    std::string note;
};

/// Leading-order dominance: the class with strictly the most u^-2 insertions
/// per fundamental domain wins. All MDA sublattices have the same covolume,
/// so per-domain and per-template counts order the classes identically.
inline DominanceReport dominance_decision(LatticeKind k, i64 d2, const InsertionOptions& opt = {}) {
    const PgsCatalog cat = pgs_catalog(k, d2);
    DominanceReport rep;
    rep.kind = k;
    rep.d2 = d2;
    rep.K = cat.K;
    if (cat.K == 1) {
        rep.dominant = {0};
        rep.resolved = true;
        rep.egd_count = cat.pgs_count;
        rep.note = "unique PGS class";
        return rep;
    }
    std::int64_t best = -1;
    for (int c = 0; c < cat.K; ++c) {
        rep.classes.push_back(enumerate_u2_insertions(k, d2, c, opt));
        const std::int64_t t = rep.classes.back().total();
        if (t > best) {
            best = t;
            rep.dominant = {c};
        } else if (t == best) {
            rep.dominant.push_back(c);
        }
    }
    rep.resolved = rep.dominant.size() == 1;
    for (int c : rep.dominant) rep.egd_count += cat.sigma * cat.m[static_cast<std::size_t>(c)];
    rep.note = rep.resolved ? "leading-order u^-2 insertion counts"
                            : "tie at leading order; higher-order terms are not analysed";
    return rep;
}

}  // namespace hardcore
