#pragma once

// Maximally dense admissible sublattices, PGS catalogs, packing densities,
// template lattices and explicit periodic ground states on tori.

#include <boost/rational.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hardcore/arith.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/intlattice.hpp"
#include "hardcore/lattice.hpp"
#include "hardcore/mtriangle.hpp"
#include "hardcore/oracle.hpp"
#include "hardcore/torus.hpp"

namespace hardcore {

using Rational = boost::rational<i64>;

/// A sublattice of translations plus an anchor site. The lattice is stored in
/// ambient coordinates; basis() gives the Hermite basis in lattice coordinates.
struct Sublattice {
    LatticeKind kind = LatticeKind::Z2;
    Lattice2 ambient;
    Site anchor{};
    i64 index = 1;  // in the translation basis

    static Sublattice make(LatticeKind k, const Lattice2& amb) {
        Sublattice s;
        s.kind = k;
        s.ambient = amb;
        s.index = k == LatticeKind::H2 ? amb.index() / 3 : amb.index();
        s.anchor = k == LatticeKind::H2 ? Site{0, 0, 0} : Site{0, 0, 0};
        return s;
    }

    std::pair<Vec2i, Vec2i> basis() const {
        if (kind != LatticeKind::H2) return {ambient.h1(), ambient.h2()};
        const auto l = Lattice2::spanned_by(h2::ambient_to_translation(ambient.h1()),
                                            h2::ambient_to_translation(ambient.h2()));
        return {l.h1(), l.h2()};
    }

    i64 minimal_norm2() const { return minimal_norm(kind, ambient); }

    friend bool operator==(const Sublattice& a, const Sublattice& b) {
        return a.kind == b.kind && a.ambient == b.ambient && a.anchor == b.anchor;
    }
};

struct PgsClass {
    int id = 0;
    std::string label;             // "(a,b)" for a Diophantine solution, triangle otherwise
    std::pair<i64, i64> solution{}; // A2/H2
    Triangle triangle{};            // Z2
    int m = 0;                      // distinct MDA sublattices in the class
    std::vector<Sublattice> sublattices;
};

struct PgsCatalog {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 0;
    CaseLabel case_label;
    i64 target2 = 0;  // squared minimal distance of the MDA sublattices (d2, or D*^2 for HC)
    i64 sigma = 0;
    int K = 0;
    std::vector<int> m;
    i64 pgs_count = 0;
    std::vector<PgsClass> classes;
    std::vector<Sublattice> sublattice_reps;
    bool provisional = false;  // built for a sliding value; not a complete PGS list

    std::vector<Sublattice> all_sublattices() const {
        std::vector<Sublattice> out;
        for (const auto& c : classes) out.insert(out.end(), c.sublattices.begin(), c.sublattices.end());
        return out;
    }
};

namespace detail {

inline void require_supported(LatticeKind k, i64 d2) {
    const CaseLabel c = classify(k, d2);
    if (c.tag == CaseTag::NotAttainable)
        throw DomainError("d2 = " + std::to_string(d2) + " is not attainable on " + std::string(to_string(k)));
    if (c.tag == CaseTag::HExceptional)
        throw UnsupportedCase("case HExceptional: PGSs for d2 = " + std::to_string(d2) + " on H2 are non-lattice");
    if (sliding_status(k, d2).sliding)
        throw UnsupportedCase("sliding value d2 = " + std::to_string(d2) + " on " + std::string(to_string(k)) +
                              ": no finite PGS catalog");
}

inline std::vector<Sublattice> orbit_sublattices(LatticeKind k, const Lattice2& l) {
    std::vector<Sublattice> out;
    for (const Lattice2& img : lattice_orbit(k, l)) {
        Sublattice s = Sublattice::make(k, img);
        if (k == LatticeKind::H2) s.anchor = Site{0, 0, 0};
        out.push_back(s);
    }
    return out;
}

/// Catalog construction without the supported-case check; sliding values
/// yield the lattice-type packings only and are marked provisional.
inline PgsCatalog build_catalog(LatticeKind k, i64 d2) {
    PgsCatalog cat;
    cat.kind = k;
    cat.d2 = d2;
    cat.case_label = classify(k, d2);
    if (cat.case_label.tag == CaseTag::NotAttainable)
        throw DomainError("d2 = " + std::to_string(d2) + " is not attainable on " + std::string(to_string(k)));
    if (cat.case_label.tag == CaseTag::HExceptional)
        throw UnsupportedCase("case HExceptional: PGSs for d2 = " + std::to_string(d2) + " on H2 are non-lattice");
    cat.provisional = sliding_status(k, d2).sliding;

    if (k == LatticeKind::Z2) {
        const auto rep = solve_problem5(d2);
        cat.target2 = d2;
        cat.sigma = rep.S;
        int id = 0;
        for (const auto& tc : rep.classes) {
            PgsClass c;
            c.id = id++;
            c.triangle = tc.representative;
            const auto& v = tc.representative.vertices;
            c.label = "[(" + std::to_string(v[0].x) + "," + std::to_string(v[0].y) + "),(" + std::to_string(v[1].x) +
                      "," + std::to_string(v[1].y) + "),(" + std::to_string(v[2].x) + "," + std::to_string(v[2].y) +
                      ")]";
            c.sublattices = orbit_sublattices(k, triangle_lattice(tc.representative));
            c.m = static_cast<int>(c.sublattices.size());
            cat.classes.push_back(std::move(c));
        }
    } else {
        cat.target2 = (k == LatticeKind::H2 && d2 % 3 != 0) ? dstar(d2) : d2;
        cat.sigma = k == LatticeKind::H2 ? 2 * cat.target2 / 3 : cat.target2;
        int id = 0;
        for (auto [a, b] : diophantine_solutions(LatticeKind::A2, cat.target2)) {
            PgsClass c;
            c.id = id++;
            c.solution = {a, b};
            c.label = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            const Lattice2 l = Lattice2::spanned_by({a, b}, {-b, a + b});
            c.sublattices = orbit_sublattices(k, l);
            c.m = static_cast<int>(c.sublattices.size());
            cat.classes.push_back(std::move(c));
        }
    }
    cat.K = static_cast<int>(cat.classes.size());
    i64 sum_m = 0;
    for (const auto& c : cat.classes) {
        cat.m.push_back(c.m);
        sum_m += c.m;
        cat.sublattice_reps.push_back(c.sublattices.front());
    }
    cat.pgs_count = cat.sigma * sum_m;
    return cat;
}

}  // namespace detail

/// MDA sublattices grouped by PGS-equivalence class; the first sublattice of
/// each class is its representative.
inline std::vector<PgsClass> mda_sublattices(LatticeKind k, i64 d2) {
    detail::require_supported(k, d2);
    return detail::build_catalog(k, d2).classes;
}

inline PgsCatalog pgs_catalog(LatticeKind k, i64 d2) {
    detail::require_supported(k, d2);
    return detail::build_catalog(k, d2);
}

/// Sites of the lattice kind in one fundamental parallelogram of an ambient
/// sublattice, counted directly.
inline i64 sites_per_cell(LatticeKind k, const Lattice2& l) {
    i64 n = 0;
    for (i64 c = 0; c < l.index(); ++c)
        if (is_lattice_point(k, l.coset_rep(c))) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Density

/// delta = coeff * pi / sqrt(radical_sq), radical_sq in {1, 3}.
struct DensityValue {
    Rational coeff{0};
    int radical_sq = 1;
    bool approximate = false;  // sliding value: density of the best torus packing found
    std::string note;

    double value() const { return double(coeff.numerator()) / double(coeff.denominator()) * M_PI / std::sqrt(double(radical_sq)); }

    std::string preview() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", value());
        return buf;
    }

    std::string exact() const {
        std::string s = std::to_string(coeff.numerator());
        if (coeff.denominator() != 1) s += "/" + std::to_string(coeff.denominator());
        s += "*pi";
        if (radical_sq == 3) s += "/sqrt(3)";
        return s;
    }
};

/// Area per site at unit nearest-neighbour distance, as coeff * sqrt(radical_sq).
inline std::pair<Rational, int> area_per_site(LatticeKind k) {
    switch (k) {
        case LatticeKind::A2: return {Rational(1, 2), 3};
        case LatticeKind::H2: return {Rational(3, 4), 3};
        case LatticeKind::Z2: return {Rational(1), 1};
    }
    return {};
}

/// Density of a packing with one particle per `sites_per_particle` sites:
/// (pi d2 / 4) / (sites_per_particle * area_per_site).
inline DensityValue density_from_sites(LatticeKind k, i64 d2, Rational sites_per_particle) {
    const auto [area, rad] = area_per_site(k);
    DensityValue d;
    d.radical_sq = rad;
    // pi d2/4 / (s * area * sqrt(rad)) ; for rad = 3 the sqrt(3) lands in the denominator
    d.coeff = Rational(d2, 4) / (sites_per_particle * area);
    return d;
}

inline DensityValue packing_density(LatticeKind k, i64 d2, const OracleOptions& opt = {}) {
    const CaseLabel c = classify(k, d2);
    if (c.tag == CaseTag::NotAttainable)
        throw DomainError("d2 = " + std::to_string(d2) + " is not attainable on " + std::string(to_string(k)));
    if (k == LatticeKind::H2 && (c.tag == CaseTag::HExceptional || contains_value(kH2Special, d2))) {
        if (!sliding_status(k, d2).sliding)
            throw UnsupportedCase("d2 = " + std::to_string(d2) +
                                  " on H2: optimal packings are not sublattice packings; density not covered");
        // Sliding: best density among small square tori, a lower bound on the sup.
        DensityValue best;
        best.radical_sq = 3;
        best.approximate = true;
        i64 l = 1;
        while (3 * l * l < d2) ++l;  // shortest period (l, 0) has squared length 3 l^2
        for (i64 len = l + 1; len <= l + 4 && 2 * len * len <= opt.budget; ++len) {
            const Torus t = Torus::square(k, len);
            const auto r = max_packing_torus(k, d2, t, false, opt);
            const DensityValue dv = density_from_sites(k, d2, Rational(t.site_count, r.max_count));
            if (dv.coeff > best.coeff) best.coeff = dv.coeff;
        }
        if (best.coeff == 0) throw BudgetError("no torus within budget for sliding d2 = " + std::to_string(d2), opt.budget);
        best.note = "sliding value: best maximal packing density over small square tori (lower bound)";
        return best;
    }
    switch (k) {
        case LatticeKind::A2: return {Rational(1, 2), 3, false, {}};
        case LatticeKind::H2:
            if (d2 % 3 == 0) return {Rational(1, 2), 3, false, {}};
            return {Rational(d2, 2 * c.dstar2), 3, false, {}};
        case LatticeKind::Z2: {
            const i64 s = solve_problem5(d2).S;
            DensityValue d{Rational(d2, 4 * s), 1, false, {}};
            if (sliding_status(k, d2).sliding) {
                d.approximate = true;
                d.note = "sliding value: density of the M-triangle sublattice packings";
            }
            return d;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Templates

struct Template {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 0;
    Sublattice lattice;
    Vec2 u{}, v{};  // reduced ambient basis spanning one template cell
    i64 sites_per_template = 0;
};

namespace detail {

inline Template template_of(const PgsCatalog& cat) {
    const auto subs = cat.all_sublattices();
    Lattice2 t = subs.front().ambient;
    for (std::size_t i = 1; i < subs.size(); ++i) t = lattice_intersection(t, subs[i].ambient);
    for (const auto& s : subs)
        if (!s.ambient.contains(t)) throw std::logic_error("template is not contained in an MDA sublattice");
    Template out;
    out.kind = cat.kind;
    out.d2 = cat.d2;
    out.lattice = Sublattice::make(cat.kind, t);
    std::tie(out.u, out.v) = reduced_basis(cat.kind, t);
    out.sites_per_template = sites_per_cell(cat.kind, t);
    return out;
}

}  // namespace detail

inline Template template_lattice(LatticeKind k, i64 d2) { return detail::template_of(pgs_catalog(k, d2)); }

// ---------------------------------------------------------------------------
// Realization on tori

struct PgsState {
    int class_id = 0;
    int sublattice = 0;  // index into PgsCatalog::all_sublattices()
    Vec2 anchor{};       // ambient coset representative
    Configuration sites;
};

/// Throws unless every MDA sublattice contains the torus periods.
inline void require_commensurate(const PgsCatalog& cat, const Torus& t) {
    if (t.kind != cat.kind) throw DomainError("torus lattice kind mismatch");
    const Lattice2 p = t.ambient_periods();
    for (const auto& s : cat.all_sublattices())
        if (!s.ambient.contains(p))
            throw CommensurabilityError("torus periods are not periods of every MDA sublattice");
}

inline std::vector<PgsState> realize_pgs_states(const PgsCatalog& cat, const TorusGraph& g) {
    require_commensurate(cat, g.torus());
    std::vector<PgsState> out;
    int si = 0;
    for (const auto& c : cat.classes) {
        for (const auto& s : c.sublattices) {
            const Lattice2& l = s.ambient;
            for (i64 r = 0; r < l.index(); ++r) {
                const Vec2 a = l.coset_rep(r);
                if (!is_lattice_point(cat.kind, a)) continue;
                PgsState st;
                st.class_id = c.id;
                st.sublattice = si;
                st.anchor = a;
                for (int i = 0; i < g.size(); ++i)
                    if (l.contains(g.position(i) - a)) st.sites.push_back(i);
                out.push_back(std::move(st));
            }
            ++si;
        }
    }
    return out;
}

inline std::vector<Configuration> realize_pgs_on_torus(const PgsCatalog& cat, const Torus& t) {
    const TorusGraph g(t, cat.d2);
    std::vector<Configuration> out;
    for (auto& s : realize_pgs_states(cat, g)) out.push_back(std::move(s.sites));
    return out;
}

}  // namespace hardcore
