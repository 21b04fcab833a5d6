// hardcore: command-line front end. Every subcommand prints one JSON report
// (sorted keys) on stdout or into --out; render writes SVG.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardcore.hpp"

using namespace hardcore;
using json = nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

struct Flags {
    std::string lattice = "a2";
    i64 d2 = 0;
    std::string torus;
    std::string cells;
    std::string u = "1";
    std::int64_t steps = 100000;
    std::int64_t burn_in = 10000;
    std::uint64_t seed = 1;
    i64 budget = 600;
    bool json = false;
    bool timings = false;
    bool all = false;
    bool verify = false;
    std::string out;
    int max_templates = 3;
    int class_id = -1;
    int threads = 1;
    i64 length = 0;
    int n_max = 6;
    std::string what = "pgs";
};

// Values shown in the published figures, keyed by (lattice, d2). Reports
// attach a provenance note to the fields these values correspond to.
struct Published {
    std::optional<i64> pgs_count, S, dstar2;
    std::string dominant;
};

const std::map<std::pair<LatticeKind, i64>, Published>& published() {
    static const std::map<std::pair<LatticeKind, i64>, Published> table{
        {{LatticeKind::A2, 9}, {9, {}, {}, {}}},
        {{LatticeKind::A2, 13}, {26, {}, {}, {}}},
        {{LatticeKind::A2, 49}, {147, {}, {}, "horizontal"}},
        {{LatticeKind::A2, 147}, {{}, {}, {}, "vertical"}},
        {{LatticeKind::H2, 48}, {32, {}, {}, {}}},
        {{LatticeKind::H2, 39}, {52, {}, {}, {}}},
        {{LatticeKind::H2, 147}, {{}, {}, {}, "vertical"}},
        {{LatticeKind::H2, 19}, {{}, {}, 21, {}}},
        {{LatticeKind::H2, 61}, {{}, {}, 63, {}}},
        {{LatticeKind::H2, 217}, {{}, {}, 219, {}}},
        {{LatticeKind::Z2, 16}, {30, 15, {}, {}}},
        {{LatticeKind::Z2, 25}, {92, 23, {}, {}}},
        {{LatticeKind::Z2, 65}, {{}, 60, {}, {}}},
        {{LatticeKind::Z2, 425}, {{}, 375, {}, {}}},
    };
    return table;
}

std::string str(LatticeKind k) { return std::string(to_string(k)); }

json vec(Vec2 v) { return json::array({v.x, v.y}); }

json site_list(const TorusGraph& g, const Configuration& c) {
    json a = json::array();
    for (int i : c) {
        const Site s = g.site(i);
        a.push_back(g.kind() == LatticeKind::H2 ? json::array({s.a, s.b, s.parity}) : json::array({s.a, s.b}));
    }
    return a;
}

json torus_json(const Torus& t) {
    return {{"p1", vec(t.p1)}, {"p2", vec(t.p2)}, {"site_count", t.site_count}};
}

json rational_json(const Rational& r) {
    return {{"num", r.numerator()}, {"den", r.denominator()}};
}

json density_json(const DensityValue& d) {
    json j{{"coeff_num", d.coeff.numerator()},
           {"coeff_den", d.coeff.denominator()},
           {"radical", d.radical_sq},
           {"exact", d.exact()},
           {"decimal", d.preview()},
           {"approximate", d.approximate}};
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

Torus parse_torus(LatticeKind k, const std::string& s) {
    // "p1a,p1b;p2a,p2b"
    i64 v[4];
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream in(s);
    if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2] >> c3 >> v[3]) || c1 != ',' || c2 != ';' || c3 != ',')
        throw DomainError("malformed --torus '" + s + "', expected p1a,p1b;p2a,p2b");
    std::string rest;
    if (in >> rest) throw DomainError("malformed --torus '" + s + "'");
    return Torus::make(k, {v[0], v[1]}, {v[2], v[3]});
}

std::pair<i64, i64> parse_cells(const std::string& s) {
    const auto x = s.find_first_of("xX");
    if (x == std::string::npos) throw DomainError("malformed --cells '" + s + "', expected NxM");
    try {
        const i64 a = std::stoll(s.substr(0, x)), b = std::stoll(s.substr(x + 1));
        if (a < 1 || b < 1) throw DomainError("--cells must be positive");
        return {a, b};
    } catch (const std::logic_error&) {
        throw DomainError("malformed --cells '" + s + "'");
    }
}

class Runner {
public:
    Runner(const Flags& f, std::string command, std::vector<std::string> argv)
        : f_(f), command_(std::move(command)), argv_(std::move(argv)) {}

    json run() {
        kind_ = parse_lattice(f_.lattice);
        const auto t0 = std::chrono::steady_clock::now();
        json results;
        if (command_ == "classify") results = classify_cmd();
        else if (command_ == "density") results = density_cmd();
        else if (command_ == "pgs") results = pgs_cmd();
        else if (command_ == "mtriangles") results = mtriangles_cmd();
        else if (command_ == "sliding") results = sliding_cmd();
        else if (command_ == "dominance") results = dominance_cmd();
        else if (command_ == "peierls") results = peierls_cmd();
        else if (command_ == "gibbs-exact") results = gibbs_exact_cmd();
        else if (command_ == "gibbs-mcmc") results = gibbs_mcmc_cmd();
        else if (command_ == "oracle") results = oracle_cmd();
        else if (command_ == "render") results = render_cmd();
        json report{{"schema_version", kSchemaVersion},
                    {"command", command_},
                    {"argv", argv_},
                    {"inputs", inputs()},
                    {"results", results},
                    {"provenance", provenance_}};
        if (f_.timings)
            report["timings"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
        return report;
    }

    const std::string& svg() const { return svg_; }

private:
    json inputs() const {
        json j{{"lattice", str(kind_)}};
        if (f_.d2) j["d2"] = f_.d2;
        if (!f_.torus.empty()) j["torus"] = f_.torus;
        if (!f_.cells.empty()) j["cells"] = f_.cells;
        if (command_ == "gibbs-exact" || command_ == "gibbs-mcmc") j["u"] = f_.u;
        if (command_ == "gibbs-mcmc") {
            j["steps"] = f_.steps;
            j["burn_in"] = f_.burn_in;
            j["seed"] = f_.seed;
        }
        j["budget"] = f_.budget;
        return j;
    }

    void need_d2() const {
        if (f_.d2 < 1) throw DomainError("--d2 must be a positive integer");
    }

    void note(const std::string& field, const std::string& text) { provenance_[field] = text; }

    void check_published(const std::string& field, i64 value, std::optional<i64> Published::*member) {
        const auto it = published().find({kind_, f_.d2});
        if (it == published().end() || !(it->second.*member)) return;
        const i64 want = *(it->second.*member);
        note(field, std::string(value == want ? "matches" : "DIFFERS FROM") + " the published value " +
                        std::to_string(want));
    }

    Torus torus_from_flags(const PgsCatalog* cat) const {
        if (!f_.torus.empty()) return parse_torus(kind_, f_.torus);
        if (!f_.cells.empty()) {
            if (!cat) throw DomainError("--cells needs a lattice and d2 with a PGS catalog");
            const auto [a, b] = parse_cells(f_.cells);
            const Template t = detail::template_of(*cat);
            return Torus::from_ambient(kind_, Lattice2::spanned_by(a * t.u, b * t.v));
        }
        throw DomainError("a torus is required: pass --torus p1a,p1b;p2a,p2b or --cells NxM");
    }

    std::optional<PgsCatalog> catalog_if_any() const {
        if (f_.d2 < 1) return std::nullopt;
        try {
            return detail::build_catalog(kind_, f_.d2);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    }

    json catalog_json(const PgsCatalog& c) {
        json classes = json::array();
        for (const auto& cl : c.classes) {
            json subs = json::array();
            for (const auto& s : cl.sublattices) {
                const auto [b1, b2] = s.basis();
                subs.push_back({{"basis", json::array({vec(b1), vec(b2)})}, {"index", s.index}});
            }
            json jc{{"id", cl.id}, {"label", cl.label}, {"m", cl.m}, {"sublattices", subs}};
            if (kind_ != LatticeKind::Z2) jc["orientation"] = class_orientation(kind_, cl);
            classes.push_back(jc);
        }
        check_published("pgs_count", c.pgs_count, &Published::pgs_count);
        return {{"case", std::string(to_string(c.case_label.tag))},
                {"sigma", c.sigma},
                {"K", c.K},
                {"m", c.m},
                {"pgs_count", c.pgs_count},
                {"target_d2", c.target2},
                {"classes", classes}};
    }

    json classify_cmd() {
        need_d2();
        const CaseLabel c = classify(kind_, f_.d2);
        if (c.tag == CaseTag::NotAttainable)
            throw DomainError("d2 = " + std::to_string(f_.d2) + " is not attainable on " + str(kind_));
        json j{{"case", std::string(to_string(c.tag))}};
        if (c.tag == CaseTag::HC) {
            j["dstar2"] = c.dstar2;
            check_published("dstar2", c.dstar2, &Published::dstar2);
        }
        const auto sl = sliding_status(kind_, f_.d2);
        j["sliding"] = sl.sliding;
        if (const auto r = case_remark(kind_, f_.d2); !r.empty()) j["remark"] = r;
        try {
            const PgsCatalog cat = pgs_catalog(kind_, f_.d2);
            j["sigma"] = cat.sigma;
            j["K"] = cat.K;
            j["m"] = cat.m;
            j["pgs_count"] = cat.pgs_count;
            check_published("pgs_count", cat.pgs_count, &Published::pgs_count);
            j["density"] = density_json(packing_density(kind_, f_.d2));
        } catch (const UnsupportedCase& e) {
            j["catalog"] = nullptr;
            j["catalog_note"] = e.what();
        }
        return j;
    }

    json density_cmd() {
        need_d2();
        OracleOptions opt;
        opt.budget = f_.budget;
        json j{{"density", density_json(packing_density(kind_, f_.d2, opt))}};
        if (f_.verify) {
            const auto chk = verify_density_formula(kind_, f_.d2, opt);
            json trials = json::array();
            for (const auto& t : chk.trials)
                trials.push_back({{"torus", torus_json(t.torus)}, {"max_count", t.max_count}, {"ratio", rational_json(t.ratio)}});
            j["verification"] = {{"ok", chk.ok}, {"expected", rational_json(chk.expected)}, {"trials", trials}};
        }
        return j;
    }

    json pgs_cmd() {
        need_d2();
        const PgsCatalog cat = pgs_catalog(kind_, f_.d2);
        json j = catalog_json(cat);
        const Template t = detail::template_of(cat);
        j["template"] = {{"basis", json::array({vec(t.u), vec(t.v)})}, {"sites", t.sites_per_template}};
        j["density"] = density_json(packing_density(kind_, f_.d2));
        return j;
    }

    json mtriangles_cmd() {
        need_d2();
        kind_ = LatticeKind::Z2;
        const auto rep = solve_problem5(f_.d2);
        check_published("S", rep.S, &Published::S);
        json classes = json::array();
        for (const auto& c : rep.classes) {
            const auto& v = c.representative.vertices;
            classes.push_back({{"vertices", json::array({vec(v[0]), vec(v[1]), vec(v[2])})},
                               {"sides2", c.representative.sides2},
                               {"m", c.m},
                               {"sublattices", c.orbit_lattices}});
        }
        return {{"S", rep.S}, {"K", rep.K}, {"N0", rep.N0}, {"N1", rep.N1}, {"search_bound2", rep.search_bound2},
                {"classes", classes}};
    }

    json sliding_cmd() {
        need_d2();
        const auto sl = sliding_status(kind_, f_.d2);
        json j{{"sliding", sl.sliding}, {"source", "lookup"}};
        OracleOptions opt;
        opt.budget = f_.budget;
        const auto scan = sliding_witness(kind_, f_.d2, f_.length, opt);
        j["torus"] = torus_json(scan.torus);
        j["max_count"] = scan.max_count;
        j["candidates"] = scan.candidates;
        if (scan.witness) {
            const TorusGraph g(scan.torus, f_.d2);
            const auto& w = *scan.witness;
            j["witness"] = {{"base", site_list(g, w.base)},
                            {"shifted", site_list(g, w.shifted)},
                            {"band", site_list(g, w.band)},
                            {"direction", vec(w.direction)},
                            {"shift", vec(w.shift)},
                            {"rows", w.rows}};
        } else {
            j["witness"] = nullptr;
        }
        return j;
    }

    InsertionOptions insertion_options() const {
        InsertionOptions o;
        o.n_max = f_.n_max;
        return o;
    }

    static json insertion_json(const InsertionReport& r) {
        json counts = json::object();
        for (const auto& [n, c] : r.counts) counts[std::to_string(n)] = c;
        return {{"class", r.class_id},      {"label", r.label},         {"orientation", r.orientation},
                {"counts", counts},         {"total", r.total()},       {"anomalies", r.anomalies},
                {"max_order", r.max_order}, {"exhausted", r.exhausted}};
    }

    json dominance_cmd() {
        need_d2();
        const auto d = dominance_decision(kind_, f_.d2, insertion_options());
        json classes = json::array();
        for (const auto& c : d.classes) classes.push_back(insertion_json(c));
        json j{{"K", d.K}, {"classes", classes}, {"dominant", d.dominant}, {"resolved", d.resolved},
               {"egd_count", d.egd_count}, {"note", d.note}};
        if (d.resolved && !d.classes.empty()) {
            const std::string o = d.classes[static_cast<std::size_t>(d.dominant.front())].orientation;
            j["dominant_orientation"] = o;
            const auto it = published().find({kind_, f_.d2});
            if (it != published().end() && !it->second.dominant.empty())
                note("dominant_orientation", std::string(o == it->second.dominant ? "matches" : "DIFFERS FROM") +
                                                 " the published dominant class (" + it->second.dominant + ")");
        }
        return j;
    }

    json peierls_cmd() {
        need_d2();
        PeierlsOptions o;
        o.budget = std::max<i64>(f_.budget, 6000);
        const auto r = peierls_scan(kind_, f_.d2, f_.max_templates, o);
        json diag = json::array();
        for (const auto& [bound, ok] : peierls_diagnostics(r))
            diag.push_back({{"bound", rational_json(bound)}, {"min_ratio_at_least", ok}});
        return {{"torus", torus_json(r.torus)},
                {"sliding", r.sliding},
                {"max_templates", r.max_templates},
                {"supports", r.supports},
                {"checked", r.checked},
                {"min_ratio", rational_json(r.min_ratio)},
                {"holds", r.holds()},
                {"worst", {{"support", r.worst.support}, {"phase", r.worst.phase}, {"deficit", r.worst.deficit}}},
                {"diagnostics", diag}};
    }

    json gibbs_exact_cmd() {
        need_d2();
        const auto cat = catalog_if_any();
        const Torus t = torus_from_flags(cat ? &*cat : nullptr);
        if (t.site_count > f_.budget) throw BudgetError("torus has " + std::to_string(t.site_count) + " sites", f_.budget);
        const TorusGraph g(t, f_.d2);
        const auto p = partition_polynomial(Region::torus(g));
        const BigRational u = parse_rational(f_.u);
        if (u <= 0) throw DomainError("fugacity must be positive");
        BigRational z = 0, zn = 0, pw = 1;
        for (std::size_t k = 0; k < p.c.size(); ++k) {
            z += BigRational(p.c[k]) * pw;
            zn += BigRational(p.c[k] * k) * pw;
            pw *= u;
        }
        json coeffs = json::array();
        for (const auto& c : p.c) coeffs.push_back(c.str());
        const BigRational mean = zn / z;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", static_cast<double>(mean));
        return {{"torus", torus_json(t)},
                {"coefficients", coeffs},
                {"polynomial", p.to_string()},
                {"Z", z.str()},
                {"mean_particles", {{"exact", mean.str()}, {"decimal", buf}}}};
    }

    json gibbs_mcmc_cmd() {
        need_d2();
        const auto cat = catalog_if_any();
        const Torus t = torus_from_flags(cat ? &*cat : nullptr);
        if (t.site_count > f_.budget * 100)
            throw BudgetError("torus has " + std::to_string(t.site_count) + " sites", f_.budget * 100);
        const double u = static_cast<double>(parse_rational(f_.u));
        std::optional<TemplateGrid> grid;
        if (cat && !cat->provisional) {
            try {
                grid.emplace(*cat, t);
            } catch (const DomainError&) {
            }
        }
        const TorusGraph g(t, f_.d2);
        McmcOptions o;
        o.burn_in = f_.burn_in;
        o.thin = std::max<std::int64_t>(1, f_.steps / 10000);
        if (grid) {
            o.grid = &*grid;
            o.order_every = std::max<std::int64_t>(1, f_.steps / 200);
        }
        const auto st = mcmc_run(grid ? grid->graph() : g, u, f_.steps, f_.seed, o);
        json j{{"torus", torus_json(t)},
               {"mean_particles", st.mean_particles()},
               {"standard_error", st.standard_error()},
               {"acceptance_rate", st.acceptance_rate()},
               {"final_count", st.final_state.size()}};
        if (grid) {
            const auto m = st.mean_order();
            j["order_parameter"] = m;
            j["max_order_parameter"] = m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
        }
        return j;
    }

    json oracle_cmd() {
        need_d2();
        const auto cat = catalog_if_any();
        const Torus t = torus_from_flags(cat ? &*cat : nullptr);
        OracleOptions o;
        o.budget = f_.budget;
        o.list_limit = 64;
        const auto r = max_packing_torus(kind_, f_.d2, t, f_.all, o);
        const TorusGraph g(t, f_.d2);
        json j{{"torus", torus_json(t)}, {"max_count", r.max_count}, {"example", site_list(g, r.example)},
               {"density_sites_per_particle", rational_json(Rational(t.site_count, r.max_count))}};
        if (r.counted) j["optimizer_count"] = r.optimizer_count;
        return j;
    }

    // ---- rendering

    Scene base_scene(const TorusGraph& g, const Configuration& occ) const {
        Scene s;
        s.kind = g.kind();
        const auto [u, w] = reduced_basis(g.kind(), g.periods());
        const i64 det = cross(u, w);
        std::vector<char> on(static_cast<std::size_t>(g.size()), 0);
        for (int i : occ) on[static_cast<std::size_t>(i)] = 1;
        for (int i = 0; i < g.size(); ++i)
            s.points.push_back({fold(g, i, u, w, det), on[static_cast<std::size_t>(i)] ? Mark::Particle : Mark::Site, 0});
        s.polygons.push_back({{Vec2{0, 0}, u, u + w, w}, "none", "#000000", 1.0});
        return s;
    }

    // Position of site i inside the reduced period parallelogram.
    static Vec2 fold(const TorusGraph& g, int i, Vec2 u, Vec2 w, i64 det) {
        const Vec2 x = g.position(i);
        return x - floor_div(cross(x, w), det) * u - floor_div(cross(u, x), det) * w;
    }

    static ScenePolygon cell_polygon(const TemplateGrid& g, int c, const std::string& fill, double op) {
        const Vec2 o = g.cell_origin(c), u = g.templ().u, v = g.templ().v;
        return {{o, o + u, o + u + v, o + v}, fill, "#888888", op};
    }

    json render_cmd() {
        need_d2();
        SvgStyle style;
        style.max_elements = static_cast<std::size_t>(std::max<i64>(f_.budget, 1) * 20);
        Scene scene;
        json j{{"what", f_.what}};
        if (f_.what == "pgs") {
            const PgsCatalog cat = pgs_catalog(kind_, f_.d2);
            const Torus t = f_.torus.empty() && f_.cells.empty()
                                ? Torus::from_ambient(kind_, detail::template_of(cat).lattice.ambient)
                                : torus_from_flags(&cat);
            const TemplateGrid grid(cat, t);
            const int cls = std::max(0, f_.class_id);
            int phi = 0;
            for (int p = 0; p < grid.pgs_count(); ++p)
                if (grid.pgs(p).class_id == cls) {
                    phi = p;
                    break;
                }
            scene = base_scene(grid.graph(), grid.pgs(phi).sites);
            const Sublattice sub = cat.all_sublattices()[static_cast<std::size_t>(grid.pgs(phi).sublattice)];
            const auto [a, b] = reduced_basis(kind_, sub.ambient);
            const Vec2 o = grid.pgs(phi).anchor;
            scene.polygons.push_back({{o, o + a, o + a + b, o + b}, "#1f77b4", "#1f77b4", 0.25});
            j["sigma"] = cat.sigma;
            j["phase"] = phi;
        } else if (f_.what == "sliding") {
            OracleOptions opt;
            opt.budget = f_.budget;
            const auto scan = sliding_witness(kind_, f_.d2, f_.length, opt);
            if (!scan.witness) throw DomainError("no sliding witness found for d2 = " + std::to_string(f_.d2));
            const TorusGraph g(scan.torus, f_.d2);
            scene = base_scene(g, scan.witness->shifted);
            const auto [u, w] = reduced_basis(kind_, g.periods());
            const i64 det = cross(u, w);
            Configuration moved;
            for (int i : scan.witness->band) moved.push_back(g.index_of(g.position(i) + scan.witness->shift));
            for (int i : moved) scene.points.push_back({fold(g, i, u, w, det), Mark::Highlight, 0});
            j["rows"] = scan.witness->rows;
        } else if (f_.what == "contour") {
            const PgsCatalog cat = pgs_catalog(kind_, f_.d2);
            const Torus t = f_.torus.empty() && f_.cells.empty() ? torus_from_cells(cat, 5, 5) : torus_from_flags(&cat);
            const TemplateGrid grid(cat, t);
            Configuration c = grid.pgs(0).sites;
            // vacancy in the middle of the torus
            c.erase(c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2));
            scene = base_scene(grid.graph(), c);
            scene.polygons.clear();
            const auto cs = extract_contours(grid, c);
            json supports = json::array();
            for (const auto& g : cs) {
                for (int cell : g.support) scene.polygons.push_back(cell_polygon(grid, cell, "#ff7f0e", 0.3));
                supports.push_back({{"cells", g.support.size()}, {"weight_exponent", weight_exponent(grid, g)}});
            }
            j["contours"] = supports;
            rebase_points(scene, grid.graph());
        } else if (f_.what == "insertions") {
            const int cls = std::max(0, f_.class_id);
            const auto rep = enumerate_u2_insertions(kind_, f_.d2, cls, insertion_options());
            const PgsCatalog cat = pgs_catalog(kind_, f_.d2);
            const Lattice2& l = cat.classes[static_cast<std::size_t>(cls)].sublattices.front().ambient;
            scene.kind = kind_;
            // one representative insertion per order, side by side
            std::map<int, const Insertion*> pick;
            for (const auto& x : rep.insertions) pick.emplace(x.order(), &x);
            const i64 span = 4 * (detail::isqrt(f_.d2) + 2);
            i64 shift = 0;
            for (const auto& [n, x] : pick) {
                const Vec2 off{shift, 0};
                for (const Vec2& v : ball(kind_, span * span / 4)) {
                    if (!is_lattice_point(kind_, embed(kind_, Site{0, 0, 0}) + v)) continue;
                    const Vec2 p = embed(kind_, Site{0, 0, 0}) + v;
                    const bool particle = l.contains(v) && std::find(x->removed.begin(), x->removed.end(), p) == x->removed.end();
                    scene.points.push_back({p + off, particle ? Mark::Particle : Mark::Site, 0});
                }
                for (const Vec2& r : x->removed) scene.points.push_back({r + off, Mark::Removed, n});
                for (const Vec2& a : x->added) scene.points.push_back({a + off, Mark::Added, n});
                shift += span;
            }
            j["insertions"] = insertion_json(rep);
        } else {
            throw DomainError("unknown --what '" + f_.what + "' (pgs, sliding, contour, insertions)");
        }
        scene.title = str(kind_) + " d2=" + std::to_string(f_.d2) + " " + f_.what;
        svg_ = render_svg(scene, style);
        j["svg_bytes"] = svg_.size();
        return j;
    }

    Torus torus_from_cells(const PgsCatalog& cat, i64 a, i64 b) const {
        const Template t = detail::template_of(cat);
        return Torus::from_ambient(kind_, Lattice2::spanned_by(a * t.u, b * t.v));
    }

    // Contour scenes draw cells at their stored origins, so use raw
    // positions for the sites as well.
    static void rebase_points(Scene& s, const TorusGraph& g) {
        for (int i = 0; i < g.size(); ++i) s.points[static_cast<std::size_t>(i)].pos = g.position(i);
    }

    Flags f_;
    std::string command_;
    std::vector<std::string> argv_;
    LatticeKind kind_ = LatticeKind::A2;
    json provenance_ = json::object();
    std::string svg_;
};

void emit_error(const std::string& kind, const std::string& message, const std::string& command) {
    json j{{"schema_version", kSchemaVersion}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int run_command(int argc, char** argv) {
    CLI::App app{"Hard-core lattice gas analysis: PGS catalogs, densities, sliding, contours, dominance"};
    app.require_subcommand(1);
    Flags f;
    const char* names[] = {"classify", "density", "pgs", "mtriangles", "sliding", "dominance",
                           "peierls", "gibbs-exact", "gibbs-mcmc", "oracle", "render"};
    for (const char* name : names) {
        CLI::App* s = app.add_subcommand(name);
        s->add_option("--lattice", f.lattice, "a2, h2 or z2")->capture_default_str();
        s->add_option("--d2", f.d2, "squared exclusion distance");
        s->add_option("--torus", f.torus, "periods p1a,p1b;p2a,p2b in lattice coordinates");
        s->add_option("--cells", f.cells, "NxM template cells (instead of --torus)");
        s->add_option("--u", f.u, "fugacity, exact rational such as 3/2 or 1e4")->capture_default_str();
        s->add_option("--steps", f.steps, "Monte Carlo steps")->capture_default_str();
        s->add_option("--burn-in", f.burn_in, "Monte Carlo burn-in steps")->capture_default_str();
        s->add_option("--seed", f.seed, "random seed")->capture_default_str();
        s->add_option("--budget", f.budget, "site budget for exact computations")->capture_default_str();
        s->add_flag("--json", f.json, "compact single-line JSON");
        s->add_flag("--timings", f.timings, "include wall-clock timings (makes output non-reproducible)");
        s->add_option("--out", f.out, "write the report (JSON, or SVG for render) to this path");
        s->add_option("--max-templates", f.max_templates, "largest contour support for peierls")->capture_default_str();
        s->add_option("--class", f.class_id, "PGS class id");
        s->add_option("--threads", f.threads, "worker threads (results do not depend on it)");
        s->add_option("--length", f.length, "side of the square witness torus for sliding");
        s->add_option("--n-max", f.n_max, "largest insertion order searched")->capture_default_str();
        s->add_option("--what", f.what, "render: pgs, sliding, contour or insertions")->capture_default_str();
        s->add_flag("--all", f.all, "oracle: count every optimizer");
        s->add_flag("--verify", f.verify, "density: cross-check on tori with the packing oracle");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        Runner r(f, command, args);
        const json report = r.run();
        const std::string text = report.dump(f.json ? -1 : 2) + "\n";
        if (command == "render") {
            if (f.out.empty()) {
                std::cout << r.svg();
            } else {
                std::ofstream(f.out) << r.svg();
                std::cout << text;
            }
        } else if (!f.out.empty()) {
            std::ofstream(f.out) << text;
        } else {
            std::cout << text;
        }
        return 0;
    } catch (const BudgetError& e) {
        emit_error("budget", e.what(), command);
        return kExitBudget;
    } catch (const DomainError& e) {
        emit_error("domain", e.what(), command);
        return kExitDomain;
    }
}

int main(int argc, char** argv) { return run_command(argc, argv); }
