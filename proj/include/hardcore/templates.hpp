#pragma once

// Template cells on a commensurate torus, phi-regular / phi-correct cells and
// the frustrated set.

#include <algorithm>
#include <map>
#include <vector>

#include "hardcore/bits.hpp"
#include "hardcore/pgs.hpp"
#include "hardcore/torus.hpp"

namespace hardcore {

/// Cells are the cosets T / P of the template lattice T modulo the torus
/// periods P. A site belongs to the cell of the T-point obtained by flooring
/// its coordinates in the reduced template basis (u, v).
class TemplateGrid {
public:
    TemplateGrid(const PgsCatalog& cat, const Torus& torus)
        : cat_(cat), graph_(torus, cat.d2), tmpl_(detail::template_of(cat)) {
        const Lattice2& p = graph_.periods();
        if (!tmpl_.lattice.ambient.contains(p))
            throw CommensurabilityError("torus periods are not periods of the template lattice");
        const Vec2 u = tmpl_.u, v = tmpl_.v;
        const i64 det = cross(u, v);
        site_cell_.assign(static_cast<std::size_t>(graph_.size()), -1);
        for (int i = 0; i < graph_.size(); ++i) {
            const Vec2 x = graph_.position(i);
            const i64 a = floor_div(cross(x, v), det), b = floor_div(cross(u, x), det);
            const Vec2 origin = a * u + b * v;
            const i64 key = p.coset_index(origin);
            auto [it, fresh] = cell_of_slot_.emplace(key, static_cast<int>(origins_.size()));
            if (fresh) origins_.push_back(p.reduce(origin));
            site_cell_[static_cast<std::size_t>(i)] = it->second;
        }
        const int nc = static_cast<int>(origins_.size());
        if (static_cast<i64>(nc) * tmpl_.lattice.ambient.index() != p.index())
            throw std::logic_error("template cells do not tile the torus");
        masks_.assign(static_cast<std::size_t>(nc), Bits(static_cast<std::size_t>(graph_.size())));
        for (int i = 0; i < graph_.size(); ++i) masks_[static_cast<std::size_t>(site_cell_[static_cast<std::size_t>(i)])].set(static_cast<std::size_t>(i));
        around_.assign(static_cast<std::size_t>(nc), {});
        for (int c = 0; c < nc; ++c)
            for (i64 da = -1; da <= 1; ++da)
                for (i64 db = -1; db <= 1; ++db) {
                    const Vec2 o = origins_[static_cast<std::size_t>(c)] + da * u + db * v;
                    around_[static_cast<std::size_t>(c)].push_back(cell_of_slot_.at(p.coset_index(o)));
                }
        for (auto& s : realize_pgs_states(cat, graph_)) {
            pgs_bits_.push_back(graph_.to_bits(s.sites));
            pgs_.push_back(std::move(s));
        }
    }

    const PgsCatalog& catalog() const { return cat_; }
    const TorusGraph& graph() const { return graph_; }
    const Template& templ() const { return tmpl_; }
    int cell_count() const { return static_cast<int>(origins_.size()); }
    int cell_of(int site) const { return site_cell_[static_cast<std::size_t>(site)]; }
    Vec2 cell_origin(int c) const { return origins_[static_cast<std::size_t>(c)]; }
    /// Cell whose origin is the template point o (modulo the periods).
    int cell_at(Vec2 o) const { return cell_of_slot_.at(graph_.periods().coset_index(o)); }

    /// Image of a cell under the template translation by (a, b) cells.
    int shifted(int c, i64 a, i64 b) const { return cell_at(cell_origin(c) + a * tmpl_.u + b * tmpl_.v); }

    const Bits& cell_mask(int c) const { return masks_[static_cast<std::size_t>(c)]; }

    /// The 3 x 3 block around a cell (itself included, index 4), possibly with
    /// repetitions on small tori.
    const std::vector<int>& block(int c) const { return around_[static_cast<std::size_t>(c)]; }

    /// Distinct 8-neighbours of a cell.
    std::vector<int> neighbours8(int c) const {
        std::vector<int> out;
        for (int d : block(c))
            if (d != c && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        return out;
    }

    /// Distinct edge-sharing neighbours of a cell.
    std::vector<int> neighbours4(int c) const {
        std::vector<int> out;
        for (int k : {1, 3, 5, 7}) {
            const int d = block(c)[static_cast<std::size_t>(k)];
            if (d != c && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        }
        return out;
    }

    int pgs_count() const { return static_cast<int>(pgs_.size()); }
    const PgsState& pgs(int j) const { return pgs_[static_cast<std::size_t>(j)]; }
    const Bits& pgs_bits(int j) const { return pgs_bits_[static_cast<std::size_t>(j)]; }

    bool regular(const Bits& config, int phi, int cell) const {
        return config.agrees_on(pgs_bits(phi), cell_mask(cell));
    }

    /// correct[phi][cell]
    std::vector<std::vector<bool>> correctness(const Bits& config) const {
        const int nc = cell_count();
        std::vector<std::vector<bool>> out(static_cast<std::size_t>(pgs_count()), std::vector<bool>(static_cast<std::size_t>(nc)));
        for (int phi = 0; phi < pgs_count(); ++phi) {
            std::vector<bool> reg(static_cast<std::size_t>(nc));
            for (int c = 0; c < nc; ++c) reg[static_cast<std::size_t>(c)] = regular(config, phi, c);
            for (int c = 0; c < nc; ++c) {
                bool ok = true;
                for (int d : block(c)) ok = ok && reg[static_cast<std::size_t>(d)];
                out[static_cast<std::size_t>(phi)][static_cast<std::size_t>(c)] = ok;
            }
        }
        return out;
    }

private:
    PgsCatalog cat_;
    TorusGraph graph_;
    Template tmpl_;
    std::vector<Vec2> origins_;
    std::map<i64, int> cell_of_slot_;
    std::vector<int> site_cell_;
    std::vector<Bits> masks_;
    std::vector<std::vector<int>> around_;
    std::vector<PgsState> pgs_;
    std::vector<Bits> pgs_bits_;
};

struct CorrectTemplates {
    std::vector<std::vector<bool>> correct;  // [phi][cell]
    std::vector<bool> frustrated;            // [cell]
    int frustrated_count = 0;
};

inline CorrectTemplates correct_templates(const TemplateGrid& grid, const Configuration& config) {
    CorrectTemplates out;
    out.correct = grid.correctness(grid.graph().to_bits(config));
    out.frustrated.assign(static_cast<std::size_t>(grid.cell_count()), true);
    for (const auto& row : out.correct)
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c]) out.frustrated[c] = false;
    for (bool f : out.frustrated) out.frustrated_count += f ? 1 : 0;
    return out;
}

/// Fraction of phi-correct cells for every PGS phi of the grid.
inline std::vector<double> order_parameter(const TemplateGrid& grid, const Configuration& config) {
    const auto corr = grid.correctness(grid.graph().to_bits(config));
    std::vector<double> out;
    for (const auto& row : corr) {
        int n = 0;
        for (bool b : row) n += b ? 1 : 0;
        out.push_back(double(n) / double(grid.cell_count()));
    }
    return out;
}

}  // namespace hardcore
