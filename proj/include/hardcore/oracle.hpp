#pragma once

// Exact maximum packings on tori: maximum independent sets of the exclusion
// graph by Russian-doll search, with optimizer counting.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hardcore/bits.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/torus.hpp"

namespace hardcore {

/// Maximum independent sets of a graph given by adjacency bitsets.
/// Vertices are searched in a fixed order; c_[i] is the independence number
/// of the suffix {order[i], ...}.
class MisSolver {
public:
    explicit MisSolver(const std::vector<Bits>& adj, std::vector<int> order = {})
        : n_(adj.size()), order_(std::move(order)) {
        if (order_.empty()) {
            order_.resize(n_);
            std::iota(order_.begin(), order_.end(), 0);
        }
        pos_.assign(n_, 0);
        for (std::size_t i = 0; i < n_; ++i) pos_[static_cast<std::size_t>(order_[i])] = i;
        adj_.assign(n_, Bits(n_));
        for (std::size_t i = 0; i < n_; ++i) {
            const Bits& a = adj[static_cast<std::size_t>(order_[i])];
            for (std::size_t j = a.first(); j < n_; j = a.next(j)) adj_[i].set(pos_[j]);
        }
        run();
    }

    int max_size() const { return n_ ? c_[0] : 0; }

    /// One maximum independent set (original labels, sorted).
    std::vector<int> witness() const {
        std::vector<int> s;
        for (std::size_t p : best_set_) s.push_back(order_[p]);
        std::sort(s.begin(), s.end());
        return s;
    }

    /// Number of maximum independent sets containing the first vertex of the order.
    std::uint64_t count_through_first(std::vector<std::vector<int>>* out = nullptr, std::size_t limit = 0) {
        if (n_ == 0) return 0;
        Bits u(n_);
        u.set_all();
        u.reset(0);
        u.subtract(adj_[0]);
        chosen_.assign(1, 0);
        counted_ = 0;
        sink_ = out;
        limit_ = limit;
        count(u, 1, c_[0]);
        sink_ = nullptr;
        return counted_;
    }

    /// Number of all maximum independent sets (plain enumeration), stopping
    /// once stop_at are found when stop_at > 0.
    std::uint64_t count_all(std::vector<std::vector<int>>* out = nullptr, std::size_t limit = 0,
                            std::uint64_t stop_at = 0) {
        if (n_ == 0) return 1;
        Bits u(n_);
        u.set_all();
        chosen_.clear();
        counted_ = 0;
        sink_ = out;
        limit_ = limit;
        stop_at_ = stop_at;
        count(u, 0, c_[0]);
        sink_ = nullptr;
        stop_at_ = 0;
        return counted_;
    }

private:
    void run() {
        c_.assign(n_ + 1, 0);
        best_ = 0;
        for (std::size_t i = n_; i-- > 0;) {
            Bits u(n_);
            for (std::size_t j = i + 1; j < n_; ++j) u.set(j);
            u.subtract(adj_[i]);
            found_ = false;
            chosen_.assign(1, i);
            expand(u, 1);
            c_[i] = best_;
        }
    }

    void expand(Bits u, int size) {
        if (u.none()) {
            if (size > best_) {
                best_ = size;
                found_ = true;
                best_set_ = chosen_;
            }
            return;
        }
        while (!u.none()) {
            if (size + static_cast<int>(u.count()) <= best_) return;
            const std::size_t j = u.first();
            if (size + c_[j] <= best_) return;
            u.reset(j);
            Bits next = u;
            next.subtract(adj_[j]);
            chosen_.push_back(j);
            expand(std::move(next), size + 1);
            chosen_.pop_back();
            if (found_) return;
        }
    }

    void count(Bits u, int size, int target) {
        if (size == target) {
            ++counted_;
            if (sink_ && (limit_ == 0 || sink_->size() < limit_)) {
                std::vector<int> s;
                for (std::size_t p : chosen_) s.push_back(order_[p]);
                std::sort(s.begin(), s.end());
                sink_->push_back(std::move(s));
            }
            return;
        }
        while (!u.none()) {
            if (stop_at_ && counted_ >= stop_at_) return;
            if (size + static_cast<int>(u.count()) < target) return;
            const std::size_t j = u.first();
            if (size + c_[j] < target) return;
            u.reset(j);
            Bits next = u;
            next.subtract(adj_[j]);
            chosen_.push_back(j);
            count(std::move(next), size + 1, target);
            chosen_.pop_back();
        }
    }

    std::size_t n_;
    std::vector<int> order_;
    std::vector<std::size_t> pos_;
    std::vector<Bits> adj_;
    std::vector<int> c_;
    int best_ = 0;
    bool found_ = false;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_set_;
    std::uint64_t counted_ = 0;
    std::vector<std::vector<int>>* sink_ = nullptr;
    std::size_t limit_ = 0;
    std::uint64_t stop_at_ = 0;
};

struct OracleOptions {
    i64 budget = 600;                     // maximal number of torus sites
    std::optional<std::uint64_t> shuffle; // randomize the branch order with this seed
    std::size_t list_limit = 4096;        // optimizers kept in the result
};

struct PackingResult {
    Torus torus;
    i64 d2 = 0;
    int max_count = 0;
    Configuration example;         // one optimizer
    bool counted = false;          // optimizer_count is valid
    std::uint64_t optimizer_count = 0;
    std::vector<Configuration> optimizers;  // possibly truncated to list_limit
    bool truncated = false;
};

namespace detail {

inline std::vector<Bits> adjacency(const TorusGraph& g) {
    std::vector<Bits> adj;
    adj.reserve(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) adj.push_back(g.conflicts(i));
    return adj;
}

}  // namespace detail

/// Exact maximum packing on a torus. With enumerate_all the number of
/// optimizers is computed exactly: every site lies in the same number c0 of
/// optima (the torus automorphisms act transitively), so the total is
/// n * c0 / max. The explicit list is the closure of the optima through site 0
/// under the torus symmetries.
inline PackingResult max_packing_torus(LatticeKind kind, i64 d2, const Torus& torus, bool enumerate_all,
                                       const OracleOptions& opt = {}) {
    if (torus.kind != kind) throw DomainError("torus lattice kind mismatch");
    if (torus.site_count > opt.budget)
        throw BudgetError("torus has " + std::to_string(torus.site_count) + " sites, budget is " +
                              std::to_string(opt.budget),
                          opt.budget);
    const TorusGraph g(torus, d2);
    const auto adj = detail::adjacency(g);
    std::vector<int> order(static_cast<std::size_t>(g.size()));
    std::iota(order.begin(), order.end(), 0);
    if (opt.shuffle) {
        std::mt19937_64 rng(*opt.shuffle);
        std::shuffle(order.begin(), order.end(), rng);
        // keep site 0 first so that the through-site-0 count still applies
        std::iter_swap(order.begin(), std::find(order.begin(), order.end(), 0));
    }
    MisSolver solver(adj, order);

    PackingResult res;
    res.torus = torus;
    res.d2 = d2;
    res.max_count = solver.max_size();
    res.example = solver.witness();
    if (!enumerate_all) return res;

    std::vector<std::vector<int>> through0;
    const std::uint64_t c0 = solver.count_through_first(&through0, 0);
    const auto n = static_cast<std::uint64_t>(g.size());
    if ((n * c0) % static_cast<std::uint64_t>(res.max_count) != 0)
        throw std::logic_error("optimizer count is not integral; torus symmetry assumption violated");
    res.optimizer_count = n * c0 / static_cast<std::uint64_t>(res.max_count);
    res.counted = true;

    std::set<Configuration> all;
    const auto shifts = g.translations();
    for (const auto& s : through0) {
        for (const Vec2& t : shifts) {
            for (int inv = 0; inv < (kind == LatticeKind::H2 ? 2 : 1); ++inv) {
                Configuration c;
                c.reserve(s.size());
                for (int i : s) c.push_back(g.translate(inv ? g.edge_inversion(i) : i, t));
                std::sort(c.begin(), c.end());
                all.insert(std::move(c));
            }
        }
        if (all.size() > opt.list_limit) break;
    }
    res.truncated = all.size() != res.optimizer_count;
    for (const auto& c : all) {
        if (res.optimizers.size() >= opt.list_limit) {
            res.truncated = true;
            break;
        }
        res.optimizers.push_back(c);
    }
    return res;
}

}  // namespace hardcore
