#pragma once

// Finite-volume Gibbs distributions of the hard-core gas: exact partition
// polynomials, exact probabilities and a Metropolis sampler.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hardcore/bits.hpp"
#include "hardcore/errors.hpp"
#include "hardcore/lattice.hpp"
#include "hardcore/templates.hpp"
#include "hardcore/torus.hpp"

namespace hardcore {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Sites with pairwise exclusions and sites blocked by the boundary condition.
struct Region {
    LatticeKind kind = LatticeKind::Z2;
    i64 d2 = 1;
    std::vector<Vec2> sites;  // ambient positions (torus: representatives)
    std::vector<Bits> adj;
    Bits blocked;             // sites excluded by the boundary configuration
    bool periodic = false;

    int size() const { return static_cast<int>(sites.size()); }

    static Region torus(const TorusGraph& g) {
        Region r;
        r.kind = g.kind();
        r.d2 = g.d2();
        r.periodic = true;
        for (int i = 0; i < g.size(); ++i) {
            r.sites.push_back(g.position(i));
            r.adj.push_back(g.conflicts(i));
        }
        r.blocked = Bits(r.sites.size());
        return r;
    }

    /// Finite planar region with an occupied boundary configuration outside it.
    static Region planar(LatticeKind k, i64 d2, std::vector<Vec2> sites, const std::vector<Vec2>& boundary = {}) {
        Region r;
        r.kind = k;
        r.d2 = d2;
        std::sort(sites.begin(), sites.end());
        sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
        for (const Vec2& s : sites)
            if (!is_lattice_point(k, s)) throw InvalidSite("region contains a hexagon centre");
        r.sites = std::move(sites);
        const std::size_t n = r.sites.size();
        r.adj.assign(n, Bits(n));
        r.blocked = Bits(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && norm2(k, r.sites[i] - r.sites[j]) < d2) r.adj[i].set(j);
        for (const Vec2& b : boundary) {
            if (std::binary_search(r.sites.begin(), r.sites.end(), b))
                throw DomainError("boundary configuration overlaps the region");
            for (std::size_t i = 0; i < n; ++i)
                if (norm2(k, r.sites[i] - b) < d2) r.blocked.set(i);
        }
        return r;
    }

    /// Sites (a, b) with 0 <= a < na, 0 <= b < nb in lattice coordinates
    /// (both parities on the honeycomb).
    static Region box(LatticeKind k, i64 d2, i64 na, i64 nb, const std::vector<Vec2>& boundary = {}) {
        std::vector<Vec2> s;
        for (i64 a = 0; a < na; ++a)
            for (i64 b = 0; b < nb; ++b)
                for (int p = 0; p < (k == LatticeKind::H2 ? 2 : 1); ++p) s.push_back(embed(k, Site{a, b, p}));
        return planar(k, d2, std::move(s), boundary);
    }

    int index_of(Vec2 v) const {
        for (int i = 0; i < size(); ++i)
            if (sites[static_cast<std::size_t>(i)] == v) return i;
        return -1;
    }

    /// psi admissible inside the region and compatible with the boundary.
    bool compatible(const std::vector<int>& psi) const {
        Bits occ(sites.size());
        for (int i : psi) {
            if (i < 0 || i >= size() || occ.test(static_cast<std::size_t>(i))) return false;
            if (blocked.test(static_cast<std::size_t>(i))) return false;
            occ.set(static_cast<std::size_t>(i));
        }
        for (int i : psi)
            if (adj[static_cast<std::size_t>(i)].intersects(occ)) return false;
        return true;
    }
};

/// c[k] = number of compatible configurations with k particles.
struct PartitionPolynomial {
    std::vector<BigInt> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }

    BigRational evaluate(const BigRational& u) const {
        BigRational acc = 0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + BigRational(c[k]);
        return acc;
    }

    friend bool operator==(const PartitionPolynomial&, const PartitionPolynomial&) = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            if (!s.empty()) s += " + ";
            if (k == 0 || c[k] != 1) s += c[k].str();
            if (k >= 1) s += k == 1 ? "u" : "u^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }
};

struct GibbsOptions {
    int site_budget = 36;       // exact sweep always allowed up to this size
    int frontier_budget = 24;   // larger regions need a frontier at most this wide
};

namespace detail {

inline void add_shifted(std::vector<BigInt>& into, const std::vector<BigInt>& p, std::size_t shift) {
    if (into.size() < p.size() + shift) into.resize(p.size() + shift);
    for (std::size_t k = 0; k < p.size(); ++k) into[k + shift] += p[k];
}

}  // namespace detail

/// Site-by-site sweep keyed by the occupancy of the frontier: the processed
/// sites that still have an unprocessed neighbour.
inline PartitionPolynomial partition_polynomial(const Region& r, const GibbsOptions& opt = {}) {
    const int n = r.size();
    if (n == 0) return {{BigInt(1)}};
    std::vector<int> last(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int l = i;
        const Bits& a = r.adj[static_cast<std::size_t>(i)];
        for (std::size_t j = a.first(); j < a.size(); j = a.next(j)) l = std::max(l, static_cast<int>(j));
        last[static_cast<std::size_t>(i)] = l;
    }
    int width = 0;
    for (int k = 0; k < n; ++k) {
        int w = 0;
        for (int i = 0; i <= k; ++i) w += last[static_cast<std::size_t>(i)] > k ? 1 : 0;
        width = std::max(width, w);
    }
    if (n > opt.site_budget && width > opt.frontier_budget)
        throw BudgetError("region of " + std::to_string(n) + " sites has frontier width " + std::to_string(width),
                          opt.site_budget);

    std::map<Bits, std::vector<BigInt>> states;
    states.emplace(Bits(static_cast<std::size_t>(n)), std::vector<BigInt>{BigInt(1)});
    for (int k = 0; k < n; ++k) {
        std::map<Bits, std::vector<BigInt>> next;
        const Bits& nb = r.adj[static_cast<std::size_t>(k)];
        const bool can = !r.blocked.test(static_cast<std::size_t>(k));
        for (auto& [key, poly] : states) {
            if (can && !key.intersects(nb)) {
                Bits occ = key;
                occ.set(static_cast<std::size_t>(k));
                detail::add_shifted(next[occ], poly, 1);
            }
            detail::add_shifted(next[key], poly, 0);
        }
        // retire sites with no unprocessed neighbour left
        states.clear();
        for (auto& [key, poly] : next) {
            Bits trimmed = key;
            for (std::size_t i = key.first(); i < key.size(); i = key.next(i))
                if (last[i] <= k) trimmed.reset(i);
            detail::add_shifted(states[trimmed], poly, 0);
        }
    }
    PartitionPolynomial out;
    for (auto& [key, poly] : states) detail::add_shifted(out.c, poly, 0);
    while (out.c.size() > 1 && out.c.back() == 0) out.c.pop_back();
    return out;
}

/// u^{#psi} / Z(u), zero for incompatible psi.
inline BigRational finite_gibbs_probability(const std::vector<int>& psi, const Region& r, const BigRational& u,
                                            const GibbsOptions& opt = {}) {
    if (!r.compatible(psi)) return 0;
    const BigRational z = partition_polynomial(r, opt).evaluate(u);
    BigRational w = 1;
    for (std::size_t i = 0; i < psi.size(); ++i) w *= u;
    return w / z;
}

/// Parses "p/q", "p" or a decimal such as "1e4" or "0.25" into an exact rational.
inline BigRational parse_rational(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational");
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            const BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
            if (q == 0) throw DomainError("zero denominator in '" + s + "'");
            return BigRational(p, q);
        }
        std::string mant = s;
        long exp10 = 0;
        const auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            mant = s.substr(0, e);
            exp10 = std::stol(s.substr(e + 1));
        }
        const auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant == "-" || mant == "+") throw DomainError("malformed number '" + s + "'");
        bool negative = false;
        if (mant[0] == '+' || mant[0] == '-') {
            negative = mant[0] == '-';
            mant.erase(0, 1);
        }
        // a leading zero would make the parser read octal
        mant.erase(0, std::min(mant.find_first_not_of('0'), mant.size() - 1));
        if (mant.find_first_not_of("0123456789") != std::string::npos) throw DomainError("malformed number '" + s + "'");
        BigRational v{BigInt(mant)};
        if (negative) v = -v;
        const BigInt ten = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
        return exp10 < 0 ? v / BigRational(ten) : v * BigRational(ten);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("malformed rational '" + s + "'");
    }
}

// ---------------------------------------------------------------------------
// Metropolis sampler

struct McmcOptions {
    std::int64_t burn_in = 0;
    std::int64_t thin = 1;               // record every thin-th step after burn-in
    double anneal_from = 0.0;            // if > 0, u ramps geometrically from this value during burn-in
    const TemplateGrid* grid = nullptr;  // enables order-parameter traces
    std::int64_t order_every = 0;        // steps between order-parameter samples (0: never)
    std::optional<Configuration> start;
};

struct ChainStats {
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    std::int64_t insert_proposed = 0, insert_accepted = 0;
    std::int64_t delete_proposed = 0, delete_accepted = 0;
    std::int64_t blocked = 0;  // insertions rejected by the exclusion
    std::vector<int> particle_trace;
    std::vector<std::vector<double>> order_trace;  // per sample, per PGS
    Configuration final_state;

    double acceptance_rate() const {
        const auto p = insert_proposed + delete_proposed;
        return p ? double(insert_accepted + delete_accepted) / double(p) : 0.0;
    }

    double mean_particles() const {
        if (particle_trace.empty()) return 0.0;
        double s = 0;
        for (int x : particle_trace) s += x;
        return s / double(particle_trace.size());
    }

    /// Batch-means standard error of the particle-number mean.
    double standard_error(int batches = 20) const {
        const std::size_t n = particle_trace.size();
        if (n < static_cast<std::size_t>(2 * batches)) return std::numeric_limits<double>::infinity();
        const std::size_t b = n / static_cast<std::size_t>(batches);
        std::vector<double> means;
        for (int k = 0; k < batches; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < b; ++i) s += particle_trace[static_cast<std::size_t>(k) * b + i];
            means.push_back(s / double(b));
        }
        double mu = 0;
        for (double m : means) mu += m;
        mu /= batches;
        double var = 0;
        for (double m : means) var += (m - mu) * (m - mu);
        var /= (batches - 1);
        return std::sqrt(var / batches);
    }

    /// Time-averaged order parameter per PGS over the recorded samples.
    std::vector<double> mean_order() const {
        if (order_trace.empty()) return {};
        std::vector<double> acc(order_trace.front().size(), 0.0);
        for (const auto& row : order_trace)
            for (std::size_t j = 0; j < row.size(); ++j) acc[j] += row[j];
        for (double& a : acc) a /= double(order_trace.size());
        return acc;
    }
};

namespace detail {

// Uniform integer in [0, n) and uniform double in [0, 1) from raw 64-bit
// draws, fixed here so that streams do not depend on the standard library.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}
inline double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Toggle chain: pick a uniform site and propose flipping it; insertions
/// that violate the exclusion are rejected, the rest accepted with
/// min(1, u^{+-1}). Stationary law proportional to u^{#psi}.
inline ChainStats mcmc_run(const TorusGraph& g, double u, std::int64_t steps, std::uint64_t seed,
                           const McmcOptions& opt = {}) {
    if (!(u > 0)) throw DomainError("fugacity must be positive");
    ChainStats st;
    st.seed = seed;
    st.steps = steps;
    std::mt19937_64 rng(seed);
    const int n = g.size();
    std::vector<char> occ(static_cast<std::size_t>(n), 0);
    std::vector<int> pressure(static_cast<std::size_t>(n), 0);  // occupied neighbours
    int count = 0;
    auto place = [&](int i, int delta) {
        occ[static_cast<std::size_t>(i)] = delta > 0;
        count += delta;
        for (int j : g.neighbours(i)) pressure[static_cast<std::size_t>(j)] += delta;
    };
    if (opt.start) {
        if (!g.admissible(*opt.start)) throw DomainError("start configuration is not admissible");
        for (int i : *opt.start) place(i, +1);
    }
    const std::int64_t total = opt.burn_in + steps;
    for (std::int64_t t = 0; t < total; ++t) {
        double uu = u;
        if (t < opt.burn_in && opt.anneal_from > 0)
            uu = opt.anneal_from * std::pow(u / opt.anneal_from, double(t) / double(opt.burn_in));
        const int i = static_cast<int>(detail::uniform_index(rng, static_cast<std::uint64_t>(n)));
        const double r = detail::uniform01(rng);
        const bool measuring = t >= opt.burn_in;
        if (occ[static_cast<std::size_t>(i)]) {
            if (measuring) ++st.delete_proposed;
            if (uu <= 1.0 || r * uu < 1.0) {
                place(i, -1);
                if (measuring) ++st.delete_accepted;
            }
        } else {
            if (measuring) ++st.insert_proposed;
            if (pressure[static_cast<std::size_t>(i)] > 0) {
                if (measuring) ++st.blocked;
            } else if (uu >= 1.0 || r < uu) {
                place(i, +1);
                if (measuring) ++st.insert_accepted;
            }
        }
        if (!measuring) continue;
        const std::int64_t m = t - opt.burn_in;
        if (opt.thin > 0 && m % opt.thin == 0) st.particle_trace.push_back(count);
        if (opt.grid && opt.order_every > 0 && m % opt.order_every == 0) {
            Configuration c;
            for (int k = 0; k < n; ++k)
                if (occ[static_cast<std::size_t>(k)]) c.push_back(k);
            st.order_trace.push_back(order_parameter(*opt.grid, c));
        }
    }
    for (int k = 0; k < n; ++k)
        if (occ[static_cast<std::size_t>(k)]) st.final_state.push_back(k);
    return st;
}

}  // namespace hardcore
