#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "sumsets/bitset.hpp"
#include "sumsets/hypercube.hpp"
#include "sumsets/rational.hpp"

namespace sumsets {

/// Exact magnification value with the subset that attains it.
struct MagnificationResult {
    int level = -1;                      // layer index for mu results
    std::optional<IndexSet> index;       // class index for beta results
    Rational value;
    std::vector<int> achiever;           // subset of V_0, canonical order
    enum class Method { brute, matching } method = Method::brute;
};

inline constexpr size_t kDefaultEnumerationCap = 20;

namespace detail {

template <typename Graph>
std::vector<DynBitset> reach_rows_for(const Graph& g, const std::vector<int>& sources) {
    std::vector<DynBitset> rows;
    rows.reserve(sources.size());
    std::vector<char> seen(g.num_vertices());
    for (int s : sources) {
        DynBitset row(g.num_vertices());
        std::fill(seen.begin(), seen.end(), 0);
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            row.set(u);
            for (int v : g.out(u))
                if (!seen[v]) { seen[v] = 1; q.push(v); }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// compare a/b < c/d on small nonnegative integers
inline bool ratio_less(size_t a, size_t b, size_t c, size_t d) {
    return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}
inline bool ratio_eq(size_t a, size_t b, size_t c, size_t d) {
    return static_cast<unsigned __int128>(a) * d == static_cast<unsigned __int128>(c) * b;
}

// lexicographic order on the ascending index sequences of two equal-size
// subsets (bitmasks)
inline bool mask_lex_less(uint32_t x, uint32_t y) {
    while (x && y) {
        int lx = __builtin_ctz(x), ly = __builtin_ctz(y);
        if (lx != ly) return lx < ly;
        x &= x - 1;
        y &= y - 1;
    }
    return false;
}

struct MuCore {
    std::vector<int> sources;        // V_0 in canonical order
    std::vector<DynBitset> rows;     // reachability row per source
    DynBitset target;                // bits of the target layer/class
    size_t target_size = 0;
};

// minimum over nonempty subsets with the deterministic achiever policy:
// smallest value, then smallest cardinality, then lexicographically least
inline MagnificationResult mu_core_bruteforce(const MuCore& core, size_t cap) {
    size_t n = core.sources.size();
    if (n > cap || n > 30)
        throw CapExceededError("mu brute-force subset enumeration", n, std::min<size_t>(cap, 30));
    if (n == 0) throw DomainError("mu: empty source layer");
    uint32_t best_mask = 0;
    size_t best_num = 0, best_den = 1;
    bool have = false;
    DynBitset acc(core.target.size());
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        acc.clear();
        uint32_t rest = mask;
        while (rest) {
            acc.or_with(core.rows[__builtin_ctz(rest)]);
            rest &= rest - 1;
        }
        size_t img = acc.count_and(core.target);
        size_t card = static_cast<size_t>(__builtin_popcount(mask));
        if (!have || ratio_less(img, card, best_num, best_den)) {
            have = true;
            best_num = img;
            best_den = card;
            best_mask = mask;
        } else if (ratio_eq(img, card, best_num, best_den)) {
            size_t bc = static_cast<size_t>(__builtin_popcount(best_mask));
            if (card < bc || (card == bc && mask_lex_less(mask, best_mask))) {
                best_num = img;
                best_den = card;
                best_mask = mask;
            }
        }
    }
    MagnificationResult r;
    r.value = Rational(BigInt(static_cast<long long>(best_num)),
                       BigInt(static_cast<long long>(best_den)));
    for (size_t k = 0; k < n; ++k)
        if (best_mask & (1u << k)) r.achiever.push_back(core.sources[k]);
    r.method = MagnificationResult::Method::brute;
    return r;
}

// mu >= p/q iff the bipartite source/target reachability graph with
// sources replicated p times and targets q times satisfies Hall's
// condition; decided as a saturating flow (integral, so equivalent to a
// maximum matching on the replicated graph).
inline bool mu_feasible(const std::vector<std::vector<int>>& adj, size_t n0, size_t n1,
                        long long p, long long q) {
    MaxFlow flow(n0 + n1 + 2);
    int s = static_cast<int>(n0 + n1), t = s + 1;
    long long inf = p * static_cast<long long>(n0) + 1;
    for (size_t z = 0; z < n0; ++z) {
        flow.add_edge(s, static_cast<int>(z), p);
        for (int y : adj[z]) flow.add_edge(static_cast<int>(z), static_cast<int>(n0) + y, inf);
    }
    for (size_t y = 0; y < n1; ++y)
        flow.add_edge(static_cast<int>(n0) + static_cast<int>(y), t, q);
    return flow.run(s, t) == p * static_cast<long long>(n0);
}

inline MagnificationResult mu_core_matching(const MuCore& core) {
    size_t n0 = core.sources.size();
    if (n0 == 0) throw DomainError("mu: empty source layer");
    // compress target vertices and build the reachability bipartite graph
    std::vector<int> tpos(core.target.size(), -1);
    size_t n1 = 0;
    {
        size_t idx = 0;
        for (size_t v = 0; v < core.target.size(); ++v)
            if (core.target.test(v)) tpos[v] = static_cast<int>(idx++);
        n1 = idx;
    }
    std::vector<std::vector<int>> adj(n0);
    for (size_t z = 0; z < n0; ++z)
        core.rows[z].for_each([&](size_t v) {
            if (tpos[v] >= 0) adj[z].push_back(tpos[v]);
        });

    MagnificationResult r;
    r.method = MagnificationResult::Method::matching;

    // a source with empty image forces mu = 0
    for (size_t z = 0; z < n0; ++z)
        if (adj[z].empty()) {
            r.value = Rational(0);
            r.achiever = {core.sources[z]};
            return r;
        }
    if (n1 == 0) throw std::logic_error("mu: target empty but all images nonempty");

    // every value |Im(Z)|/|Z| is a fraction p/q with p <= n1, q <= n0;
    // feasibility is monotone, so binary search the sorted candidates
    std::vector<std::pair<long long, long long>> cand;
    for (long long q = 1; q <= static_cast<long long>(n0); ++q)
        for (long long p = 1; p <= static_cast<long long>(n1); ++p)
            if (std::gcd(p, q) == 1) cand.emplace_back(p, q);
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        return static_cast<unsigned __int128>(a.first) * b.second <
               static_cast<unsigned __int128>(b.first) * a.second;
    });

    size_t lo = 0, hi = cand.size() - 1, best = 0;
    // mu >= 1/n0 always holds here (all images nonempty), so lo is feasible
    while (lo <= hi) {
        size_t mid = lo + (hi - lo) / 2;
        if (mu_feasible(adj, n0, n1, cand[mid].first, cand[mid].second)) {
            best = mid;
            lo = mid + 1;
        } else {
            if (mid == 0) break;
            hi = mid - 1;
        }
    }
    r.value = Rational(BigInt(cand[best].first), BigInt(cand[best].second));

    if (best + 1 == cand.size()) {
        // mu equals the largest candidate n1/1: some singleton reaches the
        // whole target
        for (size_t z = 0; z < n0; ++z)
            if (adj[z].size() == n1) {
                r.achiever = {core.sources[z]};
                return r;
            }
        throw std::logic_error("mu: maximal candidate feasible but no full-image source");
    }

    // the min cut at the next (infeasible) candidate exposes a minimizer
    auto [p, q] = cand[best + 1];
    MaxFlow flow(n0 + n1 + 2);
    int s = static_cast<int>(n0 + n1), t = s + 1;
    long long inf = p * static_cast<long long>(n0) + 1;
    for (size_t z = 0; z < n0; ++z) {
        flow.add_edge(s, static_cast<int>(z), p);
        for (int y : adj[z]) flow.add_edge(static_cast<int>(z), static_cast<int>(n0) + y, inf);
    }
    for (size_t y = 0; y < n1; ++y)
        flow.add_edge(static_cast<int>(n0) + static_cast<int>(y), t, q);
    flow.run(s, t);
    auto side = flow.min_cut_source_side(s);
    for (size_t z = 0; z < n0; ++z)
        if (side[z]) r.achiever.push_back(core.sources[z]);
    if (r.achiever.empty()) throw std::logic_error("mu: empty min-cut achiever");
    return r;
}

}  // namespace detail

inline std::vector<DynBitset> reach_rows(const HypercubeGraph& g) {
    return detail::reach_rows_for(g, g.class_members(0));
}
inline std::vector<DynBitset> reach_rows(const LayeredGraph& g) {
    return detail::reach_rows_for(g, g.layer_members(0));
}

inline DynBitset class_bits(const HypercubeGraph& g, const IndexSet& i) {
    DynBitset b(g.num_vertices());
    for (int v : g.class_members(i.mask)) b.set(v);
    return b;
}
inline DynBitset layer_bits(const HypercubeGraph& g, int level) {
    DynBitset b(g.num_vertices());
    for (int v : g.layer_members(level)) b.set(v);
    return b;
}
inline DynBitset layer_bits(const LayeredGraph& g, int layer) {
    DynBitset b(g.num_vertices());
    for (int v : g.layer_members(layer)) b.set(v);
    return b;
}

namespace detail {

template <typename Graph>
std::vector<int> sources_of(const Graph& g);
template <>
inline std::vector<int> sources_of(const HypercubeGraph& g) { return g.class_members(0); }
template <>
inline std::vector<int> sources_of(const LayeredGraph& g) { return g.layer_members(0); }

template <typename Graph>
void require_sources(const Graph& g, const std::vector<int>& x) {
    auto src = sources_of(g);
    for (int v : x)
        if (!std::binary_search(src.begin(), src.end(), v))
            throw DomainError("image: X must lie in the source layer");
}

template <typename Graph>
std::vector<int> image_impl(const Graph& g, const std::vector<int>& x, const DynBitset& target) {
    require_sources(g, x);
    std::vector<char> seen(g.num_vertices());
    std::queue<int> q;
    for (int v : x)
        if (!seen[v]) { seen[v] = 1; q.push(v); }
    std::vector<int> out;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (target.test(u)) out.push_back(u);
        for (int v : g.out(u))
            if (!seen[v]) { seen[v] = 1; q.push(v); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <typename Graph>
MuCore make_mu_core(const Graph& g, const DynBitset& target) {
    MuCore core;
    core.sources = sources_of(g);
    core.rows = reach_rows(g);
    core.target = target;
    core.target_size = target.count();
    return core;
}

}  // namespace detail

/// Im_G(X, U_I): class-restricted image of X under forward reachability.
inline std::vector<int> image(const HypercubeGraph& g, const std::vector<int>& x,
                              const IndexSet& i) {
    return detail::image_impl(g, x, class_bits(g, i));
}
/// Im_G(X, V_level)
inline std::vector<int> image(const HypercubeGraph& g, const std::vector<int>& x, int level) {
    return detail::image_impl(g, x, layer_bits(g, level));
}
inline std::vector<int> image(const LayeredGraph& g, const std::vector<int>& x, int layer) {
    return detail::image_impl(g, x, layer_bits(g, layer));
}

/// beta_I(Z) = |Im(Z, U_I)| / |Z| for nonempty Z in V_0.
inline Rational beta(const HypercubeGraph& g, const std::vector<int>& z, const IndexSet& i) {
    if (z.empty()) throw DomainError("beta: Z must be nonempty");
    size_t img = image(g, z, i).size();
    return Rational(BigInt(static_cast<long long>(img)),
                    BigInt(static_cast<long long>(z.size())));
}

inline MagnificationResult mu_bruteforce(const HypercubeGraph& g, int level,
                                         size_t cap = kDefaultEnumerationCap) {
    auto core = detail::make_mu_core(g, layer_bits(g, level));
    auto r = detail::mu_core_bruteforce(core, cap);
    r.level = level;
    return r;
}
inline MagnificationResult mu_bruteforce(const LayeredGraph& g, int layer,
                                         size_t cap = kDefaultEnumerationCap) {
    auto core = detail::make_mu_core(g, layer_bits(g, layer));
    auto r = detail::mu_core_bruteforce(core, cap);
    r.level = layer;
    return r;
}

inline MagnificationResult mu_matching(const HypercubeGraph& g, int level) {
    auto core = detail::make_mu_core(g, layer_bits(g, level));
    auto r = detail::mu_core_matching(core);
    r.level = level;
    return r;
}
inline MagnificationResult mu_matching(const LayeredGraph& g, int layer) {
    auto core = detail::make_mu_core(g, layer_bits(g, layer));
    auto r = detail::mu_core_matching(core);
    r.level = layer;
    return r;
}

/// Among all minimizers of |Im(Z, V_1)|/|Z|: minimum cardinality first,
/// then lexicographically least in canonical vertex order.
inline MagnificationResult minimal_mu1_minimizer(const HypercubeGraph& g,
                                                 size_t cap = kDefaultEnumerationCap) {
    return mu_bruteforce(g, 1, cap);
}

/// All subsets of V_0 attaining mu_level (for achiever-quantified checks).
inline std::vector<std::vector<int>> mu_achievers(const HypercubeGraph& g, int level,
                                                  size_t cap = kDefaultEnumerationCap) {
    auto core = detail::make_mu_core(g, layer_bits(g, level));
    size_t n = core.sources.size();
    if (n > cap || n > 30)
        throw CapExceededError("mu achiever enumeration", n, std::min<size_t>(cap, 30));
    auto best = detail::mu_core_bruteforce(core, cap);
    std::vector<std::vector<int>> out;
    DynBitset acc(g.num_vertices());
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        acc.clear();
        uint32_t rest = mask;
        while (rest) {
            acc.or_with(core.rows[__builtin_ctz(rest)]);
            rest &= rest - 1;
        }
        Rational val(BigInt(static_cast<long long>(acc.count_and(core.target))),
                     BigInt(static_cast<long long>(__builtin_popcount(mask))));
        if (val == best.value) {
            std::vector<int> z;
            for (size_t k = 0; k < n; ++k)
                if (mask & (1u << k)) z.push_back(core.sources[k]);
            out.push_back(std::move(z));
        }
    }
    return out;
}

}  // namespace sumsets
