#pragma once

#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "sumsets/instance.hpp"
#include "sumsets/matching.hpp"

namespace sumsets {

/// Vertices are opaque identities; equal group elements in different
/// classes stay distinct vertices. The payload and provenance fields are
/// carried for reporting and for cross-construction identities.
struct Vertex {
    std::optional<Element> elem;  // group payload (addition-style graphs)
    std::string name;             // label for file-loaded graphs
    int orig_a = -1;              // provenance: source vid (channel/lift), left factor (product)
    int orig_b = -1;              // provenance: right factor (product)

    std::string display(int vid) const {
        if (!name.empty()) return name;
        if (elem) return elem_to_string(*elem);
        return "#" + std::to_string(vid);
    }
};

/// Directed graph whose vertex classes U_I are indexed by the subsets I
/// of {1..h} and whose edges only run along I -> I + {i}. A structural
/// audit enforces exactly that after every construction.
class HypercubeGraph {
public:
    explicit HypercubeGraph(int h) : h_(h) {
        if (h < 0 || h > 20) throw DomainError("HypercubeGraph: h out of range");
        class_members_.resize(size_t(1) << h);
    }

    int add_vertex(uint32_t mask, Vertex v) {
        if (mask >= class_members_.size()) throw DomainError("HypercubeGraph: bad class mask");
        int vid = static_cast<int>(verts_.size());
        verts_.push_back(std::move(v));
        class_of_.push_back(mask);
        pos_in_class_.push_back(static_cast<int>(class_members_[mask].size()));
        class_members_[mask].push_back(vid);
        out_.emplace_back();
        in_.emplace_back();
        return vid;
    }

    void add_edge(int u, int v) {
        IndexSet iu(h_, class_of_[u]), iv(h_, class_of_[v]);
        if (!edge(iu, iv))
            throw DomainError("HypercubeGraph: edge must go from U_I to U_{I + {i}}, got " +
                              iu.to_string() + " -> " + iv.to_string());
        out_[u].push_back(v);
        in_[v].push_back(u);
    }

    /// Sort adjacency, drop duplicate edges, and audit the layer
    /// structure. Every constructor in this library calls it.
    void finalize() {
        for (auto& a : out_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        for (auto& a : in_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        audit();
    }

    void audit() const {
        for (size_t mask = 0; mask < class_members_.size(); ++mask)
            for (int vid : class_members_[mask])
                if (class_of_[vid] != mask)
                    throw std::logic_error("HypercubeGraph: class bookkeeping corrupt");
        for (size_t u = 0; u < out_.size(); ++u)
            for (int v : out_[u])
                if (!edge(IndexSet(h_, class_of_[u]), IndexSet(h_, class_of_[v])))
                    throw std::logic_error("HypercubeGraph: edge violates index relation");
    }

    int h() const { return h_; }
    size_t num_vertices() const { return verts_.size(); }
    size_t num_edges() const {
        size_t e = 0;
        for (const auto& a : out_) e += a.size();
        return e;
    }
    const Vertex& vert(int vid) const { return verts_[vid]; }
    uint32_t class_mask(int vid) const { return class_of_[vid]; }
    int level_of(int vid) const { return __builtin_popcount(class_of_[vid]); }
    int pos_in_class(int vid) const { return pos_in_class_[vid]; }
    const std::vector<int>& class_members(uint32_t mask) const { return class_members_[mask]; }
    std::vector<int> layer_members(int level) const {
        std::vector<int> out;
        for (uint32_t mask = 0; mask < class_members_.size(); ++mask)
            if (__builtin_popcount(mask) == level)
                out.insert(out.end(), class_members_[mask].begin(), class_members_[mask].end());
        return out;
    }
    const std::vector<int>& out(int vid) const { return out_[vid]; }
    const std::vector<int>& in(int vid) const { return in_[vid]; }
    bool has_edge(int u, int v) const {
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

    /// vid of the vertex in class `mask` carrying payload e, or -1.
    int find_payload(uint32_t mask, const Element& e) const {
        for (int vid : class_members_[mask])
            if (verts_[vid].elem && *verts_[vid].elem == e) return vid;
        return -1;
    }

private:
    int h_;
    std::vector<Vertex> verts_;
    std::vector<uint32_t> class_of_;
    std::vector<int> pos_in_class_;
    std::vector<std::vector<int>> class_members_;
    std::vector<std::vector<int>> out_, in_;
};

/// Layered digraph: edges only between consecutive layers. Used as the
/// hat-graph output and as input to the hypercube lift.
class LayeredGraph {
public:
    explicit LayeredGraph(int num_layers) : layer_members_(num_layers) {
        if (num_layers < 1) throw DomainError("LayeredGraph: needs at least one layer");
    }

    int add_vertex(int layer, Vertex v) {
        if (layer < 0 || layer >= static_cast<int>(layer_members_.size()))
            throw DomainError("LayeredGraph: bad layer");
        int vid = static_cast<int>(verts_.size());
        verts_.push_back(std::move(v));
        layer_of_.push_back(layer);
        layer_members_[layer].push_back(vid);
        out_.emplace_back();
        in_.emplace_back();
        return vid;
    }

    void add_edge(int u, int v) {
        if (layer_of_[v] != layer_of_[u] + 1)
            throw DomainError("LayeredGraph: edge must go to the next layer");
        out_[u].push_back(v);
        in_[v].push_back(u);
    }

    void finalize() {
        for (auto& a : out_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        for (auto& a : in_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }

    int num_layers() const { return static_cast<int>(layer_members_.size()); }
    size_t num_vertices() const { return verts_.size(); }
    size_t num_edges() const {
        size_t e = 0;
        for (const auto& a : out_) e += a.size();
        return e;
    }
    const Vertex& vert(int vid) const { return verts_[vid]; }
    int layer_of(int vid) const { return layer_of_[vid]; }
    const std::vector<int>& layer_members(int layer) const { return layer_members_[layer]; }
    const std::vector<int>& out(int vid) const { return out_[vid]; }
    const std::vector<int>& in(int vid) const { return in_[vid]; }
    bool has_edge(int u, int v) const {
        return std::binary_search(out_[u].begin(), out_[u].end(), v);
    }

private:
    std::vector<Vertex> verts_;
    std::vector<int> layer_of_;
    std::vector<std::vector<int>> layer_members_;
    std::vector<std::vector<int>> out_, in_;
};

/// Addition graph of (A, B_1, ..., B_h): U_I = A + sum_{i in I} B_i in a
/// separate copy of the group, edge x -> y between U_I and U_{I+{i}} iff
/// y - x lies in B_i.
inline HypercubeGraph build_addition_graph(const SumsetInstance& inst) {
    int h = inst.h();
    HypercubeGraph g(h);
    std::vector<GSet> sums(size_t(1) << h);
    std::vector<std::vector<int>> vids(size_t(1) << h);
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        sums[mask] = iterated_sumset(inst, IndexSet(h, mask));
        for (const auto& e : sums[mask].elems())
            vids[mask].push_back(g.add_vertex(mask, Vertex{e, "", -1, -1}));
    }
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        for (int i = 1; i <= h; ++i) {
            if (mask & (1u << (i - 1))) continue;
            uint32_t next = mask | (1u << (i - 1));
            for (size_t xi = 0; xi < sums[mask].size(); ++xi)
                for (const auto& b : inst.B(i).elems()) {
                    Element y = elem_add(inst.spec(), sums[mask][xi], b);
                    size_t yi = sums[next].index_of(y);
                    g.add_edge(vids[mask][xi], vids[next][yi]);
                }
        }
    }
    g.finalize();
    return g;
}

/// The unique I'_c != I' with I -> I'_c -> I''; explicitly I + (I'' - I').
inline IndexSet associate_index(const IndexSet& i, const IndexSet& ip, const IndexSet& ipp) {
    if (!edge(i, ip) || !edge(ip, ipp))
        throw DomainError("associate_index: requires a chain I -> I' -> I''");
    return IndexSet(i.h, i.mask | (ipp.mask & ~ip.mask));
}

/// One failed square: the chain, the fixed pair of vertices, and a Hall
/// violator among the candidate endpoints.
struct SquareCommFailure {
    bool upward;  // which condition failed
    uint32_t i_mask, ip_mask, ipp_mask;
    int fixed_low;   // upward: v in U_I;  downward: v' in U_{I'}
    int fixed_high;  // upward: v' in U_{I'}; downward: v'' in U_{I''}
    std::vector<int> violator;      // sub-collection of endpoints with too few routes
    std::vector<int> neighborhood;  // their joint neighbourhood in U_{I'_c}
};

namespace detail {

inline std::vector<int> filter_class(const HypercubeGraph& g, const std::vector<int>& vids,
                                     uint32_t mask) {
    std::vector<int> out;
    for (int v : vids)
        if (g.class_mask(v) == mask) out.push_back(v);
    return out;
}

// Saturating-matching test for one fixed square. D = endpoints that must
// be routed, R = candidate associate-class vertices, connect(d, r) = the
// required edge exists. Returns nullopt on success, else (violator, N).
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> route_all(
    const HypercubeGraph& g, const std::vector<int>& D, const std::vector<int>& R,
    bool r_to_d_edges) {
    if (D.empty()) return std::nullopt;
    std::vector<std::vector<int>> adj(D.size());
    for (size_t di = 0; di < D.size(); ++di)
        for (size_t ri = 0; ri < R.size(); ++ri) {
            bool connected = r_to_d_edges ? g.has_edge(R[ri], D[di]) : g.has_edge(D[di], R[ri]);
            if (connected) adj[di].push_back(static_cast<int>(ri));
        }
    BipartiteMatcher matcher(D.size(), R.size(), std::move(adj));
    if (matcher.solve() == D.size()) return std::nullopt;
    auto violator_idx = matcher.hall_violator();
    std::vector<int> violator, nbhd;
    std::vector<char> in_n(R.size(), 0);
    for (int di : *violator_idx) {
        violator.push_back(D[di]);
        for (size_t ri = 0; ri < R.size(); ++ri) {
            bool connected =
                r_to_d_edges ? g.has_edge(R[ri], D[di]) : g.has_edge(D[di], R[ri]);
            if (connected) in_n[ri] = 1;
        }
    }
    for (size_t ri = 0; ri < R.size(); ++ri)
        if (in_n[ri]) nbhd.push_back(R[ri]);
    return std::make_pair(violator, nbhd);
}

}  // namespace detail

/// Decides square commutativity exactly. For each chain I -> I' -> I'' and each
/// fixed (v, v') the universal quantifier over sub-collections of
/// endpoints is, by Hall's theorem, one saturating-matching test against
/// the associate class; dually for the downward condition.
inline std::optional<SquareCommFailure> check_square_commutativity(const HypercubeGraph& g) {
    int h = g.h();
    for (uint32_t i_mask = 0; i_mask < (1u << h); ++i_mask) {
        for (int a = 1; a <= h; ++a) {
            if (i_mask & (1u << (a - 1))) continue;
            uint32_t ip_mask = i_mask | (1u << (a - 1));
            for (int b = 1; b <= h; ++b) {
                if (ip_mask & (1u << (b - 1))) continue;
                uint32_t ipp_mask = ip_mask | (1u << (b - 1));
                uint32_t ic_mask = i_mask | (ipp_mask & ~ip_mask);
                // upward: fix v in U_I and v' among its successors in U_{I'}
                for (int v : g.class_members(i_mask)) {
                    std::vector<int> r = detail::filter_class(g, g.out(v), ic_mask);
                    for (int vp : detail::filter_class(g, g.out(v), ip_mask)) {
                        auto d = detail::filter_class(g, g.out(vp), ipp_mask);
                        if (auto bad = detail::route_all(g, d, r, /*r_to_d=*/true))
                            return SquareCommFailure{true, i_mask, ip_mask, ipp_mask,
                                                     v,    vp,      bad->first, bad->second};
                    }
                }
                // downward: fix v'' in U_{I''} and v' among its predecessors
                for (int vpp : g.class_members(ipp_mask)) {
                    std::vector<int> r = detail::filter_class(g, g.in(vpp), ic_mask);
                    for (int vp : detail::filter_class(g, g.in(vpp), ip_mask)) {
                        auto d = detail::filter_class(g, g.in(vp), i_mask);
                        if (auto bad = detail::route_all(g, d, r, /*r_to_d=*/false))
                            return SquareCommFailure{false, i_mask, ip_mask, ipp_mask,
                                                     vp,    vpp,     bad->first, bad->second};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

inline bool is_square_commutative(const HypercubeGraph& g) {
    return !check_square_commutativity(g).has_value();
}

namespace detail {

// The literal definition: enumerate every sub-collection and search for
// an injective routing by backtracking. Exponential; guards the Hall
// reduction on tiny graphs.
inline bool route_subset_exists(const HypercubeGraph& g, const std::vector<int>& chosen,
                                const std::vector<int>& R, bool r_to_d_edges) {
    std::vector<char> used(R.size(), 0);
    std::vector<size_t> stack_choice;
    size_t di = 0;
    std::vector<size_t> next_try(chosen.size(), 0);
    while (true) {
        if (di == chosen.size()) return true;
        bool advanced = false;
        for (size_t ri = next_try[di]; ri < R.size(); ++ri) {
            if (used[ri]) continue;
            bool connected = r_to_d_edges ? g.has_edge(R[ri], chosen[di])
                                          : g.has_edge(chosen[di], R[ri]);
            if (!connected) continue;
            used[ri] = 1;
            stack_choice.push_back(ri);
            next_try[di] = ri + 1;
            ++di;
            if (di < chosen.size()) next_try[di] = 0;
            advanced = true;
            break;
        }
        if (advanced) continue;
        if (di == 0) return false;
        --di;
        used[stack_choice.back()] = 0;
        stack_choice.pop_back();
    }
}

inline std::optional<std::pair<std::vector<int>, std::vector<int>>> route_all_bruteforce(
    const HypercubeGraph& g, const std::vector<int>& D, const std::vector<int>& R,
    bool r_to_d_edges) {
    if (D.size() > 20) throw CapExceededError("square-commutativity brute force", D.size(), 20);
    for (uint32_t s = 1; s < (1u << D.size()); ++s) {
        std::vector<int> chosen;
        for (size_t k = 0; k < D.size(); ++k)
            if (s & (1u << k)) chosen.push_back(D[k]);
        if (!route_subset_exists(g, chosen, R, r_to_d_edges)) {
            std::vector<int> nbhd;
            for (size_t ri = 0; ri < R.size(); ++ri)
                for (int d : chosen) {
                    bool connected =
                        r_to_d_edges ? g.has_edge(R[ri], d) : g.has_edge(d, R[ri]);
                    if (connected) {
                        nbhd.push_back(R[ri]);
                        break;
                    }
                }
            return std::make_pair(chosen, nbhd);
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Exponential cross-check of the matching reduction (configurable via
/// the caller; meant for tiny graphs only).
inline std::optional<SquareCommFailure> check_square_commutativity_bruteforce(
    const HypercubeGraph& g) {
    int h = g.h();
    for (uint32_t i_mask = 0; i_mask < (1u << h); ++i_mask) {
        for (int a = 1; a <= h; ++a) {
            if (i_mask & (1u << (a - 1))) continue;
            uint32_t ip_mask = i_mask | (1u << (a - 1));
            for (int b = 1; b <= h; ++b) {
                if (ip_mask & (1u << (b - 1))) continue;
                uint32_t ipp_mask = ip_mask | (1u << (b - 1));
                uint32_t ic_mask = i_mask | (ipp_mask & ~ip_mask);
                for (int v : g.class_members(i_mask)) {
                    std::vector<int> r = detail::filter_class(g, g.out(v), ic_mask);
                    for (int vp : detail::filter_class(g, g.out(v), ip_mask)) {
                        auto d = detail::filter_class(g, g.out(vp), ipp_mask);
                        if (d.empty()) continue;
                        if (auto bad = detail::route_all_bruteforce(g, d, r, true))
                            return SquareCommFailure{true, i_mask, ip_mask, ipp_mask,
                                                     v,    vp,      bad->first, bad->second};
                    }
                }
                for (int vpp : g.class_members(ipp_mask)) {
                    std::vector<int> r = detail::filter_class(g, g.in(vpp), ic_mask);
                    for (int vp : detail::filter_class(g, g.in(vpp), ip_mask)) {
                        auto d = detail::filter_class(g, g.in(vp), i_mask);
                        if (d.empty()) continue;
                        if (auto bad = detail::route_all_bruteforce(g, d, r, false))
                            return SquareCommFailure{false, i_mask, ip_mask, ipp_mask,
                                                     vp,    vpp,     bad->first, bad->second};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

/// Induced subgraph on the vertices lying on some X -> Y path, reindexed
/// the subsets of {1..j}, j = |I' - I|, by the order-preserving map on the
/// elements of I' - I. The result may be empty.
inline HypercubeGraph build_channel(const HypercubeGraph& g, const IndexSet& i,
                                    const IndexSet& ip, const std::vector<int>& x,
                                    const std::vector<int>& y) {
    if (!i.subset_of(ip)) throw DomainError("build_channel: requires I subset of I'");
    for (int v : x)
        if (g.class_mask(v) != i.mask) throw DomainError("build_channel: X not inside U_I");
    for (int v : y)
        if (g.class_mask(v) != ip.mask) throw DomainError("build_channel: Y not inside U_{I'}");

    size_t n = g.num_vertices();
    std::vector<char> fwd(n, 0), bwd(n, 0);
    std::queue<int> q;
    for (int v : x)
        if (!fwd[v]) { fwd[v] = 1; q.push(v); }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.out(u))
            if (!fwd[v]) { fwd[v] = 1; q.push(v); }
    }
    for (int v : y)
        if (!bwd[v]) { bwd[v] = 1; q.push(v); }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.in(u))
            if (!bwd[v]) { bwd[v] = 1; q.push(v); }
    }

    // order-preserving bijection from {J : I <= J <= I'} to subsets of {1..j}
    std::vector<int> new_index;  // 1-based index of each element of I'-I, ascending
    for (int e = 1; e <= g.h(); ++e)
        if (ip.contains(e) && !i.contains(e)) new_index.push_back(e);
    int j = static_cast<int>(new_index.size());
    auto compress = [&](uint32_t mask) {
        uint32_t cm = 0;
        for (int p = 0; p < j; ++p)
            if (mask & (1u << (new_index[p] - 1))) cm |= 1u << p;
        return cm;
    };

    HypercubeGraph chan(j);
    std::vector<int> remap(n, -1);
    // keep class order deterministic: original classes in mask order,
    // vertices in original class order
    for (uint32_t mask = 0; mask < (1u << g.h()); ++mask) {
        if ((mask & ~ip.mask) || (i.mask & ~mask)) continue;  // J outside [I, I']
        for (int v : g.class_members(mask)) {
            if (!fwd[v] || !bwd[v]) continue;
            Vertex nv = g.vert(v);
            nv.orig_a = v;
            nv.orig_b = -1;
            remap[v] = chan.add_vertex(compress(mask), std::move(nv));
        }
    }
    for (size_t u = 0; u < n; ++u) {
        if (remap[u] < 0) continue;
        for (int v : g.out(static_cast<int>(u)))
            if (remap[v] >= 0) chan.add_edge(remap[u], remap[v]);
    }
    chan.finalize();
    return chan;
}

/// Classwise Cartesian product with componentwise edges.
inline HypercubeGraph hypercube_product(const HypercubeGraph& g1, const HypercubeGraph& g2) {
    if (g1.h() != g2.h()) throw DomainError("hypercube_product: mismatched h");
    int h = g1.h();
    HypercubeGraph p(h);
    // vid of (u1, u2) = base[mask] + pos(u1) * |U_mask(g2)| + pos(u2)
    std::vector<int> base(size_t(1) << h, 0);
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        base[mask] = static_cast<int>(p.num_vertices());
        for (int u1 : g1.class_members(mask))
            for (int u2 : g2.class_members(mask)) {
                Vertex v;
                v.orig_a = u1;
                v.orig_b = u2;
                if (g1.vert(u1).elem && g2.vert(u2).elem) {
                    Element e = *g1.vert(u1).elem;
                    const Element& e2 = *g2.vert(u2).elem;
                    e.insert(e.end(), e2.begin(), e2.end());
                    v.elem = std::move(e);
                }
                p.add_vertex(mask, std::move(v));
            }
    }
    auto pid = [&](uint32_t mask, int u1, int u2) {
        return base[mask] + g1.pos_in_class(u1) * static_cast<int>(g2.class_members(mask).size()) +
               g2.pos_in_class(u2);
    };
    for (uint32_t mask = 0; mask < (1u << h); ++mask)
        for (int u1 : g1.class_members(mask))
            for (int v1 : g1.out(u1)) {
                uint32_t next = g1.class_mask(v1);
                for (int u2 : g2.class_members(mask))
                    for (int v2 : g2.out(u2)) {
                        if (g2.class_mask(v2) != next) continue;
                        p.add_edge(pid(mask, u1, u2), pid(next, v1, v2));
                    }
            }
    p.finalize();
    return p;
}

/// Two-layer reachability compression: V_0 and V_h copied, edge v -> v'
/// iff v' is reachable from v (forward BFS per source).
inline LayeredGraph hat_graph(const HypercubeGraph& g) {
    LayeredGraph hat(2);
    std::vector<int> bottom = g.class_members(0);
    std::vector<int> top = g.class_members(IndexSet::full(g.h()).mask);
    std::vector<int> bot_id(bottom.size()), top_id(top.size());
    std::vector<int> top_pos(g.num_vertices(), -1);
    for (size_t k = 0; k < bottom.size(); ++k) {
        Vertex v = g.vert(bottom[k]);
        v.orig_a = bottom[k];
        v.orig_b = -1;
        bot_id[k] = hat.add_vertex(0, std::move(v));
    }
    for (size_t k = 0; k < top.size(); ++k) {
        Vertex v = g.vert(top[k]);
        v.orig_a = top[k];
        v.orig_b = -1;
        top_id[k] = hat.add_vertex(1, std::move(v));
        top_pos[top[k]] = static_cast<int>(k);
    }
    std::vector<char> seen(g.num_vertices());
    for (size_t k = 0; k < bottom.size(); ++k) {
        std::fill(seen.begin(), seen.end(), 0);
        std::queue<int> q;
        seen[bottom[k]] = 1;
        q.push(bottom[k]);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (top_pos[u] >= 0) hat.add_edge(bot_id[k], top_id[top_pos[u]]);
            for (int v : g.out(u))
                if (!seen[v]) { seen[v] = 1; q.push(v); }
        }
    }
    hat.finalize();
    return hat;
}

/// Closing-remark lift: U_I is a fresh copy of layer V_{|I|}, and the
/// layer edges are copied between U_I and U_{I'} for every I -> I'.
inline HypercubeGraph lift_layered_to_hypercube(const LayeredGraph& l) {
    int h = l.num_layers() - 1;
    HypercubeGraph g(h);
    std::vector<std::vector<int>> copy_ids(size_t(1) << h);
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        int layer = __builtin_popcount(mask);
        for (int u : l.layer_members(layer)) {
            Vertex v = l.vert(u);
            v.orig_a = u;
            v.orig_b = -1;
            copy_ids[mask].push_back(g.add_vertex(mask, std::move(v)));
        }
    }
    std::vector<std::vector<int>> pos_in_layer(l.num_layers());
    std::vector<int> pos_of(l.num_vertices());
    for (int layer = 0; layer < l.num_layers(); ++layer) {
        const auto& mem = l.layer_members(layer);
        for (size_t k = 0; k < mem.size(); ++k) pos_of[mem[k]] = static_cast<int>(k);
    }
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        int layer = __builtin_popcount(mask);
        for (int i = 1; i <= h; ++i) {
            if (mask & (1u << (i - 1))) continue;
            uint32_t next = mask | (1u << (i - 1));
            for (int u : l.layer_members(layer))
                for (int v : l.out(u))
                    g.add_edge(copy_ids[mask][pos_of[u]], copy_ids[next][pos_of[v]]);
        }
    }
    g.finalize();
    return g;
}

/// Layerwise tensor product of layered graphs (componentwise edges).
inline LayeredGraph layered_product(const LayeredGraph& l1, const LayeredGraph& l2) {
    if (l1.num_layers() != l2.num_layers())
        throw DomainError("layered_product: mismatched layer counts");
    LayeredGraph p(l1.num_layers());
    std::vector<std::vector<int>> ids(l1.num_layers());
    std::vector<int> pos1(l1.num_vertices()), pos2(l2.num_vertices());
    for (int layer = 0; layer < l1.num_layers(); ++layer) {
        const auto& m1 = l1.layer_members(layer);
        const auto& m2 = l2.layer_members(layer);
        for (size_t a = 0; a < m1.size(); ++a) pos1[m1[a]] = static_cast<int>(a);
        for (size_t b = 0; b < m2.size(); ++b) pos2[m2[b]] = static_cast<int>(b);
        for (int u1 : m1)
            for (int u2 : m2) {
                Vertex v;
                v.orig_a = u1;
                v.orig_b = u2;
                ids[layer].push_back(p.add_vertex(layer, std::move(v)));
            }
    }
    auto pid = [&](int layer, int u1, int u2) {
        return ids[layer][pos1[u1] * l2.layer_members(layer).size() + pos2[u2]];
    };
    for (int layer = 0; layer + 1 < l1.num_layers(); ++layer)
        for (int u1 : l1.layer_members(layer))
            for (int v1 : l1.out(u1))
                for (int u2 : l2.layer_members(layer))
                    for (int v2 : l2.out(u2))
                        p.add_edge(pid(layer, u1, u2), pid(layer + 1, v1, v2));
    p.finalize();
    return p;
}

/// Checks hat(G1 (x) G2) = hat(G1) x hat(G2) as vertex/edge sets, keyed
/// by factor provenance. Guaranteed for square commutative factors.
inline bool hat_product_identity_holds(const HypercubeGraph& g1, const HypercubeGraph& g2) {
    HypercubeGraph prod = hypercube_product(g1, g2);
    LayeredGraph lhs = hat_graph(prod);
    LayeredGraph rhs = layered_product(hat_graph(g1), hat_graph(g2));

    using Key = std::pair<int, int>;  // (vid in g1, vid in g2)
    auto lhs_key = [&](int vid) {
        const Vertex& v = lhs.vert(vid);
        const Vertex& pv = prod.vert(v.orig_a);
        return Key{pv.orig_a, pv.orig_b};
    };
    LayeredGraph hat1 = hat_graph(g1), hat2 = hat_graph(g2);
    auto rhs_key = [&](int vid) {
        const Vertex& v = rhs.vert(vid);
        return Key{hat1.vert(v.orig_a).orig_a, hat2.vert(v.orig_b).orig_a};
    };

    for (int layer = 0; layer < 2; ++layer) {
        std::vector<Key> a, b;
        for (int vid : lhs.layer_members(layer)) a.push_back(lhs_key(vid));
        for (int vid : rhs.layer_members(layer)) b.push_back(rhs_key(vid));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }
    std::vector<std::pair<Key, Key>> ea, eb;
    for (int u : lhs.layer_members(0))
        for (int v : lhs.out(u)) ea.emplace_back(lhs_key(u), lhs_key(v));
    for (int u : rhs.layer_members(0))
        for (int v : rhs.out(u)) eb.emplace_back(rhs_key(u), rhs_key(v));
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
}

}  // namespace sumsets
