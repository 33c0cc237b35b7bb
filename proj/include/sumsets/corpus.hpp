#pragma once

#include <cstdint>
#include <vector>

#include "sumsets/hypercube.hpp"
#include "sumsets/instance.hpp"
#include "sumsets/rng.hpp"

namespace sumsets {

/// Parameters of the seeded random instance corpus. The draw sequence is
/// fixed (one splitmix64 stream consumed strictly in order), so a
/// parameter set fully determines every instance.
struct CorpusParams {
    size_t count = 200;
    int h_min = 1, h_max = 3;
    size_t dim_min = 1, dim_max = 3;
    std::vector<int64_t> moduli_menu = {0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    size_t max_a = 8;   // |A| target upper bound
    size_t max_b = 4;   // |B_i| target upper bound
    int64_t z_range = 8;  // Z coordinates drawn from [-z_range, z_range]
    uint64_t seed = 24601;
};

inline SumsetInstance random_instance(Rng& rng, const CorpusParams& p) {
    int h = p.h_min + static_cast<int>(rng.below(p.h_max - p.h_min + 1));
    size_t d = p.dim_min + rng.below(p.dim_max - p.dim_min + 1);
    std::vector<int64_t> moduli(d);
    for (auto& m : moduli) m = p.moduli_menu[rng.below(p.moduli_menu.size())];
    GroupSpec spec(moduli);
    auto draw_set = [&](size_t max_n) {
        size_t n = 1 + rng.below(max_n);  // target size; duplicates may shrink it
        std::vector<Element> elems;
        for (size_t k = 0; k < n; ++k) {
            Element x(d);
            for (size_t i = 0; i < d; ++i) {
                if (moduli[i] == 0)
                    x[i] = static_cast<int64_t>(rng.below(2 * p.z_range + 1)) - p.z_range;
                else
                    x[i] = static_cast<int64_t>(rng.below(moduli[i]));
            }
            elems.push_back(std::move(x));
        }
        return GSet(spec, std::move(elems));
    };
    GSet a = draw_set(p.max_a);
    std::vector<GSet> b;
    for (int i = 0; i < h; ++i) b.push_back(draw_set(p.max_b));
    return SumsetInstance(std::move(a), std::move(b));
}

inline std::vector<SumsetInstance> generate_corpus(const CorpusParams& p) {
    Rng rng(p.seed);
    std::vector<SumsetInstance> out;
    out.reserve(p.count);
    for (size_t i = 0; i < p.count; ++i) out.push_back(random_instance(rng, p));
    return out;
}

/// Random hypercube graph (usually not square commutative): class sizes
/// up to max_class_size, each legal class-to-class edge present with
/// probability edge_pct / 100.
inline HypercubeGraph random_hypercube_graph(Rng& rng, int h, size_t max_class_size,
                                             unsigned edge_pct) {
    HypercubeGraph g(h);
    std::vector<std::vector<int>> vids(size_t(1) << h);
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        size_t n = 1 + rng.below(max_class_size);
        for (size_t k = 0; k < n; ++k) {
            Vertex v;
            v.name = "c" + std::to_string(mask) + "v" + std::to_string(k);
            vids[mask].push_back(g.add_vertex(mask, std::move(v)));
        }
    }
    for (uint32_t mask = 0; mask < (1u << h); ++mask)
        for (int i = 1; i <= h; ++i) {
            if (mask & (1u << (i - 1))) continue;
            uint32_t next = mask | (1u << (i - 1));
            for (int u : vids[mask])
                for (int v : vids[next])
                    if (rng.below(100) < edge_pct) g.add_edge(u, v);
        }
    g.finalize();
    return g;
}

}  // namespace sumsets
