// Acceptance suite: one pass/fail line per criterion, exit 0 iff all
// pass. Everything is exact arithmetic except the sharpness ratio, which
// uses certified interval enclosures.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "sumsets/bounds.hpp"
#include "sumsets/corpus.hpp"
#include "sumsets/extremal.hpp"
#include "sumsets/io.hpp"

using namespace sumsets;

namespace {

constexpr uint64_t kSeed = 24601;  // the documented corpus seed

struct Criterion {
    int number;
    std::string label;
    bool passed;
    double seconds;
    std::string detail;
};

std::vector<Criterion> g_results;

template <typename F>
void run_criterion(int number, const std::string& label, F&& body,
                   double budget_seconds = 0.0) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = body();
        ok = true;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && budget_seconds > 0 && secs > budget_seconds) {
        ok = false;
        detail += " [over the " + std::to_string(static_cast<int>(budget_seconds)) +
                  " s runtime budget]";
    }
    g_results.push_back({number, label, ok, secs, detail});
    std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

Rational rat(size_t v) { return Rational(BigInt(static_cast<long long>(v))); }

size_t top_size(const SumsetInstance& inst) {
    return iterated_sumset(inst, IndexSet::full(inst.h())).size();
}

// ---------------------------------------------------------------------------

std::string criterion1_extremal_exactness() {
    for (int64_t a : {2, 4, 8, 16}) {
        ExtremalParams p(2, a, 2);
        SumsetInstance inst = build_extremal_instance(p);
        auto pred = predicted_cardinalities(p);
        int64_t b = p.b();
        require(BigInt(static_cast<long long>(inst.m())) == pred.m &&
                    inst.m() == static_cast<size_t>(a * a + a),
                "a=" + std::to_string(a) + ": |A| mismatch");
        for (int i = 1; i <= 2; ++i)
            require(BigInt(static_cast<long long>(inst.a_plus_b_size(i))) == pred.sum_with_bi &&
                        inst.a_plus_b_size(i) == static_cast<size_t>(2 * a * b),
                    "a=" + std::to_string(a) + ": |A+B_i| mismatch");
        size_t top = top_size(inst);
        require(BigInt(static_cast<long long>(top)) == pred.top_exact,
                "a=" + std::to_string(a) + ": |A+B1+B2| mismatch");
        require(BigInt(static_cast<long long>(top)) >= pred.lower_bound &&
                    BigInt(static_cast<long long>(top)) >= BigInt(a) * BigInt(b) * BigInt(b),
                "a=" + std::to_string(a) + ": lower bound violated");
    }
    return "a in {2,4,8,16}: enumerated cardinalities equal the closed forms exactly";
}

std::string criterion2_sharpness_trend() {
    Rational lo_band(BigInt(22), BigInt(100)), hi_band(BigInt(26), BigInt(100));
    Rational quarter(BigInt(1), BigInt(4));
    Rational prev_hi(0);
    RatInterval last;
    for (int64_t a : {2, 4, 8, 16}) {
        ExtremalParams p(2, a, 2);
        SumsetInstance inst = build_extremal_instance(p);
        auto pred = predicted_cardinalities(p);
        RatInterval m32 = root_pow(rat(inst.m()), 3, 2, 96);
        RatInterval ratio = RatInterval(rat(top_size(inst))) /
                            (RatInterval(pow(pred.alpha, 2)) * m32);
        require(ratio.lo > prev_hi, "a=" + std::to_string(a) + ": ratio not increasing");
        require(ratio.hi < quarter, "a=" + std::to_string(a) + ": ratio exceeds 1/4");
        prev_hi = ratio.hi;
        last = ratio;
    }
    require(last.lo >= lo_band && last.hi <= hi_band, "a=16 ratio outside [0.22, 0.26]");
    return "ratio climbs toward 1/4 and sits in " + last.to_string(6) + " at a=16";
}

std::string criterion3_theorem_suite(const std::vector<SumsetInstance>& corpus) {
    size_t checks = 0;
    for (size_t idx = 0; idx < corpus.size(); ++idx) {
        const SumsetInstance& inst = corpus[idx];
        require(check_thm11(inst).holds, "thm11 failed at instance " + std::to_string(idx));
        auto rz = find_ruzsa_subset(inst);
        require(rz.record.holds && rz.corollary.holds,
                "thm22 failed at instance " + std::to_string(idx));
        SubsetPolicy pol;
        pol.samples = 50;
        pol.seed = Rng::mix(kSeed, idx);
        auto bb = check_balister_bollobas(inst, pol);
        require(bb.all_hold, "thm21 failed at instance " + std::to_string(idx));
        checks += bb.tested;

        auto prop = check_prop31(inst);
        require(prop.chain.holds, "prop31 chain failed at instance " + std::to_string(idx));

        // E = every subset of A with |E| <= 3 (never all of A), 10 sampled
        std::vector<uint64_t> masks;
        for (uint64_t mask = 0; mask < (1ULL << inst.m()); ++mask) {
            size_t sz = static_cast<size_t>(__builtin_popcountll(mask));
            if (sz <= 3 && sz < inst.m()) masks.push_back(mask);
        }
        Rng rng(Rng::mix(kSeed + 1, idx));
        while (masks.size() > 10) masks.erase(masks.begin() + static_cast<long>(rng.below(masks.size())));
        for (uint64_t mask : masks) {
            std::vector<Element> elems;
            for (size_t k = 0; k < inst.m(); ++k)
                if (mask & (1ULL << k)) elems.push_back(inst.A()[k]);
            auto c = check_cor518(inst, GSet(inst.spec(), std::move(elems)),
                                  kDefaultEnumerationCap, /*check_square_comm=*/false);
            require(c.record.holds, "cor518 failed at instance " + std::to_string(idx));
            ++checks;
        }
        checks += 4;
    }
    return std::to_string(corpus.size()) + " instances, " + std::to_string(checks) +
           " checks, 100% hold";
}

std::string criterion4_graph_invariants(const std::vector<SumsetInstance>& corpus,
                                        const std::vector<HypercubeGraph>& graphs) {
    // square commutativity of every addition graph
    for (size_t idx = 0; idx < graphs.size(); ++idx)
        require(is_square_commutative(graphs[idx]),
                "addition graph not square commutative at " + std::to_string(idx));

    // removed-component graphs: same E sampling as criterion 3
    for (size_t idx = 0; idx < corpus.size(); ++idx) {
        const SumsetInstance& inst = corpus[idx];
        std::vector<uint64_t> masks;
        for (uint64_t mask = 0; mask < (1ULL << inst.m()); ++mask) {
            size_t sz = static_cast<size_t>(__builtin_popcountll(mask));
            if (sz <= 3 && sz < inst.m()) masks.push_back(mask);
        }
        Rng rng(Rng::mix(kSeed + 1, idx));
        while (masks.size() > 10) masks.erase(masks.begin() + static_cast<long>(rng.below(masks.size())));
        for (uint64_t mask : masks) {
            std::vector<Element> elems;
            for (size_t k = 0; k < inst.m(); ++k)
                if (mask & (1ULL << k)) elems.push_back(inst.A()[k]);
            auto rg = removed_component_graph(inst, GSet(inst.spec(), std::move(elems)), false);
            require(is_square_commutative(rg.graph),
                    "removed graph not square commutative at " + std::to_string(idx));
        }
    }

    // channels: 10 random (X, Y) pairs per graph
    for (size_t idx = 0; idx < graphs.size(); ++idx) {
        const HypercubeGraph& g = graphs[idx];
        Rng rng(Rng::mix(kSeed + 2, idx));
        for (int t = 0; t < 10; ++t) {
            uint32_t ip_mask = static_cast<uint32_t>(rng.below(1u << g.h()));
            uint32_t i_mask = ip_mask & static_cast<uint32_t>(rng.below(1u << g.h()));
            auto pick = [&](const std::vector<int>& from) {
                std::vector<int> out;
                for (int v : from)
                    if (rng.coin()) out.push_back(v);
                if (out.empty()) out.push_back(from[rng.below(from.size())]);
                return out;
            };
            HypercubeGraph chan =
                build_channel(g, IndexSet(g.h(), i_mask), IndexSet(g.h(), ip_mask),
                              pick(g.class_members(i_mask)), pick(g.class_members(ip_mask)));
            require(is_square_commutative(chan),
                    "channel not square commutative at graph " + std::to_string(idx));
        }
    }

    // pairwise hypercube products of 20 corpus graphs: the smallest ones,
    // drawn evenly across h so every h contributes product pairs
    std::vector<size_t> order;
    {
        std::vector<std::vector<size_t>> by_h(4);
        for (size_t i = 0; i < graphs.size(); ++i) by_h[graphs[i].h()].push_back(i);
        for (auto& bucket : by_h)
            std::sort(bucket.begin(), bucket.end(), [&](size_t a, size_t b) {
                if (graphs[a].num_vertices() != graphs[b].num_vertices())
                    return graphs[a].num_vertices() < graphs[b].num_vertices();
                return a < b;
            });
        for (size_t round = 0; order.size() < 20; ++round) {
            bool any = false;
            for (int h = 1; h <= 3 && order.size() < 20; ++h)
                if (round < by_h[h].size()) {
                    order.push_back(by_h[h][round]);
                    any = true;
                }
            if (!any) break;
        }
    }
    size_t products = 0, beta_checks = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        for (size_t j = i + 1; j < order.size(); ++j) {
            const HypercubeGraph& g1 = graphs[order[i]];
            const HypercubeGraph& g2 = graphs[order[j]];
            if (g1.h() != g2.h()) continue;
            int h = g1.h();
            HypercubeGraph prod = hypercube_product(g1, g2);
            ++products;
            require(is_square_commutative(prod), "product not square commutative");

            // exact multiplicativity of the top magnification
            Rational lhs = mu_matching(prod, h).value;
            Rational rhs = mu_matching(g1, h).value * mu_matching(g2, h).value;
            require(lhs == rhs, "top magnification not multiplicative");

            // beta multiplicativity for full layers and two random
            // nonempty subsets per factor
            Rng rng(Rng::mix(kSeed + 3, products));
            auto pick_z = [&](const HypercubeGraph& g) {
                std::vector<std::vector<int>> zs = {g.class_members(0)};
                for (int t = 0; t < 2; ++t) {
                    std::vector<int> z;
                    for (int v : g.class_members(0))
                        if (rng.coin()) z.push_back(v);
                    if (z.empty()) z.push_back(g.class_members(0)[0]);
                    zs.push_back(std::move(z));
                }
                return zs;
            };
            for (const auto& z1 : pick_z(g1))
                for (const auto& z2 : pick_z(g2)) {
                    std::vector<int> zp;
                    for (int pv : prod.class_members(0)) {
                        bool in1 = false, in2 = false;
                        for (int v : z1) in1 |= prod.vert(pv).orig_a == v;
                        for (int v : z2) in2 |= prod.vert(pv).orig_b == v;
                        if (in1 && in2) zp.push_back(pv);
                    }
                    for (int i2 = 1; i2 <= h; ++i2) {
                        IndexSet is = IndexSet::from_members(h, {i2});
                        require(beta(prod, zp, is) == beta(g1, z1, is) * beta(g2, z2, is),
                                "beta not multiplicative");
                        ++beta_checks;
                    }
                }

            // hat of the product equals the product of hats
            require(hat_product_identity_holds(g1, g2), "hat-product identity violated");
        }
    }

    // thm515 (both forms) and thm517 (every achiever) on every graph
    for (size_t idx = 0; idx < graphs.size(); ++idx) {
        const HypercubeGraph& g = graphs[idx];
        int h = g.h();
        auto rows = reach_rows(g);
        auto v0 = g.class_members(0);
        DynBitset top = layer_bits(g, h);
        std::vector<DynBitset> cls;
        for (int i = 1; i <= h; ++i) cls.push_back(class_bits(g, IndexSet::from_members(h, {i})));
        Rational mu1 = mu_bruteforce(g, 1).value;
        Rational muh = mu_bruteforce(g, h).value;
        Rational power = pow(mu1 / Rational(h), h);
        require(muh <= power, "thm515 power form violated at " + std::to_string(idx));
        DynBitset acc(g.num_vertices());
        for (uint32_t mask = 1; mask < (1u << v0.size()); ++mask) {
            acc.clear();
            uint32_t rest = mask;
            while (rest) {
                acc.or_with(rows[__builtin_ctz(rest)]);
                rest &= rest - 1;
            }
            Rational card = rat(static_cast<size_t>(__builtin_popcount(mask)));
            Rational prod_beta(1);
            for (int i = 0; i < h; ++i) prod_beta *= rat(acc.count_and(cls[i])) / card;
            require(muh <= prod_beta, "thm515 product form violated at " + std::to_string(idx));
            // thm517 whenever this Z achieves mu_1
            Rational ratio1 = rat(acc.count_and(layer_bits(g, 1))) / card;
            if (ratio1 == mu1)
                require(rat(acc.count_and(top)) <= power * card,
                        "thm517 violated at " + std::to_string(idx));
        }
    }
    return std::to_string(products) + " products, " + std::to_string(beta_checks) +
           " beta identities, all exact";
}

std::string criterion5_oracle_equivalence(const std::vector<SumsetInstance>& corpus,
                                          const std::vector<HypercubeGraph>& graphs) {
    size_t compared = 0;
    for (size_t idx = 0; idx < graphs.size(); ++idx) {
        const HypercubeGraph& g = graphs[idx];
        if (g.class_members(0).size() > 12) continue;
        for (int level : {1, g.h()}) {
            auto bf = mu_bruteforce(g, level);
            auto mm = mu_matching(g, level);
            require(bf.value == mm.value, "value mismatch at instance " + std::to_string(idx));
            require(!mm.achiever.empty(), "empty matching achiever");
            Rational check = rat(image(g, mm.achiever, level).size()) / rat(mm.achiever.size());
            require(check == bf.value, "matching achiever invalid at " + std::to_string(idx));
            ++compared;
        }
    }
    (void)corpus;
    return std::to_string(compared) + " (graph, level) pairs agree exactly";
}

std::string criterion6_partition_invariants(const std::vector<SumsetInstance>& corpus) {
    for (size_t idx = 0; idx < corpus.size(); ++idx) {
        auto t1 = partition_decompose(corpus[idx]);
        require(t1.mu_monotone, "mu_j not monotone at " + std::to_string(idx));
        require(t1.identity_sizes, "size identity violated at " + std::to_string(idx));
        require(t1.identity_weighted, "weighted identity violated at " + std::to_string(idx));
        require(t1.all_steps_hold(), "step inequality violated at " + std::to_string(idx));
        auto t2 = partition_decompose(corpus[idx]);
        require(trace_to_json(t1) == trace_to_json(t2),
                "nondeterministic trace at " + std::to_string(idx));
    }
    return std::to_string(corpus.size()) + " traces certified, reruns byte-identical";
}

std::string criterion7_hall_cross_validation() {
    Rng rng(kSeed + 7);
    size_t passes = 0;
    for (int t = 0; t < 50; ++t) {
        int h = 2 + static_cast<int>(rng.below(2));
        unsigned density = 25 + static_cast<unsigned>(rng.below(60));
        HypercubeGraph g = random_hypercube_graph(rng, h, 4, density);
        bool fast = is_square_commutative(g);
        bool slow = !check_square_commutativity_bruteforce(g).has_value();
        require(fast == slow, "verdicts disagree at sample " + std::to_string(t));
        if (fast) ++passes;
    }
    return "50 graphs, verdicts identical (" + std::to_string(passes) + " commutative)";
}

}  // namespace

int main() {
    std::printf("acceptance suite (corpus seed %llu)\n",
                static_cast<unsigned long long>(kSeed));

    run_criterion(1, "extremal family exactness", criterion1_extremal_exactness, 60.0);
    run_criterion(2, "sharpness trend toward 1/4", criterion2_sharpness_trend);

    CorpusParams params;  // defaults match the documented corpus
    params.seed = kSeed;
    std::vector<SumsetInstance> corpus = generate_corpus(params);
    std::vector<HypercubeGraph> graphs;
    graphs.reserve(corpus.size());
    for (const auto& inst : corpus) graphs.push_back(build_addition_graph(inst));

    run_criterion(3, "theorem suite on the seeded corpus",
                  [&] { return criterion3_theorem_suite(corpus); }, 600.0);
    run_criterion(4, "graph invariants on the corpus",
                  [&] { return criterion4_graph_invariants(corpus, graphs); });
    run_criterion(5, "mu oracle equivalence",
                  [&] { return criterion5_oracle_equivalence(corpus, graphs); });
    run_criterion(6, "partition invariants and determinism",
                  [&] { return criterion6_partition_invariants(corpus); });
    run_criterion(7, "Hall reduction cross-validation", criterion7_hall_cross_validation);

    size_t failed = 0;
    for (const auto& c : g_results)
        if (!c.passed) ++failed;
    if (failed) {
        std::printf("%zu of %zu criteria FAILED\n", failed, g_results.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", g_results.size());
    return 0;
}
