#include "doctest.h"

#include "sumsets/bounds.hpp"
#include "sumsets/corpus.hpp"
#include "sumsets/extremal.hpp"
#include "sumsets/io.hpp"
#include "testutil.hpp"

using namespace sumsets;

namespace {

GSet zset(std::initializer_list<int64_t> xs) {
    std::vector<Element> e;
    for (int64_t x : xs) e.push_back({x});
    return GSet(GroupSpec({0}), std::move(e));
}
GSet zempty() { return GSet(GroupSpec({0}), {}); }

// Z_4 instance where the removed-component graph strictly contains the
// channel: the vertex 2 in U_{1} reaches no surviving top vertex.
SumsetInstance degenerate_z4() {
    GroupSpec z4({4});
    return SumsetInstance(GSet(z4, {{0}, {1}, {2}}),
                          {GSet(z4, {{0}}), GSet(z4, {{0}, {2}})});
}

std::set<testutil::Vec> class_payloads(const HypercubeGraph& g, uint32_t mask) {
    std::set<testutil::Vec> out;
    for (int v : g.class_members(mask)) out.insert(*g.vert(v).elem);
    return out;
}

}  // namespace

TEST_CASE("removed component graph with E empty is the addition graph") {
    SumsetInstance inst(zset({0, 1, 10, 11}), {zset({0, 1})});
    auto rg = removed_component_graph(inst, zempty());
    HypercubeGraph full = build_addition_graph(inst);
    CHECK(rg.graph.num_vertices() == full.num_vertices());
    CHECK(rg.graph.num_edges() == full.num_edges());
    CHECK(rg.equals_channel);
}

TEST_CASE("removed component graph drops covered vertices") {
    SumsetInstance inst(zset({0, 1, 10, 11}), {zset({0, 1})});
    auto rg = removed_component_graph(inst, zset({0, 1}));
    CHECK(class_payloads(rg.graph, 0) == std::set<testutil::Vec>{{10}, {11}});
    CHECK(class_payloads(rg.graph, 1) == std::set<testutil::Vec>{{10}, {11}, {12}});
    CHECK(rg.equals_channel);
    CHECK(is_square_commutative(rg.graph));
}

TEST_CASE("removed component graph preconditions") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1})});
    CHECK_THROWS_AS(removed_component_graph(inst, zset({0, 1})), DomainError);  // E = A
    CHECK_THROWS_AS(removed_component_graph(inst, zset({7})), DomainError);     // E not in A
}

TEST_CASE("degenerate instance: graph exceeds the channel yet stays square commutative") {
    SumsetInstance inst = degenerate_z4();
    GSet e(inst.spec(), {{0}});
    auto rg = removed_component_graph(inst, e);
    CHECK(!rg.equals_channel);
    CHECK(is_square_commutative(rg.graph));
    auto c = check_cor518(inst, e);
    CHECK(c.record.holds);
    CHECK(c.graph_square_commutative);
}

TEST_CASE("removed mu direct counts") {
    SumsetInstance inst(zset({0, 1, 10, 11}), {zset({0, 1})});
    // E empty, Z = A: (1/h) sum alpha_i
    CHECK(removed_mu(inst, zempty(), inst.A()) == Rational(BigInt(6), BigInt(4)));
    CHECK(removed_mu(inst, zset({0, 1}), zset({10, 11})) == Rational(BigInt(3), BigInt(2)));
    CHECK(removed_mu(inst, zset({0, 1}), zset({10})) == Rational(2));
    CHECK_THROWS_AS(removed_mu(inst, zset({0, 1}), zset({0})), DomainError);
    CHECK_THROWS_AS(removed_mu(inst, zset({0, 1}), zempty()), DomainError);
    CHECK_THROWS_AS(removed_mu(inst, zempty(), zset({42})), DomainError);
}

TEST_CASE("removed mu equals the graph magnification over h") {
    CorpusParams p;
    p.count = 12;
    p.max_a = 5;
    p.seed = 4242;
    Rng rng(99);
    for (const auto& inst : generate_corpus(p)) {
        // random E strictly inside A
        std::vector<Element> e_elems;
        for (const auto& a : inst.A().elems())
            if (rng.below(3) == 0) e_elems.push_back(a);
        if (e_elems.size() == inst.A().size()) e_elems.pop_back();
        GSet e(inst.spec(), std::move(e_elems));
        auto rg = removed_component_graph(inst, e, false);
        auto v0 = rg.graph.class_members(0);
        // Z = the full surviving layer
        std::vector<Element> z_elems;
        for (int v : v0) z_elems.push_back(*rg.graph.vert(v).elem);
        GSet z(inst.spec(), std::move(z_elems));
        Rational graph_mu(BigInt(static_cast<long long>(image(rg.graph, v0, 1).size())),
                          BigInt(static_cast<long long>(v0.size())));
        CHECK(removed_mu(inst, e, z) == graph_mu / Rational(inst.h()));
    }
}

TEST_CASE("partition of the arithmetic progression is a single part") {
    SumsetInstance inst(zset({0, 1, 2, 3, 4}), {zset({0, 1})});
    auto trace = partition_decompose(inst);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].mu == Rational(BigInt(6), BigInt(5)));
    CHECK(trace.steps[0].part.size() == 5);
    CHECK(trace.steps[0].new_top_count == 6);
    CHECK(trace.steps[0].step_holds);
    CHECK(trace.mu_monotone);
    CHECK(trace.identity_sizes);
    CHECK(trace.identity_weighted);
}

TEST_CASE("partition of the two-cluster instance") {
    SumsetInstance inst(zset({0, 1, 10, 11}), {zset({0, 1})});
    auto trace = partition_decompose(inst);
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].part == zset({0, 1}));  // lexicographic tie-break
    CHECK(trace.steps[1].part == zset({10, 11}));
    CHECK(trace.steps[0].mu == Rational(BigInt(3), BigInt(2)));
    CHECK(trace.steps[1].mu == Rational(BigInt(3), BigInt(2)));
    CHECK(trace.mu_monotone);
    // sum mu_j |X_j| = (1/h) sum |A + B_i| = 6
    CHECK(trace.sum_mu_weighted == Rational(6));
    CHECK(trace.identity_weighted);
}

TEST_CASE("partition invariants and determinism on random instances") {
    CorpusParams p;
    p.count = 15;
    p.seed = 31337;
    for (const auto& inst : generate_corpus(p)) {
        auto t1 = partition_decompose(inst);
        CHECK(t1.mu_monotone);
        CHECK(t1.identity_sizes);
        CHECK(t1.identity_weighted);
        CHECK(t1.all_steps_hold());
        CHECK(t1.slope_estimate == Cert::holds);
        auto t2 = partition_decompose(inst);
        CHECK(trace_to_json(t1) == trace_to_json(t2));
    }
}

TEST_CASE("partition respects the enumeration cap") {
    SumsetInstance inst(zset({0, 1, 2, 3, 4}), {zset({0, 1})});
    CHECK_THROWS_AS(partition_decompose(inst, 3), CapExceededError);
}

TEST_CASE("slope estimate certificate") {
    CHECK(slope_estimate_check(1, 2, 64) == Cert::holds);   // vacuous
    CHECK(slope_estimate_check(5, 1, 64) == Cert::holds);   // exact h=1 path
    CHECK(slope_estimate_check(16, 2, 64) == Cert::holds);  // perfect square path
    CHECK(slope_estimate_check(2, 2, 64) == Cert::holds);   // interval path
    CHECK(slope_estimate_check(1000, 3, 64) == Cert::holds);
}

TEST_CASE("thm11 records") {
    SumsetInstance h1(zset({0, 1, 7}), {zset({0, 1})});
    auto r1 = check_thm11(h1);
    CHECK(r1.holds);
    CHECK(r1.lhs == r1.rhs);  // h = 1 is equality by definition of alpha

    SumsetInstance h2(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    auto r2 = check_thm11(h2);
    CHECK(r2.holds);
    CHECK(r2.lhs == "16/1");
    CHECK(r2.rhs == "81/2");  // (9/4)^2 * 2^3 = 40.5

    auto s4 = build_extremal_instance(ExtremalParams(2, 2, 2));
    auto r3 = check_thm11(s4);
    CHECK(r3.holds);
    CHECK(r3.lhs == "2304/1");   // 48^2
    CHECK(r3.rhs == "32768/3");  // (16/6)^4 * 6^3
}

TEST_CASE("thm22 minimizing subset") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    auto r = find_ruzsa_subset(inst);
    CHECK(r.ratio == Rational(2));
    CHECK(r.X == zset({0, 1}));
    CHECK(r.record.holds);
    CHECK(r.record.rhs == "9/4");
    CHECK(r.corollary.holds);  // |B1+B2| = 3 <= (9/4)*2
    CHECK(r.corollary.lhs == "3/1");

    // singleton A forces equality with alpha1 alpha2 = 4
    SumsetInstance nine(zset({0}), {zset({0, 1}), zset({0, 2})});
    auto rn = find_ruzsa_subset(nine);
    CHECK(rn.ratio == Rational(4));
    CHECK(rn.record.holds);

    // h = 1: the minimum is always at most the tight alpha
    SumsetInstance h1(zset({0, 2, 9}), {zset({0, 1, 3})});
    auto rh = find_ruzsa_subset(h1);
    CHECK(rh.record.holds);
}

TEST_CASE("dense subset search") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    auto r = find_dense_subset_eps(inst, Rational(BigInt(1), BigInt(2)));
    CHECK(r.X.size() == 2);  // |X| > (1 - 1/2) * 2 = 1 forces X = A
    CHECK(r.ratio == Rational(2));
    CHECK(r.record.holds);
    CHECK(r.record.rhs == "9/1");  // 2 * 2 * 9/4
    REQUIRE(r.sharper.has_value());
    CHECK(r.sharper->holds);
    CHECK(r.sharper->rhs == "27/4");  // (2*2-1)/1 * 9/4

    // vacuous density: any nonempty subset qualifies
    auto loose = find_dense_subset_eps(inst, Rational(BigInt(9), BigInt(10)));
    CHECK(loose.record.holds);
    CHECK(!loose.X.empty());

    // h = 1 collapse: X = A always satisfies 2 alpha
    SumsetInstance h1(zset({0, 5, 6}), {zset({0, 1})});
    auto rh = find_dense_subset_eps(h1, Rational(BigInt(1), BigInt(3)));
    CHECK(rh.record.holds);
    CHECK(!rh.sharper.has_value());

    CHECK_THROWS_AS(find_dense_subset_eps(inst, Rational(1)), DomainError);
    CHECK_THROWS_AS(find_dense_subset_eps(inst, Rational(0)), DomainError);
}

TEST_CASE("balister-bollobas over all subsets") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    auto r = check_balister_bollobas(inst);
    CHECK(r.policy == "all");
    CHECK(r.tested == 7);  // B1+B2 = {0,1,2}
    CHECK(r.all_hold);
    CHECK(r.specialization.holds);
    CHECK(r.specialization.lhs == "16/1");  // |A+{0,1,2}|^2
    CHECK(r.specialization.rhs == "27/1");  // (9/4) * 4 * 3
}

TEST_CASE("balister-bollobas with an explicit C") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    // singleton C: |A+C| = m, holds since every alpha_i >= 1
    auto single = check_balister_bollobas(inst, zset({1}));
    CHECK(single.holds);
    CHECK(single.lhs == "4/1");  // (|A+{1}|)^2 = 2^2
    auto full = check_balister_bollobas(inst, zset({0, 1, 2}));
    CHECK(full.holds);
    CHECK(full.lhs == "16/1");
    CHECK(full.rhs == "27/1");
    CHECK_THROWS_AS(check_balister_bollobas(inst, zset({5})), DomainError);
    CHECK_THROWS_AS(check_balister_bollobas(inst, zempty()), DomainError);
}

TEST_CASE("balister-bollobas sampling is reproducible") {
    SumsetInstance inst(zset({0, 1, 2, 5}), {zset({0, 1, 3}), zset({0, 2})});
    SubsetPolicy pol;
    pol.sample_only = true;
    pol.samples = 20;
    pol.seed = 9;
    auto r1 = check_balister_bollobas(inst, pol);
    auto r2 = check_balister_bollobas(inst, pol);
    CHECK(r1.all_hold);
    CHECK(r1.tested == 20);
    CHECK(r1.worst.lhs == r2.worst.lhs);
    CHECK(r1.worst.witness == r2.worst.witness);
}

TEST_CASE("cor518 records") {
    SumsetInstance inst(zset({0, 1, 10, 11}), {zset({0, 1})});
    auto r = check_cor518(inst, zset({0, 1}));
    CHECK(r.X == zset({10, 11}));
    CHECK(r.mu == Rational(BigInt(3), BigInt(2)));
    CHECK(r.record.holds);
    CHECK(r.record.lhs == "3/1");
    CHECK(r.record.rhs == "3/1");  // tight here
    CHECK(r.graph_square_commutative);

    // E empty reduces to the all-equal-mu Ruzsa statement
    auto r0 = check_cor518(inst, zempty());
    CHECK(r0.record.holds);

    // singleton A \ E forces the witness
    SumsetInstance small(zset({0, 1}), {zset({0, 1})});
    auto rs = check_cor518(small, zset({0}));
    CHECK(rs.X == zset({1}));
    CHECK(rs.record.holds);
}

TEST_CASE("prop31 chain and analytic form") {
    // h = 1 collapse: chain is |A+B| <= alpha m, tight
    SumsetInstance h1(zset({0, 1, 7}), {zset({0, 1})});
    auto r1 = check_prop31(h1);
    CHECK(r1.chain.holds);
    CHECK(r1.analytic.holds);

    SumsetInstance h2(zset({0, 1}), {zset({0, 1}), zset({0, 1})});
    auto r2 = check_prop31(h2);
    CHECK(r2.chain.holds);
    CHECK(r2.chain.lhs == "4/1");
    CHECK(r2.trace.steps.size() == 1);
    CHECK(r2.trace.steps[0].mu == Rational(BigInt(3), BigInt(2)));

    auto s4 = build_extremal_instance(ExtremalParams(2, 2, 2));
    auto r3 = check_prop31(s4);
    CHECK(r3.chain.holds);
    CHECK(r3.chain.lhs == "48/1");
}

TEST_CASE("alpha overrides must dominate the tight ratios and weaken every bound") {
    SumsetInstance inst(zset({0, 1}), {zset({0, 1}), zset({0, 1})});  // tight alpha = 3/2
    std::vector<Rational> bigger = {Rational(2), Rational(2)};
    CHECK_THROWS_AS(resolve_alphas(inst, {Rational(1), Rational(2)}), DomainError);
    CHECK_THROWS_AS(resolve_alphas(inst, {Rational(2)}), DomainError);
    CHECK(resolve_alphas(inst) == inst.alphas());

    auto tight = check_thm11(inst);
    auto loose = check_thm11(inst, bigger);
    CHECK(loose.holds);
    CHECK(Rational::parse(tight.rhs) < Rational::parse(loose.rhs));  // monotone in alpha
    CHECK(find_ruzsa_subset(inst, 20, bigger).record.holds);
    CHECK(check_balister_bollobas(inst, SubsetPolicy{}, bigger).all_hold);
    CHECK(find_dense_subset_eps(inst, Rational(BigInt(1), BigInt(2)), 20, bigger).record.holds);
    CHECK(check_prop31(inst, 20, 128, bigger).chain.holds);
}

TEST_CASE("theorem suite on a small random corpus") {
    CorpusParams p;
    p.count = 20;
    p.seed = 555;
    Rng rng(556);
    for (const auto& inst : generate_corpus(p)) {
        CHECK(check_thm11(inst).holds);
        auto rz = find_ruzsa_subset(inst);
        CHECK(rz.record.holds);
        CHECK(rz.corollary.holds);
        auto bb = check_balister_bollobas(inst, SubsetPolicy{false, 12, 15, rng.next()});
        CHECK(bb.all_hold);
        CHECK(check_prop31(inst).chain.holds);
        // a couple of random small E per instance
        for (int t = 0; t < 2; ++t) {
            std::vector<Element> e_elems;
            for (const auto& a : inst.A().elems())
                if (e_elems.size() < 3 && rng.below(4) == 0) e_elems.push_back(a);
            if (e_elems.size() == inst.A().size()) e_elems.pop_back();
            GSet e(inst.spec(), std::move(e_elems));
            auto c = check_cor518(inst, e);
            CHECK(c.record.holds);
            CHECK(c.graph_square_commutative);
        }
    }
}
