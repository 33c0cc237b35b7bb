#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sumsets/interval.hpp"
#include "sumsets/magnification.hpp"
#include "sumsets/rng.hpp"

namespace sumsets {

/// One verified inequality, re-derivable from the instance alone. lhs and
/// rhs are exact strings ("p/q") except where method = "interval", in
/// which case rhs is a certified enclosure "[lo, hi]".
struct BoundRecord {
    std::string check;   // operation id ("thm11", "thm22", ...)
    std::string name;    // which inequality within the check
    std::string lhs;
    std::string rhs;
    bool holds = false;
    std::vector<Element> witness;
    std::string method = "exact";
    uint64_t seed = 0;
    long long ms = 0;
};

namespace detail {

inline Rational rat(size_t v) { return Rational(BigInt(static_cast<long long>(v))); }

inline GSet vids_to_gset(const HypercubeGraph& g, const std::vector<int>& vids,
                         const GroupSpec& spec) {
    std::vector<Element> elems;
    for (int v : vids) elems.push_back(*g.vert(v).elem);
    return GSet(spec, std::move(elems));
}

}  // namespace detail

/// alpha_i used by the bound checks: tight (= |A+B_i|/m) by default, or
/// user-supplied larger rationals to probe monotonicity in alpha. Values
/// below the tight ratio are rejected, since the hypotheses would fail.
inline std::vector<Rational> resolve_alphas(const SumsetInstance& inst,
                                            const std::vector<Rational>& override_values = {}) {
    if (override_values.empty()) return inst.alphas();
    if (static_cast<int>(override_values.size()) != inst.h())
        throw DomainError("alpha override: need one value per B_i");
    for (int i = 1; i <= inst.h(); ++i)
        if (override_values[i - 1] < inst.alpha(i))
            throw DomainError("alpha override: alpha_" + std::to_string(i) +
                              " below the tight ratio " + inst.alpha(i).to_string());
    return override_values;
}

namespace detail {

inline Rational alpha_product(const std::vector<Rational>& alphas) {
    Rational p(1);
    for (const auto& a : alphas) p *= a;
    return p;
}
inline Rational alpha_max(const std::vector<Rational>& alphas) {
    Rational mx = alphas.at(0);
    for (const auto& a : alphas)
        if (a > mx) mx = a;
    return mx;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Removed-component graphs
// ---------------------------------------------------------------------------

/// Hypercube graph on U_I = (A + sum_I B) \ (E + sum_I B) with the
/// addition-graph edge rule. `equals_channel` reports whether it
/// literally coincides with the channel from A \ E to the top difference
/// inside the full addition graph; on degenerate instances the direct
/// graph can own vertices that lie on no such path, so this is a
/// diagnostic, not an invariant.
struct RemovedComponentGraph {
    GSet E;
    HypercubeGraph graph;
    bool equals_channel = true;
};

inline RemovedComponentGraph removed_component_graph(const SumsetInstance& inst, const GSet& E,
                                                     bool compare_with_channel = true) {
    require_same_spec(inst.A(), E, "removed_component_graph");
    for (const auto& e : E.elems())
        if (!inst.A().contains(e))
            throw DomainError("removed_component_graph: E must be a subset of A");
    if (E.size() == inst.A().size())
        throw DomainError("removed_component_graph: E = A leaves an empty source layer");

    int h = inst.h();
    HypercubeGraph g(h);
    std::vector<GSet> classes(size_t(1) << h);
    std::vector<std::vector<int>> vids(size_t(1) << h);
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        GSet full = iterated_sumset(inst, IndexSet(h, mask));
        if (E.empty()) {
            classes[mask] = full;
        } else {
            GSet removed = E;
            for (int i : IndexSet(h, mask).members())
                removed = minkowski_sum(removed, inst.B(i));
            classes[mask] = set_difference(full, removed);
        }
        for (const auto& e : classes[mask].elems())
            vids[mask].push_back(g.add_vertex(mask, Vertex{e, "", -1, -1}));
    }
    for (uint32_t mask = 0; mask < (1u << h); ++mask)
        for (int i = 1; i <= h; ++i) {
            if (mask & (1u << (i - 1))) continue;
            uint32_t next = mask | (1u << (i - 1));
            for (size_t xi = 0; xi < classes[mask].size(); ++xi)
                for (const auto& b : inst.B(i).elems()) {
                    Element y = elem_add(inst.spec(), classes[mask][xi], b);
                    size_t yi = classes[next].index_of(y);
                    if (yi != GSet::npos) g.add_edge(vids[mask][xi], vids[next][yi]);
                }
        }
    g.finalize();

    RemovedComponentGraph out{E, std::move(g), true};
    if (compare_with_channel) {
        HypercubeGraph full = build_addition_graph(inst);
        std::vector<int> x, y;
        for (int v : full.class_members(0))
            if (classes[0].contains(*full.vert(v).elem)) x.push_back(v);
        uint32_t top = IndexSet::full(h).mask;
        for (int v : full.class_members(top))
            if (classes[top].contains(*full.vert(v).elem)) y.push_back(v);
        HypercubeGraph chan = build_channel(full, IndexSet(h, 0), IndexSet::full(h), x, y);
        // the channel is always contained in the direct graph, so class
        // sizes decide literal equality
        for (uint32_t mask = 0; mask < (1u << h) && out.equals_channel; ++mask)
            if (chan.class_members(mask).size() != classes[mask].size())
                out.equals_channel = false;
    }
    return out;
}

/// mu(Z) = (1/h) * sum_i |(Z + B_i) \ (E + B_i)| / |Z|, the removed-
/// component growth rate a partition step minimizes.
inline Rational removed_mu(const SumsetInstance& inst, const GSet& E, const GSet& Z) {
    if (Z.empty()) throw DomainError("removed_mu: Z must be nonempty");
    require_same_spec(inst.A(), Z, "removed_mu");
    for (const auto& z : Z.elems()) {
        if (!inst.A().contains(z)) throw DomainError("removed_mu: Z must be a subset of A");
        if (E.contains(z)) throw DomainError("removed_mu: Z must avoid E");
    }
    Rational sum(0);
    for (int i = 1; i <= inst.h(); ++i) {
        GSet zb = minkowski_sum(Z, inst.B(i));
        size_t count;
        if (E.empty()) {
            count = zb.size();
        } else {
            GSet eb = minkowski_sum(E, inst.B(i));
            count = set_difference(zb, eb).size();
        }
        sum += detail::rat(count);
    }
    return sum / (Rational(inst.h()) * detail::rat(Z.size()));
}

// ---------------------------------------------------------------------------
// The removed-component partition procedure
// ---------------------------------------------------------------------------

struct PartitionStep {
    GSet part;              // X_j
    Rational mu;            // mu_j
    size_t new_top_count;   // |(X_j + sum B) \ (E_j + sum B)|
    Rational step_rhs;      // mu_j^h |X_j|, the certified step bound
    bool step_holds;
    std::string regime;     // which branch of min{mu_j^h, mu_1^h m} is active
};

struct PartitionTrace {
    int h = 0;
    size_t m = 0;
    std::vector<PartitionStep> steps;
    bool mu_monotone = false;
    Rational sum_mu_weighted;   // sum_j mu_j |X_j|
    Rational avg_growth;        // (1/h) sum_i |A + B_i|
    bool identity_sizes = false;
    bool identity_weighted = false;
    RatInterval mu_star;        // mu_1 * m^(1/h)
    RatInterval slope_bound;    // mu_1^(h-1) (m-1)/(m^(1/h)-1)
    Cert slope_estimate = Cert::indeterminate;
    size_t precision_bits = 0;

    bool all_steps_hold() const {
        for (const auto& s : steps)
            if (!s.step_holds) return false;
        return true;
    }
};

/// Certified check of (m-1)/(m^(1/h)-1) <= m^(1-1/h) + 2 m^(1-2/h) with
/// escalating precision; ties are resolved exactly when m^(1/h) is
/// rational (which covers every equality case reachable for integer m).
inline Cert slope_estimate_check(size_t m, int h, size_t precision_bits) {
    if (m <= 1) return Cert::holds;  // vacuous: the straight line is never used
    Rational mr = detail::rat(m);
    if (h == 1)  // all powers are integral: (m-1)/(m-1) = 1 <= 1 + 2/m
        return Rational(1) <= Rational(1) + Rational(2) / mr ? Cert::holds : Cert::fails;
    for (size_t bits = precision_bits; bits <= precision_bits * 8; bits *= 2) {
        RatInterval u = root(mr, h, bits);
        if (u.lo == u.hi) {  // m is a perfect h-th power: decide exactly
            Rational uu = u.lo;
            Rational lhs = (mr - Rational(1)) / (uu - Rational(1));
            Rational rhs = pow(uu, h - 1) + Rational(2) * pow(uu, h - 2);
            return lhs <= rhs ? Cert::holds : Cert::fails;
        }
        RatInterval lhs = RatInterval(mr - Rational(1)) / (u - RatInterval(Rational(1)));
        RatInterval rhs = root_pow(mr, h - 1, h, bits) +
                          RatInterval(Rational(2)) * root_pow(mr, h - 2, h, bits);
        Cert c = certified_le(lhs, rhs);
        if (c != Cert::indeterminate) return c;
    }
    return Cert::indeterminate;
}

/// The partition loop: repeatedly split off the minimal minimizer of
/// the removed-component magnification and certify the step bound
/// |(X_j + sum B) \ (E_j + sum B)| <= mu_j^h |X_j| in exact arithmetic.
inline PartitionTrace partition_decompose(const SumsetInstance& inst,
                                          size_t cap = kDefaultEnumerationCap,
                                          size_t precision_bits = 128) {
    if (inst.m() > cap || inst.m() > 30)
        throw CapExceededError("partition_decompose subset enumeration", inst.m(),
                               std::min<size_t>(cap, 30));
    PartitionTrace trace;
    trace.h = inst.h();
    trace.m = inst.m();
    trace.precision_bits = precision_bits;

    GSet E(inst.spec(), {});
    Rational mu1;
    size_t covered = 0;
    while (covered < inst.m()) {
        RemovedComponentGraph rg = removed_component_graph(inst, E, /*compare=*/false);
        auto mini = minimal_mu1_minimizer(rg.graph, cap);
        GSet part = detail::vids_to_gset(rg.graph, mini.achiever, inst.spec());
        Rational mu = removed_mu(inst, E, part);
        if (trace.steps.empty()) mu1 = mu;

        PartitionStep step;
        step.part = part;
        step.mu = mu;
        step.new_top_count = image(rg.graph, mini.achiever, inst.h()).size();
        step.step_rhs = pow(mu, inst.h()) * detail::rat(part.size());
        step.step_holds = detail::rat(step.new_top_count) <= step.step_rhs;
        Rational alt = pow(mu1, inst.h()) * detail::rat(inst.m());
        Rational own = pow(mu, inst.h());
        step.regime = own < alt ? "mu_j^h" : (alt < own ? "mu_1^h m" : "equal");
        trace.steps.push_back(std::move(step));

        covered += part.size();
        E = set_union(E, part);
    }

    trace.mu_monotone = true;
    for (size_t j = 1; j < trace.steps.size(); ++j)
        if (trace.steps[j].mu < trace.steps[j - 1].mu) trace.mu_monotone = false;

    size_t total = 0;
    trace.sum_mu_weighted = Rational(0);
    for (const auto& s : trace.steps) {
        total += s.part.size();
        trace.sum_mu_weighted += s.mu * detail::rat(s.part.size());
    }
    trace.identity_sizes = total == inst.m();
    Rational growth(0);
    for (int i = 1; i <= inst.h(); ++i) growth += detail::rat(inst.a_plus_b_size(i));
    trace.avg_growth = growth / Rational(inst.h());
    trace.identity_weighted = trace.sum_mu_weighted == trace.avg_growth;

    RatInterval m_root = root(detail::rat(inst.m()), inst.h(), precision_bits);
    trace.mu_star = RatInterval(mu1) * m_root;
    if (inst.m() >= 2) {
        RatInterval denom = m_root - RatInterval(Rational(1));
        trace.slope_bound = RatInterval(pow(mu1, inst.h() - 1)) *
                            (RatInterval(detail::rat(inst.m()) - Rational(1)) / denom);
    } else {
        trace.slope_bound = RatInterval(Rational(0));
    }
    trace.slope_estimate = slope_estimate_check(inst.m(), inst.h(), precision_bits);
    return trace;
}

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

/// thm11, raised to the h-th power so the comparison is rational:
/// |A + B_1 + ... + B_h|^h <= (alpha_1...alpha_h)^h m^(2h-1).
inline BoundRecord check_thm11(const SumsetInstance& inst,
                               const std::vector<Rational>& alpha_override = {}) {
    size_t top = iterated_sumset(inst, IndexSet::full(inst.h())).size();
    int h = inst.h();
    Rational aprod = detail::alpha_product(resolve_alphas(inst, alpha_override));
    Rational lhs = pow(detail::rat(top), h);
    Rational rhs = pow(aprod, h) * pow(detail::rat(inst.m()), 2 * h - 1);
    BoundRecord r;
    r.check = "thm11";
    r.name = "|A+sumB|^h <= (alpha1...alphah)^h m^(2h-1)";
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.holds = lhs <= rhs;
    return r;
}

/// thm22: the subset minimizing |X + sum B| / |X| plus the witness
/// record, and the corollary |B_1 + ... + B_h| <= alpha_1...alpha_h m.
struct RuzsaResult {
    GSet X;
    Rational ratio;
    BoundRecord record;
    BoundRecord corollary;
};

inline RuzsaResult find_ruzsa_subset(const SumsetInstance& inst,
                                     size_t cap = kDefaultEnumerationCap,
                                     const std::vector<Rational>& alpha_override = {}) {
    if (inst.m() > cap || inst.m() > 30)
        throw CapExceededError("find_ruzsa_subset enumeration", inst.m(),
                               std::min<size_t>(cap, 30));
    Rational aprod = detail::alpha_product(resolve_alphas(inst, alpha_override));
    HypercubeGraph g = build_addition_graph(inst);
    auto best = mu_bruteforce(g, inst.h(), cap);  // same objective: |Im(X, V_h)|/|X|
    RuzsaResult out{detail::vids_to_gset(g, best.achiever, inst.spec()), best.value, {}, {}};

    out.record.check = "thm22";
    out.record.name = "min |X+sumB|/|X| <= alpha1...alphah";
    out.record.lhs = best.value.to_string();
    out.record.rhs = aprod.to_string();
    out.record.holds = best.value <= aprod;
    out.record.witness = out.X.elems();

    size_t bsum = b_sumset(inst, IndexSet::full(inst.h())).size();
    Rational rhs = aprod * detail::rat(inst.m());
    out.corollary.check = "thm22";
    out.corollary.name = "|B1+...+Bh| <= alpha1...alphah m";
    out.corollary.lhs = detail::rat(bsum).to_string();
    out.corollary.rhs = rhs.to_string();
    out.corollary.holds = detail::rat(bsum) <= rhs;
    return out;
}

/// Ruzsa's dense-subset refinement: X with |X| > (1-eps)|A| and
/// |X + sum B| <= 2 eps^(1-h) alpha_1...alpha_h |X|, plus the sharper
/// constant (h eps^(1-h) - 1)/(h - 1) for h >= 2.
struct DenseSubsetResult {
    GSet X;
    Rational ratio;
    BoundRecord record;
    std::optional<BoundRecord> sharper;
};

inline DenseSubsetResult find_dense_subset_eps(const SumsetInstance& inst, const Rational& eps,
                                               size_t cap = kDefaultEnumerationCap,
                                               const std::vector<Rational>& alpha_override = {}) {
    if (eps <= Rational(0) || eps >= Rational(1))
        throw DomainError("find_dense_subset_eps: eps must lie in (0,1)");
    if (inst.m() > cap || inst.m() > 30)
        throw CapExceededError("find_dense_subset_eps enumeration", inst.m(),
                               std::min<size_t>(cap, 30));
    Rational aprod = detail::alpha_product(resolve_alphas(inst, alpha_override));
    int h = inst.h();
    HypercubeGraph g = build_addition_graph(inst);
    auto rows = reach_rows(g);
    DynBitset top = layer_bits(g, h);
    auto v0 = g.class_members(0);
    size_t n = v0.size();
    Rational density_floor = (Rational(1) - eps) * detail::rat(inst.m());

    uint32_t best_mask = 0;
    Rational best_ratio;
    bool have = false;
    DynBitset acc(g.num_vertices());
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        size_t card = static_cast<size_t>(__builtin_popcount(mask));
        if (!(detail::rat(card) > density_floor)) continue;
        acc.clear();
        uint32_t rest = mask;
        while (rest) {
            acc.or_with(rows[__builtin_ctz(rest)]);
            rest &= rest - 1;
        }
        Rational ratio = detail::rat(acc.count_and(top)) / detail::rat(card);
        if (!have || ratio < best_ratio ||
            (ratio == best_ratio &&
             __builtin_popcount(mask) < __builtin_popcount(best_mask))) {
            have = true;
            best_ratio = ratio;
            best_mask = mask;
        }
    }
    if (!have) throw std::logic_error("find_dense_subset_eps: no subset met the density bound");

    std::vector<int> vids;
    for (size_t k = 0; k < n; ++k)
        if (best_mask & (1u << k)) vids.push_back(v0[k]);
    DenseSubsetResult out{detail::vids_to_gset(g, vids, inst.spec()), best_ratio, {}, {}};

    Rational eps_pow = pow(eps.reciprocal(), h - 1);  // eps^(1-h)
    Rational bound = Rational(2) * eps_pow * aprod;
    out.record.check = "eps";
    out.record.name = "|X+sumB|/|X| <= 2 eps^(1-h) alpha1...alphah, |X| > (1-eps)|A|";
    out.record.lhs = best_ratio.to_string();
    out.record.rhs = bound.to_string();
    out.record.holds = best_ratio <= bound;
    out.record.witness = out.X.elems();

    if (h >= 2) {
        Rational sharper = (Rational(h) * eps_pow - Rational(1)) / Rational(h - 1) * aprod;
        BoundRecord s;
        s.check = "eps";
        s.name = "|X+sumB|/|X| <= (h eps^(1-h) - 1)/(h-1) alpha1...alphah";
        s.lhs = best_ratio.to_string();
        s.rhs = sharper.to_string();
        s.holds = best_ratio <= sharper;
        s.witness = out.X.elems();
        out.sharper = std::move(s);
    }
    return out;
}

/// Subset policy for the Balister-Bollobas check.
struct SubsetPolicy {
    bool sample_only = false;   // false: enumerate all when feasible
    size_t all_threshold = 12;  // enumerate all C when |B_1+...+B_h| <= this
    size_t samples = 50;
    uint64_t seed = 0;
};

/// thm21 cleared to integers: for C inside B_1 + ... + B_h,
/// |A + C|^h <= (alpha_1...alpha_h) m^h |C|^(h-1); plus the full-sumset
/// specialization C = B_1 + ... + B_h.
struct BalisterResult {
    size_t tested = 0;
    bool all_hold = true;
    BoundRecord worst;           // the tightest C encountered
    BoundRecord specialization;  // C = full B-sumset
    std::string policy;
};

inline BoundRecord balister_record_for(const SumsetInstance& inst, const GSet& c,
                                       size_t a_plus_c, const Rational& aprod) {
    int h = inst.h();
    Rational lhs = pow(detail::rat(a_plus_c), h);
    Rational rhs = aprod * pow(detail::rat(inst.m()), h) * pow(detail::rat(c.size()), h - 1);
    BoundRecord r;
    r.check = "thm21";
    r.name = "|A+C|^h <= alpha1...alphah m^h |C|^(h-1)";
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.holds = lhs <= rhs;
    r.witness = c.elems();
    return r;
}

/// Explicit-C form: C must be a nonempty subset of B_1 + ... + B_h.
inline BoundRecord check_balister_bollobas(const SumsetInstance& inst, const GSet& c,
                                           const std::vector<Rational>& alpha_override = {}) {
    if (c.empty()) throw DomainError("check_balister_bollobas: C must be nonempty");
    GSet bsum = b_sumset(inst, IndexSet::full(inst.h()));
    for (const auto& e : c.elems())
        if (!bsum.contains(e))
            throw DomainError("check_balister_bollobas: C must lie inside B_1+...+B_h");
    Rational aprod = detail::alpha_product(resolve_alphas(inst, alpha_override));
    return balister_record_for(inst, c, minkowski_sum(inst.A(), c).size(), aprod);
}

inline BalisterResult check_balister_bollobas(const SumsetInstance& inst,
                                              const SubsetPolicy& policy = {},
                                              const std::vector<Rational>& alpha_override = {}) {
    Rational aprod = detail::alpha_product(resolve_alphas(inst, alpha_override));
    GSet bsum = b_sumset(inst, IndexSet::full(inst.h()));
    // per-element rows: bits of A + s inside the full top sumset
    GSet top = minkowski_sum(inst.A(), bsum);
    std::vector<DynBitset> rows;
    for (const auto& s : bsum.elems()) {
        DynBitset row(top.size());
        for (const auto& a : inst.A().elems())
            row.set(top.index_of(elem_add(inst.spec(), a, s)));
        rows.push_back(std::move(row));
    }

    BalisterResult out;
    Rational worst_margin(-1);  // rhs/lhs minimal
    auto consider = [&](const std::vector<size_t>& idxs) {
        DynBitset acc(top.size());
        std::vector<Element> elems;
        for (size_t i : idxs) {
            acc.or_with(rows[i]);
            elems.push_back(bsum[i]);
        }
        GSet c(inst.spec(), std::move(elems));
        BoundRecord rec = balister_record_for(inst, c, acc.count(), aprod);
        ++out.tested;
        if (!rec.holds) out.all_hold = false;
        Rational margin = Rational::parse(rec.rhs) / Rational::parse(rec.lhs);
        if (worst_margin.sign() < 0 || margin < worst_margin) {
            worst_margin = margin;
            out.worst = rec;
        }
    };

    bool all = !policy.sample_only && bsum.size() <= policy.all_threshold;
    out.policy = all ? "all" : "sample";
    if (all) {
        for (uint64_t mask = 1; mask < (1ULL << bsum.size()); ++mask) {
            std::vector<size_t> idxs;
            for (size_t k = 0; k < bsum.size(); ++k)
                if (mask & (1ULL << k)) idxs.push_back(k);
            consider(idxs);
        }
    } else {
        Rng rng(policy.seed);
        for (size_t draw = 0; draw < policy.samples; ++draw) {
            std::vector<size_t> idxs;
            while (idxs.empty()) {
                idxs.clear();
                for (size_t k = 0; k < bsum.size(); ++k)
                    if (rng.coin()) idxs.push_back(k);
            }
            consider(idxs);
        }
        out.worst.seed = policy.seed;
    }

    // full-sumset specialization: C = B_1 + ... + B_h
    std::vector<size_t> all_idx(bsum.size());
    for (size_t k = 0; k < bsum.size(); ++k) all_idx[k] = k;
    DynBitset acc(top.size());
    for (size_t i : all_idx) acc.or_with(rows[i]);
    out.specialization = balister_record_for(inst, bsum, acc.count(), aprod);
    out.specialization.name = "|A+B1+...+Bh|^h <= alpha1...alphah m^h |B1+...+Bh|^(h-1)";
    if (!out.specialization.holds) out.all_hold = false;
    return out;
}

/// cor518: the removed-component growth bound at the minimal minimizer,
/// |(X + sum B) \ (E + sum B)| <= mu^h |X|.
struct Cor518Result {
    GSet X;
    Rational mu;
    BoundRecord record;
    bool graph_square_commutative = false;
};

inline Cor518Result check_cor518(const SumsetInstance& inst, const GSet& E,
                                 size_t cap = kDefaultEnumerationCap,
                                 bool check_square_comm = true) {
    RemovedComponentGraph rg = removed_component_graph(inst, E, /*compare=*/false);
    if (rg.graph.class_members(0).size() > cap)
        throw CapExceededError("check_cor518 enumeration", rg.graph.class_members(0).size(), cap);
    auto mini = minimal_mu1_minimizer(rg.graph, cap);
    GSet x = detail::vids_to_gset(rg.graph, mini.achiever, inst.spec());
    Rational mu = removed_mu(inst, E, x);
    size_t lhs = image(rg.graph, mini.achiever, inst.h()).size();
    Rational rhs = pow(mu, inst.h()) * detail::rat(x.size());

    Cor518Result out{x, mu, {}, true};
    out.record.check = "cor518";
    out.record.name = "|(X+sumB)\\(E+sumB)| <= mu^h |X|, |E| = " + std::to_string(E.size());
    out.record.lhs = detail::rat(lhs).to_string();
    out.record.rhs = rhs.to_string();
    out.record.holds = detail::rat(lhs) <= rhs;
    out.record.witness = x.elems();
    if (check_square_comm)
        out.graph_square_commutative = is_square_commutative(rg.graph);
    return out;
}

/// thm515 on the instance's addition graph, both forms:
/// mu_h <= beta_1(Z)...beta_h(Z) for every nonempty Z within the cap, and
/// mu_h <= (mu_1/h)^h.
struct Thm515Result {
    Rational mu_1, mu_h;
    BoundRecord product_form;
    BoundRecord power_form;
};

inline Thm515Result check_thm515(const SumsetInstance& inst,
                                 size_t cap = kDefaultEnumerationCap) {
    HypercubeGraph g = build_addition_graph(inst);
    int h = inst.h();
    Thm515Result out;
    out.mu_1 = mu_bruteforce(g, 1, cap).value;
    out.mu_h = mu_bruteforce(g, h, cap).value;

    auto rows = reach_rows(g);
    auto v0 = g.class_members(0);
    std::vector<DynBitset> cls;
    for (int i = 1; i <= h; ++i) cls.push_back(class_bits(g, IndexSet::from_members(h, {i})));
    Rational tightest;
    std::vector<int> tight_z;
    bool have = false;
    DynBitset acc(g.num_vertices());
    for (uint32_t mask = 1; mask < (1u << v0.size()); ++mask) {
        acc.clear();
        uint32_t rest = mask;
        while (rest) {
            acc.or_with(rows[__builtin_ctz(rest)]);
            rest &= rest - 1;
        }
        Rational prod(1);
        Rational card = detail::rat(static_cast<size_t>(__builtin_popcount(mask)));
        for (int i = 0; i < h; ++i) prod *= detail::rat(acc.count_and(cls[i])) / card;
        if (!have || prod < tightest) {
            have = true;
            tightest = prod;
            tight_z.clear();
            for (size_t k = 0; k < v0.size(); ++k)
                if (mask & (1u << k)) tight_z.push_back(v0[k]);
        }
    }
    out.product_form.check = "thm515";
    out.product_form.name = "mu_h <= beta_1(Z)...beta_h(Z) for every nonempty Z";
    out.product_form.lhs = out.mu_h.to_string();
    out.product_form.rhs = tightest.to_string();
    out.product_form.holds = out.mu_h <= tightest;
    out.product_form.witness = detail::vids_to_gset(g, tight_z, inst.spec()).elems();

    Rational power = pow(out.mu_1 / Rational(h), h);
    out.power_form.check = "thm515";
    out.power_form.name = "mu_h <= (mu_1/h)^h";
    out.power_form.lhs = out.mu_h.to_string();
    out.power_form.rhs = power.to_string();
    out.power_form.holds = out.mu_h <= power;
    return out;
}

/// thm517, for every achiever X of mu_1:
/// |Im(X, V_h)| <= (mu_1/h)^h |X|. The record keeps the tightest achiever.
inline BoundRecord check_thm517(const SumsetInstance& inst,
                                size_t cap = kDefaultEnumerationCap) {
    HypercubeGraph g = build_addition_graph(inst);
    int h = inst.h();
    Rational mu1 = mu_bruteforce(g, 1, cap).value;
    Rational bound_factor = pow(mu1 / Rational(h), h);
    auto achievers = mu_achievers(g, 1, cap);

    BoundRecord rec;
    rec.check = "thm517";
    rec.name = "|Im(X, V_h)| <= (mu_1/h)^h |X| for all " + std::to_string(achievers.size()) +
               " achievers of mu_1";
    rec.holds = true;
    Rational worst_margin;
    bool have = false;
    for (const auto& x : achievers) {
        Rational lhs = detail::rat(image(g, x, h).size());
        Rational rhs = bound_factor * detail::rat(x.size());
        if (lhs > rhs) rec.holds = false;
        Rational margin = rhs - lhs;
        if (!have || margin < worst_margin) {
            have = true;
            worst_margin = margin;
            rec.lhs = lhs.to_string();
            rec.rhs = rhs.to_string();
            rec.witness = detail::vids_to_gset(g, x, inst.spec()).elems();
        }
    }
    return rec;
}

/// lemma513 exercised through the tensor square:
/// mu_h(G (x) G) = mu_h(G)^2, both sides by the matching method.
inline BoundRecord check_lemma513(const SumsetInstance& inst) {
    HypercubeGraph g = build_addition_graph(inst);
    int h = inst.h();
    size_t square_verts = 0;
    for (uint32_t mask = 0; mask < (1u << h); ++mask) {
        size_t n = g.class_members(mask).size();
        square_verts += n * n;
    }
    if (square_verts > size_t(2) << 20)
        throw BudgetExceededError("lemma513: tensor square would hold " +
                                  std::to_string(square_verts) +
                                  " vertices; the check is meant for small instances");
    Rational single = mu_matching(g, h).value;
    Rational squared = mu_matching(hypercube_product(g, g), h).value;
    BoundRecord rec;
    rec.check = "lemma513";
    rec.name = "mu_h(G (x) G) = mu_h(G)^2";
    rec.lhs = squared.to_string();
    rec.rhs = pow(single, 2).to_string();
    rec.holds = squared == pow(single, 2);
    return rec;
}

/// prop31: the exact combinatorial chain
/// |A + sum B| <= sum_j min{mu_j^h, mu_1^h m} |X_j|,
/// and the analytic closed form with certified interval arithmetic
/// (right side rounded downward, so "holds" is never falsely reported).
struct Prop31Result {
    PartitionTrace trace;
    Rational alpha;  // max_i alpha_i, tight
    BoundRecord chain;
    BoundRecord analytic;
};

inline Prop31Result check_prop31(const SumsetInstance& inst,
                                 size_t cap = kDefaultEnumerationCap,
                                 size_t precision_bits = 128,
                                 const std::vector<Rational>& alpha_override = {}) {
    Prop31Result out{partition_decompose(inst, cap, precision_bits),
                     detail::alpha_max(resolve_alphas(inst, alpha_override)), {}, {}};
    int h = inst.h();
    size_t m = inst.m();
    size_t top = iterated_sumset(inst, IndexSet::full(h)).size();

    Rational mu1 = out.trace.steps.front().mu;
    Rational elementary = pow(mu1, h) * detail::rat(m);
    Rational chain_rhs(0);
    for (const auto& s : out.trace.steps) {
        Rational branch = pow(s.mu, h);
        if (elementary < branch) branch = elementary;
        chain_rhs += branch * detail::rat(s.part.size());
    }
    out.chain.check = "prop31";
    out.chain.name = "|A+sumB| <= sum_j min{mu_j^h, mu_1^h m}|X_j|";
    out.chain.lhs = detail::rat(top).to_string();
    out.chain.rhs = chain_rhs.to_string();
    out.chain.holds = detail::rat(top) <= chain_rhs;

    // alpha^h m + ((1-1/h)^(h-1)/h) alpha^h (m^(2-1/h) + 2 m^(2-2/h))
    Rational constant =
        pow(Rational(1) - Rational(1) / Rational(h), h - 1) / Rational(h) * pow(out.alpha, h);
    out.analytic.check = "prop31";
    out.analytic.name = "|A+sumB| <= alpha^h m + ((1-1/h)^(h-1)/h) alpha^h (m^(2-1/h)+2m^(2-2/h))";
    out.analytic.method = "interval";
    Rational lhs = detail::rat(top);
    out.analytic.lhs = lhs.to_string();
    for (size_t bits = precision_bits; bits <= precision_bits * 8; bits *= 2) {
        RatInterval tail = root_pow(detail::rat(m), 2 * h - 1, h, bits) +
                           RatInterval(Rational(2)) * root_pow(detail::rat(m), 2 * h - 2, h, bits);
        RatInterval rhs = RatInterval(pow(out.alpha, h) * detail::rat(m)) +
                          RatInterval(constant) * tail;
        out.analytic.rhs = rhs.to_string(9);
        if (lhs <= rhs.lo) {  // certified with RHS rounded down
            out.analytic.holds = true;
            break;
        }
        if (lhs > rhs.hi) {  // certified failure (small-m regime of an asymptotic bound)
            out.analytic.holds = false;
            break;
        }
        out.analytic.holds = false;  // still indeterminate at max precision
    }
    return out;
}

}  // namespace sumsets
