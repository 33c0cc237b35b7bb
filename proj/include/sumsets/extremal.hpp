#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumsets/instance.hpp"
#include "sumsets/interval.hpp"

namespace sumsets {

/// Parameters of the extremal family: work in Z_b^k with b = l*a and
/// k = h + a^(h-1)/(h-1); requires h >= 2 and (h-1) | a.
struct ExtremalParams {
    int h;
    int64_t a;
    int64_t l;

    ExtremalParams(int h_, int64_t a_, int64_t l_) : h(h_), a(a_), l(l_) {
        if (h < 2) throw DomainError("ExtremalParams: h must be at least 2");
        if (a < 1 || l < 1) throw DomainError("ExtremalParams: a and l must be positive");
        if (a % (h - 1) != 0)
            throw DomainError("ExtremalParams: a = " + std::to_string(a) +
                              " not divisible by h-1 = " + std::to_string(h - 1));
    }

    int64_t b() const { return l * a; }
    BigInt independent_points() const {  // |A_2| = a^(h-1)/(h-1)
        return pow(BigInt(a), h - 1) / BigInt(h - 1);
    }
    BigInt k() const { return BigInt(h) + independent_points(); }
};

/// Closed forms from the construction, all exact.
struct PredictedCardinalities {
    BigInt m;                // a^h + a^(h-1)/(h-1)
    BigInt sum_with_bi;      // b a^(h-1) (1 + 1/(h-1))
    BigInt lower_bound;      // (a^(h-1)/(h-1)) b^h  for the full sumset
    BigInt top_exact;        // b^h (1 + a^(h-1)/(h-1)), by the disjointness claims
    Rational alpha;          // (1 + 1/(h-1)) l
    Rational target_constant;  // (1 - 1/h)^(h-1) / h
};

inline PredictedCardinalities predicted_cardinalities(const ExtremalParams& p) {
    PredictedCardinalities out;
    BigInt ah = pow(BigInt(p.a), p.h);
    BigInt indep = p.independent_points();
    out.m = ah + indep;
    // b a^(h-1) + b a^(h-1)/(h-1), integral because (h-1) | a
    BigInt bah = BigInt(p.b()) * pow(BigInt(p.a), p.h - 1);
    out.sum_with_bi = bah + BigInt(p.b()) * indep;
    out.lower_bound = indep * pow(BigInt(p.b()), p.h);
    out.top_exact = pow(BigInt(p.b()), p.h) * (BigInt(1) + indep);
    out.alpha = (Rational(1) + Rational(BigInt(1), BigInt(p.h - 1))) * Rational(p.l);
    out.target_constant =
        pow(Rational(1) - Rational(BigInt(1), BigInt(p.h)), p.h - 1) / Rational(p.h);
    return out;
}

/// The construction itself: A = A_1 u A_2 in Z_b^k, where A_1 is the grid
/// {0, l, ..., (a-1)l}^h on the first h coordinates and A_2 is one basis
/// point per extra coordinate; B_i is the full cyclic group on
/// coordinate i. The memory budget counts stored coordinates.
inline SumsetInstance build_extremal_instance(const ExtremalParams& p,
                                             size_t coord_budget = size_t(64) << 20) {
    PredictedCardinalities pred = predicted_cardinalities(p);
    if (!p.k().fits_int64() || !pred.top_exact.fits_int64())
        throw BudgetExceededError("extremal construction overflows the size bookkeeping");
    size_t k = static_cast<size_t>(p.k().to_int64());
    // the full sumset dominates the footprint: top_exact vectors of k coords
    BigInt cells = pred.top_exact * p.k();
    if (cells > BigInt(static_cast<unsigned long long>(coord_budget)))
        throw BudgetExceededError(
            "extremal construction needs about " + cells.to_string() +
            " stored coordinates (budget " + std::to_string(coord_budget) +
            "); predicted m = " + pred.m.to_string() + ", |A+sumB| = " +
            pred.top_exact.to_string() + " -- shrink a or l");

    GroupSpec spec(std::vector<int64_t>(k, p.b()));
    std::vector<Element> a_elems;
    // A_1: h nested loops over {0, l, 2l, ..., (a-1)l}
    Element cur(k, 0);
    auto rec = [&](auto&& self, int coord) -> void {
        if (coord == p.h) {
            a_elems.push_back(cur);
            return;
        }
        for (int64_t t = 0; t < p.a; ++t) {
            cur[coord] = t * p.l;
            self(self, coord + 1);
        }
        cur[coord] = 0;
    };
    rec(rec, 0);
    // A_2: x_j = 1 on one coordinate j > h, zero elsewhere
    for (size_t j = p.h; j < k; ++j) {
        Element e(k, 0);
        e[j] = 1;
        a_elems.push_back(std::move(e));
    }
    GSet a(spec, std::move(a_elems));

    std::vector<GSet> bs;
    for (int i = 0; i < p.h; ++i) {
        std::vector<Element> b_elems;
        for (int64_t t = 0; t < p.b(); ++t) {
            Element e(k, 0);
            e[i] = t;
            b_elems.push_back(std::move(e));
        }
        bs.emplace_back(spec, std::move(b_elems));
    }
    return SumsetInstance(std::move(a), std::move(bs));
}

/// Free-generator lifting: append sum(n_i) fresh Z coordinates, T_i = the
/// n_i standard basis vectors of block i, and form A' = A x {0},
/// B_i' = B_i x T_i. Guarantees |A' + B_i'| = n_i |A + B_i| and
/// |A' + sum B'| = |A + sum B| * prod(n_i).
inline SumsetInstance lift_with_generators(const SumsetInstance& inst,
                                           const std::vector<size_t>& sizes,
                                           size_t coord_budget = size_t(64) << 20) {
    if (static_cast<int>(sizes.size()) != inst.h())
        throw DomainError("lift_with_generators: need one block size per B_i");
    size_t extra = 0;
    for (size_t n : sizes) {
        if (n == 0) throw DomainError("lift_with_generators: block sizes must be positive");
        extra += n;
    }
    size_t dim = inst.spec().dim() + extra;
    // rough footprint: the lifted top sumset
    BigInt top = BigInt(static_cast<unsigned long long>(
        iterated_sumset(inst, IndexSet::full(inst.h())).size()));
    for (size_t n : sizes) top *= BigInt(static_cast<unsigned long long>(n));
    if (top * BigInt(static_cast<unsigned long long>(dim)) >
        BigInt(static_cast<unsigned long long>(coord_budget)))
        throw BudgetExceededError("lift_with_generators: lifted instance exceeds the budget");

    std::vector<int64_t> moduli = inst.spec().moduli;
    moduli.insert(moduli.end(), extra, 0);
    GroupSpec spec(moduli);

    auto pad = [&](const Element& e) {
        Element out = e;
        out.resize(dim, 0);
        return out;
    };
    std::vector<Element> a_elems;
    for (const auto& e : inst.A().elems()) a_elems.push_back(pad(e));
    GSet a(spec, std::move(a_elems));

    std::vector<GSet> bs;
    size_t offset = inst.spec().dim();
    for (int i = 1; i <= inst.h(); ++i) {
        std::vector<Element> b_elems;
        for (const auto& e : inst.B(i).elems())
            for (size_t t = 0; t < sizes[i - 1]; ++t) {
                Element out = pad(e);
                out[offset + t] = 1;
                b_elems.push_back(std::move(out));
            }
        bs.emplace_back(spec, std::move(b_elems));
        offset += sizes[i - 1];
    }
    return SumsetInstance(std::move(a), std::move(bs));
}

/// Block sizes n_i = n prod_{j != i} alpha_j with n = q_1...q_h, the
/// choice that equalizes alpha_i n_i across i.
inline std::vector<size_t> equalizing_generator_sizes(const SumsetInstance& inst) {
    BigInt n(1);
    for (const auto& al : inst.alphas()) n *= al.den();
    std::vector<size_t> out;
    for (int i = 1; i <= inst.h(); ++i) {
        Rational prod(n);
        for (int j = 1; j <= inst.h(); ++j)
            if (j != i) prod *= inst.alpha(j);
        if (!prod.is_integer() || prod.sign() <= 0)
            throw std::logic_error("equalizing_generator_sizes: block size not a positive integer");
        out.push_back(static_cast<size_t>(prod.num().to_int64()));
    }
    return out;
}

}  // namespace sumsets
