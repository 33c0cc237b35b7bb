#pragma once

#include <cstdint>
#include <vector>

#include "sumsets/group.hpp"
#include "sumsets/rational.hpp"

namespace sumsets {

/// Subset of {1..h} as a bitmask (bit i-1 = index i).
struct IndexSet {
    int h = 0;
    uint32_t mask = 0;

    IndexSet() = default;
    IndexSet(int h_, uint32_t mask_) : h(h_), mask(mask_) {
        if (h < 0 || h > 30) throw DomainError("IndexSet: h out of range");
        if (mask >> h) throw DomainError("IndexSet: member out of {1..h}");
    }
    static IndexSet from_members(int h, const std::vector<int>& members) {
        uint32_t m = 0;
        for (int i : members) {
            if (i < 1 || i > h) throw DomainError("IndexSet: member out of {1..h}");
            m |= 1u << (i - 1);
        }
        return IndexSet(h, m);
    }
    static IndexSet full(int h) { return IndexSet(h, h == 0 ? 0u : ((1u << h) - 1)); }

    int level() const { return __builtin_popcount(mask); }
    bool contains(int i) const { return i >= 1 && i <= h && ((mask >> (i - 1)) & 1u); }
    std::vector<int> members() const {
        std::vector<int> out;
        for (int i = 1; i <= h; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }
    bool subset_of(const IndexSet& o) const { return h == o.h && (mask & ~o.mask) == 0; }
    /// covering relation on index sets: I -> I' iff I' = I + one new index
    friend bool edge(const IndexSet& a, const IndexSet& b) {
        return a.h == b.h && (a.mask & ~b.mask) == 0 && __builtin_popcount(b.mask ^ a.mask) == 1;
    }
    friend bool operator==(const IndexSet& a, const IndexSet& b) {
        return a.h == b.h && a.mask == b.mask;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int i : members()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "}";
    }
};

/// The tuple (A, B_1, ..., B_h) every bound quantifies over, with the
/// tight ratios alpha_i = |A + B_i| / |A| kept as exact rationals.
class SumsetInstance {
public:
    SumsetInstance(GSet a, std::vector<GSet> b) : A_(std::move(a)), B_(std::move(b)) {
        if (B_.empty()) throw DomainError("SumsetInstance: needs h >= 1 summand sets");
        if (A_.empty()) throw DomainError("SumsetInstance: A must be nonempty");
        for (const auto& bi : B_) {
            require_same_spec(A_, bi, "SumsetInstance");
            if (bi.empty()) throw DomainError("SumsetInstance: B_i must be nonempty");
        }
        for (const auto& bi : B_) {
            GSet s = minkowski_sum(A_, bi);
            a_plus_b_sizes_.push_back(s.size());
            alphas_.emplace_back(BigInt(static_cast<long long>(s.size())),
                                 BigInt(static_cast<long long>(A_.size())));
        }
    }

    const GroupSpec& spec() const { return A_.spec(); }
    const GSet& A() const { return A_; }
    const std::vector<GSet>& B() const { return B_; }
    const GSet& B(size_t i) const { return B_.at(i - 1); }  // 1-based, matching indices
    int h() const { return static_cast<int>(B_.size()); }
    size_t m() const { return A_.size(); }
    const std::vector<Rational>& alphas() const { return alphas_; }
    const Rational& alpha(size_t i) const { return alphas_.at(i - 1); }
    size_t a_plus_b_size(size_t i) const { return a_plus_b_sizes_.at(i - 1); }

    Rational alpha_product() const {
        Rational p(1);
        for (const auto& a : alphas_) p *= a;
        return p;
    }
    Rational alpha_max() const {
        Rational mx = alphas_[0];
        for (const auto& a : alphas_)
            if (a > mx) mx = a;
        return mx;
    }

private:
    GSet A_;
    std::vector<GSet> B_;
    std::vector<Rational> alphas_;
    std::vector<size_t> a_plus_b_sizes_;
};

/// A + sum of B_i over i in I; the empty index set gives A itself.
inline GSet iterated_sumset(const SumsetInstance& inst, const IndexSet& I) {
    if (I.h != inst.h()) throw DomainError("iterated_sumset: index set has wrong h");
    GSet acc = inst.A();
    for (int i : I.members()) acc = minkowski_sum(acc, inst.B(i));
    return acc;
}

/// Minkowski sum of a run of the B_i (those with index in I); empty I is
/// not allowed here since there is no ambient zero set.
inline GSet b_sumset(const SumsetInstance& inst, const IndexSet& I) {
    auto members = I.members();
    if (members.empty()) throw DomainError("b_sumset: empty index set");
    GSet acc = inst.B(members[0]);
    for (size_t k = 1; k < members.size(); ++k) acc = minkowski_sum(acc, inst.B(members[k]));
    return acc;
}

/// Componentwise product instance (A'xA'', B_i'xB_i''), same h.
inline SumsetInstance direct_product_instance(const SumsetInstance& a, const SumsetInstance& b) {
    if (a.h() != b.h()) throw DomainError("direct_product_instance: mismatched h");
    std::vector<GSet> bs;
    for (int i = 1; i <= a.h(); ++i) bs.push_back(direct_product(a.B(i), b.B(i)));
    return SumsetInstance(direct_product(a.A(), b.A()), std::move(bs));
}

}  // namespace sumsets
