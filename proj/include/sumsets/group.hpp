#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sumsets/errors.hpp"

namespace sumsets {

/// Ambient commutative group Z^d0 x Z_m1 x ... given per coordinate:
/// modulus 0 means a copy of Z, modulus m >= 1 means Z_m.
struct GroupSpec {
    std::vector<int64_t> moduli;

    GroupSpec() = default;
    explicit GroupSpec(std::vector<int64_t> m) : moduli(std::move(m)) { validate(); }

    size_t dim() const { return moduli.size(); }

    void validate() const {
        if (moduli.empty()) throw DomainError("GroupSpec: needs at least one coordinate");
        for (int64_t m : moduli)
            if (m < 0) throw DomainError("GroupSpec: negative modulus");
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        return a.moduli == b.moduli;
    }
    friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

    friend GroupSpec concat(const GroupSpec& a, const GroupSpec& b) {
        GroupSpec r;
        r.moduli = a.moduli;
        r.moduli.insert(r.moduli.end(), b.moduli.begin(), b.moduli.end());
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = 0; i < moduli.size(); ++i)
            s += (i ? "," : "") + std::to_string(moduli[i]);
        return s + "]";
    }
};

/// Group element as a coordinate vector, always stored reduced:
/// coordinate i in [0, m_i) when m_i >= 1, arbitrary when m_i = 0.
using Element = std::vector<int64_t>;

inline Element reduce(const GroupSpec& spec, Element x) {
    if (x.size() != spec.dim()) throw SpecMismatchError("element dimension does not match spec");
    for (size_t i = 0; i < x.size(); ++i) {
        int64_t m = spec.moduli[i];
        if (m >= 1) {
            x[i] %= m;
            if (x[i] < 0) x[i] += m;
        }
    }
    return x;
}

inline Element elem_add(const GroupSpec& spec, const Element& x, const Element& y) {
    if (x.size() != spec.dim() || y.size() != spec.dim())
        throw SpecMismatchError("elem_add: incompatible specs");
    Element r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return reduce(spec, std::move(r));
}

inline Element elem_sub(const GroupSpec& spec, const Element& x, const Element& y) {
    if (x.size() != spec.dim() || y.size() != spec.dim())
        throw SpecMismatchError("elem_sub: incompatible specs");
    Element r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return reduce(spec, std::move(r));
}

inline std::string elem_to_string(const Element& x) {
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

/// Finite subset of the ambient group: deduplicated, sorted in the fixed
/// lexicographic order on reduced coordinates, so iteration order and
/// serialization are deterministic.
class GSet {
public:
    GSet() = default;
    GSet(GroupSpec spec, std::vector<Element> elems) : spec_(std::move(spec)) {
        spec_.validate();
        for (auto& e : elems) elems_.push_back(reduce(spec_, std::move(e)));
        canonicalize();
    }

    const GroupSpec& spec() const { return spec_; }
    const std::vector<Element>& elems() const { return elems_; }
    size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Element& operator[](size_t i) const { return elems_[i]; }

    bool contains(const Element& e) const {
        return std::binary_search(elems_.begin(), elems_.end(), e);
    }
    /// index of e in canonical order, or npos
    size_t index_of(const Element& e) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
        if (it == elems_.end() || *it != e) return npos;
        return static_cast<size_t>(it - elems_.begin());
    }
    static constexpr size_t npos = static_cast<size_t>(-1);

    friend bool operator==(const GSet& a, const GSet& b) {
        return a.spec_ == b.spec_ && a.elems_ == b.elems_;
    }
    friend bool operator!=(const GSet& a, const GSet& b) { return !(a == b); }

private:
    GroupSpec spec_;
    std::vector<Element> elems_;

    void canonicalize() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }
};

inline void require_same_spec(const GSet& a, const GSet& b, const char* op) {
    if (a.spec() != b.spec())
        throw SpecMismatchError(std::string(op) + ": incompatible specs " + a.spec().to_string() +
                                " vs " + b.spec().to_string());
}

/// Exact Minkowski sum {s + t}.
inline GSet minkowski_sum(const GSet& s, const GSet& t) {
    require_same_spec(s, t, "minkowski_sum");
    if (s.empty() || t.empty()) throw DomainError("minkowski_sum: empty operand");
    std::set<Element> acc;
    for (const auto& a : s.elems())
        for (const auto& b : t.elems()) acc.insert(elem_add(s.spec(), a, b));
    return GSet(s.spec(), std::vector<Element>(acc.begin(), acc.end()));
}

/// Cartesian product over the concatenated spec; |result| = |s| * |t|.
inline GSet direct_product(const GSet& s, const GSet& t) {
    GroupSpec spec = concat(s.spec(), t.spec());
    std::vector<Element> out;
    out.reserve(s.size() * t.size());
    for (const auto& a : s.elems())
        for (const auto& b : t.elems()) {
            Element e = a;
            e.insert(e.end(), b.begin(), b.end());
            out.push_back(std::move(e));
        }
    return GSet(spec, std::move(out));
}

inline GSet set_union(const GSet& a, const GSet& b) {
    require_same_spec(a, b, "set_union");
    std::vector<Element> out = a.elems();
    out.insert(out.end(), b.elems().begin(), b.elems().end());
    return GSet(a.spec(), std::move(out));
}

inline GSet set_difference(const GSet& a, const GSet& b) {
    require_same_spec(a, b, "set_difference");
    std::vector<Element> out;
    for (const auto& e : a.elems())
        if (!b.contains(e)) out.push_back(e);
    return GSet(a.spec(), std::move(out));
}

}  // namespace sumsets
