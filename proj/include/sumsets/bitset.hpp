#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sumsets {

/// Fixed-size bitset sized at runtime; the workhorse for reachability
/// rows and subset images.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    void set(size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

    void or_with(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }
    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    /// popcount of (*this AND mask)
    size_t count_and(const DynBitset& mask) const {
        size_t c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & mask.w_[i]);
        return c;
    }
    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }
    void clear() {
        for (auto& w : w_) w = 0;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                unsigned b = std::countr_zero(w);
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const DynBitset& a, const DynBitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace sumsets
