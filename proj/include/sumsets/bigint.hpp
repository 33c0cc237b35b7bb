#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumsets {

/// Arbitrary-precision signed integer, sign + magnitude in base 2^32.
/// Sized for desk-scale combinatorics: schoolbook multiplication and
/// bitwise long division are plenty below a few thousand bits.
class BigInt {
public:
    BigInt() = default;
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on LLONG_MIN
        unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        mag_.push_back(static_cast<uint32_t>(u));
        if (u >> 32) mag_.push_back(static_cast<uint32_t>(u >> 32));
    }
    BigInt(unsigned int u) : BigInt(static_cast<unsigned long long>(u)) {}
    BigInt(unsigned long u) : BigInt(static_cast<unsigned long long>(u)) {}
    BigInt(unsigned long long u) {
        if (u == 0) return;
        sign_ = 1;
        mag_.push_back(static_cast<uint32_t>(u));
        if (u >> 32) mag_.push_back(static_cast<uint32_t>(u >> 32));
    }

    static BigInt from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigInt: empty string");
        int sign = 1;
        size_t i = 0;
        if (s[0] == '-') { sign = -1; i = 1; }
        else if (s[0] == '+') { i = 1; }
        if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
        BigInt r;
        for (; i < s.size();) {
            // consume up to 9 digits at a time
            uint32_t chunk = 0, scale = 1;
            size_t take = std::min<size_t>(9, s.size() - i);
            for (size_t k = 0; k < take; ++k, ++i) {
                char c = s[i];
                if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
                chunk = chunk * 10 + static_cast<uint32_t>(c - '0');
                scale *= 10;
            }
            r.mul_small_inplace(scale);
            r.add_small_inplace(chunk);
        }
        if (!r.mag_.empty()) r.sign_ = sign;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return !mag_.empty() && (mag_[0] & 1u); }

    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = to_u64_mag();
        if (sign_ >= 0) return u <= 0x7fffffffffffffffULL;
        return u <= 0x8000000000000000ULL;
    }
    long long to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
        unsigned long long u = to_u64_mag();
        return sign_ < 0 ? -static_cast<long long>(u - 1) - 1 : static_cast<long long>(u);
    }

    size_t bit_length() const {
        if (mag_.empty()) return 0;
        uint32_t top = mag_.back();
        size_t bits = (mag_.size() - 1) * 32;
        while (top) { ++bits; top >>= 1; }
        return bits;
    }
    bool test_bit(size_t i) const {
        size_t w = i / 32;
        if (w >= mag_.size()) return false;
        return (mag_[w] >> (i % 32)) & 1u;
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }
    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
            else       { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a.mag_[i];
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = r.mag_[i + j] + ai * b.mag_[j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        if (r.mag_.empty()) r.sign_ = 0;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    /// Truncated division: quotient rounds toward zero, remainder carries
    /// the dividend's sign (same contract as C++ integer division).
    friend void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        if (a.sign_ == 0) { q = BigInt(); r = BigInt(); return; }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q = BigInt();
        q.mag_ = std::move(qm);
        q.trim();
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r = BigInt();
        r.mag_ = std::move(rm);
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    /// Floor division (toward -infinity); used for directed rounding.
    friend BigInt floor_div(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        if (!r.is_zero() && (a.sign_ * b.sign_) < 0) q -= BigInt(1);
        return q;
    }
    friend BigInt ceil_div(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        if (!r.is_zero() && (a.sign_ * b.sign_) > 0) q += BigInt(1);
        return q;
    }

    BigInt shl(size_t bits) const {
        if (is_zero() || bits == 0) return bits == 0 ? *this : BigInt();
        size_t words = bits / 32, rem = bits % 32;
        BigInt r;
        r.sign_ = sign_;
        r.mag_.assign(mag_.size() + words + 1, 0);
        for (size_t i = 0; i < mag_.size(); ++i) {
            uint64_t v = static_cast<uint64_t>(mag_[i]) << rem;
            r.mag_[i + words] |= static_cast<uint32_t>(v);
            r.mag_[i + words + 1] |= static_cast<uint32_t>(v >> 32);
        }
        r.trim();
        return r;
    }
    BigInt shr(size_t bits) const {
        size_t words = bits / 32, rem = bits % 32;
        if (words >= mag_.size()) return BigInt();
        BigInt r;
        r.mag_.assign(mag_.size() - words, 0);
        for (size_t i = 0; i < r.mag_.size(); ++i) {
            uint64_t v = mag_[i + words] >> rem;
            if (rem && i + words + 1 < mag_.size())
                v |= static_cast<uint64_t>(mag_[i + words + 1]) << (32 - rem);
            r.mag_[i] = static_cast<uint32_t>(v);
        }
        r.trim();
        r.sign_ = r.mag_.empty() ? 0 : sign_;
        return r;
    }

    friend BigInt pow(const BigInt& base, uint64_t e) {
        BigInt acc(1), b = base;
        while (e) {
            if (e & 1) acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }

    friend BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // binary gcd: no division needed
        size_t shift = 0;
        while (!a.is_odd() && !b.is_odd()) {
            a = a.shr(1);
            b = b.shr(1);
            ++shift;
        }
        while (!a.is_odd()) a = a.shr(1);
        while (true) {
            while (!b.is_odd()) b = b.shr(1);
            if (cmp_mag(a.mag_, b.mag_) > 0) std::swap(a, b);
            b = b - a;
            if (b.is_zero()) break;
        }
        return a.shl(shift);
    }

    /// Largest r >= 0 with r^k <= n. Requires n >= 0, k >= 1.
    friend BigInt iroot(const BigInt& n, uint64_t k) {
        if (n.sign_ < 0) throw std::domain_error("iroot of negative");
        if (k == 0) throw std::domain_error("iroot: k = 0");
        if (n.is_zero() || k == 1) return n;
        size_t bl = n.bit_length();
        // r has ceil(bl/k) bits; binary search that range
        BigInt lo(0), hi = BigInt(1).shl(bl / k + 1);
        while (lo < hi) {
            BigInt mid = (lo + hi + BigInt(1)).shr(1);
            if (pow(mid, k) <= n) lo = mid;
            else hi = mid - BigInt(1);
        }
        return lo;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<uint32_t> m = mag_;
        std::string out;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            char buf[16];
            if (m.empty())
                std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(rem));
            else
                std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(rem));
            out.insert(0, buf);
        }
        if (sign_ < 0) out.insert(0, "-");
        return out;
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;  // little-endian, no leading zero words

    unsigned long long to_u64_mag() const {
        unsigned long long u = 0;
        if (mag_.size() > 1) u = static_cast<unsigned long long>(mag_[1]) << 32;
        if (!mag_.empty()) u |= mag_[0];
        return u;
    }

    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    void mul_small_inplace(uint32_t f) {
        uint64_t carry = 0;
        for (auto& w : mag_) {
            uint64_t cur = static_cast<uint64_t>(w) * f + carry;
            w = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
        trim();
        if (!mag_.empty() && sign_ == 0) sign_ = 1;
    }
    void add_small_inplace(uint32_t v) {
        uint64_t carry = v;
        for (size_t i = 0; carry && i < mag_.size(); ++i) {
            uint64_t cur = mag_[i] + carry;
            mag_[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
        if (!mag_.empty()) sign_ = sign_ == 0 ? 1 : sign_;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& sml = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r(big.size() + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < big.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(big[i]) + (i < sml.size() ? sml[i] : 0) + carry;
            r[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        r[big.size()] = static_cast<uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires a >= b
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(a.size(), 0);
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - (i < b.size() ? b[i] : 0) - borrow;
            if (cur < 0) { cur += (1LL << 32); borrow = 1; }
            else borrow = 0;
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        if (b.size() == 1) {
            // single-word fast path
            q.assign(a.size(), 0);
            uint64_t rem = 0, d = b[0];
            for (size_t i = a.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / d);
                rem = cur % d;
            }
            r.clear();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        if (cmp_mag(a, b) < 0) { q.clear(); r = a; return; }
        // bitwise long division
        size_t abits = a.size() * 32;
        q.assign(a.size(), 0);
        std::vector<uint32_t> rem;
        for (size_t i = abits; i-- > 0;) {
            // rem = rem << 1 | bit(a, i)
            uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
            for (auto& w : rem) {
                uint32_t nc = w >> 31;
                w = (w << 1) | carry;
                carry = nc;
            }
            if (carry) rem.push_back(carry);
            if (cmp_mag(rem, b) >= 0) {
                rem = sub_mag(rem, b);
                q[i / 32] |= 1u << (i % 32);
            }
        }
        r = std::move(rem);
    }
};

}  // namespace sumsets
