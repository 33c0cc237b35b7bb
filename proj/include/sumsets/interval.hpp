#pragma once

#include <stdexcept>
#include <string>

#include "sumsets/rational.hpp"

namespace sumsets {

/// Certified enclosure [lo, hi] with exact rational endpoints. Roots of
/// integers are the only place approximation enters; everything else is
/// exact interval arithmetic, so a comparison that certifies is true.
struct RatInterval {
    Rational lo, hi;

    RatInterval() = default;
    RatInterval(Rational v) : lo(v), hi(std::move(v)) {}
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("RatInterval: lo > hi");
    }

    Rational width() const { return hi - lo; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        Rational lo = c[0], hi = c[0];
        for (int i = 1; i < 4; ++i) {
            if (c[i] < lo) lo = c[i];
            if (c[i] > hi) hi = c[i];
        }
        return {lo, hi};
    }
    friend RatInterval operator/(const RatInterval& a, const RatInterval& b) {
        if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
            throw std::domain_error("RatInterval: divisor straddles zero");
        return a * RatInterval{b.hi.reciprocal(), b.lo.reciprocal()};
    }

    std::string to_string(size_t digits = 6) const {
        return "[" + lo.to_decimal(digits, false) + ", " + hi.to_decimal(digits, true) + "]";
    }
};

enum class Cert { holds, fails, indeterminate };

/// Certified "a <= b". Only answers definitively when the intervals
/// separate; callers escalate precision on indeterminate.
inline Cert certified_le(const RatInterval& a, const RatInterval& b) {
    if (a.hi <= b.lo) return Cert::holds;
    if (a.lo > b.hi) return Cert::fails;
    return Cert::indeterminate;
}

/// Enclosure of x^(p/q) for x >= 0, via the integer q-th root of the
/// numerator and denominator scaled by 2^(q * precision_bits).
/// Exact (point interval) whenever x^(p/q) is rational.
inline RatInterval root_pow(const Rational& x, uint64_t p, uint64_t q,
                            size_t precision_bits = 64) {
    if (x.sign() < 0) throw std::domain_error("root_pow: negative base");
    if (q == 0) throw std::domain_error("root_pow: zero root index");
    if (x.is_zero()) return RatInterval(Rational(0));
    if (p == 0) return RatInterval(Rational(1));
    Rational xp = pow(x, p);  // >= 0, exact
    if (q == 1) return RatInterval(xp);
    // exact when xp is a perfect q-th power
    BigInt rn = iroot(xp.num(), q), rd = iroot(xp.den(), q);
    if (pow(rn, q) == xp.num() && pow(rd, q) == xp.den())
        return RatInterval(Rational(rn, rd));
    // dyadic bounds: r = floor((num * 2^(q*P) / den)^(1/q)) gives
    // r/2^P <= xp^(1/q) < (r+1)/2^P
    BigInt scale = BigInt(1).shl(q * precision_bits);
    BigInt r = iroot(floor_div(xp.num() * scale, xp.den()), q);
    BigInt two_p = BigInt(1).shl(precision_bits);
    return {Rational(r, two_p), Rational(r + BigInt(1), two_p)};
}

/// Enclosure of x^(1/q) (convenience).
inline RatInterval root(const Rational& x, uint64_t q, size_t precision_bits = 64) {
    return root_pow(x, 1, q, precision_bits);
}

}  // namespace sumsets
