#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "sumsets/bigint.hpp"

namespace sumsets {

/// Exact rational, always reduced, denominator > 0. Every cardinality
/// ratio and bound in this library is one of these; floating point is
/// never the source of truth.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long v) : num_(v), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational parse(std::string_view s) {
        size_t slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(BigInt::from_string(s));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend int cmp(const Rational& a, const Rational& b) {
        return cmp(a.num_ * b.den_, b.num_ * a.den_);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    friend Rational pow(const Rational& base, uint64_t e) {
        return Rational(pow(base.num_, e), pow(base.den_, e));
    }
    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    BigInt floor() const { return floor_div(num_, den_); }
    BigInt ceil() const { return ceil_div(num_, den_); }

    /// Always "p/q", lowest terms ("4/1", "-3/2").
    std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

    /// Decimal rendering with directed rounding, used for interval display.
    /// round_up = false rounds toward -inf, true toward +inf.
    std::string to_decimal(size_t digits, bool round_up) const {
        BigInt scale = pow(BigInt(10), digits);
        BigInt scaled = round_up ? ceil_div(num_ * scale, den_) : floor_div(num_ * scale, den_);
        bool neg = scaled.sign() < 0;
        std::string s = scaled.abs().to_string();
        if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
        if (digits > 0) s.insert(s.size() - digits, ".");
        if (neg) s.insert(0, "-");
        return s;
    }

private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

}  // namespace sumsets
