#include "doctest.h"

#include <limits>

#include "sumsets/bigint.hpp"
#include "sumsets/rng.hpp"

using sumsets::BigInt;
using sumsets::Rng;

TEST_CASE("bigint decimal round trip and known values") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(1234567890123456789LL).to_string() == "1234567890123456789");
    // 2^100
    BigInt p = pow(BigInt(2), 100);
    CHECK(p.to_string() == "1267650600228229401496703205376");
    // 30!
    BigInt f(1);
    for (int i = 2; i <= 30; ++i) f *= BigInt(i);
    CHECK(f.to_string() == "265252859812191058636308480000000");
    CHECK(BigInt::from_string("265252859812191058636308480000000") == f);
    CHECK(BigInt::from_string("-00042") == BigInt(-42));
    CHECK_THROWS(BigInt::from_string("12x4"));
    CHECK_THROWS(BigInt::from_string(""));
}

TEST_CASE("bigint arithmetic agrees with int128 on random 64-bit operands") {
    Rng rng(7);
    for (int iter = 0; iter < 2000; ++iter) {
        long long a = static_cast<long long>(rng.next() >> (rng.below(40)));
        long long b = static_cast<long long>(rng.next() >> (rng.below(40)));
        if (rng.coin()) a = -a;
        if (rng.coin()) b = -b;
        BigInt A(a), B(b);
        __int128 s = static_cast<__int128>(a) + b;
        __int128 d = static_cast<__int128>(a) - b;
        __int128 m = static_cast<__int128>(a) * b;
        auto eq = [](const BigInt& x, __int128 y) {
            __int128 ay = y < 0 ? -y : y;
            BigInt Y;
            BigInt base = pow(BigInt(2), 64);
            Y = BigInt(static_cast<unsigned long long>(ay >> 64)) * base +
                BigInt(static_cast<unsigned long long>(ay));
            if (y < 0) Y = -Y;
            return x == Y;
        };
        CHECK(eq(A + B, s));
        CHECK(eq(A - B, d));
        CHECK(eq(A * B, m));
        if (b != 0) {
            BigInt q, r;
            divmod(A, B, q, r);
            CHECK(q == BigInt(a / b));
            CHECK(r == BigInt(a % b));
        }
    }
}

TEST_CASE("bigint divmod invariant on multi-word operands") {
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        BigInt a(1), b(1);
        int aw = 1 + static_cast<int>(rng.below(5));
        int bw = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < aw; ++i) a = a * pow(BigInt(2), 32) + BigInt(rng.next() >> 32);
        for (int i = 0; i < bw; ++i) b = b * pow(BigInt(2), 32) + BigInt(rng.next() >> 32);
        if (rng.coin()) a = -a;
        BigInt q, r;
        divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("bigint gcd, pow, shifts") {
    CHECK(gcd(BigInt(0), BigInt(12)) == BigInt(12));
    CHECK(gcd(BigInt(-8), BigInt(12)) == BigInt(4));
    BigInt big = pow(BigInt(2), 70) * BigInt(3) * BigInt(3) * BigInt(5);
    BigInt other = pow(BigInt(2), 65) * BigInt(3) * BigInt(7);
    CHECK(gcd(big, other) == pow(BigInt(2), 65) * BigInt(3));
    Rng rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        BigInt a(rng.next() >> 8), b(rng.next() >> 8);
        BigInt g = gcd(a, b);
        if (!g.is_zero()) {
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
        size_t sh = rng.below(90);
        CHECK(a.shl(sh).shr(sh) == a);
        CHECK(a.shl(sh) == a * pow(BigInt(2), sh));
    }
}

TEST_CASE("bigint integer roots") {
    CHECK(iroot(BigInt(0), 3) == BigInt(0));
    CHECK(iroot(BigInt(26), 3) == BigInt(2));
    CHECK(iroot(BigInt(27), 3) == BigInt(3));
    CHECK(iroot(BigInt(28), 3) == BigInt(3));
    Rng rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        BigInt n = BigInt(rng.next()) * BigInt(rng.next() | 1);
        uint64_t k = 1 + rng.below(6);
        BigInt r = iroot(n, k);
        CHECK(pow(r, k) <= n);
        CHECK(pow(r + BigInt(1), k) > n);
    }
    CHECK_THROWS(iroot(BigInt(-1), 2));
}

TEST_CASE("bigint floor and ceil division") {
    using sumsets::BigInt;
    CHECK(floor_div(BigInt(7), BigInt(2)) == BigInt(3));
    CHECK(floor_div(BigInt(-7), BigInt(2)) == BigInt(-4));
    CHECK(ceil_div(BigInt(7), BigInt(2)) == BigInt(4));
    CHECK(ceil_div(BigInt(-7), BigInt(2)) == BigInt(-3));
    CHECK(floor_div(BigInt(8), BigInt(2)) == BigInt(4));
    CHECK(ceil_div(BigInt(8), BigInt(2)) == BigInt(4));
}

TEST_CASE("bigint int64 round trip") {
    CHECK(BigInt(42).to_int64() == 42);
    CHECK(BigInt(-42).to_int64() == -42);
    long long mn = std::numeric_limits<long long>::min();
    long long mx = std::numeric_limits<long long>::max();
    CHECK(BigInt(mn).to_int64() == mn);
    CHECK(BigInt(mx).to_int64() == mx);
    CHECK(!pow(BigInt(2), 64).fits_int64());
    CHECK_THROWS(pow(BigInt(2), 64).to_int64());
}
