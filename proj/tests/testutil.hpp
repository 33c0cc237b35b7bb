#pragma once

// Test-side oracles, independent of the library's set/graph machinery:
// plain nested loops over coordinate vectors with manual reduction.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace testutil {

using Vec = std::vector<int64_t>;

inline Vec naive_reduce(const std::vector<int64_t>& moduli, Vec x) {
    for (size_t i = 0; i < x.size(); ++i)
        if (moduli[i] >= 1) {
            x[i] %= moduli[i];
            if (x[i] < 0) x[i] += moduli[i];
        }
    return x;
}

inline std::set<Vec> naive_sumset(const std::vector<int64_t>& moduli, const std::set<Vec>& s,
                                  const std::set<Vec>& t) {
    std::set<Vec> out;
    for (const auto& a : s)
        for (const auto& b : t) {
            Vec c(a.size());
            for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
            out.insert(naive_reduce(moduli, c));
        }
    return out;
}

inline std::set<Vec> naive_sumset_many(const std::vector<int64_t>& moduli,
                                       std::vector<std::set<Vec>> sets) {
    std::set<Vec> acc = sets.at(0);
    for (size_t i = 1; i < sets.size(); ++i) acc = naive_sumset(moduli, acc, sets[i]);
    return acc;
}

inline std::set<Vec> to_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

// 1-dim convenience
inline std::set<Vec> ints(std::initializer_list<int64_t> xs) {
    std::set<Vec> out;
    for (int64_t x : xs) out.insert(Vec{x});
    return out;
}

}  // namespace testutil
