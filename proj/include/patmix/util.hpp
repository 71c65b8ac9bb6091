#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace patmix {

/// Thrown when an input exceeds a configured enumeration cap or an exact
/// integer count would overflow 64 bits.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline long long checked_add(long long a, long long b) {
    long long out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw CapacityError("exact edge count overflows 64-bit range");
    return out;
}

inline long long checked_mul(long long a, long long b) {
    long long out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw CapacityError("exact edge count overflows 64-bit range");
    return out;
}

/// Exact binomial coefficient; throws CapacityError on 64-bit overflow.
inline long long binom(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long result = 1;
    for (long long i = 1; i <= k; ++i) {
        // multiply first, the running product is always divisible by i
        result = checked_mul(result, n - k + i);
        result /= i;
    }
    return result;
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct IntVectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) hash_combine(h, std::hash<int>{}(static_cast<int>(x)));
        return h;
    }
};

}  // namespace patmix
