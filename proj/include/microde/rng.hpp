#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "microde/errors.hpp"

namespace microde {

/// Finalizer-quality 64-bit mix, used to derive independent stream seeds
/// from structured inputs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// FNV-1a over a string, for folding identifiers into seeds.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Seeded random stream used by every stochastic operation in a run.
///
/// The mapping from raw engine output to doubles and bounded integers is
/// implemented here instead of relying on <random> distributions, whose
/// output is implementation-defined. Identical seeds therefore produce
/// identical draw sequences on any platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform real on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform real on [a, b).
    double uniform(double a, double b) {
        const double r = a + uniform() * (b - a);
        // rounding at the top of the interval must not leak b itself
        return r < b ? r : std::nextafter(b, a);
    }

    /// Uniform integer on {0, ..., n-1}. Unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw ContractViolation("uniform_int: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x = engine_();
        while (x < threshold) x = engine_();
        return x % n;
    }

    /// k distinct indices drawn from {0, ..., n-1} \ {exclude}, in random
    /// order (partial Fisher-Yates; consumes exactly k integer draws).
    std::vector<std::size_t> distinct(std::size_t k, std::size_t n, std::size_t exclude) {
        std::vector<std::size_t> pool;
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            if (i != exclude) pool.push_back(i);
        if (k > pool.size())
            throw ContractViolation("distinct: not enough candidates to draw from");
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_int(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace microde
