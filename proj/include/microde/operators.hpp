#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "microde/core.hpp"
#include "microde/errors.hpp"
#include "microde/rng.hpp"

namespace microde {

/// The mutation scheme pool. parent_count() gives the number of random
/// parents each formula consumes, excluding the target and the best.
enum class MutationScheme { Rand1, Best1, TargetToBest1, Rand2, Best2 };

inline constexpr std::size_t scheme_count = 5;

constexpr std::size_t parent_count(MutationScheme scheme) {
    switch (scheme) {
        case MutationScheme::Rand1:         return 3;
        case MutationScheme::Best1:         return 2;
        case MutationScheme::TargetToBest1: return 2;
        case MutationScheme::Rand2:         return 5;
        case MutationScheme::Best2:         return 4;
    }
    return 0;
}

constexpr std::size_t scheme_index(MutationScheme scheme) {
    return static_cast<std::size_t>(scheme);
}

inline std::string_view to_string(MutationScheme scheme) {
    switch (scheme) {
        case MutationScheme::Rand1:         return "rand/1";
        case MutationScheme::Best1:         return "best/1";
        case MutationScheme::TargetToBest1: return "target-to-best/1";
        case MutationScheme::Rand2:         return "rand/2";
        case MutationScheme::Best2:         return "best/2";
    }
    return "?";
}

/// All five schemes, in pool order.
inline const std::vector<MutationScheme>& full_scheme_pool() {
    static const std::vector<MutationScheme> pool = {
        MutationScheme::Rand1, MutationScheme::Best1, MutationScheme::TargetToBest1,
        MutationScheme::Rand2, MutationScheme::Best2};
    return pool;
}

/// Sampling interval for the randomized mutation scale factor.
inline constexpr double scale_factor_min = 0.1;
inline constexpr double scale_factor_max = 1.5;

using ScaleFactorVector = std::vector<double>;

/// One independent uniform draw on [0.1, 1.5) per dimension.
inline ScaleFactorVector sample_scale_factors(std::size_t dimension, RngStream& rng) {
    if (dimension == 0) throw ContractViolation("sample_scale_factors: dimension must be at least 1");
    ScaleFactorVector f(dimension);
    for (auto& v : f) v = rng.uniform(scale_factor_min, scale_factor_max);
    return f;
}

/// Uniform draw over the pool. A singleton pool involves no choice and
/// consumes no randomness.
inline MutationScheme pick_scheme(std::span<const MutationScheme> pool, RngStream& rng) {
    if (pool.empty()) throw ConfigError("pick_scheme: empty mutation scheme pool");
    if (pool.size() == 1) return pool[0];
    return pool[rng.uniform_int(pool.size())];
}

/// j distinct parent indices from {0..np-1} \ {target}, randomly ordered.
inline std::vector<std::size_t> select_parents(std::size_t np, std::size_t target,
                                               std::size_t j, RngStream& rng) {
    if (target >= np) throw ContractViolation("select_parents: target index out of range");
    if (np < j + 1)
        throw ConfigError("select_parents: population of " + std::to_string(np) +
                          " too small for a scheme needing " + std::to_string(j) + " parents");
    return rng.distinct(j, np, target);
}

/// Component-wise mutant per the scheme formula, with the per-dimension
/// factor f[d] applied to every difference term. The caller clamps the
/// result to bounds.
inline std::vector<double> apply_mutation_scheme(MutationScheme scheme,
                                                 PositionView target,
                                                 PositionView best,
                                                 std::span<const PositionView> parents,
                                                 std::span<const double> factors) {
    if (parents.size() != parent_count(scheme))
        throw ContractViolation("apply_mutation_scheme: parent count does not match scheme");
    const std::size_t dim = target.size();
    if (best.size() != dim || factors.size() != dim)
        throw ContractViolation("apply_mutation_scheme: dimension mismatch");
    for (const auto& p : parents)
        if (p.size() != dim) throw ContractViolation("apply_mutation_scheme: parent dimension mismatch");

    std::vector<double> v(dim);
    switch (scheme) {
        case MutationScheme::Rand1:
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = parents[0][d] + factors[d] * (parents[1][d] - parents[2][d]);
            break;
        case MutationScheme::Best1:
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = best[d] + factors[d] * (parents[0][d] - parents[1][d]);
            break;
        case MutationScheme::TargetToBest1:
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = target[d] + factors[d] * (best[d] - target[d]) +
                       factors[d] * (parents[0][d] - parents[1][d]);
            break;
        case MutationScheme::Rand2:
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = parents[0][d] + factors[d] * (parents[1][d] - parents[2][d]) +
                       factors[d] * (parents[3][d] - parents[4][d]);
            break;
        case MutationScheme::Best2:
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = best[d] + factors[d] * (parents[0][d] - parents[1][d]) +
                       factors[d] * (parents[2][d] - parents[3][d]);
            break;
    }
    return v;
}

/// Binomial crossover. Draws the forced dimension first, then one uniform
/// per dimension: u[d] = v[d] when the draw <= cr or d is forced.
/// Consumes exactly one integer draw plus D uniforms.
inline std::vector<double> crossover(PositionView parent, PositionView mutant,
                                     double cr, RngStream& rng) {
    if (parent.size() != mutant.size())
        throw ContractViolation("crossover: dimension mismatch");
    const std::size_t dim = parent.size();
    const std::size_t d_rand = static_cast<std::size_t>(rng.uniform_int(dim));
    std::vector<double> u(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const bool take_mutant = rng.uniform() <= cr || d == d_rand;
        u[d] = take_mutant ? mutant[d] : parent[d];
    }
    return u;
}

/// One-to-one survivor rule, ties to the trial.
inline Individual greedy_select(const Individual& parent, const Individual& trial) {
    if (!parent.fitness || !trial.fitness)
        throw ContractViolation("greedy_select: both fitness values must be evaluated");
    return (*trial.fitness <= *parent.fitness) ? trial : parent;
}

} // namespace microde
