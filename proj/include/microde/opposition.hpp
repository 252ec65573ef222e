#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "microde/core.hpp"
#include "microde/errors.hpp"

namespace microde {

/// Where opposition is applied in a run. Every mode except Never opposes
/// the initial population; EveryGeneration jumps unconditionally after
/// each generation and Probabilistic jumps with probability jumping_rate.
struct OppositionMode {
    enum class Kind { Never, InitOnly, EveryGeneration, Probabilistic };

    Kind kind = Kind::Never;
    double jumping_rate = 0.0;

    static OppositionMode never() { return {Kind::Never, 0.0}; }
    static OppositionMode init_only() { return {Kind::InitOnly, 0.0}; }
    static OppositionMode every_generation() { return {Kind::EveryGeneration, 0.0}; }
    static OppositionMode probabilistic(double jr) {
        if (jr < 0.0 || jr > 1.0)
            throw ConfigError("OppositionMode: jumping rate must be in [0, 1]");
        return {Kind::Probabilistic, jr};
    }

    bool applies_at_init() const { return kind != Kind::Never; }

    friend bool operator==(const OppositionMode&, const OppositionMode&) = default;
};

inline std::string describe(const OppositionMode& mode) {
    switch (mode.kind) {
        case OppositionMode::Kind::Never:           return "never";
        case OppositionMode::Kind::InitOnly:        return "init_only";
        case OppositionMode::Kind::EveryGeneration: return "every_generation";
        case OppositionMode::Kind::Probabilistic: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "probabilistic(%g)", mode.jumping_rate);
            return buf;
        }
    }
    return "?";
}

/// Min-max reflection through the interval midpoint, per dimension.
/// Input must be inside the bounds; output is clamped so rounding at the
/// boundary cannot leak outside.
inline std::vector<double> opposite_point(PositionView x, const SearchBounds& bounds) {
    if (x.size() != bounds.dimension())
        throw ContractViolation("opposite_point: dimension mismatch");
    if (!bounds.contains(x))
        throw ContractViolation("opposite_point: input outside bounds");
    std::vector<double> out(x.size());
    const auto& lo = bounds.lower();
    const auto& hi = bounds.upper();
    for (std::size_t d = 0; d < x.size(); ++d)
        out[d] = std::clamp(lo[d] + hi[d] - x[d], lo[d], hi[d]);
    return out;
}

/// Opposite of every member, each evaluated (costs exactly |p| calls).
/// Opposites are evaluated even when identical to their source.
inline Population opposite_population(const Population& p, const SearchBounds& bounds,
                                      const Problem& problem, BudgetCounter& budget) {
    Population opp;
    opp.generation = p.generation;
    opp.members.reserve(p.size());
    for (const auto& member : p.members) {
        Individual ind;
        ind.position = opposite_point(member.position, bounds);
        ind.fitness = evaluate(problem, ind.position, budget);
        opp.members.push_back(std::move(ind));
    }
    return opp;
}

/// The N_P lowest-fitness individuals of the 2*N_P union, ordered by
/// ascending fitness. Ties at the selection boundary prefer members of p
/// over p_opp, then lower index.
inline Population merge_select_best(const Population& p, const Population& p_opp) {
    if (p.size() != p_opp.size())
        throw ContractViolation("merge_select_best: population sizes differ");
    const std::size_t np = p.size();

    struct Entry {
        double fitness;
        int source; // 0 = original, 1 = opposite
        std::size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(2 * np);
    for (std::size_t i = 0; i < np; ++i) {
        if (!p.members[i].fitness || !p_opp.members[i].fitness)
            throw ContractViolation("merge_select_best: unevaluated member");
        entries.push_back({*p.members[i].fitness, 0, i});
        entries.push_back({*p_opp.members[i].fitness, 1, i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.fitness != b.fitness) return a.fitness < b.fitness;
        if (a.source != b.source) return a.source < b.source;
        return a.index < b.index;
    });

    Population out;
    out.generation = p.generation;
    out.members.reserve(np);
    for (std::size_t i = 0; i < np; ++i) {
        const Entry& e = entries[i];
        out.members.push_back(e.source == 0 ? p.members[e.index] : p_opp.members[e.index]);
    }
    return out;
}

/// Value-space reflection f' = ymin + ymax - f. A standalone utility; the
/// optimizer loop never calls it (it needs landscape knowledge that is
/// unavailable for black boxes).
inline double type2_opposite_value(double f, double ymin, double ymax) {
    if (!(ymin <= ymax)) throw std::domain_error("type2_opposite_value: ymin must not exceed ymax");
    if (f < ymin || f > ymax)
        throw std::domain_error("type2_opposite_value: f outside [ymin, ymax]");
    return ymin + ymax - f;
}

} // namespace microde
