#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "microde/core.hpp"
#include "microde/operators.hpp"
#include "microde/opposition.hpp"
#include "microde/strategy.hpp"

namespace microde {

/// One (nfc, best-error) record. Between records the best error is a
/// right-continuous step function of nfc.
struct TracePoint {
    std::uint64_t nfc;
    double best_error;
};

using ConvergenceTrace = std::vector<TracePoint>;

enum class Termination { ErrorReached, BudgetExhausted };

inline std::string_view to_string(Termination t) {
    return t == Termination::ErrorReached ? "error_reached" : "budget_exhausted";
}

struct RunResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    double final_error = 0.0;
    std::uint64_t nfc_used = 0;
    std::uint64_t generations = 0;
    ConvergenceTrace trace;
    Termination terminated_by = Termination::BudgetExhausted;
    /// How often each scheme was drawn, indexed by scheme_index().
    std::array<std::uint64_t, scheme_count> scheme_usage{};
};

/// Called after the initialization phase (generation 0) and after every
/// committed generation, post opposition jumping.
using GenerationObserver = std::function<void(const Population&, const BudgetCounter&)>;

/// One full optimization run.
///
/// Flow: uniform initialization; opposite-population merge when the mode
/// opposes at init; then per generation, for each individual: draw a
/// scheme from the pool, draw parents, build the scale-factor vector,
/// mutate, clamp to bounds, binomial crossover, evaluate, greedy select.
/// The generation commits synchronously (parents and the best are read
/// from the pre-update population), then the opposition jump runs per
/// mode. The budget guard is checked once per generation, so a run may
/// overshoot nfc_max by at most 2*np evaluations.
///
/// Draw-order contract (what reproducibility tests rely on): a singleton
/// pool consumes no scheme draw, Fixed scale-factor mode consumes no
/// factor draws, and only the Probabilistic mode consumes one uniform per
/// generation for the jump decision.
inline RunResult run(const Problem& problem, const StrategyConfig& config,
                     std::uint64_t seed, const GenerationObserver& observer = {}) {
    validate(config);
    const std::size_t np = config.np;
    const std::size_t dim = problem.dimension();
    const SearchBounds& bounds = problem.bounds();
    const double vtr = problem.vtr();

    RngStream rng(seed);
    BudgetCounter budget{0, config.nfc_max};
    RunResult result;

    ConvergenceTrace trace;
    auto record = [&trace](std::uint64_t nfc, double error) {
        if (!trace.empty() && trace.back().nfc == nfc && trace.back().best_error == error)
            return;
        trace.push_back({nfc, error});
    };

    // Initialization phase: uniform population, plus opposite merge when
    // the mode opposes at init. BVF starts from the merged state.
    Population pop = init_population(problem, np, rng, budget);
    if (config.opposition.applies_at_init()) {
        Population opp = opposite_population(pop, bounds, problem, budget);
        pop = merge_select_best(pop, opp);
    }
    Individual best = pop.members[best_index(pop)];
    record(budget.nfc, *best.fitness - vtr);
    if (observer) observer(pop, budget);

    ScaleFactorVector fixed_factors;
    const bool fixed_f = config.scale_factor_mode.kind == ScaleFactorMode::Kind::Fixed;
    if (fixed_f) fixed_factors.assign(dim, config.scale_factor_mode.fixed_value);

    std::uint64_t generation = 0;
    while (std::abs(*best.fitness - vtr) > config.evtr && budget.nfc < config.nfc_max) {
        const std::size_t gen_best = best_index(pop);
        const PositionView best_pos = pop.members[gen_best].position;

        Population next = pop;
        std::vector<PositionView> parents;
        for (std::size_t i = 0; i < np; ++i) {
            const MutationScheme scheme = pick_scheme(config.scheme_pool, rng);
            result.scheme_usage[scheme_index(scheme)] += 1;

            const auto parent_idx = select_parents(np, i, parent_count(scheme), rng);
            parents.clear();
            for (auto idx : parent_idx) parents.push_back(pop.members[idx].position);

            ScaleFactorVector sampled;
            if (!fixed_f) sampled = sample_scale_factors(dim, rng);
            const ScaleFactorVector& factors = fixed_f ? fixed_factors : sampled;

            std::vector<double> mutant = apply_mutation_scheme(
                scheme, pop.members[i].position, best_pos, parents, factors);
            bounds.clamp(mutant);

            Individual trial;
            trial.position = crossover(pop.members[i].position, mutant, config.cr, rng);
            trial.fitness = evaluate(problem, trial.position, budget);

            next.members[i] = greedy_select(pop.members[i], trial);
            if (*next.members[i].fitness < *best.fitness) {
                best = next.members[i];
                record(budget.nfc, *best.fitness - vtr);
            }
        }
        pop = std::move(next);

        bool jump = false;
        if (config.opposition.kind == OppositionMode::Kind::EveryGeneration)
            jump = true;
        else if (config.opposition.kind == OppositionMode::Kind::Probabilistic)
            jump = rng.uniform() < config.opposition.jumping_rate;
        if (jump) {
            Population opp = opposite_population(pop, bounds, problem, budget);
            pop = merge_select_best(pop, opp);
            const std::size_t bi = best_index(pop);
            if (*pop.members[bi].fitness < *best.fitness) {
                best = pop.members[bi];
                record(budget.nfc, *best.fitness - vtr);
            }
        }

        generation += 1;
        pop.generation = generation;
        record(budget.nfc, *best.fitness - vtr);
        if (observer) observer(pop, budget);
    }

    result.best_position = best.position;
    result.best_fitness = *best.fitness;
    result.final_error = *best.fitness - vtr;
    result.nfc_used = budget.nfc;
    result.generations = generation;
    result.trace = std::move(trace);
    result.terminated_by = std::abs(*best.fitness - vtr) <= config.evtr
                               ? Termination::ErrorReached
                               : Termination::BudgetExhausted;
    return result;
}

} // namespace microde
