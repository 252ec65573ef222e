#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "microde/errors.hpp"
#include "microde/rng.hpp"

namespace microde {

using PositionView = std::span<const double>;
using Objective = std::function<double(PositionView)>;

/// A candidate solution: a point in R^D plus its objective value once
/// evaluated.
struct Individual {
    std::vector<double> position;
    std::optional<double> fitness;
};

/// Fixed-size set of individuals plus the generation counter.
struct Population {
    std::vector<Individual> members;
    std::uint64_t generation = 0;

    std::size_t size() const { return members.size(); }
};

/// Box constraints: lower[d] < upper[d] for every dimension.
class SearchBounds {
public:
    SearchBounds(std::vector<double> lower, std::vector<double> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        if (lower_.size() != upper_.size())
            throw ConfigError("SearchBounds: lower/upper dimension mismatch");
        if (lower_.empty())
            throw ConfigError("SearchBounds: dimension must be at least 1");
        for (std::size_t d = 0; d < lower_.size(); ++d)
            if (!(lower_[d] < upper_[d]))
                throw ConfigError("SearchBounds: lower must be strictly below upper in every dimension");
    }

    /// [lo, hi]^d box.
    static SearchBounds uniform_box(std::size_t dimension, double lo, double hi) {
        return SearchBounds(std::vector<double>(dimension, lo), std::vector<double>(dimension, hi));
    }

    std::size_t dimension() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    bool contains(PositionView x) const {
        if (x.size() != dimension()) return false;
        for (std::size_t d = 0; d < x.size(); ++d)
            if (x[d] < lower_[d] || x[d] > upper_[d]) return false;
        return true;
    }

    /// Clamp every coordinate to the nearest bound, in place.
    void clamp(std::vector<double>& x) const {
        for (std::size_t d = 0; d < x.size(); ++d)
            x[d] = std::clamp(x[d], lower_[d], upper_[d]);
    }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// A minimization problem: deterministic objective over a box, with the
/// objective value at the known optimum (value-to-reach) attached.
class Problem {
public:
    Problem(std::string name, std::size_t dimension, SearchBounds bounds,
            Objective objective, double vtr)
        : name_(std::move(name)),
          dimension_(dimension),
          bounds_(std::move(bounds)),
          objective_(std::move(objective)),
          vtr_(vtr) {
        if (dimension_ == 0) throw ConfigError("Problem: dimension must be at least 1");
        if (bounds_.dimension() != dimension_)
            throw ConfigError("Problem '" + name_ + "': bounds dimension does not match problem dimension");
        if (!objective_) throw ConfigError("Problem '" + name_ + "': objective is empty");
    }

    const std::string& name() const { return name_; }
    std::size_t dimension() const { return dimension_; }
    const SearchBounds& bounds() const { return bounds_; }
    double vtr() const { return vtr_; }

    /// Raw objective call, uncounted. Algorithm code must go through
    /// evaluate() so every call is charged against the budget.
    double objective_value(PositionView x) const { return objective_(x); }

private:
    std::string name_;
    std::size_t dimension_;
    SearchBounds bounds_;
    Objective objective_;
    double vtr_;
};

/// Number-of-function-calls accounting for one run.
struct BudgetCounter {
    std::uint64_t nfc = 0;
    std::uint64_t nfc_max = 0;

    bool exhausted() const { return nfc >= nfc_max; }
};

namespace detail {

inline std::string format_position(PositionView x, std::size_t max_coords = 8) {
    std::ostringstream os;
    os << "(";
    const std::size_t n = std::min(x.size(), max_coords);
    for (std::size_t d = 0; d < n; ++d) {
        if (d) os << ", ";
        os << x[d];
    }
    if (x.size() > max_coords) os << ", ... [" << x.size() << " coords]";
    os << ")";
    return os.str();
}

} // namespace detail

/// The one and only counted path to the objective. Increments nfc by
/// exactly 1 per call and rejects non-finite objective output.
inline double evaluate(const Problem& problem, PositionView position, BudgetCounter& budget) {
    if (position.size() != problem.dimension())
        throw ContractViolation("evaluate: position dimension does not match problem '" + problem.name() + "'");
    budget.nfc += 1;
    const double value = problem.objective_value(position);
    if (!std::isfinite(value))
        throw EvaluationFault("objective '" + problem.name() + "' returned non-finite value at " +
                              detail::format_position(position));
    return value;
}

/// Uniform initialization over the box: x_d = lower_d + u * (upper_d - lower_d),
/// one fresh draw per coordinate, each individual evaluated as it is built.
inline Population init_population(const Problem& problem, std::size_t np,
                                  RngStream& rng, BudgetCounter& budget) {
    if (np == 0) throw ConfigError("init_population: population size must be at least 1");
    const auto& lo = problem.bounds().lower();
    const auto& hi = problem.bounds().upper();
    Population pop;
    pop.members.reserve(np);
    for (std::size_t i = 0; i < np; ++i) {
        Individual ind;
        ind.position.resize(problem.dimension());
        for (std::size_t d = 0; d < problem.dimension(); ++d)
            ind.position[d] = rng.uniform(lo[d], hi[d]);
        ind.fitness = evaluate(problem, ind.position, budget);
        pop.members.push_back(std::move(ind));
    }
    return pop;
}

/// Index of the lowest-fitness member; ties broken by lowest index.
inline std::size_t best_index(const Population& pop) {
    if (pop.members.empty()) throw ContractViolation("best_index: empty population");
    std::size_t best = 0;
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
        if (!pop.members[i].fitness)
            throw ContractViolation("best_index: unevaluated member");
        if (*pop.members[i].fitness < *pop.members[best].fitness) best = i;
    }
    return best;
}

} // namespace microde
