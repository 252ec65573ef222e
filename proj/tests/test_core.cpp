#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "microde/core.hpp"

using namespace microde;

namespace {

Problem sphere_problem(std::size_t dim, double lo = -5.0, double hi = 5.0) {
    return Problem("sphere", dim, SearchBounds::uniform_box(dim, lo, hi),
                   [](PositionView x) {
                       double s = 0.0;
                       for (double v : x) s += v * v;
                       return s;
                   },
                   0.0);
}

} // namespace

TEST_CASE("rng: identical seeds produce identical draw sequences") {
    RngStream a(42), b(42);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform() == b.uniform());
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform(-3.0, 7.0) == b.uniform(-3.0, 7.0));
    for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform_int(17) == b.uniform_int(17));
    for (int i = 0; i < 100; ++i) REQUIRE(a.distinct(3, 10, 4) == b.distinct(3, 10, 4));
}

TEST_CASE("rng: uniform ranges") {
    RngStream rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform(0.1, 1.5);
        REQUIRE(u >= 0.1);
        REQUIRE(u < 1.5);
    }
    for (int i = 0; i < 100000; ++i) REQUIRE(rng.uniform_int(6) < 6);
}

TEST_CASE("rng: distinct draws exclude the target and never repeat") {
    RngStream rng(123);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto idx = rng.distinct(3, 6, 2);
        REQUIRE(idx.size() == 3);
        std::set<std::size_t> unique(idx.begin(), idx.end());
        REQUIRE(unique.size() == 3);
        REQUIRE(unique.count(2) == 0);
        for (auto i : idx) REQUIRE(i < 6);
    }
}

TEST_CASE("rng: drawing all candidates yields a permutation") {
    RngStream rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        auto idx = rng.distinct(5, 6, 3);
        std::sort(idx.begin(), idx.end());
        REQUIRE(idx == std::vector<std::size_t>{0, 1, 2, 4, 5});
    }
}

TEST_CASE("bounds: degenerate width rejected at construction") {
    REQUIRE_THROWS_AS(SearchBounds({0.0, 1.0}, {1.0, 1.0}), ConfigError);
    REQUIRE_THROWS_AS(SearchBounds({2.0}, {1.0}), ConfigError);
    REQUIRE_THROWS_AS(SearchBounds({0.0}, {1.0, 2.0}), ConfigError);
    REQUIRE_THROWS_AS(SearchBounds({}, {}), ConfigError);
}

TEST_CASE("bounds: containment and clamping") {
    const auto bounds = SearchBounds::uniform_box(2, -1.0, 1.0);
    REQUIRE(bounds.contains(std::vector<double>{0.0, 1.0}));
    REQUIRE_FALSE(bounds.contains(std::vector<double>{0.0, 1.5}));
    std::vector<double> x{-3.0, 0.5};
    bounds.clamp(x);
    REQUIRE(x == std::vector<double>{-1.0, 0.5});
}

TEST_CASE("problem: bounds dimension must match") {
    REQUIRE_THROWS_AS(Problem("bad", 2, SearchBounds::uniform_box(3, 0.0, 1.0),
                              [](PositionView) { return 0.0; }, 0.0),
                      ConfigError);
}

TEST_CASE("init_population: coordinates inside the box, all evaluated, nfc counted") {
    const auto problem = sphere_problem(3, 0.0, 1.0);
    RngStream rng(5);
    BudgetCounter budget{0, 1000};
    const auto pop = init_population(problem, 4, rng, budget);
    REQUIRE(pop.size() == 4);
    REQUIRE(budget.nfc == 4);
    for (const auto& ind : pop.members) {
        REQUIRE(ind.position.size() == 3);
        REQUIRE(ind.fitness.has_value());
        for (double c : ind.position) {
            REQUIRE(c >= 0.0);
            REQUIRE(c < 1.0);
        }
    }
}

TEST_CASE("init_population: seed 42 run twice gives identical populations") {
    const auto problem = sphere_problem(5);
    RngStream rng1(42), rng2(42);
    BudgetCounter b1{0, 100}, b2{0, 100};
    const auto p1 = init_population(problem, 6, rng1, b1);
    const auto p2 = init_population(problem, 6, rng2, b2);
    for (std::size_t i = 0; i < 6; ++i) {
        REQUIRE(p1.members[i].position == p2.members[i].position);
        REQUIRE(*p1.members[i].fitness == *p2.members[i].fitness);
    }
}

TEST_CASE("evaluate: counts exactly one call and is deterministic") {
    const auto problem = sphere_problem(2);
    BudgetCounter budget{0, 500};

    const std::vector<double> origin{0.0, 0.0};
    REQUIRE(evaluate(problem, origin, budget) == 0.0);
    REQUIRE(budget.nfc == 1);

    const std::vector<double> x{1.5, -2.0};
    const double a = evaluate(problem, x, budget);
    const double b = evaluate(problem, x, budget);
    REQUIRE(a == b);
    REQUIRE(budget.nfc == 3);

    for (int i = 0; i < 100; ++i) evaluate(problem, x, budget);
    REQUIRE(budget.nfc == 103);
}

TEST_CASE("evaluate: rejects wrong dimension and non-finite output") {
    const auto problem = sphere_problem(2);
    BudgetCounter budget{0, 10};
    REQUIRE_THROWS_AS(evaluate(problem, std::vector<double>{1.0}, budget), ContractViolation);

    const Problem nan_problem("nan", 1, SearchBounds::uniform_box(1, -1.0, 1.0),
                              [](PositionView) { return std::nan(""); }, 0.0);
    REQUIRE_THROWS_AS(evaluate(nan_problem, std::vector<double>{0.5}, budget), EvaluationFault);
    REQUIRE_THROWS_WITH(evaluate(nan_problem, std::vector<double>{0.5}, budget),
                        Catch::Matchers::ContainsSubstring("0.5"));
}

TEST_CASE("best_index: lowest fitness wins, ties to lowest index") {
    Population pop;
    pop.members = {{{0.0}, 3.0}, {{0.0}, 1.0}, {{0.0}, 1.0}, {{0.0}, 2.0}};
    REQUIRE(best_index(pop) == 1);
    pop.members[2].fitness.reset();
    REQUIRE_THROWS_AS(best_index(pop), ContractViolation);
}
