#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "microde/benchmarks.hpp"

using namespace microde;

TEST_CASE("registry: all five classes are represented, lookups work") {
    const auto& registry = benchmark_registry();
    REQUIRE(registry.size() >= 9);
    std::set<FunctionClass> classes;
    for (const auto& info : registry) classes.insert(info.fclass);
    REQUIRE(classes.size() == 5);

    REQUIRE(find_benchmark("sphere").fclass == FunctionClass::Separable);
    REQUIRE(function_class("rosenbrock") == FunctionClass::LowModerateConditioning);
    REQUIRE(function_class("ellipsoid") == FunctionClass::HighConditioningUnimodal);
    REQUIRE(function_class("griewank") == FunctionClass::MultimodalAdequateStructure);
    REQUIRE(function_class("ackley") == FunctionClass::MultimodalWeakStructure);
    REQUIRE_THROWS_AS(find_benchmark("nope"), ConfigError);
    REQUIRE_THROWS_AS(make_problem({"nope", 3, 1}), ConfigError);
    REQUIRE_THROWS_AS(make_problem({"sphere", 0, 1}), ConfigError);
}

TEST_CASE("base functions: hand-computed values") {
    REQUIRE(bench::sphere(std::vector<double>{3.0, 4.0}) == 25.0);
    // condition 1e6 ellipsoid at (1,1): 10^0 + 10^6
    REQUIRE(bench::ellipsoid(std::vector<double>{1.0, 1.0}) ==
            Catch::Approx(1.0 + 1e6).epsilon(1e-12));
    // rosenbrock with the optimum at the origin: f(0) = 0, f(1,1) = 100*(2-4)^2+1
    REQUIRE(bench::rosenbrock(std::vector<double>{1.0, 1.0}) ==
            Catch::Approx(100.0 * 4.0 + 1.0).epsilon(1e-12));
    // schwefel 1.2 double sum at (1,2,3): 1 + 9 + 36
    REQUIRE(bench::schwefel12(std::vector<double>{1.0, 2.0, 3.0}) == 46.0);
    // separable rastrigin single coordinate at 0.5: 0.25 - 10*cos(pi) + 10
    REQUIRE(bench::rastrigin(std::vector<double>{0.5}) == Catch::Approx(20.25).epsilon(1e-12));
}

TEST_CASE("vtr attainment: the shifted optimum evaluates to exactly zero") {
    for (const auto& info : benchmark_registry()) {
        for (const std::size_t dim : {std::size_t{1}, std::size_t{2}, std::size_t{7},
                                      std::size_t{10}, std::size_t{30}, std::size_t{1000}}) {
            for (const std::uint64_t shift_seed : {1ull, 2ull, 99ull}) {
                const auto problem = make_problem({info.id, dim, shift_seed});
                const auto shift = benchmark_shift(info.id, dim, shift_seed);
                REQUIRE(problem.vtr() == 0.0);
                REQUIRE(problem.objective_value(shift) == 0.0);
            }
        }
    }
}

TEST_CASE("non-negativity over random points in the box") {
    RngStream rng(73);
    for (const auto& info : benchmark_registry()) {
        const auto problem = make_problem({info.id, 7, 5});
        std::vector<double> x(7);
        for (int trial = 0; trial < 1000; ++trial) {
            for (auto& c : x) c = rng.uniform(benchmark_box_lower, benchmark_box_upper);
            REQUIRE(problem.objective_value(x) >= 0.0);
        }
    }
}

TEST_CASE("shift equivariance: shifted objective equals base at x - shift") {
    RngStream rng(79);
    for (const auto& info : benchmark_registry()) {
        const std::size_t dim = 5;
        const auto problem = make_problem({info.id, dim, 17});
        const auto shift = benchmark_shift(info.id, dim, 17);
        std::vector<double> x(dim), u(dim);
        for (int trial = 0; trial < 1000; ++trial) {
            for (std::size_t d = 0; d < dim; ++d) {
                x[d] = rng.uniform(benchmark_box_lower, benchmark_box_upper);
                u[d] = x[d] - shift[d];
            }
            REQUIRE(problem.objective_value(x) == info.base(u));
        }
    }
}

TEST_CASE("shifts: deterministic, inside the central 80% of the box") {
    const auto a = benchmark_shift("ackley", 20, 123);
    const auto b = benchmark_shift("ackley", 20, 123);
    REQUIRE(a == b);
    const auto other_seed = benchmark_shift("ackley", 20, 124);
    REQUIRE(a != other_seed);
    const auto other_fn = benchmark_shift("sphere", 20, 123);
    REQUIRE(a != other_fn);
    for (double c : a) {
        REQUIRE(c >= 0.8 * benchmark_box_lower);
        REQUIRE(c < 0.8 * benchmark_box_upper);
    }
}

TEST_CASE("make_problem: box, name and dimension") {
    const auto problem = make_problem({"diff_powers", 12, 3});
    REQUIRE(problem.name() == "diff_powers");
    REQUIRE(problem.dimension() == 12);
    REQUIRE(problem.bounds().lower() == std::vector<double>(12, -5.0));
    REQUIRE(problem.bounds().upper() == std::vector<double>(12, 5.0));
}

TEST_CASE("one-dimensional degenerate cases stay well defined") {
    REQUIRE(bench::rosenbrock(std::vector<double>{2.0}) == 4.0);
    REQUIRE(bench::ellipsoid(std::vector<double>{3.0}) == 9.0);
    REQUIRE(bench::diff_powers(std::vector<double>{2.0}) == 4.0);
    REQUIRE(bench::rastrigin_cond(std::vector<double>{0.0}) == 0.0);
}
