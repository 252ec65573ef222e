#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "microde/operators.hpp"

using namespace microde;

TEST_CASE("scale factors: every draw inside [0.1, 1.5)") {
    RngStream rng(11);
    const auto f = sample_scale_factors(1000, rng);
    REQUIRE(f.size() == 1000);
    REQUIRE(*std::min_element(f.begin(), f.end()) >= 0.1);
    REQUIRE(*std::max_element(f.begin(), f.end()) < 1.5);
}

TEST_CASE("scale factors: pooled mean matches the uniform mean") {
    // mean of uniform(0.1, 1.5) is 0.8; 1e6 draws put the Monte Carlo
    // error two orders of magnitude below the 0.01 tolerance
    RngStream rng(17);
    double sum = 0.0;
    std::size_t count = 0;
    for (int i = 0; i < 1000; ++i) {
        for (double v : sample_scale_factors(1000, rng)) sum += v;
        count += 1000;
    }
    REQUIRE(count == 1000000);
    REQUIRE(sum / static_cast<double>(count) == Catch::Approx(0.8).margin(0.01));
}

TEST_CASE("scale factors: seeded determinism") {
    RngStream a(3), b(3);
    REQUIRE(sample_scale_factors(64, a) == sample_scale_factors(64, b));
}

TEST_CASE("pick_scheme: singleton pool always returns its only scheme") {
    RngStream rng(1);
    const std::vector<MutationScheme> pool{MutationScheme::Best2};
    for (int i = 0; i < 100; ++i) REQUIRE(pick_scheme(pool, rng) == MutationScheme::Best2);
}

TEST_CASE("pick_scheme: uniform over the 5-scheme pool (chi-square)") {
    RngStream rng(23);
    const auto& pool = full_scheme_pool();
    std::array<double, scheme_count> counts{};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) counts[scheme_index(pick_scheme(pool, rng))] += 1.0;
    const double expected = static_cast<double>(draws) / scheme_count;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // critical value at p = 0.001 with 4 degrees of freedom
    REQUIRE(chi2 < 18.47);
}

TEST_CASE("pick_scheme: seeded determinism and empty pool error") {
    RngStream a(5), b(5);
    const auto& pool = full_scheme_pool();
    for (int i = 0; i < 1000; ++i) REQUIRE(pick_scheme(pool, a) == pick_scheme(pool, b));
    RngStream rng(1);
    REQUIRE_THROWS_AS(pick_scheme(std::vector<MutationScheme>{}, rng), ConfigError);
}

TEST_CASE("select_parents: np=6 j=5 returns the 5 non-target indices") {
    RngStream rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto idx = select_parents(6, 1, 5, rng);
        std::sort(idx.begin(), idx.end());
        REQUIRE(idx == std::vector<std::size_t>{0, 2, 3, 4, 5});
    }
}

TEST_CASE("select_parents: distinctness over many draws") {
    RngStream rng(37);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto idx = select_parents(6, 4, 3, rng);
        std::set<std::size_t> unique(idx.begin(), idx.end());
        REQUIRE(unique.size() == 3);
        REQUIRE(unique.count(4) == 0);
    }
}

TEST_CASE("select_parents: population too small for the scheme") {
    RngStream rng(1);
    REQUIRE_THROWS_AS(select_parents(3, 0, 3, rng), ConfigError);
}

TEST_CASE("mutation: rand/1 worked example") {
    const std::vector<double> x1{1.0, 2.0}, x2{3.0, 0.0}, x3{1.0, 1.0};
    const std::vector<double> f{0.5, 0.5};
    const std::vector<PositionView> parents{x1, x2, x3};
    const std::vector<double> unused{0.0, 0.0};
    const auto v = apply_mutation_scheme(MutationScheme::Rand1, unused, unused, parents, f);
    REQUIRE(v == std::vector<double>{2.0, 1.5});
}

TEST_CASE("mutation: all inputs equal collapses every scheme to that point") {
    const std::vector<double> c{0.7, -1.2, 3.3};
    const std::vector<double> f{0.9, 1.1, 0.3};
    for (auto scheme : full_scheme_pool()) {
        const std::vector<PositionView> parents(parent_count(scheme), PositionView(c));
        const auto v = apply_mutation_scheme(scheme, c, c, parents, f);
        for (std::size_t d = 0; d < c.size(); ++d)
            REQUIRE(v[d] == Catch::Approx(c[d]).margin(1e-15));
    }
}

TEST_CASE("mutation: best/2 with zero factors returns the best point") {
    const std::vector<double> best{4.0, -2.0};
    const std::vector<double> p1{1.0, 1.0}, p2{2.0, 2.0}, p3{3.0, 3.0}, p4{0.0, 5.0};
    const std::vector<double> zero{0.0, 0.0};
    const std::vector<PositionView> parents{p1, p2, p3, p4};
    const auto v = apply_mutation_scheme(MutationScheme::Best2, p1, best, parents, zero);
    REQUIRE(v == best);
}

TEST_CASE("mutation: parent count mismatch is a contract violation") {
    const std::vector<double> x{1.0};
    const std::vector<double> f{0.5};
    const std::vector<PositionView> two{x, x};
    REQUIRE_THROWS_AS(apply_mutation_scheme(MutationScheme::Rand1, x, x, two, f),
                      ContractViolation);
}

TEST_CASE("mutation: rand/1 is linear in the scale factor") {
    RngStream rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x1(4), x2(4), x3(4), f(4), f2(4);
        for (int d = 0; d < 4; ++d) {
            x1[d] = rng.uniform(-5.0, 5.0);
            x2[d] = rng.uniform(-5.0, 5.0);
            x3[d] = rng.uniform(-5.0, 5.0);
            f[d] = rng.uniform(0.1, 1.5);
            f2[d] = 2.0 * f[d];
        }
        const std::vector<PositionView> parents{x1, x2, x3};
        const auto v1 = apply_mutation_scheme(MutationScheme::Rand1, x1, x1, parents, f);
        const auto v2 = apply_mutation_scheme(MutationScheme::Rand1, x1, x1, parents, f2);
        for (int d = 0; d < 4; ++d) {
            const double lhs = v2[d] - x1[d];
            const double rhs = 2.0 * (v1[d] - x1[d]);
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("crossover: cr=1 copies the mutant everywhere") {
    RngStream rng(43);
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> v{-1.0, -2.0, -3.0, -4.0};
    REQUIRE(crossover(x, v, 1.0, rng) == v);
}

TEST_CASE("crossover: cr=0 changes exactly the forced dimension") {
    RngStream rng(47);
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> v{-1.0, -2.0, -3.0, -4.0, -5.0};
    for (int trial = 0; trial < 1000; ++trial) {
        const auto u = crossover(x, v, 0.0, rng);
        int changed = 0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            if (u[d] != x[d]) {
                ++changed;
                REQUIRE(u[d] == v[d]);
            }
        }
        REQUIRE(changed == 1);
    }
}

TEST_CASE("crossover: single dimension always takes the mutant") {
    RngStream rng(53);
    const std::vector<double> x{1.0};
    const std::vector<double> v{9.0};
    for (int trial = 0; trial < 100; ++trial) REQUIRE(crossover(x, v, 0.0, rng) == v);
}

TEST_CASE("crossover: every coordinate comes from the parent or the mutant") {
    RngStream rng(59);
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const std::vector<double> v{10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 16.0};
    for (int trial = 0; trial < 2000; ++trial) {
        const double cr = rng.uniform();
        const auto u = crossover(x, v, cr, rng);
        for (std::size_t d = 0; d < x.size(); ++d)
            REQUIRE((u[d] == x[d] || u[d] == v[d]));
    }
}

TEST_CASE("greedy selection: lower wins, ties to the trial") {
    const Individual parent{{1.0}, 5.0};
    const Individual better{{2.0}, 3.0};
    const Individual equal{{3.0}, 5.0};
    const Individual worse{{4.0}, 7.0};
    REQUIRE(greedy_select(parent, better).position == better.position);
    REQUIRE(greedy_select(parent, equal).position == equal.position);
    REQUIRE(greedy_select(parent, worse).position == parent.position);

    const Individual unevaluated{{5.0}, std::nullopt};
    REQUIRE_THROWS_AS(greedy_select(parent, unevaluated), ContractViolation);
}
