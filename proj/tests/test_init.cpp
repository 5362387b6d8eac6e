#include "qhde/init.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qhde;

TEST_SUITE("initializer") {

TEST_CASE("smallest good prime against exhaustive scan") {
    CHECK(smallest_good_prime(1) == 5);
    CHECK(smallest_good_prime(2) == 7);
    // 7 fails for s = 3 since (7 - 3) / 2 = 2 < 3; the next prime is 11.
    CHECK(smallest_good_prime(3) == 11);
    for (std::size_t s = 1; s <= 64; ++s) {
        CHECK(smallest_good_prime(s) == oracles::smallest_prime_scan(s));
    }
}

TEST_CASE("good point set s=1 n=5 matches the high-precision oracle") {
    // frac(2 cos(2 pi k / 5)), k = 1..5, computed with 50-digit arithmetic.
    const double expected[5] = {
        0.61803398874989484820, 0.23606797749978969641, 0.85410196624968454461,
        0.47213595499957939282, 0.09016994374947424102,
    };
    const auto points = good_point_set(5, SearchSpace::uniform(1, 0.0, 1.0));
    REQUIRE(points.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(points[k][0] == doctest::Approx(expected[k]).epsilon(1e-14));
    }

    const auto single = good_point_set(1, SearchSpace::uniform(1, 0.0, 1.0));
    CHECK(single[0][0] == doctest::Approx(expected[0]).epsilon(1e-14));
}

TEST_CASE("good point set stays in bounds and is dimension-correct") {
    const SearchSpace space({-5.0, 0.0, 2.0}, {5.0, 10.0, 4.0});
    const auto points = good_point_set(40, space);
    CHECK(points.size() == 40);
    for (const auto& p : points) {
        CHECK(space.contains(p));
    }

    const auto params = GoodPointParams::make(40, 3);
    CHECK(params.pn == 11);
    for (double r : params.generators) {
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
    }
}

TEST_CASE("good point set beats uniform sampling on centered-L2 discrepancy") {
    for (std::size_t s : {1u, 2u}) {
        for (std::size_t n : {30u, 50u}) {
            const SearchSpace unit = SearchSpace::uniform(s, 0.0, 1.0);
            const double gp = oracles::centered_l2_discrepancy(good_point_set(n, unit), s);

            RandomSource rng(2024, s * 100 + n);
            double total = 0.0;
            const int sets = 100;
            for (int k = 0; k < sets; ++k) {
                std::vector<Vec> sample(n, Vec(s));
                for (auto& p : sample) {
                    for (double& v : p) v = rng.uniform();
                }
                total += oracles::centered_l2_discrepancy(sample, s);
            }
            CAPTURE(s);
            CAPTURE(n);
            CHECK(gp < total / sets);
        }
    }
}

TEST_CASE("logistic map steps") {
    RandomSource rng(1);
    ChaosState state{3.99, 0.2};
    state = logistic_step(state, rng);
    CHECK(state.g == doctest::Approx(0.6384).epsilon(1e-12));
    state = logistic_step(state, rng);
    CHECK(state.g == doctest::Approx(0.9210733056).epsilon(1e-12));

    // 0.75 is a fixed point of mu = 4; exact dyadic arithmetic keeps it put.
    ChaosState fixed{4.0, 0.75};
    CHECK(logistic_step(fixed, rng).g == 0.75);

    // mu = 4, g = 0.5 maps to exactly 1.0, which must trigger a re-seed.
    ChaosState degenerate{4.0, 0.5};
    const double reseeded = logistic_step(degenerate, rng).g;
    CHECK(reseeded > 0.1);
    CHECK(reseeded < 0.9);

    ChaosState invalid{3.99, 1.5};
    CHECK_THROWS_AS(logistic_step(invalid, rng), ContractError);
}

TEST_CASE("chaos seeding avoids fixed points") {
    RandomSource rng(77);
    for (int i = 0; i < 500; ++i) {
        const ChaosState state = seed_chaos(rng);
        CHECK(state.g > 0.1);
        CHECK(state.g < 0.9);
        for (double fp : {0.25, 0.5, 0.75}) {
            CHECK(std::abs(state.g - fp) >= 1e-3);
        }
    }
    CHECK_THROWS_AS(seed_chaos(rng, 4.5), ConfigError);
}

TEST_CASE("reverse learning arithmetic and clamping") {
    const SearchSpace unit = SearchSpace::uniform(1, 0.0, 1.0);
    CHECK(reverse_learning({0.3}, 0.5, unit)[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(reverse_learning({0.9}, 0.1, unit)[0] == 0.0);  // raw -0.8, clamped

    const SearchSpace wide = SearchSpace::uniform(2, 0.0, 4.0);
    const Vec mirrored = reverse_learning({2.0, 2.0}, 1.0, wide);
    CHECK(mirrored == Vec{2.0, 2.0});

    CHECK_THROWS_AS(reverse_learning({0.1, 0.2}, 0.5, unit), ContractError);
}

TEST_CASE("initialize_population selects the best half of the merged pool") {
    const SearchSpace space = SearchSpace::uniform(2, -1.0, 1.0);
    const ObjectiveHandle sphere(
        [](const Vec& x) { return x[0] * x[0] + x[1] * x[1]; });

    const std::size_t n = 4;
    RandomSource rng(31, 5);
    const Population pop = initialize_population(n, space, sphere, rng, true);
    REQUIRE(pop.size() == n);
    CHECK(pop.generation == 0);

    // Rebuild the merged 2n pool by replaying the documented draw order.
    RandomSource replay(31, 5);
    auto forward = good_point_set(n, space);
    ChaosState chaos = seed_chaos(replay);
    std::vector<double> merged_fitness;
    for (const auto& x : forward) merged_fitness.push_back(sphere.evaluate_internal(x));
    for (std::size_t i = 0; i < n; ++i) {
        chaos = logistic_step(chaos, replay);
        merged_fitness.push_back(
            sphere.evaluate_internal(reverse_learning(forward[i], chaos.g, space)));
    }
    std::vector<double> sorted = merged_fitness;
    std::sort(sorted.begin(), sorted.end());

    double worst_selected = -1.0;
    double best_selected = kInfiniteFitness;
    for (const auto& member : pop.members) {
        CHECK(space.contains(member.position));
        worst_selected = std::max(worst_selected, member.fitness_value());
        best_selected = std::min(best_selected, member.fitness_value());
    }
    CHECK(worst_selected <= sorted[n - 1]);  // selection dominance
    // median of the merged pool bounds every selected member
    CHECK(worst_selected <= 0.5 * (sorted[n - 1] + sorted[n]));

    // the merged winner is at least as good as the best forward point
    double best_forward = kInfiniteFitness;
    for (std::size_t i = 0; i < n; ++i)
        best_forward = std::min(best_forward, merged_fitness[i]);
    CHECK(best_selected <= best_forward);
}

TEST_CASE("disabled initialization is reproducible uniform sampling") {
    const SearchSpace space = SearchSpace::uniform(3, -2.0, 2.0);
    const ObjectiveHandle sum([](const Vec& x) { return x[0] + x[1] + x[2]; });

    RandomSource rng_a(5, 0), rng_b(5, 0);
    const Population a = initialize_population(6, space, sum, rng_a, false);
    const Population b = initialize_population(6, space, sum, rng_b, false);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.members[i].position == b.members[i].position);
        CHECK(space.contains(a.members[i].position));
    }

    CHECK_THROWS_AS(initialize_population(1, space, sum, rng_a, false), ConfigError);
}

TEST_CASE("failed evaluations stay eligible via the sentinel") {
    const SearchSpace space = SearchSpace::uniform(1, 0.0, 1.0);
    const ObjectiveHandle nasty([](const Vec& x) {
        return x[0] < 0.5 ? std::nan("") : x[0];
    });
    RandomSource rng(11, 2);
    const Population pop = initialize_population(4, space, nasty, rng, true);
    for (const auto& member : pop.members) {
        CHECK(member.fitness.has_value());
        CHECK_FALSE(std::isnan(member.fitness_value()));
    }
}

}  // TEST_SUITE
