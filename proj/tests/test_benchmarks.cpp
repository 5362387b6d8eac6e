#include "qhde/benchmarks.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qhde;
using namespace qhde::bench;

TEST_SUITE("benchmarks") {

TEST_CASE("sphere basics") {
    const auto spec = BenchmarkSpec::classic(BaseFunction::Sphere, 3);
    CHECK(evaluate(spec, {0.0, 0.0, 0.0}) == 0.0);
    CHECK(evaluate(spec, {1.0, 2.0, -2.0}) == doctest::Approx(9.0));
    CHECK_THROWS_AS(evaluate(spec, {0.0, 0.0}), ContractError);
}

TEST_CASE("rastrigin is rotation-invariant at the optimum") {
    RandomSource rng(12, 0);
    auto spec = BenchmarkSpec::classic(BaseFunction::Rastrigin, 2);
    spec.shift = {1.5, -2.25};
    spec.rotation = make_rotation(2, rng);
    spec.validate();
    CHECK(evaluate(spec, spec.shift) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("ackley 1-D one unit from the optimum, against a second evaluator") {
    // frozen 50-digit value of 20 (1 - exp(-1/5))
    const double expected = 3.6253849384403628;

    auto spec = BenchmarkSpec::classic(BaseFunction::Ackley, 1);
    spec.shift = {4.0};
    CHECK(evaluate(spec, {5.0}) == doctest::Approx(expected).epsilon(1e-13));

    // independently written reference evaluator
    auto reference = [](double z) {
        return -20.0 * std::exp(-0.2 * std::sqrt(z * z)) -
               std::exp(std::cos(2.0 * std::numbers::pi * z)) + 20.0 + std::numbers::e;
    };
    CHECK(evaluate(spec, {5.0}) == doctest::Approx(reference(1.0)).epsilon(1e-13));
}

TEST_CASE("optimum preservation for every shifted/rotated function") {
    const BaseFunction all[] = {
        BaseFunction::Sphere,   BaseFunction::Rosenbrock, BaseFunction::Rastrigin,
        BaseFunction::Ackley,   BaseFunction::Griewank,   BaseFunction::Schwefel,
        BaseFunction::Levy,     BaseFunction::Zakharov,   BaseFunction::DoubleWell,
    };
    for (auto f : all) {
        for (std::size_t dim : {1u, 2u, 10u}) {
            RandomSource rng(900 + static_cast<std::uint64_t>(f), dim);
            const auto spec = make_shifted_rotated(f, dim, rng);
            spec.validate();
            CAPTURE(to_string(f));
            CAPTURE(dim);
            CHECK(std::abs(evaluate(spec, spec.optimum())) < 1e-10);
        }
    }
}

TEST_CASE("suite functions are non-negative in bounds") {
    const BaseFunction all[] = {
        BaseFunction::Sphere,   BaseFunction::Rosenbrock, BaseFunction::Rastrigin,
        BaseFunction::Ackley,   BaseFunction::Griewank,   BaseFunction::Schwefel,
        BaseFunction::Levy,     BaseFunction::Zakharov,   BaseFunction::DoubleWell,
    };
    RandomSource rng(7001, 0);
    for (auto f : all) {
        RandomSource spec_rng(55, static_cast<std::uint64_t>(f));
        const auto spec = make_shifted_rotated(f, 5, spec_rng);
        for (int k = 0; k < 1000; ++k) {
            Vec x(5);
            for (std::size_t j = 0; j < 5; ++j) {
                x[j] = spec.bounds.lower[j] + spec.bounds.range(j) * rng.uniform();
            }
            CAPTURE(to_string(f));
            CHECK(evaluate(spec, x) >= -1e-12);
        }
    }
}

TEST_CASE("rotation matrices are orthogonal with unit determinant") {
    RandomSource rng(41, 0);

    const Matrix r1 = make_rotation(1, rng);
    CHECK(std::abs(std::abs(r1[0][0]) - 1.0) < 1e-12);

    for (std::size_t dim : {2u, 5u, 10u}) {
        const Matrix r = make_rotation(dim, rng);
        CHECK(orthogonality_error(r) < 1e-10);
        CHECK(std::abs(std::abs(oracles::determinant(r)) - 1.0) < 1e-8);
    }
}

TEST_CASE("double well has exactly two basins with configured floors") {
    auto spec = BenchmarkSpec::classic(BaseFunction::DoubleWell, 1);
    const double sep = spec.well_separation;
    const double depth = spec.well_depth;

    CHECK(evaluate(spec, {0.0}) == 0.0);
    CHECK(evaluate(spec, {sep}) == depth);

    // count strict local minima on a fine grid
    const double lo = spec.bounds.lower[0], hi = spec.bounds.upper[0];
    const int cells = 4000;
    auto value = [&](int i) {
        return evaluate(spec, {lo + (hi - lo) * static_cast<double>(i) / cells});
    };
    int minima = 0;
    for (int i = 1; i < cells; ++i) {
        if (value(i) < value(i - 1) && value(i) < value(i + 1)) ++minima;
    }
    CHECK(minima == 2);

    // the barrier between the wells tops both floors
    const double crossing = (sep * sep + depth) / (2.0 * sep);
    CHECK(evaluate(spec, {crossing}) > depth);
}

TEST_CASE("desk suite is eight distinct seeded specs") {
    const auto suite = desk_suite(10, 4242);
    REQUIRE(suite.size() == 8);
    for (const auto& spec : suite) {
        spec.validate();
        CHECK(spec.dim == 10);
        CHECK_FALSE(spec.shift.empty());
        CHECK_FALSE(spec.rotation.empty());
    }
    // reproducible from the seed alone
    const auto again = desk_suite(10, 4242);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(suite[i].shift == again[i].shift);
        CHECK(suite[i].rotation == again[i].rotation);
    }
}

TEST_CASE("name round-trip") {
    CHECK(base_function_from_string("schwefel") == BaseFunction::Schwefel);
    CHECK(to_string(BaseFunction::DoubleWell) == "double_well");
    CHECK_THROWS_AS(base_function_from_string("nope"), ConfigError);
}

}  // TEST_SUITE
