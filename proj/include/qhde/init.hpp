#pragma once

// Population initialization: good point set construction, logistic-chaos
// reverse learning, and merge-and-select of the best half.

#include "qhde/core.hpp"

namespace qhde {

/// Generators for an n-point good point set in s dimensions.
/// pn is the smallest prime with (pn - 3) / 2 >= s and
/// r_i = frac(2 cos(2 pi i / pn)) for i = 1..s.
struct GoodPointParams {
    std::size_t n = 0;
    std::size_t s = 0;
    std::uint64_t pn = 0;
    Vec generators;

    static GoodPointParams make(std::size_t n, std::size_t s);
};

/// Smallest prime pn with (pn - 3) / 2 >= s.
std::uint64_t smallest_good_prime(std::size_t s);

/// The n good points mapped into `space`:
/// point k (k = 1..n) has component j = lb[j] + (ub[j] - lb[j]) * frac(r_j * k).
std::vector<Vec> good_point_set(std::size_t n, const SearchSpace& space);

/// Logistic map state. mu in (2, 4); g stays inside (0, 1).
struct ChaosState {
    double mu = 3.99;
    double g = 0.0;
};

/// Initial chaotic factor drawn away from the logistic fixed points
/// {0.25, 0.5, 0.75} so the orbit does not collapse immediately.
ChaosState seed_chaos(RandomSource& rng, double mu = 3.99);

/// One logistic update g' = mu * g * (1 - g). A degenerate orbit
/// (g' leaving (0, 1)) is re-seeded from `rng`.
ChaosState logistic_step(ChaosState state, RandomSource& rng);

/// Chaotic reverse learning, Xj' = g * (ub[j] - lb[j]) - Xj, clamped to bounds.
Vec reverse_learning(const Vec& x, double g, const SearchSpace& space);

/// Builds the initial population. When enabled: good point set X, one
/// reverse-learned counterpart per member (fresh chaotic factor each, one
/// shared orbit), then the best n of the merged 2n pool (ties by lower
/// index, X before X'). When disabled: n uniform-random points in bounds.
Population initialize_population(std::size_t n, const SearchSpace& space,
                                 const ObjectiveHandle& objective, RandomSource& rng,
                                 bool enabled, double chaos_mu = 3.99);

}  // namespace qhde
