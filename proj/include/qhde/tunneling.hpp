#pragma once

// Potential-driven dynamic quantum tunneling: fitness gaps become barrier
// heights, a WKB-style surrogate turns barrier excess into an acceptance
// probability, and accepted individuals take a decaying best-anchored jump.

#include "qhde/core.hpp"

namespace qhde {

struct TunnelingParams {
    double v0 = 0.5;          ///< baseline barrier height, > 0
    double gamma = 0.1;       ///< tunneling adjustment coefficient, in [0.05, 0.2]
    double delta_floor = 0.02;  ///< step floor as a fraction of the per-dimension range

    void validate() const;
};

/// Normalized potential barrier |fit_i - f_best| / (f_max - f_min) * v0.
/// A uniform population (f_max == f_min) has no barriers at all.
double barrier_height(double fit_i, double f_best, double f_max, double f_min, double v0);

/// WKB-style surrogate: 1 when the barrier is at or below the population
/// energy level (free movement), exp(-sqrt(v - e_k) / gamma) above it.
double tunneling_probability(double v, double e_k, double gamma);

/// Population-average normalized barrier, used as the energy level E_k on
/// the same scale as barrier_height.
double energy_level(const Population& pop, double v0);

/// Tunneling jump x + beta * T(t) * Delta(t), clamped to bounds, where
/// beta is a per-dimension standard normal vector, T(t) = 1 - t / t_max,
/// and Delta(t)[j] = |best[j] - x[j]| + delta_floor * (ub[j] - lb[j]).
/// Consumes exactly dim normal draws.
Vec tunnel_move(const Vec& x, const Vec& best, std::size_t t, std::size_t t_max,
                const TunnelingParams& params, const SearchSpace& space, RandomSource& rng);

}  // namespace qhde
