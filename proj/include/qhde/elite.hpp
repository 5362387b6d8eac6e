#pragma once

// Dynamic elite pool and Cauchy-Gaussian mixed perturbation of the best
// solution. The pool holds the generation's three best positions plus
// their mean; a randomly chosen pool member is perturbed multiplicatively
// and considered for the tracked global best only.

#include "qhde/core.hpp"

#include <array>

namespace qhde {

struct ElitePool {
    // PZ1, PZ2, PZ3 (three best of the generation) and PZm (their mean).
    std::array<Vec, 4> members;
};

struct PerturbParams {
    /// Constant mixing weight override; unset means the schedule
    /// rho(t) = 1 - t / t_max (Cauchy-heavy early, Gaussian-heavy late).
    std::optional<double> rho_override;

    double rho_at(std::size_t t, std::size_t t_max) const;
    void validate() const;
};

/// The three best members (ties by lower index) plus their arithmetic mean.
ElitePool build_elite_pool(const Population& pop);

/// Samples one pool member uniformly, then scales each component by an
/// independent rho * Cauchy(0,1) + (1 - rho) * Gauss(0,1) draw; clamped.
/// Draw order: pool index, then per dimension one Cauchy and one normal.
Vec perturb_best(const ElitePool& pool, double rho, const SearchSpace& space,
                 RandomSource& rng);

/// Memory-preserving best update: the candidate replaces the incumbent
/// only on strict improvement.
CandidateSolution accept_best(const CandidateSolution& candidate,
                              const CandidateSolution& incumbent_best);

}  // namespace qhde
