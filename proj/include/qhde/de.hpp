#pragma once

// Classic differential evolution operators: rand/1 mutation, binomial
// crossover, greedy selection.

#include "qhde/core.hpp"

namespace qhde {

struct DeParams {
    double f_weight = 0.5;  ///< mutation scale factor F, in [0, 2]
    double cr = 0.5;        ///< crossover probability, in [0, 1]

    void validate() const;
};

/// rand/1 mutation for member i: x_r1 + F * (x_r2 - x_r3) with r1, r2, r3
/// pairwise distinct and different from i, clamped to bounds.
/// Draw order: r1, then r2, then r3, each by rejection on uniform_below(N).
Vec mutate_rand1(const Population& pop, std::size_t i, const DeParams& params,
                 const SearchSpace& space, RandomSource& rng);

/// Binomial crossover. Component j takes mutant[j] when rand_j < cr or
/// j == j_rand (drawn first), else target[j]; at least one mutant
/// component always survives.
Vec crossover_binomial(const Vec& target, const Vec& mutant, double cr, RandomSource& rng);

/// Greedy one-to-one selection: the trial replaces the incumbent iff its
/// fitness is <= the incumbent's (ties accept the trial).
CandidateSolution select_greedy(const CandidateSolution& incumbent,
                                const CandidateSolution& trial);

}  // namespace qhde
