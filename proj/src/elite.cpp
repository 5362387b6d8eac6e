#include "qhde/elite.hpp"

#include <algorithm>
#include <numeric>

namespace qhde {

double PerturbParams::rho_at(std::size_t t, std::size_t t_max) const {
    if (rho_override) return *rho_override;
    if (t_max == 0) return 1.0;
    return 1.0 - static_cast<double>(t) / static_cast<double>(t_max);
}

void PerturbParams::validate() const {
    if (rho_override && !(*rho_override >= 0.0 && *rho_override <= 1.0))
        throw ConfigError("PerturbParams: rho must lie in [0, 1]");
}

ElitePool build_elite_pool(const Population& pop) {
    if (pop.size() < 3) throw ConfigError("build_elite_pool: population size must be >= 3");

    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pop.members[a].fitness_value() < pop.members[b].fitness_value();
    });

    ElitePool pool;
    const std::size_t dim = pop.members[0].position.size();
    for (std::size_t rank = 0; rank < 3; ++rank) {
        pool.members[rank] = pop.members[order[rank]].position;
    }
    Vec mean(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        mean[j] = (pool.members[0][j] + pool.members[1][j] + pool.members[2][j]) / 3.0;
    }
    pool.members[3] = std::move(mean);
    return pool;
}

Vec perturb_best(const ElitePool& pool, double rho, const SearchSpace& space,
                 RandomSource& rng) {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ContractError("perturb_best: rho outside [0, 1]");
    const Vec& elite = pool.members[rng.uniform_below(pool.members.size())];
    if (elite.size() != space.dim())
        throw ContractError("perturb_best: pool member length does not match space dimension");

    Vec out(elite.size());
    for (std::size_t j = 0; j < elite.size(); ++j) {
        const double c = rng.cauchy();
        const double g = rng.normal();
        out[j] = elite[j] * (rho * c + (1.0 - rho) * g);
    }
    clamp_in_place(out, space);
    return out;
}

CandidateSolution accept_best(const CandidateSolution& candidate,
                              const CandidateSolution& incumbent_best) {
    // Strict improvement keeps the memory of the current best on ties.
    if (compare_fitness(candidate.fitness_value(), incumbent_best.fitness_value()) ==
        FitnessOrder::ABetter)
        return candidate;
    return incumbent_best;
}

}  // namespace qhde
