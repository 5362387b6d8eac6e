#include "qhde/de.hpp"

namespace qhde {

void DeParams::validate() const {
    if (!(f_weight >= 0.0 && f_weight <= 2.0))
        throw ConfigError("DeParams: mutation factor must lie in [0, 2]");
    if (!(cr >= 0.0 && cr <= 1.0))
        throw ConfigError("DeParams: crossover probability must lie in [0, 1]");
}

Vec mutate_rand1(const Population& pop, std::size_t i, const DeParams& params,
                 const SearchSpace& space, RandomSource& rng) {
    const std::size_t n = pop.size();
    if (n < 4) throw ConfigError("mutate_rand1: population size must be >= 4 for three donors");
    if (i >= n) throw ContractError("mutate_rand1: member index out of range");

    std::size_t r1, r2, r3;
    do {
        r1 = rng.uniform_below(n);
    } while (r1 == i);
    do {
        r2 = rng.uniform_below(n);
    } while (r2 == i || r2 == r1);
    do {
        r3 = rng.uniform_below(n);
    } while (r3 == i || r3 == r1 || r3 == r2);

    const Vec& a = pop.members[r1].position;
    const Vec& b = pop.members[r2].position;
    const Vec& c = pop.members[r3].position;
    Vec mutant(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        mutant[j] = a[j] + params.f_weight * (b[j] - c[j]);
    }
    clamp_in_place(mutant, space);
    return mutant;
}

Vec crossover_binomial(const Vec& target, const Vec& mutant, double cr, RandomSource& rng) {
    if (target.size() != mutant.size())
        throw ContractError("crossover_binomial: target/mutant length mismatch");
    const std::size_t dim = target.size();
    const std::size_t j_rand = rng.uniform_below(dim);
    Vec trial(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        trial[j] = (rng.uniform() < cr || j == j_rand) ? mutant[j] : target[j];
    }
    return trial;
}

CandidateSolution select_greedy(const CandidateSolution& incumbent,
                                const CandidateSolution& trial) {
    const double fi = incumbent.fitness_value();
    const double ft = trial.fitness_value();
    switch (compare_fitness(ft, fi)) {
        case FitnessOrder::ABetter:
        case FitnessOrder::Tie:  // <= per the selection rule
            return trial;
        case FitnessOrder::BBetter:
            return incumbent;
    }
    return incumbent;  // unreachable
}

}  // namespace qhde
