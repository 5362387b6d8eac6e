#include "qhde/init.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qhde {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

double frac(double v) { return v - std::floor(v); }

// Near a logistic fixed point the orbit stalls; keep seeds away from them.
bool near_fixed_point(double g) {
    constexpr double margin = 1e-3;
    for (double fp : {0.25, 0.5, 0.75}) {
        if (std::abs(g - fp) < margin) return true;
    }
    return false;
}

double draw_chaos_seed(RandomSource& rng) {
    double g;
    do {
        g = 0.1 + 0.8 * rng.uniform();
    } while (g <= 0.1 || g >= 0.9 || near_fixed_point(g));
    return g;
}

}  // namespace

std::uint64_t smallest_good_prime(std::size_t s) {
    std::uint64_t p = 2;
    while (!(is_prime(p) && p >= 2 * static_cast<std::uint64_t>(s) + 3)) ++p;
    return p;
}

GoodPointParams GoodPointParams::make(std::size_t n, std::size_t s) {
    if (n == 0 || s == 0) throw ContractError("GoodPointParams: n and s must be positive");
    GoodPointParams params;
    params.n = n;
    params.s = s;
    params.pn = smallest_good_prime(s);
    params.generators.resize(s);
    for (std::size_t i = 1; i <= s; ++i) {
        // 2 cos(2 pi i / pn) may be negative; floor-based frac keeps r in [0, 1).
        const double v = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                        static_cast<double>(params.pn));
        params.generators[i - 1] = frac(v);
    }
    return params;
}

std::vector<Vec> good_point_set(std::size_t n, const SearchSpace& space) {
    space.validate();
    const auto params = GoodPointParams::make(n, space.dim());
    std::vector<Vec> points(n, Vec(space.dim()));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const double unit = frac(params.generators[j] * static_cast<double>(k));
            points[k - 1][j] = space.lower[j] + space.range(j) * unit;
        }
    }
    return points;
}

ChaosState seed_chaos(RandomSource& rng, double mu) {
    if (!(mu > 2.0 && mu < 4.0)) throw ConfigError("chaos: mu must lie in (2, 4)");
    return ChaosState{mu, draw_chaos_seed(rng)};
}

ChaosState logistic_step(ChaosState state, RandomSource& rng) {
    if (!(state.g > 0.0 && state.g < 1.0))
        throw ContractError("logistic_step: chaotic factor outside (0, 1)");
    double next = state.mu * state.g * (1.0 - state.g);
    if (!(next > 0.0 && next < 1.0)) next = draw_chaos_seed(rng);  // degenerate orbit
    state.g = next;
    return state;
}

Vec reverse_learning(const Vec& x, double g, const SearchSpace& space) {
    if (x.size() != space.dim())
        throw ContractError("reverse_learning: position length does not match space dimension");
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = g * space.range(j) - x[j];
    }
    clamp_in_place(out, space);
    return out;
}

Population initialize_population(std::size_t n, const SearchSpace& space,
                                 const ObjectiveHandle& objective, RandomSource& rng,
                                 bool enabled, double chaos_mu) {
    if (n < 2) throw ConfigError("initialize_population: population size must be >= 2");
    space.validate();

    Population pop;
    pop.generation = 0;
    pop.members.reserve(n);

    if (!enabled) {
        for (std::size_t i = 0; i < n; ++i) {
            Vec x(space.dim());
            for (std::size_t j = 0; j < space.dim(); ++j) {
                x[j] = space.lower[j] + space.range(j) * rng.uniform();
            }
            pop.members.emplace_back(std::move(x));
            pop.members.back().fitness = objective.evaluate_internal(pop.members.back().position);
        }
        return pop;
    }

    std::vector<Vec> forward = good_point_set(n, space);
    ChaosState chaos = seed_chaos(rng, chaos_mu);

    std::vector<CandidateSolution> merged;
    merged.reserve(2 * n);
    for (auto& x : forward) merged.emplace_back(std::move(x));
    for (std::size_t i = 0; i < n; ++i) {
        chaos = logistic_step(chaos, rng);
        merged.emplace_back(reverse_learning(merged[i].position, chaos.g, space));
    }
    for (auto& member : merged) {
        member.fitness = objective.evaluate_internal(member.position);
    }

    // Best n of the merged 2n pool; stable sort keeps lower indices on ties.
    std::vector<std::size_t> order(merged.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return merged[a].fitness_value() < merged[b].fitness_value();
    });
    for (std::size_t i = 0; i < n; ++i) {
        pop.members.push_back(std::move(merged[order[i]]));
    }
    return pop;
}

}  // namespace qhde
