#include "qhde/tunneling.hpp"

#include <cmath>

namespace qhde {

void TunnelingParams::validate() const {
    if (!(v0 > 0.0)) throw ConfigError("TunnelingParams: v0 must be positive");
    if (!(gamma >= 0.05 && gamma <= 0.2))
        throw ConfigError("TunnelingParams: gamma must lie in [0.05, 0.2]");
    if (!(delta_floor > 0.0 && delta_floor <= 0.1))
        throw ConfigError("TunnelingParams: delta_floor must lie in (0, 0.1]");
}

double barrier_height(double fit_i, double f_best, double f_max, double f_min, double v0) {
    if (!std::isfinite(fit_i) || !std::isfinite(f_best) || !std::isfinite(f_max) ||
        !std::isfinite(f_min))
        throw ContractError("barrier_height: non-finite input");
    if (f_max < f_min) throw ContractError("barrier_height: f_max below f_min");
    if (f_max == f_min) return 0.0;
    return std::abs(fit_i - f_best) / (f_max - f_min) * v0;
}

double tunneling_probability(double v, double e_k, double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("tunneling_probability: gamma must be positive");
    if (v < 0.0 || e_k < 0.0)
        throw ContractError("tunneling_probability: negative barrier or energy");
    if (v <= e_k) return 1.0;  // free movement below the energy level
    return std::exp(-std::sqrt(v - e_k) / gamma);
}

double energy_level(const Population& pop, double v0) {
    if (pop.members.empty()) throw ContractError("energy_level: empty population");
    // Within one generation the population best doubles as f_best and f_min.
    double f_min = pop.members[0].fitness_value();
    double f_max = f_min;
    for (const auto& member : pop.members) {
        const double f = member.fitness_value();
        f_min = std::min(f_min, f);
        f_max = std::max(f_max, f);
    }
    double sum = 0.0;
    for (const auto& member : pop.members) {
        sum += barrier_height(member.fitness_value(), f_min, f_max, f_min, v0);
    }
    return sum / static_cast<double>(pop.size());
}

Vec tunnel_move(const Vec& x, const Vec& best, std::size_t t, std::size_t t_max,
                const TunnelingParams& params, const SearchSpace& space, RandomSource& rng) {
    if (x.size() != space.dim() || best.size() != space.dim())
        throw ContractError("tunnel_move: position length does not match space dimension");
    if (t > t_max) throw ContractError("tunnel_move: generation beyond t_max");

    const double time_coeff = 1.0 - static_cast<double>(t) / static_cast<double>(t_max);
    Vec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double step = std::abs(best[j] - x[j]) + params.delta_floor * space.range(j);
        out[j] = x[j] + rng.normal() * time_coeff * step;
    }
    clamp_in_place(out, space);
    return out;
}

}  // namespace qhde
