#include "qhde/optimizer.hpp"

#include "qhde/init.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

namespace qhde {

namespace {

const std::vector<std::string> kVariantLabels = {
    "DE", "QHDE1", "QHDE2", "QHDE3", "QHDE12", "QHDE13", "QHDE23", "QHDE",
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Per-generation tunneling statistics. Members whose fitness is the
// +inf failure sentinel sit at the top of the barrier scale.
struct TunnelStats {
    std::vector<double> barrier;
    double e_k = 0.0;
    bool usable = false;
};

TunnelStats compute_tunnel_stats(const Population& pop, double v0) {
    TunnelStats stats;
    double f_min = kInfiniteFitness;
    double f_max = -kInfiniteFitness;
    for (const auto& member : pop.members) {
        const double f = member.fitness_value();
        if (std::isfinite(f)) {
            f_min = std::min(f_min, f);
            f_max = std::max(f_max, f);
        }
    }
    if (!std::isfinite(f_min)) return stats;  // nothing finite to anchor on

    stats.barrier.reserve(pop.size());
    double sum = 0.0;
    for (const auto& member : pop.members) {
        const double f = member.fitness_value();
        const double v = std::isfinite(f) ? barrier_height(f, f_min, f_max, f_min, v0)
                                          : (f_max > f_min ? v0 : 0.0);
        stats.barrier.push_back(v);
        sum += v;
    }
    stats.e_k = sum / static_cast<double>(pop.size());
    stats.usable = true;
    return stats;
}

}  // namespace

std::string variant_label(const StrategyFlags& flags) {
    std::string digits;
    if (flags.s1_init) digits += '1';
    if (flags.s2_tunnel) digits += '2';
    if (flags.s3_elite) digits += '3';
    if (digits.empty()) return "DE";
    if (digits.size() == 3) return "QHDE";
    return "QHDE" + digits;
}

StrategyFlags strategy_flags_for_label(const std::string& label) {
    if (label == "DE") return {};
    if (label == "QHDE") return {true, true, true};
    if (label.rfind("QHDE", 0) == 0 && label.size() > 4) {
        StrategyFlags flags;
        for (std::size_t i = 4; i < label.size(); ++i) {
            switch (label[i]) {
                case '1': flags.s1_init = true; break;
                case '2': flags.s2_tunnel = true; break;
                case '3': flags.s3_elite = true; break;
                default: throw ConfigError("unknown variant label: " + label);
            }
        }
        if (variant_label(flags) == label) return flags;
    }
    throw ConfigError("unknown variant label: " + label);
}

const std::vector<std::string>& all_variant_labels() { return kVariantLabels; }

void QhdeConfig::validate() const {
    if (population < 4)
        throw ConfigError("QhdeConfig: population must be >= 4 (rand/1 needs three donors)");
    if (max_generations < 1) throw ConfigError("QhdeConfig: max_generations must be >= 1");
    if (!(chaos_mu > 2.0 && chaos_mu < 4.0))
        throw ConfigError("QhdeConfig: chaos_mu must lie in (2, 4)");
    de.validate();
    tunneling.validate();
    perturb.validate();
    if (init_region) init_region->validate();
}

std::string QhdeConfig::canonical_string() const {
    std::string s;
    s += "pop=" + std::to_string(population);
    s += ";tmax=" + std::to_string(max_generations);
    s += ";f=" + format_double(de.f_weight);
    s += ";cr=" + format_double(de.cr);
    s += ";v0=" + format_double(tunneling.v0);
    s += ";gamma=" + format_double(tunneling.gamma);
    s += ";floor=" + format_double(tunneling.delta_floor);
    s += ";rho=" + (perturb.rho_override ? format_double(*perturb.rho_override)
                                         : std::string("schedule"));
    s += ";mu=" + format_double(chaos_mu);
    s += ";variant=" + variant_label(strategies);
    s += ";seed=" + std::to_string(seed);
    s += ";stream=" + std::to_string(stream);
    if (init_region) {
        s += ";init=";
        for (std::size_t j = 0; j < init_region->dim(); ++j) {
            s += format_double(init_region->lower[j]) + ":" +
                 format_double(init_region->upper[j]) + ",";
        }
    }
    return s;
}

std::string QhdeConfig::fingerprint() const {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : canonical_string()) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

RunRecord run(const ObjectiveHandle& objective, const SearchSpace& space,
              const QhdeConfig& config) {
    config.validate();
    space.validate();
    if (config.init_region) {
        if (config.init_region->dim() != space.dim())
            throw ConfigError("QhdeConfig: init_region dimension mismatch");
        for (std::size_t j = 0; j < space.dim(); ++j) {
            if (config.init_region->lower[j] < space.lower[j] ||
                config.init_region->upper[j] > space.upper[j])
                throw ConfigError("QhdeConfig: init_region must lie inside the search space");
        }
    }

    const auto t_start = std::chrono::steady_clock::now();

    RunRecord record;
    record.seed = config.seed;
    record.stream = config.stream;
    record.config_fingerprint = config.fingerprint();
    record.trace.reserve(config.max_generations + 1);

    std::uint64_t evals = 0;
    const ObjectiveHandle counting(
        [&objective, &evals](const Vec& x) {
            ++evals;
            return objective.evaluate_raw(x);
        },
        objective.sense());

    RandomSource rng(config.seed, config.stream);
    const SearchSpace& init_space = config.init_region ? *config.init_region : space;

    Population pop = initialize_population(config.population, init_space, counting,
                                           rng, config.strategies.s1_init, config.chaos_mu);

    CandidateSolution best = pop.members[pop.best_index()];
    record.trace.push_back(best.fitness_value());

    const std::size_t n = config.population;
    const std::size_t t_max = config.max_generations;

    for (std::size_t t = 1; t <= t_max; ++t) {
        TunnelStats tunnel;
        std::size_t anchor = 0;
        if (config.strategies.s2_tunnel) {
            tunnel = compute_tunnel_stats(pop, config.tunneling.v0);
            anchor = pop.best_index();
        }

        std::vector<CandidateSolution> next;
        next.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vec mutant = mutate_rand1(pop, i, config.de, space, rng);
            CandidateSolution trial(
                crossover_binomial(pop.members[i].position, mutant, config.de.cr, rng));

            if (config.strategies.s2_tunnel && tunnel.usable) {
                const double p_t = tunneling_probability(tunnel.barrier[i], tunnel.e_k,
                                                         config.tunneling.gamma);
                if (rng.uniform() < p_t) {
                    CandidateSolution jumped(tunnel_move(pop.members[i].position,
                                                         pop.members[anchor].position, t,
                                                         t_max, config.tunneling, space, rng));
                    jumped.fitness = counting.evaluate_internal(jumped.position);
                    trial.fitness = counting.evaluate_internal(trial.position);
                    if (compare_fitness(jumped.fitness_value(), trial.fitness_value()) ==
                        FitnessOrder::ABetter)
                        trial = std::move(jumped);
                }
            }
            if (!trial.fitness) trial.fitness = counting.evaluate_internal(trial.position);

            next.push_back(select_greedy(pop.members[i], trial));
        }
        pop.members = std::move(next);
        pop.generation = t;

        best = accept_best(pop.members[pop.best_index()], best);

        if (config.strategies.s3_elite) {
            const ElitePool pool = build_elite_pool(pop);
            const double rho = config.perturb.rho_at(t, t_max);
            CandidateSolution candidate(perturb_best(pool, rho, space, rng));
            candidate.fitness = counting.evaluate_internal(candidate.position);
            best = accept_best(candidate, best);
        }

        record.trace.push_back(best.fitness_value());
    }

    record.best_position = best.position;
    record.best_fitness = best.fitness_value();
    record.evaluations = evals;
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return record;
}

std::vector<RunRecord> run_replicates(const ObjectiveHandle& objective,
                                      const SearchSpace& space, const QhdeConfig& config,
                                      std::size_t n_runs, std::size_t max_threads) {
    if (n_runs < 1) throw ConfigError("run_replicates: n_runs must be >= 1");

    std::size_t threads = max_threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_runs);

    std::vector<RunRecord> records(n_runs);
    if (threads <= 1) {
        for (std::size_t r = 0; r < n_runs; ++r) {
            QhdeConfig replicate = config;
            replicate.stream = r;
            records[r] = run(objective, space, replicate);
        }
        return records;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t r = cursor.fetch_add(1);
                if (r >= n_runs) return;
                try {
                    QhdeConfig replicate = config;
                    replicate.stream = r;
                    records[r] = run(objective, space, replicate);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
    return records;
}

}  // namespace qhde
