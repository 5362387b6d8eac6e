#pragma once

// Orchestration of the full QHDE generation loop with per-strategy
// toggles, covering baseline DE, the six single/dual-strategy ablation
// variants, and full QHDE.

#include "qhde/core.hpp"
#include "qhde/de.hpp"
#include "qhde/elite.hpp"
#include "qhde/tunneling.hpp"

namespace qhde {

/// The three strategy toggles. All off is baseline DE; all on is QHDE.
struct StrategyFlags {
    bool s1_init = false;    ///< good point set + chaos reverse learning
    bool s2_tunnel = false;  ///< potential-driven quantum tunneling
    bool s3_elite = false;   ///< elite pool + Cauchy-Gaussian perturbation

    bool operator==(const StrategyFlags&) const = default;
};

/// Canonical variant name: DE, QHDE1, QHDE2, QHDE3, QHDE12, QHDE13,
/// QHDE23 or QHDE.
std::string variant_label(const StrategyFlags& flags);
StrategyFlags strategy_flags_for_label(const std::string& label);
const std::vector<std::string>& all_variant_labels();

struct QhdeConfig {
    std::size_t population = 30;
    std::size_t max_generations = 500;
    DeParams de;
    TunnelingParams tunneling;
    PerturbParams perturb;
    StrategyFlags strategies;
    double chaos_mu = 3.99;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    /// Optional sampling region for initialization only (must lie inside
    /// the search space); evolution still uses the full bounds. Used by
    /// trap-escape experiments that seed the population in one basin.
    std::optional<SearchSpace> init_region;

    void validate() const;

    /// Canonical text form of every parameter (basis of the fingerprint).
    std::string canonical_string() const;

    /// FNV-1a hash of canonical_string(), as fixed-width hex.
    std::string fingerprint() const;
};

/// Everything recorded for one seeded replicate.
struct RunRecord {
    std::vector<double> trace;  ///< best-so-far per generation, length t_max + 1 (internal sense)
    Vec best_position;
    double best_fitness = kInfiniteFitness;  ///< internal sense
    double wall_seconds = 0.0;
    std::uint64_t evaluations = 0;  ///< objective calls incl. tunneling and elite extras
    std::string config_fingerprint;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// One full optimization run.
///
/// RNG draw order is frozen so ablation toggles only diverge where an
/// enabled strategy actually draws:
///   1. initialization: with s1, the chaos-seed draw(s) then one logistic
///      step per member; without s1, population * dim uniform draws;
///   2. per generation, per member: donor index draws (r1, r2, r3 by
///      rejection), the forced crossover index, dim crossover uniforms;
///      then with s2 one tunneling-gate uniform and, if the gate fires,
///      dim normal draws (two uniforms each);
///   3. after the member loop, with s3: one pool-index draw, then per
///      dimension one Cauchy draw and one normal draw.
/// Objective evaluations never consume RNG draws.
RunRecord run(const ObjectiveHandle& objective, const SearchSpace& space,
              const QhdeConfig& config);

/// n_runs isolated replicates with stream ids 0..n_runs-1, optionally in
/// parallel (max_threads = 0 means hardware concurrency). Results are
/// identical regardless of thread count.
std::vector<RunRecord> run_replicates(const ObjectiveHandle& objective,
                                      const SearchSpace& space, const QhdeConfig& config,
                                      std::size_t n_runs, std::size_t max_threads = 0);

}  // namespace qhde
