#pragma once

// Experiment harness: multi-problem / multi-variant campaigns with seeded
// replicates, summary statistics, Friedman average ranks, and plot-ready
// artifact files. Wall-clock numbers stay out of the written artifacts so
// a rerun with the same config and seed reproduces them byte for byte.

#include "qhde/benchmarks.hpp"
#include "qhde/core.hpp"
#include "qhde/optimizer.hpp"
#include "qhde/portfolio.hpp"

#include <iosfwd>
#include <map>
#include <variant>

namespace qhde::harness {

/// One campaign problem: a benchmark spec or an estimated portfolio model.
struct CampaignProblem {
    std::string name;
    std::variant<bench::BenchmarkSpec, portfolio::PortfolioModel> definition;

    bool is_portfolio() const {
        return std::holds_alternative<portfolio::PortfolioModel>(definition);
    }
    ObjectiveHandle objective() const;
    SearchSpace space() const;
};

struct Campaign {
    std::vector<CampaignProblem> problems;
    std::vector<std::string> variants;  ///< unique labels from all_variant_labels()
    std::size_t replicates = 30;
    std::uint64_t base_seed = 42;
    std::string out_dir = "qhde-out";
    QhdeConfig base_config;  ///< strategy flags and seed/stream are set per run
    std::size_t threads = 0;  ///< 0 = QHDE_THREADS env var, else hardware concurrency

    void validate() const;
};

/// Final-fitness statistics for one (problem, variant) cell
/// (internal minimization sense).
struct VariantStats {
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double best = 0.0;
    double worst = 0.0;
    double mean_wall_seconds = 0.0;  ///< reported on the console, not serialized
};

/// Portfolio report metrics at the final weights: objective F(E), Sharpe
/// ratio Sr and budget sum S(E), median and mean over replicates.
struct PortfolioMetrics {
    double median_objective = 0.0;
    double mean_objective = 0.0;
    double median_sharpe = 0.0;
    double median_budget = 0.0;
};

struct CellResult {
    std::string problem;
    std::string variant;
    VariantStats stats;
    std::vector<double> final_fitness;  ///< one per replicate, internal sense
    std::optional<PortfolioMetrics> portfolio;
};

struct CampaignResult {
    std::vector<CellResult> cells;  ///< problem-major, then variant order
    Vec friedman_average_ranks;     ///< one per variant, campaign variant order
    std::vector<std::string> files_written;
};

/// Mean/stddev/median/best/worst of one replicate set.
VariantStats compute_stats(const std::vector<double>& final_fitness,
                           const std::vector<double>& wall_seconds);

/// Average Friedman rank per variant: scores is problems x variants with
/// lower = better; per problem ranks 1..V, ties get the average of the
/// positions they span.
Vec friedman_ranks(const Matrix& scores);

/// Deterministic per-run seed: the campaign base seed folded with the
/// problem name, shared by every variant so comparisons are paired.
std::uint64_t problem_seed(std::uint64_t base_seed, const std::string& problem_name);

/// Runs every (problem, variant, replicate), writes one convergence CSV
/// per run plus summary.json, friedman.csv and (when portfolio problems
/// exist) portfolio_metrics.csv under campaign.out_dir.
CampaignResult run_campaign(const Campaign& campaign);

/// QHDE_THREADS cap (0 when unset or unparsable).
std::size_t thread_cap_from_env();

/// Key-value campaign/config text file: `[section]` headers and
/// `key = value` lines; '#' starts a comment.
using ConfigFile = std::vector<std::pair<std::string, std::map<std::string, std::string>>>;

ConfigFile parse_config_file(std::istream& in);
ConfigFile parse_config_file_at(const std::string& path);

/// Section lookup helper (nullptr when absent).
const std::map<std::string, std::string>* find_section(const ConfigFile& file,
                                                       const std::string& name);

/// Applies [algorithm] keys onto a QhdeConfig (missing keys keep defaults).
void apply_algorithm_section(const std::map<std::string, std::string>& section,
                             QhdeConfig& config);

/// Builds a problem from a `[problem.NAME]` section.
CampaignProblem problem_from_section(const std::string& name,
                                     const std::map<std::string, std::string>& section);

}  // namespace qhde::harness
