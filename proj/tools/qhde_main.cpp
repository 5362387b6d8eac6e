// Experiment CLI: benchmark campaigns, ablation sweeps, portfolio
// selection runs and synthetic price-data generation.
//
// Subcommands:
//   bench       benchmark campaign (desk suite or [problem.*] config sections)
//   ablate      bench campaign expanded over all eight strategy variants
//   portfolio   portfolio campaign from a price CSV or synthetic data
//   synth-data  write a synthetic closing-price CSV
//
// Every flag has a config-file equivalent; flags override file values.

#include <CLI11.hpp>

#include "qhde/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace qhde;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::size_t> pop;
    std::optional<std::size_t> iters;
    std::optional<std::string> out;
    std::vector<std::string> variants;
    std::optional<std::size_t> threads;

    std::optional<double> f, cr, v0, gamma, delta_floor, mu;
    std::optional<std::string> rho;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "campaign config file");
    cmd->add_option("--seed", opt.seed, "base seed");
    cmd->add_option("--runs", opt.runs, "replicates per (problem, variant)");
    cmd->add_option("--pop", opt.pop, "population size");
    cmd->add_option("--iters", opt.iters, "generations per run");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--variant", opt.variants,
                    "variant label (repeatable): DE, QHDE1..QHDE23, QHDE");
    cmd->add_option("--threads", opt.threads, "replicate concurrency cap");
    cmd->add_option("--f", opt.f, "DE mutation factor");
    cmd->add_option("--cr", opt.cr, "DE crossover probability");
    cmd->add_option("--v0", opt.v0, "baseline barrier height");
    cmd->add_option("--gamma", opt.gamma, "tunneling adjustment coefficient");
    cmd->add_option("--delta-floor", opt.delta_floor, "tunneling step floor fraction");
    cmd->add_option("--rho", opt.rho, "perturbation mix: 'schedule' or a constant");
    cmd->add_option("--mu", opt.mu, "logistic chaos coefficient");
}

// Campaign assembly order: subcommand defaults, then config file, then flags.
void apply_config_file(harness::Campaign& campaign, const std::string& path,
                       std::vector<harness::CampaignProblem>& problems) {
    const harness::ConfigFile file = harness::parse_config_file_at(path);

    if (const auto* section = harness::find_section(file, "campaign")) {
        for (const auto& [key, value] : *section) {
            if (key == "runs")
                campaign.replicates = std::stoull(value);
            else if (key == "seed")
                campaign.base_seed = std::stoull(value);
            else if (key == "out")
                campaign.out_dir = value;
            else if (key == "threads")
                campaign.threads = std::stoull(value);
            else if (key == "variants") {
                campaign.variants.clear();
                std::stringstream ss(value);
                std::string label;
                while (ss >> label) campaign.variants.push_back(label);
            } else if (key != "kind") {
                throw ConfigError("config: unknown [campaign] key '" + key + "'");
            }
        }
    }
    if (const auto* section = harness::find_section(file, "algorithm")) {
        harness::apply_algorithm_section(*section, campaign.base_config);
    }
    for (const auto& [section_name, keys] : file) {
        if (section_name.rfind("problem.", 0) == 0) {
            problems.push_back(
                harness::problem_from_section(section_name.substr(8), keys));
        }
    }
}

void apply_common_flags(harness::Campaign& campaign, const CommonOptions& opt) {
    if (opt.seed) campaign.base_seed = *opt.seed;
    if (opt.runs) campaign.replicates = *opt.runs;
    if (opt.out) campaign.out_dir = *opt.out;
    if (!opt.variants.empty()) campaign.variants = opt.variants;
    if (opt.threads) campaign.threads = *opt.threads;
    if (opt.pop) campaign.base_config.population = *opt.pop;
    if (opt.iters) campaign.base_config.max_generations = *opt.iters;
    if (opt.f) campaign.base_config.de.f_weight = *opt.f;
    if (opt.cr) campaign.base_config.de.cr = *opt.cr;
    if (opt.v0) campaign.base_config.tunneling.v0 = *opt.v0;
    if (opt.gamma) campaign.base_config.tunneling.gamma = *opt.gamma;
    if (opt.delta_floor) campaign.base_config.tunneling.delta_floor = *opt.delta_floor;
    if (opt.mu) campaign.base_config.chaos_mu = *opt.mu;
    if (opt.rho) {
        campaign.base_config.perturb.rho_override =
            *opt.rho == "schedule" ? std::nullopt
                                   : std::optional<double>(std::stod(*opt.rho));
    }
}

void report(const harness::Campaign& campaign, const harness::CampaignResult& result) {
    std::printf("%-24s %-8s %14s %14s %14s %10s\n", "problem", "variant", "median", "mean",
                "best", "wall[s]");
    for (const auto& cell : result.cells) {
        std::printf("%-24s %-8s %14.6g %14.6g %14.6g %10.3f\n", cell.problem.c_str(),
                    cell.variant.c_str(), cell.stats.median, cell.stats.mean,
                    cell.stats.best, cell.stats.mean_wall_seconds);
    }
    std::printf("\nFriedman average ranks (lower is better):\n");
    for (std::size_t v = 0; v < campaign.variants.size(); ++v) {
        std::printf("  %-8s %.4f\n", campaign.variants[v].c_str(),
                    result.friedman_average_ranks[v]);
    }
    for (const auto& cell : result.cells) {
        if (!cell.portfolio) continue;
        std::printf("portfolio %-20s %-8s F(E)=%.6g Sr=%.6g S(E)=%.6g\n",
                    cell.problem.c_str(), cell.variant.c_str(),
                    cell.portfolio->median_objective, cell.portfolio->median_sharpe,
                    cell.portfolio->median_budget);
    }
    std::printf("\nwrote %zu files under %s\n", result.files_written.size(),
                campaign.out_dir.c_str());
}

int run_bench(const CommonOptions& opt, bool ablate, std::size_t dim,
              std::optional<std::uint64_t> suite_seed) {
    harness::Campaign campaign;
    campaign.variants = {"DE", "QHDE"};
    campaign.base_config.population = 30;
    campaign.base_config.max_generations = 500;
    campaign.base_config.de = DeParams{0.5, 0.1};  // reference QHDE operator settings

    std::vector<harness::CampaignProblem> file_problems;
    if (!opt.config_path.empty())
        apply_config_file(campaign, opt.config_path, file_problems);
    apply_common_flags(campaign, opt);
    if (ablate) campaign.variants = all_variant_labels();

    if (!file_problems.empty()) {
        campaign.problems = std::move(file_problems);
    } else {
        const std::uint64_t spec_seed = suite_seed.value_or(campaign.base_seed);
        for (auto& spec : bench::desk_suite(dim, spec_seed)) {
            harness::CampaignProblem problem;
            problem.name = bench::to_string(spec.base) + "_d" + std::to_string(spec.dim);
            problem.definition = std::move(spec);
            campaign.problems.push_back(std::move(problem));
        }
    }

    const harness::CampaignResult result = harness::run_campaign(campaign);
    report(campaign, result);
    return 0;
}

int run_portfolio(const CommonOptions& opt, const std::string& prices_path,
                  std::optional<std::size_t> assets, std::size_t periods,
                  std::uint64_t data_seed, double risk_free, double beta1, double beta2,
                  double beta3, double beta4) {
    harness::Campaign campaign;
    campaign.variants = {"DE", "QHDE"};
    campaign.base_config.population = 50;
    campaign.base_config.max_generations = 100;
    campaign.base_config.de = DeParams{0.5, 0.1};

    std::vector<harness::CampaignProblem> file_problems;
    if (!opt.config_path.empty())
        apply_config_file(campaign, opt.config_path, file_problems);
    apply_common_flags(campaign, opt);
    campaign.problems = std::move(file_problems);

    if (!prices_path.empty() || assets) {
        portfolio::PriceMatrix prices;
        std::string name;
        if (!prices_path.empty()) {
            prices = portfolio::load_price_csv_file(prices_path);
            name = "prices_m" + std::to_string(prices.assets());
        } else {
            RandomSource rng(data_seed, 0);
            prices = portfolio::synthetic_prices(*assets, periods, rng);
            name = "synth_m" + std::to_string(*assets);
        }
        harness::CampaignProblem problem;
        problem.name = name;
        problem.definition =
            portfolio::estimate_model(prices, risk_free, beta1, beta2, beta3, beta4);
        campaign.problems.push_back(std::move(problem));
    }
    if (campaign.problems.empty())
        throw ConfigError("portfolio: provide --prices, --assets or config problems");

    const harness::CampaignResult result = harness::run_campaign(campaign);
    report(campaign, result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QHDE: quantum hybrid differential evolution experiment harness"};
    app.require_subcommand(1);

    CommonOptions bench_opt, ablate_opt, portfolio_opt;

    auto* bench_cmd = app.add_subcommand("bench", "benchmark campaign on the desk suite");
    std::size_t bench_dim = 10;
    std::optional<std::uint64_t> bench_suite_seed;
    add_common_options(bench_cmd, bench_opt);
    bench_cmd->add_option("--dim", bench_dim, "benchmark dimension");
    bench_cmd->add_option("--suite-seed", bench_suite_seed,
                          "shift/rotation seed (default: base seed)");

    auto* ablate_cmd =
        app.add_subcommand("ablate", "benchmark campaign over all eight variants");
    std::size_t ablate_dim = 10;
    std::optional<std::uint64_t> ablate_suite_seed;
    add_common_options(ablate_cmd, ablate_opt);
    ablate_cmd->add_option("--dim", ablate_dim, "benchmark dimension");
    ablate_cmd->add_option("--suite-seed", ablate_suite_seed,
                           "shift/rotation seed (default: base seed)");

    auto* portfolio_cmd =
        app.add_subcommand("portfolio", "penalized Sharpe-ratio portfolio campaign");
    std::string prices_path;
    std::optional<std::size_t> assets;
    std::size_t periods = 252;
    std::uint64_t data_seed = 1;
    double risk_free = 0.0, beta1 = 1.0, beta2 = 100.0, beta3 = 100.0, beta4 = 100.0;
    add_common_options(portfolio_cmd, portfolio_opt);
    portfolio_cmd->add_option("--prices", prices_path, "closing-price CSV");
    portfolio_cmd->add_option("--assets", assets, "synthetic asset count");
    portfolio_cmd->add_option("--periods", periods, "synthetic trading days");
    portfolio_cmd->add_option("--data-seed", data_seed, "synthetic data seed");
    portfolio_cmd->add_option("--risk-free", risk_free, "per-period risk-free rate");
    portfolio_cmd->add_option("--beta1", beta1, "Sharpe weight");
    portfolio_cmd->add_option("--beta2", beta2, "budget penalty");
    portfolio_cmd->add_option("--beta3", beta3, "upper-bound penalty");
    portfolio_cmd->add_option("--beta4", beta4, "short-sale penalty");

    auto* synth_cmd = app.add_subcommand("synth-data", "emit a synthetic price CSV");
    std::size_t synth_assets = 20, synth_periods = 252;
    std::uint64_t synth_seed = 1;
    std::string synth_out = "prices.csv";
    synth_cmd->add_option("--assets", synth_assets, "asset count");
    synth_cmd->add_option("--periods", synth_periods, "trading days");
    synth_cmd->add_option("--data-seed", synth_seed, "generator seed");
    synth_cmd->add_option("--out", synth_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench_cmd->parsed())
            return run_bench(bench_opt, false, bench_dim, bench_suite_seed);
        if (ablate_cmd->parsed())
            return run_bench(ablate_opt, true, ablate_dim, ablate_suite_seed);
        if (portfolio_cmd->parsed())
            return run_portfolio(portfolio_opt, prices_path, assets, periods, data_seed,
                                 risk_free, beta1, beta2, beta3, beta4);
        if (synth_cmd->parsed()) {
            RandomSource rng(synth_seed, 0);
            const auto prices =
                portfolio::synthetic_prices(synth_assets, synth_periods, rng);
            std::ofstream out(synth_out);
            if (!out) throw ConfigError("cannot write " + synth_out);
            portfolio::write_price_csv(out, prices);
            std::printf("wrote %zu x %zu prices to %s\n", prices.periods(),
                        prices.assets(), synth_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
