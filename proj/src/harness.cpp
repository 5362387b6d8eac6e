#include "qhde/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace qhde::harness {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

double median_of(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != value.size())
        throw ConfigError("config: bad numeric value for '" + key + "': " + value);
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::size_t consumed = 0;
    unsigned long long out = 0;
    try {
        out = std::stoull(value, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != value.size())
        throw ConfigError("config: bad integer value for '" + key + "': " + value);
    return out;
}

}  // namespace

ObjectiveHandle CampaignProblem::objective() const {
    if (is_portfolio())
        return portfolio::make_objective(std::get<portfolio::PortfolioModel>(definition));
    return bench::make_objective(std::get<bench::BenchmarkSpec>(definition));
}

SearchSpace CampaignProblem::space() const {
    if (is_portfolio()) {
        return portfolio::default_weight_space(
            std::get<portfolio::PortfolioModel>(definition).assets());
    }
    return std::get<bench::BenchmarkSpec>(definition).bounds;
}

void Campaign::validate() const {
    if (problems.empty()) throw ConfigError("campaign: no problems");
    if (variants.empty()) throw ConfigError("campaign: no variants");
    if (replicates < 1) throw ConfigError("campaign: replicate count must be >= 1");
    std::set<std::string> seen;
    for (const auto& label : variants) {
        strategy_flags_for_label(label);  // throws on unknown labels
        if (!seen.insert(label).second)
            throw ConfigError("campaign: duplicate variant label " + label);
    }
    std::set<std::string> names;
    for (const auto& problem : problems) {
        if (problem.name.empty()) throw ConfigError("campaign: empty problem name");
        if (!names.insert(problem.name).second)
            throw ConfigError("campaign: duplicate problem name " + problem.name);
    }
    base_config.validate();
}

VariantStats compute_stats(const std::vector<double>& final_fitness,
                           const std::vector<double>& wall_seconds) {
    if (final_fitness.empty()) throw ContractError("compute_stats: empty sample");
    VariantStats stats;
    const double n = static_cast<double>(final_fitness.size());
    stats.mean = std::accumulate(final_fitness.begin(), final_fitness.end(), 0.0) / n;
    if (final_fitness.size() > 1) {
        double acc = 0.0;
        for (double v : final_fitness) acc += (v - stats.mean) * (v - stats.mean);
        stats.stddev = std::sqrt(acc / (n - 1.0));
    }
    stats.median = median_of(final_fitness);
    stats.best = *std::min_element(final_fitness.begin(), final_fitness.end());
    stats.worst = *std::max_element(final_fitness.begin(), final_fitness.end());
    if (!wall_seconds.empty()) {
        stats.mean_wall_seconds =
            std::accumulate(wall_seconds.begin(), wall_seconds.end(), 0.0) /
            static_cast<double>(wall_seconds.size());
    }
    return stats;
}

Vec friedman_ranks(const Matrix& scores) {
    if (scores.empty()) throw ContractError("friedman_ranks: no problems");
    const std::size_t variants = scores[0].size();
    if (variants < 2) throw ContractError("friedman_ranks: need at least 2 variants");

    Vec total(variants, 0.0);
    for (const auto& row : scores) {
        if (row.size() != variants) throw ContractError("friedman_ranks: ragged score matrix");
        for (double v : row) {
            if (std::isnan(v)) throw ContractError("friedman_ranks: NaN score");
        }
        std::vector<std::size_t> order(variants);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
        // Tied scores share the average of the rank positions they occupy.
        std::size_t i = 0;
        while (i < variants) {
            std::size_t j = i;
            while (j + 1 < variants && row[order[j + 1]] == row[order[i]]) ++j;
            const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) total[order[k]] += rank;
            i = j + 1;
        }
    }
    for (double& t : total) t /= static_cast<double>(scores.size());
    return total;
}

std::uint64_t problem_seed(std::uint64_t base_seed, const std::string& problem_name) {
    return base_seed ^ fnv1a(problem_name);
}

std::size_t thread_cap_from_env() {
    const char* raw = std::getenv("QHDE_THREADS");
    if (!raw) return 0;
    char* end = nullptr;
    const unsigned long v = std::strtoul(raw, &end, 10);
    if (end == raw || *end != '\0') return 0;
    return static_cast<std::size_t>(v);
}

CampaignResult run_campaign(const Campaign& campaign) {
    campaign.validate();

    const fs::path out_dir(campaign.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("campaign: cannot create output directory " + campaign.out_dir);

    std::size_t threads = campaign.threads;
    if (threads == 0) threads = thread_cap_from_env();

    CampaignResult result;
    const bool any_portfolio =
        std::any_of(campaign.problems.begin(), campaign.problems.end(),
                    [](const CampaignProblem& p) { return p.is_portfolio(); });

    ordered_json summary;
    summary["schema_version"] = 1;
    summary["base_seed"] = campaign.base_seed;
    summary["replicates"] = campaign.replicates;
    {
        // variant flags and seed/stream are assigned per run
        QhdeConfig normalized = campaign.base_config;
        normalized.strategies = {};
        normalized.seed = 0;
        normalized.stream = 0;
        summary["base_config"] = normalized.canonical_string();
    }
    summary["problems"] = ordered_json::array();
    for (const auto& p : campaign.problems) summary["problems"].push_back(p.name);
    summary["variants"] = campaign.variants;
    summary["results"] = ordered_json::array();

    Matrix median_scores;  // problems x variants, internal sense

    for (const auto& problem : campaign.problems) {
        const ObjectiveHandle objective = problem.objective();
        const SearchSpace space = problem.space();
        const std::uint64_t seed = problem_seed(campaign.base_seed, problem.name);

        Vec problem_medians;
        for (const auto& label : campaign.variants) {
            QhdeConfig config = campaign.base_config;
            config.strategies = strategy_flags_for_label(label);
            config.seed = seed;

            const auto records =
                run_replicates(objective, space, config, campaign.replicates, threads);

            CellResult cell;
            cell.problem = problem.name;
            cell.variant = label;
            std::vector<double> walls;
            for (std::size_t r = 0; r < records.size(); ++r) {
                const auto& record = records[r];
                cell.final_fitness.push_back(record.best_fitness);
                walls.push_back(record.wall_seconds);

                const std::string run_name = problem.name + "__" + label + "__r" +
                                             std::to_string(r) + "_s" +
                                             std::to_string(seed) + ".csv";
                const fs::path run_path = out_dir / run_name;
                std::ofstream csv(run_path);
                if (!csv) throw ConfigError("campaign: cannot write " + run_path.string());
                csv << "generation,best_fitness\n";
                for (std::size_t g = 0; g < record.trace.size(); ++g) {
                    csv << g << ',' << format_double(record.trace[g]) << '\n';
                }
                result.files_written.push_back(run_path.string());
            }
            cell.stats = compute_stats(cell.final_fitness, walls);

            if (problem.is_portfolio()) {
                const auto& model = std::get<portfolio::PortfolioModel>(problem.definition);
                std::vector<double> objectives, sharpes, budgets;
                for (const auto& record : records) {
                    objectives.push_back(objective.to_problem_sense(record.best_fitness));
                    budgets.push_back(portfolio::constraint_sum(record.best_position));
                    try {
                        sharpes.push_back(portfolio::sharpe_ratio(record.best_position, model));
                    } catch (const portfolio::UndefinedRatioError&) {
                        // degenerate weights; leave this replicate out of Sr
                    }
                }
                PortfolioMetrics metrics;
                metrics.median_objective = median_of(objectives);
                metrics.mean_objective =
                    std::accumulate(objectives.begin(), objectives.end(), 0.0) /
                    static_cast<double>(objectives.size());
                metrics.median_sharpe = median_of(sharpes);
                metrics.median_budget = median_of(budgets);
                cell.portfolio = metrics;
            }

            ordered_json cell_json;
            cell_json["problem"] = cell.problem;
            cell_json["variant"] = cell.variant;
            cell_json["final_fitness"] = cell.final_fitness;
            cell_json["mean"] = cell.stats.mean;
            cell_json["stddev"] = cell.stats.stddev;
            cell_json["median"] = cell.stats.median;
            cell_json["best"] = cell.stats.best;
            cell_json["worst"] = cell.stats.worst;
            if (cell.portfolio) {
                cell_json["portfolio"] = {
                    {"median_objective", cell.portfolio->median_objective},
                    {"mean_objective", cell.portfolio->mean_objective},
                    {"median_sharpe", cell.portfolio->median_sharpe},
                    {"median_budget", cell.portfolio->median_budget},
                };
            }
            summary["results"].push_back(std::move(cell_json));

            problem_medians.push_back(cell.stats.median);
            result.cells.push_back(std::move(cell));
        }
        median_scores.push_back(std::move(problem_medians));
    }

    if (campaign.variants.size() >= 2) {
        result.friedman_average_ranks = friedman_ranks(median_scores);
    } else {
        result.friedman_average_ranks.assign(campaign.variants.size(), 1.0);
    }

    ordered_json friedman_json = ordered_json::object();
    for (std::size_t v = 0; v < campaign.variants.size(); ++v) {
        friedman_json[campaign.variants[v]] = result.friedman_average_ranks[v];
    }
    summary["friedman_average_rank"] = std::move(friedman_json);

    const fs::path summary_path = out_dir / "summary.json";
    {
        std::ofstream out(summary_path);
        if (!out) throw ConfigError("campaign: cannot write " + summary_path.string());
        out << summary.dump(2) << '\n';
    }
    result.files_written.push_back(summary_path.string());

    const fs::path ranks_path = out_dir / "friedman.csv";
    {
        std::ofstream out(ranks_path);
        if (!out) throw ConfigError("campaign: cannot write " + ranks_path.string());
        out << "variant,average_rank\n";
        for (std::size_t v = 0; v < campaign.variants.size(); ++v) {
            out << campaign.variants[v] << ','
                << format_double(result.friedman_average_ranks[v]) << '\n';
        }
    }
    result.files_written.push_back(ranks_path.string());

    if (any_portfolio) {
        const fs::path metrics_path = out_dir / "portfolio_metrics.csv";
        std::ofstream out(metrics_path);
        if (!out) throw ConfigError("campaign: cannot write " + metrics_path.string());
        out << "problem,variant,median_objective,mean_objective,median_sharpe,median_budget\n";
        for (const auto& cell : result.cells) {
            if (!cell.portfolio) continue;
            out << cell.problem << ',' << cell.variant << ','
                << format_double(cell.portfolio->median_objective) << ','
                << format_double(cell.portfolio->mean_objective) << ','
                << format_double(cell.portfolio->median_sharpe) << ','
                << format_double(cell.portfolio->median_budget) << '\n';
        }
        result.files_written.push_back(metrics_path.string());
    }

    return result;
}

ConfigFile parse_config_file(std::istream& in) {
    ConfigFile file;
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(line_no) + ": empty section");
            file.emplace_back(section, std::map<std::string, std::string>{});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        if (file.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": key before any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        file.back().second[key] = value;
    }
    return file;
}

ConfigFile parse_config_file_at(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config_file(in);
}

const std::map<std::string, std::string>* find_section(const ConfigFile& file,
                                                       const std::string& name) {
    for (const auto& [section, keys] : file) {
        if (section == name) return &keys;
    }
    return nullptr;
}

void apply_algorithm_section(const std::map<std::string, std::string>& section,
                             QhdeConfig& config) {
    for (const auto& [key, value] : section) {
        if (key == "pop")
            config.population = static_cast<std::size_t>(parse_u64(key, value));
        else if (key == "iters")
            config.max_generations = static_cast<std::size_t>(parse_u64(key, value));
        else if (key == "f")
            config.de.f_weight = parse_double(key, value);
        else if (key == "cr")
            config.de.cr = parse_double(key, value);
        else if (key == "v0")
            config.tunneling.v0 = parse_double(key, value);
        else if (key == "gamma")
            config.tunneling.gamma = parse_double(key, value);
        else if (key == "delta_floor")
            config.tunneling.delta_floor = parse_double(key, value);
        else if (key == "rho")
            config.perturb.rho_override =
                value == "schedule" ? std::nullopt
                                    : std::optional<double>(parse_double(key, value));
        else if (key == "mu")
            config.chaos_mu = parse_double(key, value);
        else
            throw ConfigError("config: unknown [algorithm] key '" + key + "'");
    }
}

CampaignProblem problem_from_section(const std::string& name,
                                     const std::map<std::string, std::string>& section) {
    auto get = [&](const char* key) -> const std::string* {
        const auto it = section.find(key);
        return it == section.end() ? nullptr : &it->second;
    };

    const std::string* type = get("type");
    const bool is_portfolio = type && *type == "portfolio";
    if (type && !is_portfolio && *type != "bench")
        throw ConfigError("config: problem '" + name + "' has unknown type '" + *type + "'");

    CampaignProblem problem;
    problem.name = name;

    if (!is_portfolio) {
        const std::string* function = get("function");
        if (!function)
            throw ConfigError("config: problem '" + name + "' needs a 'function' key");
        const std::string* dim = get("dim");
        if (!dim) throw ConfigError("config: problem '" + name + "' needs a 'dim' key");
        const auto base = bench::base_function_from_string(*function);
        const auto d = static_cast<std::size_t>(parse_u64("dim", *dim));

        if (const std::string* spec_seed = get("spec_seed")) {
            RandomSource rng(parse_u64("spec_seed", *spec_seed), 1);
            problem.definition = bench::make_shifted_rotated(base, d, rng);
        } else {
            problem.definition = bench::BenchmarkSpec::classic(base, d);
        }
        return problem;
    }

    double risk_free = 0.0, beta1 = 1.0, beta2 = 100.0, beta3 = 100.0, beta4 = 100.0;
    if (const std::string* v = get("risk_free")) risk_free = parse_double("risk_free", *v);
    if (const std::string* v = get("beta1")) beta1 = parse_double("beta1", *v);
    if (const std::string* v = get("beta2")) beta2 = parse_double("beta2", *v);
    if (const std::string* v = get("beta3")) beta3 = parse_double("beta3", *v);
    if (const std::string* v = get("beta4")) beta4 = parse_double("beta4", *v);

    portfolio::PriceMatrix prices;
    if (const std::string* path = get("prices")) {
        prices = portfolio::load_price_csv_file(*path);
    } else if (const std::string* assets = get("assets")) {
        std::size_t periods = 252;
        std::uint64_t data_seed = 1;
        if (const std::string* v = get("periods"))
            periods = static_cast<std::size_t>(parse_u64("periods", *v));
        if (const std::string* v = get("data_seed")) data_seed = parse_u64("data_seed", *v);
        RandomSource rng(data_seed, 0);
        prices = portfolio::synthetic_prices(
            static_cast<std::size_t>(parse_u64("assets", *assets)), periods, rng);
    } else {
        throw ConfigError("config: portfolio problem '" + name +
                          "' needs 'prices' or 'assets'");
    }
    problem.definition =
        portfolio::estimate_model(prices, risk_free, beta1, beta2, beta3, beta4);
    return problem;
}

}  // namespace qhde::harness
