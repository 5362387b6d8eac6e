#include "qhde/portfolio.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qhde::portfolio {

namespace {

constexpr double kDegenerateSharpe = -1e9;

std::string cell_name(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
    return out;
}

// Simple Gregorian day increment for synthetic date columns.
struct Date {
    int y, m, d;
};

int days_in_month(int y, int m) {
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return (m == 2 && leap) ? 29 : days[m - 1];
}

Date next_day(Date date) {
    if (++date.d > days_in_month(date.y, date.m)) {
        date.d = 1;
        if (++date.m > 12) {
            date.m = 1;
            ++date.y;
        }
    }
    return date;
}

std::string iso(const Date& date) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.y, date.m, date.d);
    return buf;
}

}  // namespace

void PriceMatrix::validate() const {
    if (tickers.empty()) throw IngestError("price matrix has no assets");
    if (periods() < 3)
        throw IngestError("price matrix needs at least 3 dates (two return observations)");
    if (prices.size() != periods()) throw IngestError("price row count does not match dates");
    for (std::size_t t = 0; t < periods(); ++t) {
        if (!valid_iso_date(dates[t]))
            throw IngestError("row " + std::to_string(t + 2) + ": invalid ISO-8601 date '" +
                              dates[t] + "'");
        if (t > 0 && !(dates[t - 1] < dates[t]))
            throw IngestError("row " + std::to_string(t + 2) + ": dates not strictly increasing");
        if (prices[t].size() != assets())
            throw IngestError("row " + std::to_string(t + 2) + ": wrong number of price cells");
        for (std::size_t i = 0; i < assets(); ++i) {
            if (!(prices[t][i] > 0.0) || !std::isfinite(prices[t][i]))
                throw IngestError(cell_name(t + 2, i + 2) + " (" + tickers[i] +
                                  "): price must be positive");
        }
    }
}

PriceMatrix load_price_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IngestError("empty price CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date")
        throw IngestError("price CSV header must start with 'date' and list tickers");

    PriceMatrix out;
    out.tickers.assign(header.begin() + 1, header.end());
    for (std::size_t i = 0; i < out.tickers.size(); ++i) {
        if (out.tickers[i].empty())
            throw IngestError("row 1, column " + std::to_string(i + 2) + ": empty ticker");
    }

    std::size_t row = 2;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw IngestError("row " + std::to_string(row) + ": expected " +
                              std::to_string(header.size()) + " cells, got " +
                              std::to_string(fields.size()));
        out.dates.push_back(fields[0]);
        Vec prices(out.tickers.size());
        for (std::size_t i = 0; i < out.tickers.size(); ++i) {
            const std::string& cell = fields[i + 1];
            if (cell.empty())
                throw IngestError(cell_name(row, i + 2) + " (" + out.tickers[i] +
                                  "): missing price");
            std::size_t consumed = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &consumed);
            } catch (const std::exception&) {
                consumed = 0;
            }
            if (consumed != cell.size())
                throw IngestError(cell_name(row, i + 2) + " (" + out.tickers[i] +
                                  "): unparsable price '" + cell + "'");
            prices[i] = value;
        }
        out.prices.push_back(std::move(prices));
        ++row;
    }
    out.validate();
    return out;
}

PriceMatrix load_price_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open price CSV: " + path);
    return load_price_csv(in);
}

void write_price_csv(std::ostream& out, const PriceMatrix& prices) {
    out << "date";
    for (const auto& ticker : prices.tickers) out << ',' << ticker;
    out << '\n';
    for (std::size_t t = 0; t < prices.periods(); ++t) {
        out << prices.dates[t];
        for (double p : prices.prices[t]) out << ',' << format_double(p);
        out << '\n';
    }
}

void PortfolioModel::validate() const {
    const std::size_t m = assets();
    if (m == 0) throw ContractError("PortfolioModel: no assets");
    if (q.size() != m) throw ContractError("PortfolioModel: covariance row count mismatch");
    for (const auto& row : q) {
        if (row.size() != m) throw ContractError("PortfolioModel: covariance not square");
    }
    if (!(beta1 > 0.0)) throw ContractError("PortfolioModel: beta1 must be positive");
    for (double b : {beta2, beta3, beta4}) {
        if (!(b >= 0.0)) throw ContractError("PortfolioModel: penalty weights must be >= 0");
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) scale = std::max(scale, std::abs(q[i][j]));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(q[i][j] - q[j][i]) > 1e-12 * std::max(1.0, scale))
                throw ContractError("PortfolioModel: covariance not symmetric");
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(q),
                                                          Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double max_eig = std::abs(solver.eigenvalues().maxCoeff());
    if (min_eig < -1e-10 * std::max(1.0, max_eig))
        throw ContractError("PortfolioModel: covariance not positive semidefinite");
}

PortfolioModel estimate_model(const PriceMatrix& prices, double risk_free, double beta1,
                              double beta2, double beta3, double beta4) {
    prices.validate();
    const std::size_t m = prices.assets();
    const std::size_t periods = prices.periods() - 1;  // return rows

    Matrix returns(periods, Vec(m));
    for (std::size_t t = 0; t < periods; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            returns[t][i] =
                (prices.prices[t + 1][i] - prices.prices[t][i]) / prices.prices[t][i];
        }
    }

    PortfolioModel model;
    model.risk_free = risk_free;
    model.beta1 = beta1;
    model.beta2 = beta2;
    model.beta3 = beta3;
    model.beta4 = beta4;

    model.alpha.assign(m, 0.0);
    for (const auto& row : returns)
        for (std::size_t i = 0; i < m; ++i) model.alpha[i] += row[i];
    for (double& a : model.alpha) a /= static_cast<double>(periods);

    model.q.assign(m, Vec(m, 0.0));
    const double divisor = static_cast<double>(periods - 1);  // = T - 2
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < periods; ++t) {
                acc += (returns[t][i] - model.alpha[i]) * (returns[t][j] - model.alpha[j]);
            }
            model.q[i][j] = model.q[j][i] = acc / divisor;
        }
    }
    model.validate();
    return model;
}

namespace {

double portfolio_variance(const Vec& w, const PortfolioModel& model) {
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) row += model.q[i][j] * w[j];
        var += w[i] * row;
    }
    return var;
}

double excess_return(const Vec& w, const PortfolioModel& model) {
    double ret = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) ret += model.alpha[i] * w[i];
    return ret - model.risk_free;
}

void check_weights(const Vec& w, const PortfolioModel& model, const char* who) {
    if (w.size() != model.assets())
        throw ContractError(std::string(who) + ": weight vector length mismatch");
}

}  // namespace

double sharpe_ratio(const Vec& weights, const PortfolioModel& model) {
    check_weights(weights, model, "sharpe_ratio");
    const double var = portfolio_variance(weights, model);
    if (!(var > 0.0))
        throw UndefinedRatioError("sharpe_ratio: portfolio variance is not positive");
    return excess_return(weights, model) / std::sqrt(var);
}

double penalized_objective(const Vec& weights, const PortfolioModel& model) {
    check_weights(weights, model, "penalized_objective");

    const double var = portfolio_variance(weights, model);
    const double sharpe =
        var > 0.0 ? excess_return(weights, model) / std::sqrt(var) : kDegenerateSharpe;

    const double budget = constraint_sum(weights) - 1.0;
    double upper = 0.0, shorts = 0.0;
    for (double w : weights) {
        if (w > 1.0) upper += (w - 1.0) * (w - 1.0);
        if (w < 0.0) shorts += w * w;
    }
    return model.beta1 * sharpe - model.beta2 * budget * budget - model.beta3 * upper -
           model.beta4 * shorts;
}

double constraint_sum(const Vec& weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    return sum;
}

double mean_variance_risk(const Vec& weights, const PortfolioModel& model) {
    check_weights(weights, model, "mean_variance_risk");
    return portfolio_variance(weights, model);
}

double frontier_objective(const Vec& weights, const PortfolioModel& model, double omega) {
    check_weights(weights, model, "frontier_objective");
    if (!(omega >= 0.0 && omega <= 1.0))
        throw ContractError("frontier_objective: omega outside [0, 1]");
    return omega * portfolio_variance(weights, model) -
           (1.0 - omega) * (excess_return(weights, model) + model.risk_free);
}

ObjectiveHandle make_objective(const PortfolioModel& model) {
    model.validate();
    return ObjectiveHandle([model](const Vec& w) { return penalized_objective(w, model); },
                           Sense::Maximize);
}

SearchSpace default_weight_space(std::size_t assets) {
    return SearchSpace::uniform(assets, 0.0, 1.0);
}

PriceMatrix synthetic_prices(std::size_t assets, std::size_t periods, RandomSource& rng) {
    if (assets < 2) throw ConfigError("synthetic_prices: need at least 2 assets");
    if (periods < 3) throw ConfigError("synthetic_prices: need at least 3 periods");

    const std::size_t m = assets;
    const std::size_t factors = std::max<std::size_t>(1, m / 5);

    // Factor-model correlation: C = B B' + D normalized to unit diagonal.
    Matrix loadings(m, Vec(factors));
    for (auto& row : loadings)
        for (double& b : row) b = 0.6 * rng.normal() / std::sqrt(static_cast<double>(factors));

    Eigen::MatrixXd corr(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < factors; ++k) dot += loadings[i][k] * loadings[j][k];
            corr(i, j) = dot + (i == j ? 1.0 : 0.0);  // unit idiosyncratic variance
        }
    }
    Eigen::VectorXd scale = corr.diagonal().cwiseSqrt();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) corr(i, j) /= scale(i) * scale(j);

    Vec vol(m), mu(m);
    for (std::size_t i = 0; i < m; ++i) {
        vol[i] = 0.008 + 0.017 * rng.uniform();
        mu[i] = 0.0002 + 0.0025 * rng.uniform();
    }
    Eigen::MatrixXd sigma(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) sigma(i, j) = corr(i, j) * vol[i] * vol[j];

    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw ConfigError("synthetic_prices: covariance factorization failed");
    Eigen::MatrixXd chol = llt.matrixL();

    PriceMatrix out;
    out.tickers.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "SYN%03zu", i + 1);
        out.tickers[i] = buf;
    }

    Vec price(m);
    for (double& p : price) p = 20.0 + 180.0 * rng.uniform();

    Date date{2024, 1, 1};
    out.dates.reserve(periods);
    out.prices.reserve(periods);
    out.dates.push_back(iso(date));
    out.prices.push_back(price);
    Eigen::VectorXd z(m);
    for (std::size_t t = 1; t < periods; ++t) {
        for (std::size_t i = 0; i < m; ++i) z(i) = rng.normal();
        Eigen::VectorXd shock = chol * z;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = std::max(mu[i] + shock(i), -0.9);
            price[i] *= 1.0 + r;
        }
        date = next_day(date);
        out.dates.push_back(iso(date));
        out.prices.push_back(price);
    }
    out.validate();
    return out;
}

void save_model(std::ostream& out, const PortfolioModel& model) {
    model.validate();
    out << "qhde-portfolio-model v1\n";
    out << "assets " << model.assets() << '\n';
    out << "risk_free " << format_double(model.risk_free) << '\n';
    out << "penalties " << format_double(model.beta1) << ' ' << format_double(model.beta2)
        << ' ' << format_double(model.beta3) << ' ' << format_double(model.beta4) << '\n';
    out << "alpha\n";
    for (std::size_t i = 0; i < model.assets(); ++i)
        out << format_double(model.alpha[i]) << (i + 1 < model.assets() ? ' ' : '\n');
    out << "q\n";
    for (const auto& row : model.q) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << format_double(row[j]) << (j + 1 < row.size() ? ' ' : '\n');
    }
}

PortfolioModel load_model(std::istream& in) {
    std::string magic;
    std::getline(in, magic);
    if (magic != "qhde-portfolio-model v1")
        throw IngestError("model file: unknown header '" + magic + "'");

    std::string key;
    std::size_t m = 0;
    PortfolioModel model;
    in >> key >> m;
    if (key != "assets" || m == 0) throw IngestError("model file: bad assets line");
    in >> key >> model.risk_free;
    if (key != "risk_free") throw IngestError("model file: bad risk_free line");
    in >> key >> model.beta1 >> model.beta2 >> model.beta3 >> model.beta4;
    if (key != "penalties") throw IngestError("model file: bad penalties line");
    in >> key;
    if (key != "alpha") throw IngestError("model file: missing alpha block");
    model.alpha.resize(m);
    for (double& a : model.alpha) in >> a;
    in >> key;
    if (key != "q") throw IngestError("model file: missing q block");
    model.q.assign(m, Vec(m));
    for (auto& row : model.q)
        for (double& v : row) in >> v;
    if (!in) throw IngestError("model file: truncated");
    model.validate();
    return model;
}

void save_model_file(const std::string& path, const PortfolioModel& model) {
    std::ofstream out(path);
    if (!out) throw IngestError("cannot write model file: " + path);
    save_model(out, model);
}

PortfolioModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open model file: " + path);
    return load_model(in);
}

}  // namespace qhde::portfolio
