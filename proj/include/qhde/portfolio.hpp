#pragma once

// Portfolio data ingestion and the financial models: alpha/covariance
// estimation from closing prices, the penalized Sharpe-ratio objective,
// and the classical mean-variance / efficient-frontier utilities.

#include "qhde/core.hpp"

#include <iosfwd>

namespace qhde::portfolio {

/// Malformed or inconsistent price data; messages name row and column.
class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sharpe ratio requested at a point with non-positive portfolio variance.
class UndefinedRatioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Closing prices: T dates (ISO-8601, strictly increasing) x M tickers.
struct PriceMatrix {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    Matrix prices;  ///< prices[t][i] > 0

    std::size_t assets() const { return tickers.size(); }
    std::size_t periods() const { return dates.size(); }

    /// T >= 3, positive prices, increasing dates, consistent shapes.
    void validate() const;
};

/// Header `date,TICKER1,...`; decimal prices; missing cells rejected.
PriceMatrix load_price_csv(std::istream& in);
PriceMatrix load_price_csv_file(const std::string& path);
void write_price_csv(std::ostream& out, const PriceMatrix& prices);

struct PortfolioModel {
    Vec alpha;          ///< expected per-period return per asset
    Matrix q;           ///< per-period return covariance, M x M
    double risk_free = 0.0;
    double beta1 = 1.0;    ///< Sharpe weight (> 0)
    double beta2 = 100.0;  ///< budget equality penalty
    double beta3 = 100.0;  ///< upper-bound (w_i <= 1) penalty
    double beta4 = 100.0;  ///< short-sale (w_i >= 0) penalty

    std::size_t assets() const { return alpha.size(); }

    /// Shape, symmetry (1e-12 relative) and positive semidefiniteness
    /// (eigenvalues above -1e-10, scaled).
    void validate() const;
};

/// Simple per-period returns r_t = (p_t - p_{t-1}) / p_{t-1}; alpha is the
/// sample mean and q the unbiased sample covariance (divisor T - 2 over
/// the T - 1 return rows).
PortfolioModel estimate_model(const PriceMatrix& prices, double risk_free, double beta1,
                              double beta2, double beta3, double beta4);

/// (alpha' w - R) / sqrt(w' Q w); throws UndefinedRatioError when the
/// portfolio variance is not strictly positive.
double sharpe_ratio(const Vec& weights, const PortfolioModel& model);

/// The unconstrained maximize-sense objective
///   F(w) = b1 * Sharpe - b2 (sum w - 1)^2
///        - b3 sum_i max(w_i - 1, 0)(w_i - 1) - b4 sum_i max(-w_i, 0)(-w_i).
/// A non-positive variance replaces the Sharpe term with a large negative
/// sentinel while the penalties still apply.
double penalized_objective(const Vec& weights, const PortfolioModel& model);

/// Budget metric S(E) = sum of weights.
double constraint_sum(const Vec& weights);

/// w' Q w, the mean-variance risk term.
double mean_variance_risk(const Vec& weights, const PortfolioModel& model);

/// omega * w' Q w - (1 - omega) * alpha' w, omega in [0, 1].
double frontier_objective(const Vec& weights, const PortfolioModel& model, double omega);

/// Maximize-sense handle around penalized_objective.
ObjectiveHandle make_objective(const PortfolioModel& model);

/// Conventional no-short-selling search box [0, 1]^M.
SearchSpace default_weight_space(std::size_t assets);

/// Synthetic multivariate-normal daily returns with a random factor
/// correlation structure and a positive mean spread, compounded into a
/// price path. Stands in for proprietary index data.
PriceMatrix synthetic_prices(std::size_t assets, std::size_t periods, RandomSource& rng);

/// Key-value + matrix text export for exact re-runs.
void save_model(std::ostream& out, const PortfolioModel& model);
PortfolioModel load_model(std::istream& in);
void save_model_file(const std::string& path, const PortfolioModel& model);
PortfolioModel load_model_file(const std::string& path);

}  // namespace qhde::portfolio
