#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arcop/copula.hpp"
#include "arcop/parallel.hpp"
#include "arcop/sarima.hpp"

namespace arcop {

/// Two marginal SARIMA fits coupled through a copula on their residuals,
/// with Gaussian residual margins scaled by the observed residual sigmas.
struct CoupledModel {
    SarimaFit target_fit;
    SarimaFit driver_fit;
    FittedCopula copula;
    double sigma_target = 0.0;
    double sigma_driver = 0.0;
    std::size_t n_overlap = 0;
};

/// Per-horizon Monte Carlo sample of the forecast variable on the modeled
/// (e.g. log) scale.
struct ForecastDistribution {
    int horizon_months = 0;
    std::size_t n_sims = 0;
    YearMonth origin;                          // last training month
    std::vector<std::vector<double>> samples;  // [horizon][sim]

    YearMonth month_at(int h) const { return origin.plus(h + 1); }  // h is 0-based
};

struct ValidationReport {
    std::string model_name;
    double mse = 0.0;
    int horizon = 0;
    std::vector<YearMonth> months;
    std::vector<double> predicted;
    std::vector<double> actual;
};

/// Month-aligned residual vectors of several fits (common overlap window).
std::vector<std::vector<double>> aligned_residuals(const std::vector<const SarimaFit*>& fits,
                                                   std::size_t min_overlap = 2);

/// Align the two fits' residuals by calendar month, fit the copula on their
/// pseudo-observations, and record the residual scales.
CoupledModel couple(const SarimaFit& target, const SarimaFit& driver, CopulaFamily family,
                    FitMethod method = FitMethod::tau_inversion, double t_df = 25.0);

/// Monte Carlo predictive sample: per simulation, draw `horizon` copula
/// pairs, map the target margin through sigma * Phi^{-1}(u), and drive the
/// target recursion. No future driver information is used.
ForecastDistribution forecast_joint(const CoupledModel& m, int horizon, std::size_t n_sims,
                                    std::uint64_t seed,
                                    ExecutionPolicy policy = default_policy);

/// Conditional variant used in cross-validation: the driver's realized
/// innovations over the test window are known, so the target margin is drawn
/// from the copula conditional on them.
ForecastDistribution forecast_joint_conditional(const CoupledModel& m,
                                                const std::vector<double>& driver_innovations,
                                                std::size_t n_sims, std::uint64_t seed,
                                                ExecutionPolicy policy = default_policy);

/// Joint innovation pairs (target, driver) as drawn by forecast_joint; used
/// to examine tail co-movement of the coupled residuals.
std::vector<std::pair<double, double>> sample_innovation_pairs(const CoupledModel& m,
                                                               std::size_t n,
                                                               std::uint64_t seed);

enum class PointEstimator { median, mean };

std::vector<double> point_forecast(const ForecastDistribution& d,
                                   PointEstimator estimator = PointEstimator::median);

/// Equal-tailed empirical interval per horizon.
std::vector<std::pair<double, double>> prediction_interval(const ForecastDistribution& d,
                                                           double level);

/// Empirical quantile (linear interpolation between order statistics).
double sample_quantile(std::vector<double> sorted_or_not, double q);

std::pair<Series, Series> split_train_test(const Series& s, YearMonth cutoff);

double mse(const std::vector<double>& actual, const std::vector<double>& predicted);

/// Histogram of one horizon's sample, for density plots: 100 equal bins.
struct Histogram {
    std::vector<double> edges;   // size bins+1
    std::vector<std::size_t> counts;
};
Histogram histogram(const std::vector<double>& sample, int bins = 100);

std::string validation_report_json(const std::vector<ValidationReport>& reports);

}  // namespace arcop
