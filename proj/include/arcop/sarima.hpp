#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcop/series.hpp"

namespace arcop {

/// Seasonal ARIMA orders (p,d,q)(P,D,Q)_s.
struct SarimaSpec {
    int p = 0, d = 0, q = 0;
    int P = 0, D = 0, Q = 0;
    int s = 1;

    int n_params() const { return p + q + P + Q; }
    int ar_span() const { return p + P * s; }   // order of phi(L)Phi(L^s)
    int ma_span() const { return q + Q * s; }   // order of theta(L)Theta(L^s)
    DiffSpec diff() const { return {d, D, s}; }
    std::string str() const;
    bool operator==(const SarimaSpec&) const = default;
};

/// Parse "(p,d,q)" or "(p,d,q)(P,D,Q)[s]".
SarimaSpec parse_sarima_spec(const std::string& text);

/// Coefficients of a SARIMA model in AR, MA, SAR, SMA order; the recursion
/// uses theta(L) = 1 + theta_1 L + ... (positive MA sign convention).
struct SarimaParams {
    std::vector<double> ar, ma, sar, sma;

    std::vector<double> flat() const;
    static SarimaParams from_flat(const SarimaSpec& spec, const std::vector<double>& beta);
};

struct CoefficientRow {
    std::string name;  // e.g. "ar1", "sma11"
    double coefficient = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 0.0;
};

struct SarimaFit {
    SarimaSpec spec;
    SarimaParams params;
    std::vector<double> std_errors;  // aligned with params.flat()
    std::vector<double> t_values;
    std::vector<double> p_values;
    double sigma2 = 0.0;      // innovation variance, css / n_used
    double objective = 0.0;   // conditional sum of squares at the optimum
    double mu = 0.0;          // mean term; estimated only when d + D = 0
    Series residuals;         // innovations aligned to the differenced series
    Series train;             // the modeled (e.g. log) training series
    bool converged = false;
    int evaluations = 0;
    double min_ar_root_modulus = 0.0;  // 0 when no AR terms
    double min_ma_root_modulus = 0.0;
    bool near_nonstationary = false;   // an AR root modulus <= 1.001
    bool near_noninvertible = false;   // an MA root modulus <= 1.001

    std::string to_json() const;
    static SarimaFit from_json(const std::string& text);
};

/// Thrown when the optimizer exhausts its budget without meeting the
/// objective tolerance; the best fit found so far rides along.
class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& message, SarimaFit best_fit)
        : Error(Errc::no_convergence, message), best(std::move(best_fit)) {}
    SarimaFit best;
};

/// Estimate by minimizing the conditional sum of squared innovations
/// (innovations before the conditioning window set to zero). Standard errors
/// come from the numerically differentiated Hessian of the objective.
/// A mean term is included for undifferenced models by default (models with
/// d + D >= 1 never carry one).
SarimaFit fit_css(const Series& s, const SarimaSpec& spec,
                  std::optional<bool> include_mean = std::nullopt);

/// Minimum-mean-square-error point forecast on the modeled scale: the ARIMA
/// difference-equation recursion with future innovations set to zero.
std::vector<double> forecast_point(const SarimaFit& fit, int horizon);

/// Run the fitted recursion on the modeled scale. `initial` must hold
/// d + D*s + p + P*s leading level values; `pre_innovations` (optional, at
/// most q + Q*s values) are the innovations for the tail of the initial
/// block. Returns initial values followed by the driven continuation.
Series simulate(const SarimaFit& fit, const std::vector<double>& innovations,
                const std::vector<double>& initial,
                const std::vector<double>& pre_innovations = {});

/// Continue from the end of the training sample (its levels and stored
/// residuals form the state), driven by the given innovations. With zero
/// innovations this is exactly forecast_point.
std::vector<double> continue_path(const SarimaFit& fit, const std::vector<double>& innovations);

/// One-step-ahead innovations implied by observed values following the
/// training sample (used when validating against a realized test window).
std::vector<double> realized_innovations(const SarimaFit& fit,
                                         const std::vector<double>& future_values);

/// Drive a SARIMA recursion from known parameters (no fit): used by tests
/// and the demo data generator. `initial` as in simulate(); the returned
/// path is the initial block followed by the driven values.
std::vector<double> simulate_process(const SarimaSpec& spec, const SarimaParams& params,
                                     const std::vector<double>& innovations,
                                     const std::vector<double>& initial,
                                     const std::vector<double>& pre_innovations = {});

std::vector<CoefficientRow> coefficient_table(const SarimaFit& fit);
void write_coefficient_csv(const std::vector<CoefficientRow>& rows, const std::string& path);
std::string coefficient_table_json(const std::vector<CoefficientRow>& rows);

/// Smallest root modulus of 1 - c_1 z - ... (AR side) or 1 + c_1 z + ...
/// (MA side); infinity for an empty polynomial.
double min_root_modulus(const std::vector<double>& coeffs, bool ma_sign);

}  // namespace arcop
