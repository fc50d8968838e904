#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcop/error.hpp"

namespace arcop {

enum class CopulaFamily {
    independence,
    gaussian,
    student_t,
    frank,
    clayton,
    gumbel,
    plackett,
};

/// Canonical lowercase names: independence, normal, t, frank, clayton,
/// gumbel, plackett ("gaussian"/"student_t" accepted as input aliases).
std::string family_name(CopulaFamily family);
CopulaFamily parse_family(const std::string& name);

enum class FitMethod { tau_inversion, pseudo_mle, fixed };
std::string fit_method_name(FitMethod method);
FitMethod parse_fit_method(const std::string& name);

/// A copula family with its parameter; `theta` is the correlation for the
/// elliptical families. `df` is only meaningful for the t family and is a
/// fixed hyperparameter, never estimated.
struct FittedCopula {
    CopulaFamily family = CopulaFamily::independence;
    double theta = 0.0;
    double df = 25.0;
    FitMethod method = FitMethod::fixed;

    void validate() const;  // throws InvalidParameter when out of domain
    std::string to_json() const;
    static FittedCopula from_json(const std::string& text);
};

struct RankCorrelation {
    double tau = 0.0;
    double rho_s = 0.0;
    double p_tau = 1.0;
    double p_rho = 1.0;
    std::size_t n = 0;
};

/// n x k matrix with entries in (0,1); also the shape of raw copula samples.
struct PseudoSample {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> data;  // row-major

    double operator()(std::size_t i, std::size_t j) const { return data[i * k + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * k + j]; }
    std::vector<double> column(std::size_t j) const;
    static PseudoSample zeros(std::size_t n, std::size_t k);
};

// --- rank statistics ---

/// Kendall's tau via O(n log n) inversion counting; tau-b tie correction
/// applies only when ties exist. p-value from the normal approximation with
/// variance 2(2n+5)/(9n(n-1)).
RankCorrelation kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman's rho: Pearson correlation of midranks, p-value via the t
/// approximation with n-2 degrees of freedom.
RankCorrelation spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// Both statistics in one result.
RankCorrelation rank_correlation(const std::vector<double>& x, const std::vector<double>& y);

/// Column-wise midranks scaled by 1/(n+1).
PseudoSample pseudo_observations(const std::vector<std::vector<double>>& columns);

// --- family evaluations ---

double copula_cdf(const FittedCopula& c, double u, double v);
double copula_density(const FittedCopula& c, double u, double v);

/// Conditional CDF of V given U = u: h(v|u) = dC/du.
double conditional_cdf(const FittedCopula& c, double v, double u_given);
/// Inverse of conditional_cdf in v; closed form where the family has one,
/// bisection otherwise.
double conditional_quantile(const FittedCopula& c, double w, double u_given);

double tau_to_param(CopulaFamily family, double tau);
double param_to_tau(CopulaFamily family, double param);

/// Lower tail dependence lambda_L.
double lower_tail_dependence(const FittedCopula& c);

// --- fitting and sampling ---

/// Fit on bivariate pseudo-observations. tau_inversion maps the sample tau
/// through the family's relation; pseudo_mle runs a 1-D bounded search of
/// the log pseudo-likelihood started from the tau-inversion value.
FittedCopula fit_copula(const PseudoSample& u, CopulaFamily family,
                        FitMethod method = FitMethod::tau_inversion, double t_df = 25.0);

/// n iid pairs with uniform margins and copula c; every family consumes
/// exactly two uniforms per pair (second margin via conditional inversion),
/// so output is a pure function of (c, n, seed).
PseudoSample sample(const FittedCopula& c, std::size_t n, std::uint64_t seed);

}  // namespace arcop
