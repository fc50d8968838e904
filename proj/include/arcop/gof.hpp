#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arcop/copula.hpp"
#include "arcop/diagnostics.hpp"
#include "arcop/parallel.hpp"

namespace arcop {

/// Result of the Cramer-von-Mises blanket test for one family.
struct GofResult {
    CopulaFamily family = CopulaFamily::independence;
    double theta_hat = 0.0;
    double s_n = 0.0;
    double p_value = 1.0;
    int n_bootstrap = 0;
    std::uint64_t seed = 0;
};

/// Empirical copula C_n(point) = (1/n) sum 1{u_i <= point componentwise}.
double empirical_copula(const PseudoSample& u, const std::vector<double>& point);

/// S_n = sum_i (C_n(u_i) - C(u_i))^2 over the sample points, for an arbitrary
/// hypothesized copula function (so an oracle can be injected).
double cvm_statistic(const PseudoSample& u,
                     const std::function<double(double, double)>& hypothesized);
double cvm_statistic(const PseudoSample& u, const FittedCopula& c);

/// Parametric bootstrap p-value: fit, compute S_n, then for each replicate
/// draw n points from the fitted copula, re-rank, refit, recompute.
/// p = (1 + #{S* >= S_n}) / (n_boot + 1). Deterministic given (u, seed).
GofResult gof_bootstrap(const PseudoSample& u, CopulaFamily family, int n_boot,
                        std::uint64_t seed, FitMethod refit = FitMethod::tau_inversion,
                        double t_df = 25.0, ExecutionPolicy policy = default_policy);

/// CvM-type test of the empirical copula against the product copula, with a
/// within-column permutation p-value. Columns are the raw data (pseudo
/// observations are formed internally).
TestResult independence_test_multivariate(const std::vector<std::vector<double>>& data,
                                          int n_perm, std::uint64_t seed,
                                          ExecutionPolicy policy = default_policy);

void write_gof_csv(const std::vector<GofResult>& rows, const std::string& path);

}  // namespace arcop
