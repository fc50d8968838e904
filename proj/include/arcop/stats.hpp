#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace arcop::stats {

inline constexpr double pi = 3.14159265358979323846;

// --- univariate normal ---

double norm_pdf(double x);
double norm_cdf(double x);
/// Inverse standard normal CDF (Wichura's AS 241, double precision).
double norm_quantile(double p);

// --- gamma / chi-square ---

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
double chi2_cdf(double x, double df);
double chi2_pdf(double x, double df);

// --- beta / Student t ---

/// Regularized incomplete beta I_x(a, b).
double inc_beta(double a, double b, double x);
double t_cdf(double x, double df);
double t_pdf(double x, double df);
double t_quantile(double p, double df);

// --- bivariate ---

/// P(X <= x, Y <= y) for standard bivariate normal with correlation rho.
double bvn_cdf(double x, double y, double rho);
/// P(T1 <= x, T2 <= y) for standard bivariate Student t, integrating the
/// normal case over the chi-square mixing variable.
double bvt_cdf(double x, double y, double rho, double df);

// --- quadrature ---

struct QuadRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points, computed once and cached.
const QuadRule& gauss_legendre(int n);

/// Integrate f over [a, b] with a composite Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 16, int points = 20);

/// Integrate f over (0,1) with tanh-sinh nodes; robust to integrable
/// endpoint singularities. `level` controls node density (~ 40 * 2^level).
double integrate_unit(const std::function<double(double)>& f, int level = 6);

/// Tensor tanh-sinh integration of f over the open unit square.
double integrate_unit_square(const std::function<double(double, double)>& f, int level = 5);

// --- small-sample helpers ---

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // denominator n-1

}  // namespace arcop::stats
