#include "arcop/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "arcop/rng.hpp"

namespace arcop {

double empirical_copula(const PseudoSample& u, const std::vector<double>& point) {
    if (point.size() != u.k) raise(Errc::length_mismatch, "point dimension mismatch");
    for (double p : point)
        if (!(p >= 0.0 && p <= 1.0))
            raise(Errc::invalid_parameter, "point must lie in the unit cube");
    std::size_t count = 0;
    for (std::size_t i = 0; i < u.n; ++i) {
        bool le = true;
        for (std::size_t j = 0; j < u.k; ++j) {
            if (u(i, j) > point[j]) {
                le = false;
                break;
            }
        }
        if (le) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(u.n);
}

double cvm_statistic(const PseudoSample& u,
                     const std::function<double(double, double)>& hypothesized) {
    if (u.k != 2) raise(Errc::invalid_parameter, "cvm_statistic requires a bivariate sample");
    if (u.n < 2) raise(Errc::insufficient_length, "cvm_statistic requires n >= 2");
    const std::size_t n = u.n;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < n; ++r)
            if (u(r, 0) <= u(i, 0) && u(r, 1) <= u(i, 1)) ++count;
        const double cn = static_cast<double>(count) / static_cast<double>(n);
        const double diff = cn - hypothesized(u(i, 0), u(i, 1));
        s += diff * diff;
    }
    return s;
}

double cvm_statistic(const PseudoSample& u, const FittedCopula& c) {
    return cvm_statistic(u, [&c](double a, double b) { return copula_cdf(c, a, b); });
}

namespace {

// tau-inversion refit with the sample tau clamped into the family domain; a
// bootstrap replicate may land outside it by sampling noise and must still
// produce a statistic.
FittedCopula refit_clamped(const PseudoSample& u, CopulaFamily family, FitMethod method,
                           double t_df) {
    try {
        return fit_copula(u, family, method, t_df);
    } catch (const Error& e) {
        if (e.code() != Errc::family_incompatible) throw;
        double tau = kendall_tau(u.column(0), u.column(1)).tau;
        switch (family) {
            case CopulaFamily::clayton:
            case CopulaFamily::gumbel:
                tau = std::max(tau, 1e-6);
                break;
            case CopulaFamily::frank:
            case CopulaFamily::plackett:
                if (tau == 0.0) tau = 1e-6;
                break;
            default:
                throw;
        }
        return {family, tau_to_param(family, tau), t_df, FitMethod::tau_inversion};
    }
}

PseudoSample re_rank(const PseudoSample& raw) {
    std::vector<std::vector<double>> cols;
    cols.reserve(raw.k);
    for (std::size_t j = 0; j < raw.k; ++j) cols.push_back(raw.column(j));
    return pseudo_observations(cols);
}

}  // namespace

GofResult gof_bootstrap(const PseudoSample& u, CopulaFamily family, int n_boot,
                        std::uint64_t seed, FitMethod refit, double t_df,
                        ExecutionPolicy policy) {
    if (n_boot < 100) raise(Errc::invalid_parameter, "n_boot must be >= 100");
    const FittedCopula fitted = fit_copula(u, family, refit, t_df);
    const double s_n = cvm_statistic(u, fitted);

    std::vector<double> s_star(n_boot, 0.0);
    parallel_for(n_boot, policy, [&](std::int64_t b) {
        const PseudoSample draw = sample(fitted, u.n, derive_seed(seed, b));
        const PseudoSample ranked = re_rank(draw);
        const FittedCopula c_star = refit_clamped(ranked, family, refit, t_df);
        s_star[b] = cvm_statistic(ranked, c_star);
    });

    std::size_t exceed = 0;
    for (double s : s_star)
        if (s >= s_n) ++exceed;

    GofResult out;
    out.family = family;
    out.theta_hat = fitted.theta;
    out.s_n = s_n;
    out.p_value = (1.0 + static_cast<double>(exceed)) / (n_boot + 1.0);
    out.n_bootstrap = n_boot;
    out.seed = seed;
    return out;
}

namespace {

double independence_statistic(const PseudoSample& u) {
    const std::size_t n = u.n, k = u.k;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < n; ++r) {
            bool le = true;
            for (std::size_t j = 0; j < k; ++j) {
                if (u(r, j) > u(i, j)) {
                    le = false;
                    break;
                }
            }
            if (le) ++count;
        }
        const double cn = static_cast<double>(count) / static_cast<double>(n);
        double prod = 1.0;
        for (std::size_t j = 0; j < k; ++j) prod *= u(i, j);
        s += (cn - prod) * (cn - prod);
    }
    return s;
}

}  // namespace

TestResult independence_test_multivariate(const std::vector<std::vector<double>>& data,
                                          int n_perm, std::uint64_t seed,
                                          ExecutionPolicy policy) {
    if (data.size() < 2) raise(Errc::invalid_parameter, "need k >= 2 columns");
    if (n_perm < 100) raise(Errc::invalid_parameter, "n_perm must be >= 100");
    const PseudoSample u = pseudo_observations(data);
    const double t_obs = independence_statistic(u);

    std::vector<double> t_star(n_perm, 0.0);
    parallel_for(n_perm, policy, [&](std::int64_t b) {
        Rng rng(derive_seed(seed, b));
        PseudoSample perm = u;
        // Permute every column beyond the first; margins are unchanged,
        // dependence is destroyed under H0.
        for (std::size_t j = 1; j < u.k; ++j) {
            for (std::size_t i = u.n - 1; i > 0; --i) {
                const std::size_t pick =
                    static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
                std::swap(perm(i, j), perm(std::min(pick, i), j));
            }
        }
        t_star[b] = independence_statistic(perm);
    });

    std::size_t exceed = 0;
    for (double t : t_star)
        if (t >= t_obs) ++exceed;

    TestResult out;
    out.test_name = "multivariate_independence_cvm";
    out.statistic = t_obs;
    out.p_value = (1.0 + static_cast<double>(exceed)) / (n_perm + 1.0);
    out.df_or_n = static_cast<double>(u.n);
    return out;
}

void write_gof_csv(const std::vector<GofResult>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::io_error, "cannot write " + path);
    out << "family,parameter,cvm_statistic,p_value\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n",
                      family_name(row.family).c_str(), row.theta_hat, row.s_n, row.p_value);
        out << buf;
    }
}

}  // namespace arcop
