#include "arcop/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "arcop/stats.hpp"

#include <nlohmann/json.hpp>

namespace arcop {

std::string TestResult::to_json() const {
    nlohmann::json j;
    j["test_name"] = test_name;
    j["statistic"] = statistic;
    j["p_value"] = p_value;
    j["df_or_n"] = df_or_n;
    return j.dump(2);
}

void Correlogram::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) raise(Errc::io_error, "cannot write " + path);
    out << "lag,value,ci\n";
    char buf[80];
    for (std::size_t k = 0; k < values.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", k + 1, values[k], ci_bound);
        out << buf;
    }
}

namespace {

// r_k for k = 0..max_lag; r_0 = 1. Throws on zero variance.
std::vector<double> sample_autocorr(const std::vector<double>& x, int max_lag) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : x) denom += (v - mean) * (v - mean);
    if (denom <= 0.0) raise(Errc::degenerate_series, "zero sample variance");
    std::vector<double> r(max_lag + 1, 0.0);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t)
            num += (x[t] - mean) * (x[t + k] - mean);
        r[k] = num / denom;
    }
    return r;
}

void check_lag(const Series& s, int max_lag) {
    if (max_lag < 1) raise(Errc::invalid_parameter, "max_lag must be >= 1");
    if (static_cast<std::size_t>(max_lag) >= s.size())
        raise(Errc::lag_too_large, "max_lag " + std::to_string(max_lag) +
                                       " >= series length " + std::to_string(s.size()));
}

}  // namespace

Correlogram acf(const Series& s, int max_lag) {
    check_lag(s, max_lag);
    const auto r = sample_autocorr(s.values(), max_lag);
    Correlogram out;
    out.values.assign(r.begin() + 1, r.end());
    out.ci_bound = 2.0 / std::sqrt(static_cast<double>(s.size()));
    return out;
}

std::vector<double> pacf_from_acf(const std::vector<double>& r) {
    const int m = static_cast<int>(r.size());
    std::vector<double> phi_prev(m + 1, 0.0), phi(m + 1, 0.0), out;
    out.reserve(m);
    double v = 1.0;  // prediction error variance ratio
    for (int k = 1; k <= m; ++k) {
        double num = r[k - 1];
        for (int j = 1; j < k; ++j) num -= phi_prev[j] * r[k - 1 - j];
        if (!(v > 1e-14))
            raise(Errc::numerical_breakdown, "Durbin-Levinson variance collapsed at lag " +
                                                 std::to_string(k));
        const double a = num / v;
        phi[k] = a;
        for (int j = 1; j < k; ++j) phi[j] = phi_prev[j] - a * phi_prev[k - j];
        v *= (1.0 - a * a);
        out.push_back(a);
        std::copy(phi.begin(), phi.begin() + k + 1, phi_prev.begin());
    }
    return out;
}

Correlogram pacf(const Series& s, int max_lag) {
    check_lag(s, max_lag);
    const auto r = sample_autocorr(s.values(), max_lag);
    Correlogram out;
    out.values = pacf_from_acf(std::vector<double>(r.begin() + 1, r.end()));
    out.ci_bound = 2.0 / std::sqrt(static_cast<double>(s.size()));
    return out;
}

int default_portmanteau_lags(std::size_t n) {
    return std::max(1, std::min(10, static_cast<int>(n / 5)));
}

TestResult ljung_box(const Series& s, int lags, int fitdf, bool box_pierce) {
    if (lags <= fitdf)
        raise(Errc::invalid_df, "lags (" + std::to_string(lags) +
                                    ") must exceed fitted parameter count (" +
                                    std::to_string(fitdf) + ")");
    check_lag(s, lags);
    const double n = static_cast<double>(s.size());
    const auto r = sample_autocorr(s.values(), lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        const double term = r[k] * r[k];
        q += box_pierce ? term : term / (n - k);
    }
    q *= box_pierce ? n : n * (n + 2.0);
    const double df = lags - fitdf;
    TestResult out;
    out.test_name = box_pierce ? "box_pierce" : "ljung_box";
    out.statistic = q;
    out.p_value = 1.0 - stats::chi2_cdf(q, df);
    out.df_or_n = df;
    return out;
}

TestResult shapiro_wilk(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 12 || n > 5000)
        raise(Errc::sample_size_unsupported,
              "Shapiro-Wilk supported for 12 <= n <= 5000, got " + std::to_string(n));

    std::vector<double> sorted(x);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        raise(Errc::degenerate_series, "all values identical");

    // Expected normal order statistics (Blom scores) and Royston's weights.
    std::vector<double> m(n);
    double ssq_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = stats::norm_quantile((i + 1 - 0.375) / (n + 0.25));
        ssq_m += m[i] * m[i];
    }
    const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
    const double norm_m = std::sqrt(ssq_m);
    auto poly5 = [rsn](double c5, double c4, double c3, double c2, double c1, double c0) {
        return ((((c5 * rsn + c4) * rsn + c3) * rsn + c2) * rsn + c1) * rsn + c0;
    };
    std::vector<double> a(n);
    a[n - 1] = poly5(-2.706056, 4.434685, -2.071190, -0.147981, 0.221157, m[n - 1] / norm_m);
    a[n - 2] = poly5(-3.582633, 5.682633, -1.752461, -0.293762, 0.042981, m[n - 2] / norm_m);
    a[0] = -a[n - 1];
    a[1] = -a[n - 2];
    const double phi =
        (ssq_m - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
        (1.0 - 2.0 * a[n - 1] * a[n - 1] - 2.0 * a[n - 2] * a[n - 2]);
    const double fac = std::sqrt(phi);
    for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / fac;

    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += a[i] * sorted[i];
        den += (sorted[i] - mean) * (sorted[i] - mean);
    }
    const double w = num * num / den;

    // Royston (1995) normalization of ln(1 - W) for n >= 12.
    const double logn = std::log(static_cast<double>(n));
    const double mu = 0.0038915 * logn * logn * logn - 0.083751 * logn * logn -
                      0.31082 * logn - 1.5861;
    const double sigma = std::exp(0.0030302 * logn * logn - 0.082676 * logn - 0.4803);
    const double z = (std::log(1.0 - w) - mu) / sigma;

    TestResult out;
    out.test_name = "shapiro_wilk";
    out.statistic = w;
    out.p_value = 1.0 - stats::norm_cdf(z);
    out.df_or_n = static_cast<double>(n);
    return out;
}

}  // namespace arcop
