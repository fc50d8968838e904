#pragma once

#include <string>
#include <vector>

#include "arcop/series.hpp"

namespace arcop {

struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 0.0;
    double df_or_n = 0.0;

    std::string to_json() const;
};

/// Sample (partial) autocorrelations for lags 1..K with the +-2/sqrt(n)
/// reference band.
struct Correlogram {
    std::vector<double> values;  // index k-1 holds lag k
    double ci_bound = 0.0;

    std::size_t max_lag() const { return values.size(); }
    void write_csv(const std::string& path) const;  // lag,value,ci
};

Correlogram acf(const Series& s, int max_lag);
Correlogram pacf(const Series& s, int max_lag);

/// Durbin-Levinson on given autocorrelations r[0..] where r[k-1] is lag k;
/// exposed so the recursion can be checked against a direct Yule-Walker
/// solve.
std::vector<double> pacf_from_acf(const std::vector<double>& r);

/// Ljung-Box (default) or plain Box-Pierce portmanteau test with
/// `lags - fitdf` chi-square degrees of freedom.
TestResult ljung_box(const Series& s, int lags, int fitdf, bool box_pierce = false);

/// Default lag choice when a caller gives none: min(10, n/5).
int default_portmanteau_lags(std::size_t n);

/// Shapiro-Wilk W via Royston's AS R94 approximation; 12 <= n <= 5000.
TestResult shapiro_wilk(const std::vector<double>& x);

}  // namespace arcop
