#include "arcop/sarima.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "arcop/nelder_mead.hpp"
#include "arcop/stats.hpp"

#include <nlohmann/json.hpp>

#include "json_detail.hpp"

namespace arcop {

std::string SarimaSpec::str() const {
    char buf[96];
    if (P == 0 && D == 0 && Q == 0) {
        std::snprintf(buf, sizeof(buf), "(%d,%d,%d)", p, d, q);
    } else {
        std::snprintf(buf, sizeof(buf), "(%d,%d,%d)(%d,%d,%d)[%d]", p, d, q, P, D, Q, s);
    }
    return buf;
}

SarimaSpec parse_sarima_spec(const std::string& text) {
    SarimaSpec spec;
    int consumed = 0;
    if (std::sscanf(text.c_str(), " (%d,%d,%d)%n", &spec.p, &spec.d, &spec.q, &consumed) != 3)
        raise(Errc::parse_error, "cannot parse model spec '" + text + "'");
    std::string rest = text.substr(consumed);
    while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
    if (!rest.empty()) {
        char extra = 0;
        if (std::sscanf(rest.c_str(), "(%d,%d,%d)[%d]%c", &spec.P, &spec.D, &spec.Q, &spec.s,
                        &extra) != 4)
            raise(Errc::parse_error, "cannot parse seasonal part of '" + text + "'");
    }
    if (spec.p < 0 || spec.d < 0 || spec.q < 0 || spec.P < 0 || spec.D < 0 || spec.Q < 0)
        raise(Errc::invalid_parameter, "negative model order in '" + text + "'");
    if ((spec.P != 0 || spec.D != 0 || spec.Q != 0) && spec.s < 2)
        raise(Errc::invalid_parameter, "seasonal orders require period >= 2");
    return spec;
}

std::vector<double> SarimaParams::flat() const {
    std::vector<double> beta;
    beta.reserve(ar.size() + ma.size() + sar.size() + sma.size());
    for (const auto* block : {&ar, &ma, &sar, &sma})
        beta.insert(beta.end(), block->begin(), block->end());
    return beta;
}

SarimaParams SarimaParams::from_flat(const SarimaSpec& spec, const std::vector<double>& beta) {
    if (static_cast<int>(beta.size()) != spec.n_params())
        raise(Errc::length_mismatch, "parameter vector has wrong length");
    SarimaParams params;
    auto it = beta.begin();
    params.ar.assign(it, it + spec.p); it += spec.p;
    params.ma.assign(it, it + spec.q); it += spec.q;
    params.sar.assign(it, it + spec.P); it += spec.P;
    params.sma.assign(it, it + spec.Q);
    return params;
}

namespace {

// Coefficients alpha_i of phi(L)Phi(L^s) = 1 - sum alpha_i L^i, i = 1..p+P*s.
std::vector<double> expanded_ar(const SarimaSpec& spec, const SarimaParams& params) {
    std::vector<double> poly(spec.ar_span() + 1, 0.0);
    // phi(L)Phi(L^s) as coefficient arrays with +1 leading term.
    std::vector<double> a(spec.p + 1, 0.0), b(spec.P * spec.s + 1, 0.0);
    a[0] = 1.0;
    for (int i = 0; i < spec.p; ++i) a[i + 1] = -params.ar[i];
    b[0] = 1.0;
    for (int i = 0; i < spec.P; ++i) b[(i + 1) * spec.s] = -params.sar[i];
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) poly[i + j] += a[i] * b[j];
    std::vector<double> alpha(spec.ar_span());
    for (int i = 1; i <= spec.ar_span(); ++i) alpha[i - 1] = -poly[i];
    return alpha;
}

// Coefficients m_j of theta(L)Theta(L^s) = 1 + sum m_j L^j, j = 1..q+Q*s.
std::vector<double> expanded_ma(const SarimaSpec& spec, const SarimaParams& params) {
    std::vector<double> poly(spec.ma_span() + 1, 0.0);
    std::vector<double> a(spec.q + 1, 0.0), b(spec.Q * spec.s + 1, 0.0);
    a[0] = 1.0;
    for (int i = 0; i < spec.q; ++i) a[i + 1] = params.ma[i];
    b[0] = 1.0;
    for (int i = 0; i < spec.Q; ++i) b[(i + 1) * spec.s] = params.sma[i];
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) poly[i + j] += a[i] * b[j];
    std::vector<double> m(spec.ma_span());
    for (int j = 1; j <= spec.ma_span(); ++j) m[j - 1] = poly[j];
    return m;
}

// Innovations on the differenced scale with the first ar_span values
// conditioned to zero. Returns the sum of squares over the rest.
double css_core(const std::vector<double>& w, const std::vector<double>& alpha,
                const std::vector<double>& mcoef, std::vector<double>* innovations) {
    const int pa = static_cast<int>(alpha.size());
    const int qa = static_cast<int>(mcoef.size());
    const int nw = static_cast<int>(w.size());
    std::vector<double> a(nw, 0.0);
    double css = 0.0;
    for (int t = pa; t < nw; ++t) {
        double pred = 0.0;
        for (int i = 1; i <= pa; ++i) pred += alpha[i - 1] * w[t - i];
        for (int j = 1; j <= qa && j <= t; ++j) pred += mcoef[j - 1] * a[t - j];
        a[t] = w[t] - pred;
        css += a[t] * a[t];
        if (!std::isfinite(css)) return std::numeric_limits<double>::max();
    }
    if (innovations) *innovations = std::move(a);
    return css;
}

// Durbin-Levinson AR(m) coefficients from autocorrelations r[0..m] (r[0]=1).
std::vector<double> levinson_ar(const std::vector<double>& r, int m) {
    std::vector<double> phi(m + 1, 0.0), prev(m + 1, 0.0);
    double v = 1.0;
    for (int k = 1; k <= m; ++k) {
        double num = r[k];
        for (int j = 1; j < k; ++j) num -= prev[j] * r[k - j];
        if (!(std::fabs(v) > 1e-14)) break;
        const double a = num / v;
        phi[k] = a;
        for (int j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        prev = phi;
    }
    return std::vector<double>(phi.begin() + 1, phi.end());
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        if (std::fabs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int row = n - 1; row >= 0; --row) {
        double acc = b[row];
        for (int k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
        x[row] = acc / a[row][row];
    }
    return true;
}

bool invert_matrix(std::vector<std::vector<double>> a, std::vector<std::vector<double>>& inv) {
    const int n = static_cast<int>(a.size());
    inv.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        if (std::fabs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double diag = a[col][col];
        for (int k = 0; k < n; ++k) {
            a[col][k] /= diag;
            inv[col][k] /= diag;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const double f = a[row][col];
            if (f == 0.0) continue;
            for (int k = 0; k < n; ++k) {
                a[row][k] -= f * a[col][k];
                inv[row][k] -= f * inv[col][k];
            }
        }
    }
    return true;
}

// Hannan-Rissanen style starting values: long-AR innovations, then a linear
// regression of w_t on its own lags and lagged innovations at the positions
// the spec uses. Returns zeros when the regression is not workable.
std::vector<double> hannan_rissanen_start(const std::vector<double>& w, const SarimaSpec& spec) {
    const int k = spec.n_params();
    std::vector<double> zeros(k, 0.0);
    const int nw = static_cast<int>(w.size());
    const int m = std::min({30, nw / 4, 2 * (spec.ar_span() + spec.ma_span()) + 5});
    if (m < 1) return zeros;

    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= nw;
    double denom = 0.0;
    for (double v : w) denom += (v - mean) * (v - mean);
    if (denom <= 0.0) return zeros;
    std::vector<double> r(m + 1, 0.0);
    r[0] = 1.0;
    for (int lag = 1; lag <= m; ++lag) {
        double num = 0.0;
        for (int t = 0; t + lag < nw; ++t) num += (w[t] - mean) * (w[t + lag] - mean);
        r[lag] = num / denom;
    }
    const auto phi_long = levinson_ar(r, m);
    std::vector<double> e(nw, 0.0);
    for (int t = m; t < nw; ++t) {
        double pred = 0.0;
        for (int i = 1; i <= m; ++i) pred += phi_long[i - 1] * w[t - i];
        e[t] = w[t] - pred;
    }

    // Regressor lags in flat() order: ar, ma, sar, sma.
    std::vector<std::pair<bool, int>> cols;  // (is innovation lag, lag)
    for (int i = 1; i <= spec.p; ++i) cols.emplace_back(false, i);
    for (int j = 1; j <= spec.q; ++j) cols.emplace_back(true, j);
    for (int i = 1; i <= spec.P; ++i) cols.emplace_back(false, i * spec.s);
    for (int j = 1; j <= spec.Q; ++j) cols.emplace_back(true, j * spec.s);

    const int t0 = m + std::max(spec.ar_span(), spec.ma_span());
    if (nw - t0 < 3 * k + 5) return zeros;

    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (int t = t0; t < nw; ++t) {
        std::vector<double> row(k);
        for (int c = 0; c < k; ++c) {
            const auto [is_innov, lag] = cols[c];
            row[c] = is_innov ? e[t - lag] : w[t - lag];
        }
        for (int i = 0; i < k; ++i) {
            xty[i] += row[i] * w[t];
            for (int j = 0; j < k; ++j) xtx[i][j] += row[i] * row[j];
        }
    }
    std::vector<double> beta;
    if (!solve_linear(xtx, xty, beta)) return zeros;
    for (double b : beta)
        if (!std::isfinite(b) || std::fabs(b) > 5.0) return zeros;
    return beta;
}

}  // namespace

double min_root_modulus(const std::vector<double>& coeffs, bool ma_sign) {
    std::vector<std::complex<double>> poly;
    poly.emplace_back(1.0, 0.0);
    for (double c : coeffs) poly.emplace_back(ma_sign ? c : -c, 0.0);
    while (poly.size() > 1 && std::abs(poly.back()) < 1e-14) poly.pop_back();
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg == 0) return std::numeric_limits<double>::infinity();

    // Durand-Kerner simultaneous root iteration.
    const std::complex<double> lead = poly.back();
    for (auto& c : poly) c /= lead;
    std::vector<std::complex<double>> z(deg);
    const std::complex<double> g(0.4, 0.9);
    z[0] = g;
    for (int i = 1; i < deg; ++i) z[i] = z[i - 1] * g;
    auto eval = [&poly](std::complex<double> x) {
        std::complex<double> acc = 0.0;
        for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) acc = acc * x + poly[i];
        return acc;
    };
    for (int it = 0; it < 500; ++it) {
        double max_step = 0.0;
        for (int i = 0; i < deg; ++i) {
            std::complex<double> den = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) < 1e-300) continue;
            const std::complex<double> step = eval(z[i]) / den;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step));
        }
        if (max_step < 1e-12) break;
    }
    double min_mod = std::numeric_limits<double>::infinity();
    for (const auto& root : z) min_mod = std::min(min_mod, std::abs(root));
    return min_mod;
}

SarimaFit fit_css(const Series& s, const SarimaSpec& spec, std::optional<bool> include_mean) {
    const Series w_series = difference(s, spec.d, spec.D, spec.s);
    const bool with_mean = include_mean.value_or(spec.d + spec.D == 0);
    if (with_mean && spec.d + spec.D > 0)
        raise(Errc::invalid_parameter, "mean term is only available when d + D = 0");
    double mu = 0.0;
    std::vector<double> w = w_series.values();
    if (with_mean) {
        for (double v : w) mu += v;
        mu /= static_cast<double>(w.size());
        for (double& v : w) v -= mu;
    }
    const int nw = static_cast<int>(w.size());
    const int needed = spec.p + spec.q + (spec.P + spec.Q) * spec.s + 10;
    if (nw <= needed)
        raise(Errc::insufficient_length,
              "differenced length " + std::to_string(nw) + " too short for " + spec.str());

    const int k = spec.n_params();
    auto objective = [&](const std::vector<double>& beta) {
        const SarimaParams params = SarimaParams::from_flat(spec, beta);
        return css_core(w, expanded_ar(spec, params), expanded_ma(spec, params), nullptr);
    };

    NelderMeadResult best;
    bool have = false;
    if (k == 0) {
        best.x = {};
        best.fx = objective({});
        best.converged = true;
        have = true;
    } else {
        std::vector<std::vector<double>> starts;
        starts.emplace_back(k, 0.0);
        const auto hr = hannan_rissanen_start(w, spec);
        bool hr_nonzero = false;
        for (double b : hr) hr_nonzero |= (b != 0.0);
        if (hr_nonzero) starts.push_back(hr);
        for (const auto& start : starts) {
            auto result = nelder_mead(objective, start, 0.1, 1e-10, 2000);
            if (!have || result.fx < best.fx ||
                (result.fx == best.fx && result.converged && !best.converged)) {
                best = std::move(result);
                have = true;
            }
        }
    }

    const SarimaParams params = SarimaParams::from_flat(spec, best.x);
    const auto alpha = expanded_ar(spec, params);
    const auto mcoef = expanded_ma(spec, params);
    std::vector<double> innovations;
    const double css = css_core(w, alpha, mcoef, &innovations);
    const int cond = spec.ar_span();
    const int n_used = nw - cond;
    const double sigma2 = css / n_used;

    SarimaFit fit{
        .spec = spec,
        .params = params,
        .std_errors = {},
        .t_values = {},
        .p_values = {},
        .sigma2 = sigma2,
        .objective = css,
        .mu = mu,
        .residuals = Series(w_series.start().plus(cond),
                            std::vector<double>(innovations.begin() + cond, innovations.end()),
                            s.transform_log(), w_series.diff_spec()),
        .train = s,
        .converged = best.converged,
        .evaluations = best.evaluations,
    };

    fit.min_ar_root_modulus = min_root_modulus(alpha, false);
    fit.min_ma_root_modulus = min_root_modulus(mcoef, true);
    fit.near_nonstationary = spec.ar_span() > 0 && fit.min_ar_root_modulus <= 1.001;
    fit.near_noninvertible = spec.ma_span() > 0 && fit.min_ma_root_modulus <= 1.001;

    if (k > 0) {
        // Standard errors from the numerically differentiated Hessian of the
        // CSS objective: cov(beta) ~= 2 sigma^2 H^{-1}.
        std::vector<std::vector<double>> hess(k, std::vector<double>(k, 0.0));
        const double f0 = css;
        std::vector<double> h(k);
        for (int i = 0; i < k; ++i) h[i] = 1e-4 * std::max(1.0, std::fabs(best.x[i]));
        for (int i = 0; i < k; ++i) {
            auto xp = best.x, xm = best.x;
            xp[i] += h[i];
            xm[i] -= h[i];
            hess[i][i] = (objective(xp) + objective(xm) - 2.0 * f0) / (h[i] * h[i]);
        }
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                auto xpp = best.x, xpm = best.x, xmp = best.x, xmm = best.x;
                xpp[i] += h[i]; xpp[j] += h[j];
                xpm[i] += h[i]; xpm[j] -= h[j];
                xmp[i] -= h[i]; xmp[j] += h[j];
                xmm[i] -= h[i]; xmm[j] -= h[j];
                hess[i][j] = hess[j][i] =
                    (objective(xpp) - objective(xpm) - objective(xmp) + objective(xmm)) /
                    (4.0 * h[i] * h[j]);
            }
        }
        std::vector<std::vector<double>> inv;
        const bool ok = invert_matrix(hess, inv);
        fit.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
        fit.t_values.assign(k, std::numeric_limits<double>::quiet_NaN());
        fit.p_values.assign(k, std::numeric_limits<double>::quiet_NaN());
        for (int i = 0; i < k; ++i) {
            if (!ok) break;
            const double var = 2.0 * sigma2 * inv[i][i];
            if (var >= 0.0) {
                fit.std_errors[i] = std::sqrt(var);
                fit.t_values[i] = best.x[i] / fit.std_errors[i];
                fit.p_values[i] = 2.0 * (1.0 - stats::norm_cdf(std::fabs(fit.t_values[i])));
            }
        }
    }

    if (!fit.converged)
        throw NoConvergenceError("CSS optimizer exhausted its budget for " + spec.str(), fit);
    return fit;
}

std::vector<double> simulate_process(const SarimaSpec& spec, const SarimaParams& params,
                                     const std::vector<double>& innovations,
                                     const std::vector<double>& initial,
                                     const std::vector<double>& pre_innovations) {
    const auto alpha = expanded_ar(spec, params);
    const auto mcoef = expanded_ma(spec, params);
    const int qa = static_cast<int>(mcoef.size());
    // Full AR-side polynomial phi(L)Phi(L^s)(1-L)^d(1-L^s)^D.
    const auto diff_poly = differencing_polynomial(spec.diff());
    std::vector<double> ar_poly(alpha.size() + 1, 0.0);
    ar_poly[0] = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) ar_poly[i + 1] = -alpha[i];
    std::vector<double> full(ar_poly.size() + diff_poly.size() - 1, 0.0);
    for (std::size_t i = 0; i < ar_poly.size(); ++i)
        for (std::size_t j = 0; j < diff_poly.size(); ++j) full[i + j] += ar_poly[i] * diff_poly[j];
    const int lag_depth = static_cast<int>(full.size()) - 1;

    if (static_cast<int>(initial.size()) != lag_depth)
        raise(Errc::initial_mismatch, "need " + std::to_string(lag_depth) +
                                          " initial values, got " +
                                          std::to_string(initial.size()));
    if (static_cast<int>(pre_innovations.size()) > qa)
        raise(Errc::initial_mismatch, "at most " + std::to_string(qa) +
                                          " pre-sample innovations, got " +
                                          std::to_string(pre_innovations.size()));
    for (double e : innovations)
        if (!std::isfinite(e)) raise(Errc::invalid_parameter, "non-finite innovation");

    std::vector<double> a(qa, 0.0);
    std::copy(pre_innovations.begin(), pre_innovations.end(),
              a.end() - static_cast<long>(pre_innovations.size()));
    std::vector<double> y(initial);
    y.reserve(initial.size() + innovations.size());
    for (double e : innovations) {
        double val = e;
        for (int j = 1; j <= qa; ++j) val += mcoef[j - 1] * a[a.size() - j];
        for (int j = 1; j <= lag_depth; ++j) val -= full[j] * y[y.size() - (j - 1) - 1];
        y.push_back(val);
        a.push_back(e);
    }
    return y;
}

Series simulate(const SarimaFit& fit, const std::vector<double>& innovations,
                const std::vector<double>& initial, const std::vector<double>& pre_innovations) {
    std::vector<double> centered(initial);
    for (double& v : centered) v -= fit.mu;
    auto values = simulate_process(fit.spec, fit.params, innovations, centered, pre_innovations);
    for (double& v : values) v += fit.mu;
    return Series(fit.train.start(), std::move(values), fit.train.transform_log());
}

std::vector<double> continue_path(const SarimaFit& fit, const std::vector<double>& innovations) {
    const int lag_depth = fit.spec.diff().total_lag() + fit.spec.ar_span();
    const int qa = fit.spec.ma_span();
    const auto& train = fit.train.values();
    if (static_cast<int>(train.size()) < lag_depth)
        raise(Errc::insufficient_length, "training series shorter than recursion depth");
    std::vector<double> initial(train.end() - lag_depth, train.end());
    for (double& v : initial) v -= fit.mu;

    const auto& resid = fit.residuals.values();
    std::vector<double> pre(qa, 0.0);
    const int take = std::min<int>(qa, static_cast<int>(resid.size()));
    std::copy(resid.end() - take, resid.end(), pre.end() - take);

    auto y = simulate_process(fit.spec, fit.params, innovations, initial, pre);
    std::vector<double> out(y.begin() + lag_depth, y.end());
    for (double& v : out) v += fit.mu;
    return out;
}

std::vector<double> forecast_point(const SarimaFit& fit, int horizon) {
    if (horizon < 1) raise(Errc::invalid_parameter, "horizon must be >= 1");
    return continue_path(fit, std::vector<double>(horizon, 0.0));
}

std::vector<double> realized_innovations(const SarimaFit& fit,
                                         const std::vector<double>& future_values) {
    std::vector<double> x(fit.train.values());
    x.insert(x.end(), future_values.begin(), future_values.end());
    const Series extended(fit.train.start(), std::move(x), fit.train.transform_log());
    const Series w_series = difference(extended, fit.spec.d, fit.spec.D, fit.spec.s);
    std::vector<double> w = w_series.values();
    for (double& v : w) v -= fit.mu;
    std::vector<double> innovations;
    css_core(w, expanded_ar(fit.spec, fit.params), expanded_ma(fit.spec, fit.params),
             &innovations);
    return std::vector<double>(innovations.end() - static_cast<long>(future_values.size()),
                               innovations.end());
}

std::vector<CoefficientRow> coefficient_table(const SarimaFit& fit) {
    std::vector<CoefficientRow> rows;
    const auto beta = fit.params.flat();
    std::vector<std::string> names;
    for (int i = 1; i <= fit.spec.p; ++i) names.push_back("ar" + std::to_string(i));
    for (int i = 1; i <= fit.spec.q; ++i) names.push_back("ma" + std::to_string(i));
    for (int i = 1; i <= fit.spec.P; ++i) names.push_back("sar" + std::to_string(i * fit.spec.s));
    for (int i = 1; i <= fit.spec.Q; ++i) names.push_back("sma" + std::to_string(i * fit.spec.s));
    for (std::size_t i = 0; i < beta.size(); ++i) {
        rows.push_back({names[i], beta[i],
                        i < fit.std_errors.size() ? fit.std_errors[i] : 0.0,
                        i < fit.t_values.size() ? fit.t_values[i] : 0.0,
                        i < fit.p_values.size() ? fit.p_values[i] : 0.0});
    }
    return rows;
}

void write_coefficient_csv(const std::vector<CoefficientRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::io_error, "cannot write " + path);
    out << "name,coefficient,se,t_value,p_value\n";
    char buf[200];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g\n", row.name.c_str(),
                      row.coefficient, row.std_error, row.t_value, row.p_value);
        out << buf;
    }
}

std::string coefficient_table_json(const std::vector<CoefficientRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
        j.push_back({{"name", row.name},
                     {"coefficient", row.coefficient},
                     {"se", row.std_error},
                     {"t_value", row.t_value},
                     {"p_value", row.p_value}});
    }
    return j.dump(2);
}

namespace {

// nlohmann emits non-finite doubles as null; map them back explicitly so fit
// files round-trip (std errors can be NaN, root moduli can be infinite).
nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double num_from_json(const nlohmann::json& j, double non_finite) {
    return j.is_null() ? non_finite : j.get<double>();
}

nlohmann::json vec_to_json(const std::vector<double>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (double x : v) arr.push_back(finite_or_null(x));
    return arr;
}

std::vector<double> vec_from_json(const nlohmann::json& arr) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& x : arr)
        out.push_back(num_from_json(x, std::numeric_limits<double>::quiet_NaN()));
    return out;
}

using detail::series_from_json;
using detail::series_to_json;

}  // namespace

std::string SarimaFit::to_json() const {
    nlohmann::json j;
    j["spec"] = spec.str();
    j["coefficients"] = {{"ar", params.ar}, {"ma", params.ma},
                         {"sar", params.sar}, {"sma", params.sma}};
    j["std_errors"] = vec_to_json(std_errors);
    j["t_values"] = vec_to_json(t_values);
    j["p_values"] = vec_to_json(p_values);
    j["sigma2"] = sigma2;
    j["objective"] = objective;
    j["mu"] = mu;
    j["residuals"] = series_to_json(residuals);
    j["train"] = series_to_json(train);
    j["converged"] = converged;
    j["evaluations"] = evaluations;
    j["min_ar_root_modulus"] = finite_or_null(min_ar_root_modulus);
    j["min_ma_root_modulus"] = finite_or_null(min_ma_root_modulus);
    j["near_nonstationary"] = near_nonstationary;
    j["near_noninvertible"] = near_noninvertible;
    return j.dump(2);
}

SarimaFit SarimaFit::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        raise(Errc::parse_error, std::string("bad fit JSON: ") + e.what());
    }
    try {
        SarimaFit fit{
            .spec = parse_sarima_spec(j.at("spec").get<std::string>()),
            .params = {j.at("coefficients").at("ar").get<std::vector<double>>(),
                       j.at("coefficients").at("ma").get<std::vector<double>>(),
                       j.at("coefficients").at("sar").get<std::vector<double>>(),
                       j.at("coefficients").at("sma").get<std::vector<double>>()},
            .std_errors = vec_from_json(j.at("std_errors")),
            .t_values = vec_from_json(j.at("t_values")),
            .p_values = vec_from_json(j.at("p_values")),
            .sigma2 = j.at("sigma2").get<double>(),
            .objective = j.at("objective").get<double>(),
            .mu = j.value("mu", 0.0),
            .residuals = series_from_json(j.at("residuals")),
            .train = series_from_json(j.at("train")),
            .converged = j.at("converged").get<bool>(),
            .evaluations = j.at("evaluations").get<int>(),
            .min_ar_root_modulus = num_from_json(j.at("min_ar_root_modulus"),
                                                 std::numeric_limits<double>::infinity()),
            .min_ma_root_modulus = num_from_json(j.at("min_ma_root_modulus"),
                                                 std::numeric_limits<double>::infinity()),
            .near_nonstationary = j.at("near_nonstationary").get<bool>(),
            .near_noninvertible = j.at("near_noninvertible").get<bool>(),
        };
        return fit;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, std::string("bad fit JSON: ") + e.what());
    }
}

}  // namespace arcop
