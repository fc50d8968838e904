#include "arcop/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "arcop/rng.hpp"
#include "arcop/stats.hpp"

#include <nlohmann/json.hpp>

namespace arcop {

namespace {

// Root-mean-square about zero: residuals are innovations, so the Gaussian
// margin is centered.
double residual_sigma(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s / static_cast<double>(r.size()));
}

}  // namespace

std::vector<std::vector<double>> aligned_residuals(const std::vector<const SarimaFit*>& fits,
                                                   std::size_t min_overlap) {
    if (fits.empty()) raise(Errc::empty_input, "no fits to align");
    int lo = fits[0]->residuals.start().index();
    int hi = fits[0]->residuals.last_month().index();
    for (const auto* fit : fits) {
        lo = std::max(lo, fit->residuals.start().index());
        hi = std::min(hi, fit->residuals.last_month().index());
    }
    const int overlap = hi - lo + 1;
    if (overlap < static_cast<int>(min_overlap))
        raise(Errc::insufficient_overlap,
              "residuals overlap on " + std::to_string(std::max(0, overlap)) +
                  " months, need >= " + std::to_string(min_overlap));
    std::vector<std::vector<double>> out;
    out.reserve(fits.size());
    for (const auto* fit : fits) {
        const Series& r = fit->residuals;
        std::vector<double> col(overlap);
        for (int i = 0; i < overlap; ++i)
            col[i] = r[static_cast<std::size_t>(lo - r.start().index() + i)];
        out.push_back(std::move(col));
    }
    return out;
}

CoupledModel couple(const SarimaFit& target, const SarimaFit& driver, CopulaFamily family,
                    FitMethod method, double t_df) {
    const auto cols = aligned_residuals({&target, &driver}, 30);
    const std::vector<double>& xt = cols[0];
    const std::vector<double>& xd = cols[1];
    const std::size_t overlap = xt.size();

    CoupledModel m{
        .target_fit = target,
        .driver_fit = driver,
        .copula = family == CopulaFamily::independence
                      ? FittedCopula{CopulaFamily::independence, 0.0, t_df, FitMethod::fixed}
                      : fit_copula(pseudo_observations({xt, xd}), family, method, t_df),
        .sigma_target = residual_sigma(xt),
        .sigma_driver = residual_sigma(xd),
        .n_overlap = overlap,
    };
    if (!(m.sigma_target > 0.0) || !(m.sigma_driver > 0.0))
        raise(Errc::degenerate_series, "zero residual scale");
    return m;
}

namespace {

ForecastDistribution run_simulations(const CoupledModel& m, int horizon, std::size_t n_sims,
                                     std::uint64_t seed, ExecutionPolicy policy,
                                     const std::vector<double>* driver_innovations) {
    if (horizon < 1) raise(Errc::invalid_parameter, "horizon must be >= 1");
    if (n_sims < 1000) raise(Errc::invalid_parameter, "n_sims must be >= 1000");

    ForecastDistribution out;
    out.horizon_months = horizon;
    out.n_sims = n_sims;
    out.origin = m.target_fit.train.last_month();
    out.samples.assign(horizon, std::vector<double>(n_sims, 0.0));

    // Conditioning values on the copula scale, when a realized driver path
    // is supplied.
    std::vector<double> v_driver;
    if (driver_innovations) {
        if (static_cast<int>(driver_innovations->size()) != horizon)
            raise(Errc::length_mismatch, "driver innovations must match the horizon");
        v_driver.reserve(driver_innovations->size());
        for (double e : *driver_innovations) {
            double v = stats::norm_cdf(e / m.sigma_driver);
            v = std::min(1.0 - 1e-12, std::max(1e-12, v));
            v_driver.push_back(v);
        }
    }

    parallel_for(static_cast<std::int64_t>(n_sims), policy, [&](std::int64_t i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        std::vector<double> innovations(horizon);
        for (int h = 0; h < horizon; ++h) {
            double u;
            if (driver_innovations) {
                // Draw the target margin conditional on the realized driver
                // margin (families here are exchangeable).
                const double w = rng.uniform();
                u = conditional_quantile(m.copula, w, v_driver[h]);
            } else {
                u = rng.uniform();
                // The joint draw's second margin is not needed for the
                // target path, but consume it so conditional and
                // unconditional modes advance the stream identically.
                (void)rng.uniform();
            }
            innovations[h] = m.sigma_target * stats::norm_quantile(u);
        }
        const auto path = continue_path(m.target_fit, innovations);
        for (int h = 0; h < horizon; ++h) out.samples[h][i] = path[h];
    });
    return out;
}

}  // namespace

ForecastDistribution forecast_joint(const CoupledModel& m, int horizon, std::size_t n_sims,
                                    std::uint64_t seed, ExecutionPolicy policy) {
    return run_simulations(m, horizon, n_sims, seed, policy, nullptr);
}

ForecastDistribution forecast_joint_conditional(const CoupledModel& m,
                                                const std::vector<double>& driver_innovations,
                                                std::size_t n_sims, std::uint64_t seed,
                                                ExecutionPolicy policy) {
    return run_simulations(m, static_cast<int>(driver_innovations.size()), n_sims, seed, policy,
                           &driver_innovations);
}

std::vector<std::pair<double, double>> sample_innovation_pairs(const CoupledModel& m,
                                                               std::size_t n,
                                                               std::uint64_t seed) {
    const PseudoSample uv = sample(m.copula, n, seed);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(m.sigma_target * stats::norm_quantile(uv(i, 0)),
                         m.sigma_driver * stats::norm_quantile(uv(i, 1)));
    return out;
}

double sample_quantile(std::vector<double> x, double q) {
    if (x.empty()) raise(Errc::empty_input, "quantile of empty sample");
    if (!(q >= 0.0 && q <= 1.0)) raise(Errc::invalid_parameter, "quantile level in [0,1]");
    std::sort(x.begin(), x.end());
    const double h = q * (static_cast<double>(x.size()) - 1.0);
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= x.size()) return x.back();
    const double frac = h - static_cast<double>(i);
    return x[i] + frac * (x[i + 1] - x[i]);
}

std::vector<double> point_forecast(const ForecastDistribution& d, PointEstimator estimator) {
    std::vector<double> out;
    out.reserve(d.samples.size());
    for (const auto& sample : d.samples) {
        if (estimator == PointEstimator::median) {
            out.push_back(sample_quantile(sample, 0.5));
        } else {
            double s = 0.0;
            for (double v : sample) s += v;
            out.push_back(s / static_cast<double>(sample.size()));
        }
    }
    return out;
}

std::vector<std::pair<double, double>> prediction_interval(const ForecastDistribution& d,
                                                           double level) {
    if (!(level > 0.0 && level < 1.0))
        raise(Errc::invalid_parameter, "interval level must be in (0,1)");
    std::vector<std::pair<double, double>> out;
    out.reserve(d.samples.size());
    for (const auto& sample : d.samples) {
        std::vector<double> sorted(sample);
        std::sort(sorted.begin(), sorted.end());
        const double lo_q = 0.5 * (1.0 - level);
        auto at = [&sorted](double q) {
            const double h = q * (static_cast<double>(sorted.size()) - 1.0);
            const std::size_t i = static_cast<std::size_t>(h);
            if (i + 1 >= sorted.size()) return sorted.back();
            return sorted[i] + (h - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
        };
        out.emplace_back(at(lo_q), at(1.0 - lo_q));
    }
    return out;
}

std::pair<Series, Series> split_train_test(const Series& s, YearMonth cutoff) {
    const int first = s.start().index();
    const int last = s.last_month().index();
    const int cut = cutoff.index();
    if (cut < first || cut >= last)
        raise(Errc::cutoff_out_of_range,
              "cutoff " + cutoff.str() + " must lie inside " + s.start().str() + ".." +
                  s.last_month().str() + " (with a nonempty test set)");
    const std::size_t n_train = static_cast<std::size_t>(cut - first + 1);
    std::vector<double> train(s.values().begin(), s.values().begin() + n_train);
    std::vector<double> test(s.values().begin() + n_train, s.values().end());
    return {Series(s.start(), std::move(train), s.transform_log(), s.diff_spec()),
            Series(s.start().plus(static_cast<int>(n_train)), std::move(test),
                   s.transform_log(), s.diff_spec())};
}

double mse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.empty()) raise(Errc::empty_input, "mse of empty sequences");
    if (actual.size() != predicted.size())
        raise(Errc::length_mismatch, "mse requires equal lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        s += d * d;
    }
    return s / static_cast<double>(actual.size());
}

Histogram histogram(const std::vector<double>& sample, int bins) {
    if (sample.empty()) raise(Errc::empty_input, "histogram of empty sample");
    if (bins < 1) raise(Errc::invalid_parameter, "bins must be >= 1");
    const auto [mn_it, mx_it] = std::minmax_element(sample.begin(), sample.end());
    double lo = *mn_it, hi = *mx_it;
    if (lo == hi) hi = lo + 1e-12;
    Histogram h;
    h.edges.resize(bins + 1);
    h.counts.assign(bins, 0);
    const double width = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
    for (double v : sample) {
        int b = static_cast<int>((v - lo) / width);
        b = std::min(bins - 1, std::max(0, b));
        ++h.counts[b];
    }
    return h;
}

std::string validation_report_json(const std::vector<ValidationReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json months = nlohmann::json::array();
        for (const auto& m : r.months) months.push_back(m.str());
        j.push_back({{"model_name", r.model_name},
                     {"mse", r.mse},
                     {"horizon", r.horizon},
                     {"months", months},
                     {"predicted", r.predicted},
                     {"actual", r.actual}});
    }
    return j.dump(2);
}

}  // namespace arcop
