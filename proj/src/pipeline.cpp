#include "arcop/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arcop/diagnostics.hpp"
#include "arcop/forecast.hpp"
#include "arcop/gof.hpp"
#include "arcop/stats.hpp"

#include <nlohmann/json.hpp>

#include "json_detail.hpp"

namespace fs = std::filesystem;

namespace arcop {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    raise(Errc::parse_error, "boolean expected for " + key + ", got '" + v + "'");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) raise(Errc::io_error, "cannot write " + path);
    out << text;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

const SeriesConfig& PipelineConfig::get_series(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return s;
    raise(Errc::parse_error, "config does not define series '" + name + "'");
}

std::string PipelineConfig::resolve_input(const std::string& path) const {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (fs::path(base_dir) / p).string();
}

std::string PipelineConfig::out_path(const std::string& file) const {
    return (fs::path(out_dir) / file).string();
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open config " + path);
    PipelineConfig cfg;
    cfg.base_dir = fs::path(path).parent_path().string();

    auto series_ref = [&cfg](const std::string& name) -> SeriesConfig& {
        for (auto& s : cfg.series)
            if (s.name == name) return s;
        SeriesConfig sc;
        sc.name = name;
        cfg.series.push_back(std::move(sc));
        return cfg.series.back();
    };

    bool seed_seen = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(Errc::parse_error,
                  path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key.rfind("series.", 0) == 0) {
            const auto rest = key.substr(7);
            const auto dot = rest.find('.');
            if (dot == std::string::npos)
                raise(Errc::parse_error, "bad series key '" + key + "'");
            SeriesConfig& sc = series_ref(rest.substr(0, dot));
            const std::string field = rest.substr(dot + 1);
            if (field == "file") {
                sc.file = value;
            } else if (field == "log") {
                sc.log = parse_bool(value, key);
            } else if (field == "spec") {
                sc.spec = parse_sarima_spec(value);
                sc.spec_set = true;
            } else {
                raise(Errc::parse_error, "unknown series field '" + field + "'");
            }
        } else if (key == "target") {
            cfg.target = value;
        } else if (key == "driver") {
            cfg.driver = value;
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
            seed_seen = true;
        } else if (key == "out") {
            cfg.out_dir = value;
        } else if (key == "cutoff") {
            cfg.cutoff = parse_year_month(value);
        } else if (key == "copula.family") {
            cfg.family = parse_family(value);
        } else if (key == "copula.families") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.families.push_back(parse_family(trim(item)));
        } else if (key == "copula.method") {
            cfg.method = parse_fit_method(value);
        } else if (key == "copula.t_df") {
            cfg.t_df = std::stod(value);
        } else if (key == "gof.n_boot") {
            cfg.gof_n_boot = std::stoi(value);
        } else if (key == "gof.n_perm") {
            cfg.gof_n_perm = std::stoi(value);
        } else if (key == "forecast.horizon") {
            cfg.horizon = std::stoi(value);
        } else if (key == "forecast.n_sims") {
            cfg.n_sims = std::stoull(value);
        } else {
            raise(Errc::parse_error, "unknown config key '" + key + "'");
        }
    }
    if (!seed_seen)
        raise(Errc::parse_error, path + ": a seed is mandatory (no wall-clock seeding)");
    if (cfg.series.empty()) raise(Errc::parse_error, path + ": no series configured");
    for (const auto& s : cfg.series) {
        if (s.file.empty())
            raise(Errc::parse_error, "series '" + s.name + "' has no file");
        if (!s.spec_set)
            raise(Errc::parse_error, "series '" + s.name + "' has no model spec");
    }
    if (cfg.target.empty() || cfg.driver.empty())
        raise(Errc::parse_error, path + ": target and driver series are required");
    (void)cfg.get_series(cfg.target);
    (void)cfg.get_series(cfg.driver);
    if (cfg.families.empty()) cfg.families = {cfg.family};
    return cfg;
}

namespace {

Series load_series_artifact(const PipelineConfig& cfg, const std::string& name) {
    const std::string path = cfg.out_path(name + "_series.json");
    try {
        return detail::series_from_json(nlohmann::json::parse(read_text(path)));
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, path + ": " + e.what());
    }
}

SarimaFit load_fit_artifact(const PipelineConfig& cfg, const std::string& name) {
    return SarimaFit::from_json(read_text(cfg.out_path(name + "_fit.json")));
}

FittedCopula load_coupling(const PipelineConfig& cfg, double& sigma_target,
                           double& sigma_driver) {
    const std::string path = cfg.out_path("coupled.json");
    try {
        const auto j = nlohmann::json::parse(read_text(path));
        sigma_target = j.at("sigma_target").get<double>();
        sigma_driver = j.at("sigma_driver").get<double>();
        FittedCopula c;
        c.family = parse_family(j.at("family").get<std::string>());
        c.theta = j.at("theta").get<double>();
        c.df = j.at("df").get<double>();
        c.method = parse_fit_method(j.at("method").get<std::string>());
        if (c.family != CopulaFamily::independence) c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, path + ": " + e.what());
    }
}

void ensure_out_dir(const PipelineConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) raise(Errc::io_error, "cannot create output directory " + cfg.out_dir);
}

}  // namespace

void run_ingest(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    for (const auto& sc : cfg.series) {
        Series s = ingest_csv(cfg.resolve_input(sc.file));
        if (sc.log) s = log_transform(s);
        write_text(cfg.out_path(sc.name + "_series.json"),
                   detail::series_to_json(s).dump(2));
        write_monthly_csv(s, cfg.out_path(sc.name + "_monthly.csv"));
    }
}

void run_diagnose(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    for (const auto& sc : cfg.series) {
        const Series s = load_series_artifact(cfg, sc.name);
        const int max_lag = std::max(1, std::min(24, static_cast<int>(s.size()) / 2));
        acf(s, max_lag).write_csv(cfg.out_path(sc.name + "_acf.csv"));
        pacf(s, max_lag).write_csv(cfg.out_path(sc.name + "_pacf.csv"));
        const auto lb = ljung_box(s, default_portmanteau_lags(s.size()), 0);
        write_text(cfg.out_path(sc.name + "_ljung_box.json"), lb.to_json());

        // Residual diagnostics once a fit exists.
        const std::string fit_path = cfg.out_path(sc.name + "_fit.json");
        if (!fs::exists(fit_path)) continue;
        const SarimaFit fit = SarimaFit::from_json(read_text(fit_path));
        const Series& resid = fit.residuals;
        const int rlag = std::max(1, std::min(24, static_cast<int>(resid.size()) / 2));
        acf(resid, rlag).write_csv(cfg.out_path(sc.name + "_resid_acf.csv"));
        pacf(resid, rlag).write_csv(cfg.out_path(sc.name + "_resid_pacf.csv"));
        const int fitdf = fit.spec.n_params();
        const int lags = std::max(fitdf + 1, default_portmanteau_lags(resid.size()));
        write_text(cfg.out_path(sc.name + "_resid_ljung_box.json"),
                   ljung_box(resid, lags, fitdf).to_json());
        write_text(cfg.out_path(sc.name + "_shapiro.json"),
                   shapiro_wilk(resid.values()).to_json());
    }
}

void run_fit_arima(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    for (const auto& sc : cfg.series) {
        const Series s = load_series_artifact(cfg, sc.name);
        const SarimaFit fit = fit_css(s, sc.spec);
        write_text(cfg.out_path(sc.name + "_fit.json"), fit.to_json());
        const auto rows = coefficient_table(fit);
        write_coefficient_csv(rows, cfg.out_path(sc.name + "_coefficients.csv"));
        write_text(cfg.out_path(sc.name + "_coefficients.json"), coefficient_table_json(rows));
    }
}

void run_fit_copula(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    std::vector<SarimaFit> fits;
    fits.reserve(cfg.series.size());
    for (const auto& sc : cfg.series) fits.push_back(load_fit_artifact(cfg, sc.name));

    // Pairwise rank correlations over the aligned residual overlap.
    {
        std::ofstream out(cfg.out_path("rank_correlations.csv"));
        if (!out) raise(Errc::io_error, "cannot write rank_correlations.csv");
        out << "series_a,series_b,tau,p_tau,rho,p_rho,n_overlap\n";
        for (std::size_t i = 0; i < fits.size(); ++i) {
            for (std::size_t j = i + 1; j < fits.size(); ++j) {
                const auto cols = aligned_residuals({&fits[i], &fits[j]});
                const auto rc = rank_correlation(cols[0], cols[1]);
                out << cfg.series[i].name << ',' << cfg.series[j].name << ',' << fmt(rc.tau)
                    << ',' << fmt(rc.p_tau) << ',' << fmt(rc.rho_s) << ',' << fmt(rc.p_rho)
                    << ',' << rc.n << '\n';
            }
        }
    }

    const SarimaFit& target = fits[&cfg.get_series(cfg.target) - cfg.series.data()];
    const SarimaFit& driver = fits[&cfg.get_series(cfg.driver) - cfg.series.data()];
    const CoupledModel m = couple(target, driver, cfg.family, cfg.method, cfg.t_df);
    nlohmann::json j;
    j["family"] = family_name(m.copula.family);
    j["theta"] = m.copula.theta;
    j["df"] = m.copula.df;
    j["method"] = fit_method_name(m.copula.method);
    j["sigma_target"] = m.sigma_target;
    j["sigma_driver"] = m.sigma_driver;
    j["n_overlap"] = m.n_overlap;
    j["target"] = cfg.target;
    j["driver"] = cfg.driver;
    write_text(cfg.out_path("coupled.json"), j.dump(2));
}

void run_gof(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    const SarimaFit target = load_fit_artifact(cfg, cfg.target);
    const SarimaFit driver = load_fit_artifact(cfg, cfg.driver);
    const auto cols = aligned_residuals({&target, &driver}, 30);
    const PseudoSample u = pseudo_observations(cols);

    std::vector<GofResult> rows;
    for (const auto family : cfg.families) {
        try {
            rows.push_back(gof_bootstrap(u, family, cfg.gof_n_boot, cfg.seed, cfg.method,
                                         cfg.t_df));
        } catch (const Error& e) {
            if (e.code() != Errc::family_incompatible) throw;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            rows.push_back({family, nan, nan, nan, cfg.gof_n_boot, cfg.seed});
            std::fprintf(stderr, "warning: %s\n", e.what());
        }
    }
    write_gof_csv(rows, cfg.out_path("gof.csv"));

    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& r : rows) {
        jrows.push_back({{"family", family_name(r.family)},
                         {"parameter", std::isfinite(r.theta_hat)
                                           ? nlohmann::json(r.theta_hat)
                                           : nlohmann::json(nullptr)},
                         {"cvm_statistic", std::isfinite(r.s_n) ? nlohmann::json(r.s_n)
                                                                : nlohmann::json(nullptr)},
                         {"p_value", std::isfinite(r.p_value) ? nlohmann::json(r.p_value)
                                                              : nlohmann::json(nullptr)},
                         {"n_bootstrap", r.n_bootstrap}});
    }
    write_text(cfg.out_path("gof.json"), jrows.dump(2));

    // Joint independence across all configured series' residuals.
    if (cfg.series.size() >= 2) {
        std::vector<SarimaFit> fits;
        for (const auto& sc : cfg.series) fits.push_back(load_fit_artifact(cfg, sc.name));
        std::vector<const SarimaFit*> ptrs;
        for (const auto& f : fits) ptrs.push_back(&f);
        const auto all = aligned_residuals(ptrs, 30);
        const auto r = independence_test_multivariate(all, cfg.gof_n_perm, cfg.seed);
        write_text(cfg.out_path("independence.json"), r.to_json());
    }
}

void run_forecast(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    const SarimaFit target = load_fit_artifact(cfg, cfg.target);
    const SarimaFit driver = load_fit_artifact(cfg, cfg.driver);
    double sigma_t = 0.0, sigma_d = 0.0;
    const FittedCopula copula = load_coupling(cfg, sigma_t, sigma_d);
    const CoupledModel m{target, driver, copula, sigma_t, sigma_d, 0};

    const auto dist = forecast_joint(m, cfg.horizon, cfg.n_sims, cfg.seed);
    const auto median = point_forecast(dist, PointEstimator::median);
    const auto mean = point_forecast(dist, PointEstimator::mean);
    const auto interval = prediction_interval(dist, 0.95);

    {
        std::ofstream out(cfg.out_path("forecast.csv"));
        if (!out) raise(Errc::io_error, "cannot write forecast.csv");
        out << "month,median,mean,lo95,hi95\n";
        for (int h = 0; h < cfg.horizon; ++h) {
            out << dist.month_at(h).str() << ',' << fmt(median[h]) << ',' << fmt(mean[h]) << ','
                << fmt(interval[h].first) << ',' << fmt(interval[h].second) << '\n';
        }
    }
    {
        std::ofstream out(cfg.out_path("forecast_density.csv"));
        if (!out) raise(Errc::io_error, "cannot write forecast_density.csv");
        out << "month,bin_left,bin_right,count\n";
        for (int h = 0; h < cfg.horizon; ++h) {
            const auto hist = histogram(dist.samples[h], 100);
            for (std::size_t b = 0; b < hist.counts.size(); ++b) {
                out << dist.month_at(h).str() << ',' << fmt(hist.edges[b]) << ','
                    << fmt(hist.edges[b + 1]) << ',' << hist.counts[b] << '\n';
            }
        }
    }
    {
        const auto point = forecast_point(target, cfg.horizon);
        std::ofstream out(cfg.out_path("arima_forecast.csv"));
        if (!out) raise(Errc::io_error, "cannot write arima_forecast.csv");
        out << "month,value\n";
        for (int h = 0; h < cfg.horizon; ++h)
            out << dist.month_at(h).str() << ',' << fmt(point[h]) << '\n';
    }
}

void run_validate(const PipelineConfig& cfg, bool unconditional) {
    ensure_out_dir(cfg);
    if (!cfg.cutoff) raise(Errc::parse_error, "validate requires a cutoff in the config");
    const Series target_all = load_series_artifact(cfg, cfg.target);
    const Series driver_all = load_series_artifact(cfg, cfg.driver);
    if (target_all.start() != driver_all.start() || target_all.size() != driver_all.size())
        raise(Errc::invalid_parameter,
              "validate requires target and driver series over the same months");

    const auto [target_train, target_test] = split_train_test(target_all, *cfg.cutoff);
    const auto [driver_train, driver_test] = split_train_test(driver_all, *cfg.cutoff);
    const SarimaFit target_fit = fit_css(target_train, cfg.get_series(cfg.target).spec);
    const SarimaFit driver_fit = fit_css(driver_train, cfg.get_series(cfg.driver).spec);
    const int horizon = static_cast<int>(target_test.size());

    const auto plain = forecast_point(target_fit, horizon);

    const CoupledModel m = couple(target_fit, driver_fit, cfg.family, cfg.method, cfg.t_df);
    ForecastDistribution dist =
        unconditional
            ? forecast_joint(m, horizon, cfg.n_sims, cfg.seed)
            : forecast_joint_conditional(
                  m, realized_innovations(driver_fit, driver_test.values()), cfg.n_sims,
                  cfg.seed);
    const auto coupled = point_forecast(dist, PointEstimator::median);

    std::vector<ValidationReport> reports(2);
    reports[0].model_name = "arima";
    reports[1].model_name = "arima-copula";
    for (int which = 0; which < 2; ++which) {
        auto& r = reports[which];
        r.horizon = horizon;
        r.predicted = which == 0 ? plain : coupled;
        r.actual = target_test.values();
        for (int h = 0; h < horizon; ++h) r.months.push_back(target_test.month_at(h));
        r.mse = mse(r.actual, r.predicted);
    }
    write_text(cfg.out_path("validation.json"), validation_report_json(reports));
}

namespace {

// Markdown rendering helpers for the report.
std::string csv_to_markdown(const std::string& path, int max_rows = 100000) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    std::string line;
    std::string out;
    int row = 0;
    while (std::getline(in, line) && row <= max_rows) {
        out += "| ";
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        for (auto& c : cells) {
            try {
                std::size_t used = 0;
                const double v = std::stod(c, &used);
                if (used == c.size()) c = fmt6(v);
            } catch (...) {
            }
            out += c + " | ";
        }
        out += "\n";
        if (row == 0) {
            out += "|";
            for (std::size_t i = 0; i < cells.size(); ++i) out += "---|";
            out += "\n";
        }
        ++row;
    }
    return out;
}

std::string test_json_row(const PipelineConfig& cfg, const std::string& file) {
    const auto j = nlohmann::json::parse(read_text(cfg.out_path(file)));
    return "| " + j.at("test_name").get<std::string>() + " | " +
           fmt6(j.at("statistic").get<double>()) + " | " + fmt6(j.at("p_value").get<double>()) +
           " | " + fmt6(j.at("df_or_n").get<double>()) + " |\n";
}

}  // namespace

void run_report(const PipelineConfig& cfg) {
    ensure_out_dir(cfg);
    std::string md = "# Pipeline report\n\n";

    md += "## Portmanteau tests on the modeled series\n\n";
    md += "| series | statistic | p-value | df |\n|---|---|---|---|\n";
    for (const auto& sc : cfg.series) {
        const auto j =
            nlohmann::json::parse(read_text(cfg.out_path(sc.name + "_ljung_box.json")));
        md += "| " + sc.name + " | " + fmt6(j.at("statistic").get<double>()) + " | " +
              fmt6(j.at("p_value").get<double>()) + " | " + fmt6(j.at("df_or_n").get<double>()) +
              " |\n";
    }
    md += "\n";

    md += "## Fitted models\n\n";
    for (const auto& sc : cfg.series) {
        md += "### " + sc.name + " " + sc.spec.str() + "\n\n";
        md += csv_to_markdown(cfg.out_path(sc.name + "_coefficients.csv"));
        md += "\n";
    }

    md += "## Residual normality (Shapiro-Wilk)\n\n";
    md += "| series | W | p-value | n |\n|---|---|---|---|\n";
    for (const auto& sc : cfg.series) {
        const auto j = nlohmann::json::parse(read_text(cfg.out_path(sc.name + "_shapiro.json")));
        md += "| " + sc.name + " | " + fmt6(j.at("statistic").get<double>()) + " | " +
              fmt6(j.at("p_value").get<double>()) + " | " + fmt6(j.at("df_or_n").get<double>()) +
              " |\n";
    }
    md += "\n";

    md += "## Portmanteau tests on residuals\n\n";
    md += "| series | statistic | p-value | df |\n|---|---|---|---|\n";
    for (const auto& sc : cfg.series) {
        const auto j =
            nlohmann::json::parse(read_text(cfg.out_path(sc.name + "_resid_ljung_box.json")));
        md += "| " + sc.name + " | " + fmt6(j.at("statistic").get<double>()) + " | " +
              fmt6(j.at("p_value").get<double>()) + " | " + fmt6(j.at("df_or_n").get<double>()) +
              " |\n";
    }
    md += "\n";

    md += "## Rank correlations of residuals\n\n";
    md += csv_to_markdown(cfg.out_path("rank_correlations.csv"));
    md += "\n";

    if (fs::exists(cfg.out_path("independence.json"))) {
        md += "## Multivariate independence test\n\n";
        md += "| test | statistic | p-value | n |\n|---|---|---|---|\n";
        md += test_json_row(cfg, "independence.json");
        md += "\n";
    }

    md += "## Copula goodness of fit\n\n";
    md += csv_to_markdown(cfg.out_path("gof.csv"));
    md += "\n";

    md += "## Forecasts\n\n";
    md += "Selected coupling: see coupled.json. Point column is the marginal "
          "ARIMA forecast; the rest summarize the coupled Monte Carlo "
          "distribution.\n\n";
    {
        std::ifstream point_in(cfg.out_path("arima_forecast.csv"));
        std::ifstream joint_in(cfg.out_path("forecast.csv"));
        if (!point_in) raise(Errc::io_error, "cannot open " + cfg.out_path("arima_forecast.csv"));
        if (!joint_in) raise(Errc::io_error, "cannot open " + cfg.out_path("forecast.csv"));
        std::string pl, jl;
        std::getline(point_in, pl);
        std::getline(joint_in, jl);
        md += "| month | arima | coupled median | coupled mean | lo95 | hi95 |\n";
        md += "|---|---|---|---|---|---|\n";
        while (std::getline(point_in, pl) && std::getline(joint_in, jl)) {
            std::stringstream ps(pl), js(jl);
            std::string month, pval, cell;
            std::getline(ps, month, ',');
            std::getline(ps, pval, ',');
            md += "| " + month + " | " + fmt6(std::stod(pval));
            std::getline(js, cell, ',');  // month again
            while (std::getline(js, cell, ',')) md += " | " + fmt6(std::stod(cell));
            md += " |\n";
        }
        md += "\n";
    }

    if (fs::exists(cfg.out_path("validation.json"))) {
        md += "## Cross validation\n\n";
        const auto j = nlohmann::json::parse(read_text(cfg.out_path("validation.json")));
        md += "| model | MSE | horizon |\n|---|---|---|\n";
        for (const auto& r : j)
            md += "| " + r.at("model_name").get<std::string>() + " | " +
                  fmt6(r.at("mse").get<double>()) + " | " +
                  std::to_string(r.at("horizon").get<int>()) + " |\n";
        md += "\n";
    }

    write_text(cfg.out_path("report.md"), md);
}

}  // namespace arcop
