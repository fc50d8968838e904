// Command-line front end for the ARIMA-copula pipeline:
//   ingest -> diagnose -> fit-arima -> fit-copula -> gof -> forecast ->
//   validate -> report
// Every subcommand reads the config file plus the previous stages' artifacts
// from the output directory and writes its own files there.

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "arcop/error.hpp"
#include "arcop/pipeline.hpp"

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
};

arcop::PipelineConfig load(const GlobalOptions& opt) {
    arcop::PipelineConfig cfg = arcop::load_config(opt.config_path);
    if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
    if (const char* env = std::getenv("ARCOP_OUT"); env && *env) cfg.out_dir = env;
    if (opt.seed_set) cfg.seed = opt.seed_override;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ARIMA-copula time series pipeline"};
    app.require_subcommand(1);

    GlobalOptions opt;
    app.add_option("--config", opt.config_path, "pipeline config file")
        ->required()
        ->envname("ARCOP_CONFIG");
    app.add_option("--out", opt.out_override, "output directory (overrides config)");
    app.add_option("--seed", opt.seed_override, "seed override")
        ->each([&opt](const std::string&) { opt.seed_set = true; });

    bool unconditional = false;

    auto* ingest = app.add_subcommand("ingest", "read CSVs, aggregate to monthly, transform");
    auto* diagnose = app.add_subcommand("diagnose", "ACF/PACF, portmanteau and normality tests");
    auto* fit_arima = app.add_subcommand("fit-arima", "CSS-fit the configured SARIMA models");
    auto* fit_copula =
        app.add_subcommand("fit-copula", "rank correlations and residual copula fit");
    auto* gof = app.add_subcommand("gof", "bootstrap goodness-of-fit per family");
    std::string families_override;
    gof->add_option("--families", families_override,
                    "comma-separated family list (overrides config)");
    auto* forecast = app.add_subcommand("forecast", "coupled Monte Carlo forecast");
    auto* validate = app.add_subcommand("validate", "train/test split and MSE comparison");
    validate->add_flag("--unconditional", unconditional,
                       "do not condition the coupled forecaster on the realized driver path");
    auto* report = app.add_subcommand("report", "assemble all artifacts into report.md");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        arcop::PipelineConfig cfg = load(opt);
        if (!families_override.empty()) {
            cfg.families.clear();
            std::string item;
            std::stringstream ss(families_override);
            while (std::getline(ss, item, ',')) cfg.families.push_back(arcop::parse_family(item));
        }
        if (ingest->parsed()) arcop::run_ingest(cfg);
        if (diagnose->parsed()) arcop::run_diagnose(cfg);
        if (fit_arima->parsed()) arcop::run_fit_arima(cfg);
        if (fit_copula->parsed()) arcop::run_fit_copula(cfg);
        if (gof->parsed()) arcop::run_gof(cfg);
        if (forecast->parsed()) arcop::run_forecast(cfg);
        if (validate->parsed()) arcop::run_validate(cfg, unconditional);
        if (report->parsed()) arcop::run_report(cfg);
    } catch (const arcop::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
