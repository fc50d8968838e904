#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arcop/copula.hpp"
#include "arcop/sarima.hpp"
#include "arcop/series.hpp"

namespace arcop {

struct SeriesConfig {
    std::string name;
    std::string file;
    bool log = false;
    SarimaSpec spec;
    bool spec_set = false;
};

/// Parsed pipeline configuration. All randomness flows from the single
/// mandatory seed; relative input paths resolve against the config file's
/// directory.
struct PipelineConfig {
    std::vector<SeriesConfig> series;  // in config order
    std::string target;
    std::string driver;
    CopulaFamily family = CopulaFamily::clayton;
    std::vector<CopulaFamily> families;
    FitMethod method = FitMethod::tau_inversion;
    double t_df = 25.0;
    int gof_n_boot = 250;
    int gof_n_perm = 1000;
    int horizon = 12;
    std::size_t n_sims = 20000;
    std::uint64_t seed = 0;
    std::optional<YearMonth> cutoff;
    std::string out_dir = "out";
    std::string base_dir;

    const SeriesConfig& get_series(const std::string& name) const;
    std::string resolve_input(const std::string& path) const;
    std::string out_path(const std::string& file) const;
};

PipelineConfig load_config(const std::string& path);

// Pipeline stages; each reads the config plus earlier stages' artifacts from
// the output directory and writes its own files there.
void run_ingest(const PipelineConfig& cfg);
void run_diagnose(const PipelineConfig& cfg);
void run_fit_arima(const PipelineConfig& cfg);
void run_fit_copula(const PipelineConfig& cfg);
void run_gof(const PipelineConfig& cfg);
void run_forecast(const PipelineConfig& cfg);
void run_validate(const PipelineConfig& cfg, bool unconditional = false);
void run_report(const PipelineConfig& cfg);

}  // namespace arcop
