// Benchmarks the OpenMP kernels against the serial reference implementation
// and checks that both policies produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "arcop/forecast.hpp"
#include "arcop/gof.hpp"
#include "arcop/parallel.hpp"
#include "arcop/rng.hpp"
#include "arcop/sarima.hpp"
#include "arcop/stats.hpp"

using namespace arcop;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-24s %10.3fs %10.3fs %8.2fx   %s\n", name, serial, parallel,
                serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", hardware_threads());
    std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        const auto uv = sample({CopulaFamily::clayton, 0.5, 25.0, FitMethod::fixed}, 150, 7);
        const auto ranked = pseudo_observations({uv.column(0), uv.column(1)});
        GofResult rs{}, rp{};
        const double ts = seconds([&] {
            rs = gof_bootstrap(ranked, CopulaFamily::clayton, 2000, 42,
                               FitMethod::tau_inversion, 25.0, ExecutionPolicy::serial);
        });
        const double tp = seconds([&] {
            rp = gof_bootstrap(ranked, CopulaFamily::clayton, 2000, 42,
                               FitMethod::tau_inversion, 25.0, ExecutionPolicy::parallel);
        });
        report("gof_bootstrap", ts, tp, rs.p_value == rp.p_value && rs.s_n == rp.s_n);
    }

    {
        Rng rng(3);
        std::vector<double> x(200), y(200), z(200);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.normal();
            y[i] = rng.normal() + 0.2 * x[i];
            z[i] = rng.normal();
        }
        TestResult rs, rp;
        const double ts = seconds([&] {
            rs = independence_test_multivariate({x, y, z}, 2000, 42, ExecutionPolicy::serial);
        });
        const double tp = seconds([&] {
            rp = independence_test_multivariate({x, y, z}, 2000, 42, ExecutionPolicy::parallel);
        });
        report("independence_test", ts, tp,
               rs.p_value == rp.p_value && rs.statistic == rp.statistic);
    }

    {
        // A coupled model over simulated series.
        Rng rng(5);
        const auto uv = sample({CopulaFamily::clayton, 0.4, 25.0, FitMethod::fixed}, 260, 9);
        std::vector<double> et(260), ed(260);
        for (std::size_t i = 0; i < 260; ++i) {
            et[i] = 0.035 * stats::norm_quantile(uv(i, 0));
            ed[i] = 0.094 * stats::norm_quantile(uv(i, 1));
        }
        const auto yt = simulate_process(parse_sarima_spec("(0,2,2)"),
                                         {{}, {0.2565, 0.6380}, {}, {}}, et, {9.2, 9.2});
        const auto yd = simulate_process(parse_sarima_spec("(1,1,0)"),
                                         {{0.2061}, {}, {}, {}}, ed, {3.2, 3.2});
        const Series st({1998, 1}, std::vector<double>(yt.end() - 200, yt.end()));
        const Series sd({1998, 1}, std::vector<double>(yd.end() - 200, yd.end()));
        const auto m = couple(fit_css(st, parse_sarima_spec("(0,2,2)")),
                              fit_css(sd, parse_sarima_spec("(1,1,0)")),
                              CopulaFamily::clayton);
        ForecastDistribution fs, fp;
        const double ts =
            seconds([&] { fs = forecast_joint(m, 12, 100000, 42, ExecutionPolicy::serial); });
        const double tp =
            seconds([&] { fp = forecast_joint(m, 12, 100000, 42, ExecutionPolicy::parallel); });
        report("forecast_joint", ts, tp, fs.samples == fp.samples);
    }

    return 0;
}
