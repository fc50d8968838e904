#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace arcop {

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization. Stops when the spread of simplex
/// function values drops below `tol` or the evaluation budget is exhausted.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& start, double step,
                                    double tol = 1e-10, int max_evals = 2000) {
    const std::size_t n = start.size();
    NelderMeadResult result;
    if (n == 0) {
        result.x = start;
        result.fx = f(start);
        result.evaluations = 1;
        result.converged = true;
        return result;
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::vector<double>> x(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += (step != 0.0 ? step : 0.1);

    std::vector<double> fx(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fx[i] = f(x[i]);
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_order = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    };

    while (evals < max_evals) {
        sort_order();
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        if (std::fabs(fx[worst] - fx[best]) <= tol * (1.0 + std::fabs(fx[best]))) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += x[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](const std::vector<double>& from, double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (centroid[j] - from[j]);
            return p;
        };

        const auto reflected = blend(x[worst], alpha);
        const double fr = f(reflected);
        ++evals;
        if (fr < fx[best]) {
            const auto expanded = blend(x[worst], gamma);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                x[worst] = expanded;
                fx[worst] = fe;
            } else {
                x[worst] = reflected;
                fx[worst] = fr;
            }
        } else if (fr < fx[second_worst]) {
            x[worst] = reflected;
            fx[worst] = fr;
        } else {
            const bool outside = fr < fx[worst];
            std::vector<double> contracted(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double toward = outside ? reflected[j] : x[worst][j];
                contracted[j] = centroid[j] + rho * (toward - centroid[j]);
            }
            const double fc = f(contracted);
            ++evals;
            if (fc < (outside ? fr : fx[worst])) {
                x[worst] = contracted;
                fx[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        x[i][j] = x[best][j] + sigma * (x[i][j] - x[best][j]);
                    fx[i] = f(x[i]);
                    ++evals;
                }
            }
        }
    }

    sort_order();
    result.x = x[order[0]];
    result.fx = fx[order[0]];
    result.evaluations = evals;
    return result;
}

}  // namespace arcop
