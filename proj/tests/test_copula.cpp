#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "arcop/copula.hpp"
#include "arcop/rng.hpp"
#include "arcop/stats.hpp"
#include "test_util.hpp"

using namespace arcop;

namespace {

FittedCopula make(CopulaFamily family, double theta, double df = 25.0) {
    return {family, theta, df, FitMethod::fixed};
}

// Representative parameters used across the axiom checks (magnitudes match
// the dependence strengths this library is used at).
const std::vector<FittedCopula> kRepresentatives = {
    make(CopulaFamily::independence, 0.0),
    make(CopulaFamily::gaussian, 0.154899),
    make(CopulaFamily::student_t, 0.152870, 25.0),
    make(CopulaFamily::frank, 0.872933),
    make(CopulaFamily::clayton, 0.303698),
    make(CopulaFamily::gumbel, 1.2),
    make(CopulaFamily::plackett, 1.578407),
};

// O(n^2) concordance count, the enumeration oracle for Knight's algorithm.
double kendall_brute(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double concordant = 0, discordant = 0, tx = 0, ty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = (x[i] - x[j]) * (y[i] - y[j]);
            if (x[i] == x[j] && y[i] == y[j]) continue;
            if (x[i] == x[j]) { ++tx; continue; }
            if (y[i] == y[j]) { ++ty; continue; }
            (a > 0 ? concordant : discordant) += 1;
        }
    }
    const double n0 = 0.5 * n * (n - 1);
    bool ties = false;
    for (std::size_t i = 0; i < n && !ties; ++i)
        for (std::size_t j = i + 1; j < n && !ties; ++j)
            ties = (x[i] == x[j]) || (y[i] == y[j]);
    if (!ties) return (concordant - discordant) / n0;
    // tau-b: pairs tied in x (resp. y) removed from each denominator factor.
    double n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (x[i] == x[j]) ++n1;
            if (y[i] == y[j]) ++n2;
        }
    return (concordant - discordant) / std::sqrt((n0 - n1) * (n0 - n2));
}

}  // namespace

TEST_CASE("table-1 spot values for the tau relations") {
    CHECK(tau_to_param(CopulaFamily::gumbel, 0.5) == 2.0);  // exactly
    CHECK(tau_to_param(CopulaFamily::gaussian, 0.5) ==
          doctest::Approx(0.70710678118654746).epsilon(1e-12));
    CHECK(tau_to_param(CopulaFamily::student_t, 0.5) ==
          doctest::Approx(std::sin(stats::pi / 4.0)).epsilon(1e-12));
    // Clayton round trip: theta = 2 -> tau = 0.5 -> theta = 2.
    CHECK(param_to_tau(CopulaFamily::clayton, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tau_to_param(CopulaFamily::clayton, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("frank tau matches an independent Debye-function evaluation") {
    CHECK(param_to_tau(CopulaFamily::frank, 0.5) ==
          doctest::Approx(0.055417254324845899).epsilon(1e-10));
    CHECK(param_to_tau(CopulaFamily::frank, 2.0) ==
          doctest::Approx(0.21389456921962013).epsilon(1e-10));
    CHECK(param_to_tau(CopulaFamily::frank, 5.0) ==
          doctest::Approx(0.4567009581601168).epsilon(1e-10));
    CHECK(param_to_tau(CopulaFamily::frank, 0.872933) ==
          doctest::Approx(0.096262899118443657).epsilon(1e-10));
    CHECK(param_to_tau(CopulaFamily::frank, -3.0) ==
          doctest::Approx(-0.30724695943072378).epsilon(1e-10));
    CHECK(param_to_tau(CopulaFamily::frank, 20.0) ==
          doctest::Approx(0.81644934023563998).epsilon(1e-10));
}

TEST_CASE("plackett tau matches an independent 2-D quadrature") {
    CHECK(param_to_tau(CopulaFamily::plackett, 0.25) ==
          doctest::Approx(-0.30026211009685766).epsilon(1e-8));
    CHECK(param_to_tau(CopulaFamily::plackett, 2.0) ==
          doctest::Approx(0.15304849863518855).epsilon(1e-8));
    CHECK(param_to_tau(CopulaFamily::plackett, 1.578407) ==
          doctest::Approx(0.10114439347737436).epsilon(1e-8));
    CHECK(param_to_tau(CopulaFamily::plackett, 20.0) ==
          doctest::Approx(0.59165897464442596).epsilon(1e-7));
}

TEST_CASE("tau round trips across all families") {
    for (auto family : {CopulaFamily::gaussian, CopulaFamily::student_t, CopulaFamily::frank,
                        CopulaFamily::plackett}) {
        for (double tau = -0.8; tau <= 0.801; tau += 0.1) {
            if (std::fabs(tau) < 1e-9) continue;
            const double theta = tau_to_param(family, tau);
            CHECK(param_to_tau(family, theta) == doctest::Approx(tau).epsilon(1e-10));
        }
    }
    for (auto family : {CopulaFamily::clayton, CopulaFamily::gumbel}) {
        for (double tau = 0.05; tau <= 0.951; tau += 0.05) {
            const double theta = tau_to_param(family, tau);
            CHECK(param_to_tau(family, theta) == doctest::Approx(tau).epsilon(1e-10));
        }
    }
}

TEST_CASE("tau out of range raises") {
    CHECK_THROWS_WITH_AS(tau_to_param(CopulaFamily::clayton, -0.2),
                         doctest::Contains("TauOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(tau_to_param(CopulaFamily::gumbel, -0.1),
                         doctest::Contains("TauOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(tau_to_param(CopulaFamily::gaussian, 1.0),
                         doctest::Contains("TauOutOfRange"), Error);
}

TEST_CASE("copula cdf spot values") {
    // Clayton theta=1 at (.5,.5): (2+2-1)^-1 = 1/3.
    CHECK(copula_cdf(make(CopulaFamily::clayton, 1.0), 0.5, 0.5) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Gaussian R = sin(pi/4) at (.5,.5): independent bivariate-normal value.
    CHECK(copula_cdf(make(CopulaFamily::gaussian, 0.7071067811865476), 0.5, 0.5) ==
          doctest::Approx(0.375).epsilon(1e-7));
}

TEST_CASE("gaussian copula cdf against a brute-force double integral") {
    const double r = 0.7071067811865476;
    auto oracle = [&](double u, double v) {
        const double x = stats::norm_quantile(u), y = stats::norm_quantile(v);
        auto inner = [&](double s) {
            return stats::integrate(
                [&](double t) {
                    return std::exp(-(s * s - 2.0 * r * s * t + t * t) / (2.0 * (1 - r * r))) /
                           (2.0 * stats::pi * std::sqrt(1 - r * r));
                },
                -8.0, y, 12, 20);
        };
        return stats::integrate(inner, -8.0, x, 12, 20);
    };
    for (auto [u, v] : {std::pair{0.5, 0.5}, {0.3, 0.7}, {0.9, 0.2}}) {
        CHECK(copula_cdf(make(CopulaFamily::gaussian, r), u, v) ==
              doctest::Approx(oracle(u, v)).epsilon(1e-6));
    }
}

TEST_CASE("copula boundary conditions") {
    Rng rng(11);
    for (const auto& c : kRepresentatives) {
        for (int i = 0; i < 20; ++i) {
            const double u = rng.uniform();
            CHECK(copula_cdf(c, u, 1.0) == doctest::Approx(u).epsilon(1e-12));
            CHECK(copula_cdf(c, 1.0, u) == doctest::Approx(u).epsilon(1e-12));
            CHECK(copula_cdf(c, u, 0.0) == 0.0);
            CHECK(copula_cdf(c, 0.0, u) == 0.0);
        }
    }
}

TEST_CASE("frechet bounds and 2-increasingness on random rectangles") {
    Rng rng(13);
    for (const auto& c : kRepresentatives) {
        for (int i = 0; i < 2000; ++i) {
            double u1 = rng.uniform(), u2 = rng.uniform();
            double v1 = rng.uniform(), v2 = rng.uniform();
            if (u1 > u2) std::swap(u1, u2);
            if (v1 > v2) std::swap(v1, v2);
            const double c22 = copula_cdf(c, u2, v2);
            const double c12 = copula_cdf(c, u1, v2);
            const double c21 = copula_cdf(c, u2, v1);
            const double c11 = copula_cdf(c, u1, v1);
            CHECK(c22 - c12 - c21 + c11 >= -1e-12);
            CHECK(c22 >= std::max(u2 + v2 - 1.0, 0.0) - 1e-12);
            CHECK(c22 <= std::min(u2, v2) + 1e-12);
        }
    }
}

TEST_CASE("density is the mixed second derivative of the cdf") {
    const double h = 1e-4;
    Rng rng(17);
    for (const auto& c : kRepresentatives) {
        for (int i = 0; i < 25; ++i) {
            const double u = 0.05 + 0.9 * rng.uniform();
            const double v = 0.05 + 0.9 * rng.uniform();
            const double fd = (copula_cdf(c, u + h, v + h) - copula_cdf(c, u + h, v - h) -
                               copula_cdf(c, u - h, v + h) + copula_cdf(c, u - h, v - h)) /
                              (4.0 * h * h);
            CHECK(copula_density(c, u, v) == doctest::Approx(fd).epsilon(2e-5));
        }
    }
}

TEST_CASE("density integrates to one") {
    CHECK(copula_density(make(CopulaFamily::independence, 0.0), 0.3, 0.9) == 1.0);
    for (const auto& c : kRepresentatives) {
        const double total = stats::integrate_unit_square(
            [&](double u, double v) { return copula_density(c, u, v); }, 5);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("density rejects boundary points") {
    CHECK_THROWS_WITH_AS(copula_density(make(CopulaFamily::clayton, 1.0), 0.0, 0.5),
                         doctest::Contains("BoundaryPoint"), Error);
    CHECK_THROWS_WITH_AS(copula_density(make(CopulaFamily::gumbel, 2.0), 0.5, 1.0),
                         doctest::Contains("BoundaryPoint"), Error);
}

TEST_CASE("conditional quantile inverts the conditional cdf") {
    Rng rng(19);
    for (const auto& c : kRepresentatives) {
        for (int i = 0; i < 40; ++i) {
            const double u = 0.02 + 0.96 * rng.uniform();
            const double w = 0.02 + 0.96 * rng.uniform();
            const double v = conditional_quantile(c, w, u);
            CHECK(conditional_cdf(c, v, u) == doctest::Approx(w).epsilon(1e-8));
        }
    }
}

TEST_CASE("sampler reproduces the family tau") {
    for (const auto& c : kRepresentatives) {
        if (c.family == CopulaFamily::independence) continue;
        const auto uv = sample(c, 20000, 555);
        const double tau_hat = kendall_tau(uv.column(0), uv.column(1)).tau;
        const double tau_true = param_to_tau(c.family, c.theta);
        CHECK(tau_hat == doctest::Approx(tau_true).scale(1.0).epsilon(0.025));
    }
}

TEST_CASE("sampler margins are uniform") {
    const auto uv = sample(make(CopulaFamily::clayton, 2.0), 20000, 777);
    CHECK(test::ks_distance_uniform(uv.column(0)) < 0.015);
    CHECK(test::ks_distance_uniform(uv.column(1)) < 0.015);
}

TEST_CASE("gumbel at theta=1 reduces to independence") {
    const auto uv = sample(make(CopulaFamily::gumbel, 1.0), 20000, 999);
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    const double n = static_cast<double>(uv.n);
    for (std::size_t i = 0; i < uv.n; ++i) {
        sx += uv(i, 0);
        sy += uv(i, 1);
        sxy += uv(i, 0) * uv(i, 1);
        sxx += uv(i, 0) * uv(i, 0);
        syy += uv(i, 1) * uv(i, 1);
    }
    const double corr = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    CHECK(std::fabs(corr) < 0.02);
}

TEST_CASE("sampler agrees with the cdf on a grid") {
    for (auto family : {CopulaFamily::clayton, CopulaFamily::frank, CopulaFamily::gaussian}) {
        const auto c = make(family, family == CopulaFamily::gaussian ? 0.5 : 1.5);
        const std::size_t n = 50000;
        const auto uv = sample(c, n, 2023);
        for (double u = 1.0 / 6; u < 0.99; u += 1.0 / 6) {
            for (double v = 1.0 / 6; v < 0.99; v += 1.0 / 6) {
                std::size_t count = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (uv(i, 0) <= u && uv(i, 1) <= v) ++count;
                CHECK(static_cast<double>(count) / n ==
                      doctest::Approx(copula_cdf(c, u, v)).scale(1.0).epsilon(0.01));
            }
        }
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto a = sample(make(CopulaFamily::plackett, 3.0), 500, 42);
    const auto b = sample(make(CopulaFamily::plackett, 3.0), 500, 42);
    CHECK(a.data == b.data);
    const auto c = sample(make(CopulaFamily::plackett, 3.0), 500, 43);
    CHECK(a.data != c.data);
}

TEST_CASE("kendall tau examples and oracle values") {
    CHECK(kendall_tau({1, 2, 3}, {1, 3, 2}).tau == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Perfect concordance through any strictly increasing map.
    std::vector<double> x{0.3, 1.7, 2.2, 5.0, 9.1};
    std::vector<double> gx, neg;
    for (double v : x) {
        gx.push_back(std::exp(v));
        neg.push_back(-v);
    }
    CHECK(kendall_tau(x, gx).tau == doctest::Approx(1.0));
    CHECK(kendall_tau(x, neg).tau == doctest::Approx(-1.0));

    // Reference values from an independent implementation (SciPy 1.15).
    const std::vector<double> v1{17, 86, 60, 77, 47, 3, 70, 87, 88, 92};
    const std::vector<double> v2{70, 29, 85, 61, 80, 34, 60, 31, 73, 66};
    const auto r = kendall_tau(v1, v2);
    CHECK(r.tau == doctest::Approx(-0.066666666666666666).epsilon(1e-12));
    CHECK(r.p_tau == doctest::Approx(0.78844673426447098).epsilon(1e-10));
    const std::vector<double> v1t{17, 86, 60, 77, 47, 3, 70, 47, 88, 92};
    CHECK(kendall_tau(v1t, v2).tau == doctest::Approx(0.044946657497549468).epsilon(1e-12));
}

TEST_CASE("kendall tau matches enumeration on random vectors with ties") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform() * 40);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::floor(rng.uniform() * 8);  // heavy ties
            y[i] = std::floor(rng.uniform() * 8);
        }
        bool degenerate = true;
        for (std::size_t i = 1; i < n; ++i)
            if (x[i] != x[0] || y[i] != y[0]) degenerate = false;
        if (degenerate) continue;
        try {
            CHECK(kendall_tau(x, y).tau == doctest::Approx(kendall_brute(x, y)).epsilon(1e-12));
        } catch (const Error& e) {
            CHECK(e.code() == Errc::degenerate_series);  // a fully tied column
        }
    }
}

TEST_CASE("rank invariance under strictly increasing transforms is exact") {
    Rng rng(21);
    std::vector<double> x(60), y(60);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.normal();
        y[i] = rng.normal() + 0.5 * x[i];
    }
    std::vector<double> gx, hy;
    for (double v : x) gx.push_back(std::exp(2.0 * v));
    for (double v : y) hy.push_back(v * v * v + 5.0 * v);  // strictly increasing
    CHECK(kendall_tau(x, y).tau == kendall_tau(gx, hy).tau);
    CHECK(spearman_rho(x, y).rho_s == spearman_rho(gx, hy).rho_s);
}

TEST_CASE("spearman rho examples and oracle values") {
    CHECK(spearman_rho({1, 2, 3}, {3, 1, 2}).rho_s == doctest::Approx(-0.5).epsilon(1e-14));
    std::vector<double> x{0.3, 1.7, 2.2, 5.0, 9.1};
    std::vector<double> gx;
    for (double v : x) gx.push_back(std::atan(v));
    CHECK(spearman_rho(x, gx).rho_s == doctest::Approx(1.0));
    CHECK(spearman_rho(x, gx).p_rho == 0.0);

    const std::vector<double> v1{17, 86, 60, 77, 47, 3, 70, 87, 88, 92};
    const std::vector<double> v2{70, 29, 85, 61, 80, 34, 60, 31, 73, 66};
    const auto r = spearman_rho(v1, v2);
    CHECK(r.rho_s == doctest::Approx(-0.16363636363636364).epsilon(1e-12));
    CHECK(r.p_rho == doctest::Approx(0.65147734279624281).epsilon(1e-10));
    const std::vector<double> v1t{17, 86, 60, 77, 47, 3, 70, 47, 88, 92};
    CHECK(spearman_rho(v1t, v2).rho_s ==
          doctest::Approx(0.024316221747202587).epsilon(1e-12));
}

TEST_CASE("spearman of independent pairs stays small") {
    int within = 0;
    const int reps = 100;
    for (std::uint64_t seed = 0; seed < reps; ++seed) {
        Rng rng(3000 + seed);
        std::vector<double> x(157), y(157);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.normal();
            y[i] = rng.normal();
        }
        if (std::fabs(spearman_rho(x, y).rho_s) < 0.16) ++within;
    }
    CHECK(static_cast<double>(within) / reps >= 0.95);
}

TEST_CASE("rank statistic error paths") {
    CHECK_THROWS_WITH_AS(kendall_tau({1, 2}, {1, 2, 3}), doctest::Contains("LengthMismatch"),
                         Error);
    CHECK_THROWS_WITH_AS(spearman_rho({1, 1, 1}, {1, 2, 3}),
                         doctest::Contains("DegenerateSeries"), Error);
}

TEST_CASE("pseudo-observations") {
    const auto u = pseudo_observations({{10, 20, 30}});
    CHECK(u(0, 0) == doctest::Approx(0.25));
    CHECK(u(1, 0) == doctest::Approx(0.5));
    CHECK(u(2, 0) == doctest::Approx(0.75));

    // Strictly monotone transforms leave the output unchanged.
    const auto a = pseudo_observations({{3.0, -1.0, 7.0, 2.0}});
    const auto b = pseudo_observations({{std::exp(3.0), std::exp(-1.0), std::exp(7.0),
                                         std::exp(2.0)}});
    CHECK(a.data == b.data);

    // Midranks on ties.
    const auto t = pseudo_observations({{5.0, 5.0}});
    CHECK(t(0, 0) == doctest::Approx(0.5));
    CHECK(t(1, 0) == doctest::Approx(0.5));

    // Without ties each column is a permutation of i/(n+1).
    const auto p = pseudo_observations({{0.3, -2.0, 1.4, 0.9, -0.1}});
    std::vector<double> col = p.column(0);
    std::sort(col.begin(), col.end());
    for (std::size_t i = 0; i < col.size(); ++i)
        CHECK(col[i] == doctest::Approx((i + 1) / 6.0).epsilon(1e-14));
}

TEST_CASE("fit_copula recovers a known clayton parameter") {
    const double theta = 0.303698;
    const auto uv = sample(make(CopulaFamily::clayton, theta), 50000, 31337);
    const auto ranked = pseudo_observations({uv.column(0), uv.column(1)});
    const auto fit = fit_copula(ranked, CopulaFamily::clayton, FitMethod::tau_inversion);
    CHECK(fit.theta == doctest::Approx(theta).scale(1.0).epsilon(0.03));
    const auto mle = fit_copula(ranked, CopulaFamily::clayton, FitMethod::pseudo_mle);
    CHECK(mle.theta == doctest::Approx(theta).scale(1.0).epsilon(0.05));
    CHECK(mle.method == FitMethod::pseudo_mle);
}

TEST_CASE("fit_copula near independence gives small frank theta") {
    Rng rng(606);
    std::vector<double> x(100000), y(100000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform();
        y[i] = rng.uniform();
    }
    const auto fit = fit_copula(pseudo_observations({x, y}), CopulaFamily::frank,
                                FitMethod::tau_inversion);
    CHECK(std::fabs(fit.theta) < 0.1);
}

TEST_CASE("fit_copula rejects an incompatible family") {
    Rng rng(404);
    std::vector<double> x(500), y(500);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.normal();
        y[i] = -x[i] + 0.3 * rng.normal();  // strongly negative dependence
    }
    CHECK_THROWS_WITH_AS(
        fit_copula(pseudo_observations({x, y}), CopulaFamily::clayton, FitMethod::tau_inversion),
        doctest::Contains("FamilyIncompatible"), Error);
}

TEST_CASE("pseudo-MLE recovers a student-t correlation with fixed df") {
    const auto uv = sample(make(CopulaFamily::student_t, 0.5, 10.0), 4000, 51);
    const auto ranked = pseudo_observations({uv.column(0), uv.column(1)});
    const auto fit = fit_copula(ranked, CopulaFamily::student_t, FitMethod::pseudo_mle, 10.0);
    CHECK(fit.df == 10.0);
    CHECK(fit.theta == doctest::Approx(0.5).scale(1.0).epsilon(0.08));
}

TEST_CASE("lower tail dependence") {
    CHECK(lower_tail_dependence(make(CopulaFamily::clayton, 1.0)) == doctest::Approx(0.5));
    CHECK(lower_tail_dependence(make(CopulaFamily::gumbel, 3.0)) == 0.0);
    CHECK(lower_tail_dependence(make(CopulaFamily::frank, 5.0)) == 0.0);
    CHECK(lower_tail_dependence(make(CopulaFamily::plackett, 5.0)) == 0.0);
    CHECK(lower_tail_dependence(make(CopulaFamily::gaussian, 0.7)) == 0.0);
    // t copula closed form, value from an independent implementation.
    CHECK(lower_tail_dependence(make(CopulaFamily::student_t, 0.3, 4.0)) ==
          doctest::Approx(0.16175748465203754).epsilon(1e-10));
    CHECK(lower_tail_dependence(make(CopulaFamily::clayton, 0.303698)) ==
          doctest::Approx(0.10204343214514221).epsilon(1e-12));
}

TEST_CASE("clayton tail frequency matches the finite-level theory value") {
    // Monte Carlo conditional frequency P(V<q | U<q) against the exact
    // C(q,q)/q; at q = 0.005 that value is 0.14438, still far above the
    // q -> 0 limit 2^{-1/theta} = 0.10204 (slow convergence in q).
    const double theta = 0.303698, q = 0.005;
    const auto c = make(CopulaFamily::clayton, theta);
    const double exact = copula_cdf(c, q, q) / q;
    CHECK(exact == doctest::Approx(0.14438043371295387).epsilon(1e-10));
    const std::size_t n = 400000;
    const auto uv = sample(c, n, 20250808);
    std::size_t both = 0, u_below = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (uv(i, 0) < q) {
            ++u_below;
            if (uv(i, 1) < q) ++both;
        }
    }
    REQUIRE(u_below > 0);
    const double freq = static_cast<double>(both) / static_cast<double>(u_below);
    CHECK(freq == doctest::Approx(exact).scale(1.0).epsilon(0.02));
}

TEST_CASE("fitted copula serialization round trip") {
    const auto c = FittedCopula{CopulaFamily::student_t, 0.152870, 25.0, FitMethod::pseudo_mle};
    const auto back = FittedCopula::from_json(c.to_json());
    CHECK(back.family == c.family);
    CHECK(back.theta == c.theta);
    CHECK(back.df == c.df);
    CHECK(back.method == c.method);
    CHECK(c.to_json().find("\"family\": \"t\"") != std::string::npos);
}

TEST_CASE("family names and parameter validation") {
    CHECK(parse_family("normal") == CopulaFamily::gaussian);
    CHECK(parse_family("Gaussian") == CopulaFamily::gaussian);
    CHECK(parse_family("t") == CopulaFamily::student_t);
    CHECK(family_name(CopulaFamily::gaussian) == "normal");
    CHECK_THROWS_AS(parse_family("beta"), Error);

    CHECK_THROWS_WITH_AS(copula_cdf(make(CopulaFamily::clayton, -1.0), 0.5, 0.5),
                         doctest::Contains("InvalidParameter"), Error);
    CHECK_THROWS_WITH_AS(copula_cdf(make(CopulaFamily::gumbel, 0.5), 0.5, 0.5),
                         doctest::Contains("InvalidParameter"), Error);
    CHECK_THROWS_WITH_AS(copula_cdf(make(CopulaFamily::student_t, 0.5, 1.5), 0.5, 0.5),
                         doctest::Contains("InvalidParameter"), Error);
}
