#include "arcop/copula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "arcop/rng.hpp"
#include "arcop/stats.hpp"

#include <nlohmann/json.hpp>

namespace arcop {

std::string family_name(CopulaFamily family) {
    switch (family) {
        case CopulaFamily::independence: return "independence";
        case CopulaFamily::gaussian: return "normal";
        case CopulaFamily::student_t: return "t";
        case CopulaFamily::frank: return "frank";
        case CopulaFamily::clayton: return "clayton";
        case CopulaFamily::gumbel: return "gumbel";
        case CopulaFamily::plackett: return "plackett";
    }
    return "?";
}

CopulaFamily parse_family(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "independence" || s == "product") return CopulaFamily::independence;
    if (s == "normal" || s == "gaussian") return CopulaFamily::gaussian;
    if (s == "t" || s == "student_t" || s == "studentt") return CopulaFamily::student_t;
    if (s == "frank") return CopulaFamily::frank;
    if (s == "clayton") return CopulaFamily::clayton;
    if (s == "gumbel") return CopulaFamily::gumbel;
    if (s == "plackett") return CopulaFamily::plackett;
    raise(Errc::parse_error, "unknown copula family '" + name + "'");
}

std::string fit_method_name(FitMethod method) {
    switch (method) {
        case FitMethod::tau_inversion: return "tau_inversion";
        case FitMethod::pseudo_mle: return "pseudo_mle";
        case FitMethod::fixed: return "fixed";
    }
    return "?";
}

FitMethod parse_fit_method(const std::string& name) {
    if (name == "tau_inversion" || name == "itau") return FitMethod::tau_inversion;
    if (name == "pseudo_mle" || name == "mle") return FitMethod::pseudo_mle;
    if (name == "fixed") return FitMethod::fixed;
    raise(Errc::parse_error, "unknown fit method '" + name + "'");
}

void FittedCopula::validate() const {
    switch (family) {
        case CopulaFamily::independence:
            return;
        case CopulaFamily::gaussian:
            if (!(theta > -1.0 && theta < 1.0))
                raise(Errc::invalid_parameter, "normal copula requires -1 < R < 1");
            return;
        case CopulaFamily::student_t:
            if (!(theta > -1.0 && theta < 1.0))
                raise(Errc::invalid_parameter, "t copula requires -1 < R < 1");
            if (!(df > 2.0)) raise(Errc::invalid_parameter, "t copula requires df > 2");
            return;
        case CopulaFamily::frank:
            if (theta == 0.0 || !std::isfinite(theta))
                raise(Errc::invalid_parameter, "frank copula requires theta != 0");
            return;
        case CopulaFamily::clayton:
            if (!(theta > 0.0)) raise(Errc::invalid_parameter, "clayton copula requires theta > 0");
            return;
        case CopulaFamily::gumbel:
            if (!(theta >= 1.0)) raise(Errc::invalid_parameter, "gumbel copula requires theta >= 1");
            return;
        case CopulaFamily::plackett:
            if (!(theta > 0.0) || theta == 1.0)
                raise(Errc::invalid_parameter, "plackett copula requires theta > 0, theta != 1");
            return;
    }
}

std::string FittedCopula::to_json() const {
    nlohmann::json j;
    j["family"] = family_name(family);
    j["theta"] = theta;
    j["df"] = df;
    j["method"] = fit_method_name(method);
    return j.dump(2);
}

FittedCopula FittedCopula::from_json(const std::string& text) {
    try {
        const auto j = nlohmann::json::parse(text);
        FittedCopula c;
        c.family = parse_family(j.at("family").get<std::string>());
        c.theta = j.at("theta").get<double>();
        c.df = j.value("df", 25.0);
        c.method = parse_fit_method(j.at("method").get<std::string>());
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, std::string("bad copula JSON: ") + e.what());
    }
}

std::vector<double> PseudoSample::column(std::size_t j) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(i, j);
    return out;
}

PseudoSample PseudoSample::zeros(std::size_t n_, std::size_t k_) {
    return {n_, k_, std::vector<double>(n_ * k_, 0.0)};
}

// --- rank statistics ---

namespace {

std::vector<double> midranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
        i = j + 1;
    }
    return ranks;
}

// Counts inversions of y with a bottom-up merge sort.
std::uint64_t count_inversions(std::vector<double>& y) {
    const std::size_t n = y.size();
    std::vector<double> buf(n);
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (y[b] < y[a]) {
                    inversions += mid - a;
                    buf[out++] = y[b++];
                } else {
                    buf[out++] = y[a++];
                }
            }
            while (a < mid) buf[out++] = y[a++];
            while (b < hi) buf[out++] = y[b++];
            std::copy(buf.begin() + lo, buf.begin() + hi, y.begin() + lo);
        }
    }
    return inversions;
}

std::uint64_t tie_pairs(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
        const std::uint64_t t = j - i + 1;
        total += t * (t - 1) / 2;
        i = j + 1;
    }
    return total;
}

void check_pair(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        raise(Errc::length_mismatch, "sequences of length " + std::to_string(x.size()) + " and " +
                                         std::to_string(y.size()));
    if (x.size() < 2) raise(Errc::insufficient_length, "need n >= 2");
}

}  // namespace

RankCorrelation kendall_tau(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y);
    const std::size_t n = x.size();

    // Knight (1966): sort by (x, y), count discordances as inversions of y.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];

    // Pairs tied in x, and jointly tied pairs, from the sorted order.
    std::uint64_t n1 = 0, n3 = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const std::uint64_t t = j - i + 1;
        n1 += t * (t - 1) / 2;
        std::size_t a = i;
        while (a <= j) {
            std::size_t b = a;
            while (b + 1 <= j && y[order[b + 1]] == y[order[a]]) ++b;
            const std::uint64_t u = b - a + 1;
            n3 += u * (u - 1) / 2;
            a = b + 1;
        }
        i = j + 1;
    }
    const std::uint64_t n2 = tie_pairs(y);
    const std::uint64_t swaps = count_inversions(ys);
    const double n0 = 0.5 * static_cast<double>(n) * (n - 1);

    const double s = n0 - static_cast<double>(n1) - static_cast<double>(n2) +
                     static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
    double tau;
    if (n1 == 0 && n2 == 0) {
        tau = s / n0;
    } else {
        const double denom = std::sqrt((n0 - n1) * (n0 - n2));
        if (!(denom > 0.0)) raise(Errc::degenerate_series, "a column is entirely tied");
        tau = s / denom;
    }

    RankCorrelation out;
    out.tau = tau;
    out.n = n;
    const double var = 2.0 * (2.0 * n + 5.0) / (9.0 * n * (n - 1.0));
    const double z = tau / std::sqrt(var);
    out.p_tau = 2.0 * (1.0 - stats::norm_cdf(std::fabs(z)));
    return out;
}

RankCorrelation spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    check_pair(x, y);
    const std::size_t n = x.size();
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        raise(Errc::degenerate_series, "zero rank variance");
    const double rho = sxy / std::sqrt(sxx * syy);

    RankCorrelation out;
    out.rho_s = rho;
    out.n = n;
    if (std::fabs(rho) >= 1.0) {
        out.p_rho = 0.0;
    } else {
        const double t = rho * std::sqrt((n - 2.0) / (1.0 - rho * rho));
        out.p_rho = 2.0 * (1.0 - stats::t_cdf(std::fabs(t), n - 2.0));
    }
    return out;
}

RankCorrelation rank_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    RankCorrelation out = kendall_tau(x, y);
    const RankCorrelation rho = spearman_rho(x, y);
    out.rho_s = rho.rho_s;
    out.p_rho = rho.p_rho;
    return out;
}

PseudoSample pseudo_observations(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) raise(Errc::empty_input, "no columns");
    const std::size_t n = columns[0].size();
    if (n < 2) raise(Errc::insufficient_length, "need n >= 2");
    for (const auto& col : columns)
        if (col.size() != n) raise(Errc::length_mismatch, "columns of unequal length");
    PseudoSample out = PseudoSample::zeros(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const auto ranks = midranks(columns[j]);
        for (std::size_t i = 0; i < n; ++i) out(i, j) = ranks[i] / (n + 1.0);
    }
    return out;
}

// --- family evaluations ---

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double gumbel_cdf(double theta, double u, double v) {
    const double x = -std::log(u), y = -std::log(v);
    const double a = std::pow(std::pow(x, theta) + std::pow(y, theta), 1.0 / theta);
    return std::exp(-a);
}

double frank_cdf(double theta, double u, double v) {
    if (std::fabs(theta) < 1e-10) return u * v;
    const double gu = std::expm1(-theta * u);
    const double gv = std::expm1(-theta * v);
    const double g1 = std::expm1(-theta);
    return -std::log1p(gu * gv / g1) / theta;
}

double plackett_cdf(double theta, double u, double v) {
    if (std::fabs(theta - 1.0) < 1e-9) return u * v;
    const double s = 1.0 + (theta - 1.0) * (u + v);
    const double d = std::sqrt(s * s - 4.0 * theta * (theta - 1.0) * u * v);
    return (s - d) / (2.0 * (theta - 1.0));
}

}  // namespace

double copula_cdf(const FittedCopula& c, double u, double v) {
    c.validate();
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        raise(Errc::invalid_parameter, "copula_cdf arguments must lie in [0,1]");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    switch (c.family) {
        case CopulaFamily::independence:
            return u * v;
        case CopulaFamily::gaussian:
            return clamp01(stats::bvn_cdf(stats::norm_quantile(u), stats::norm_quantile(v),
                                          c.theta));
        case CopulaFamily::student_t:
            return clamp01(stats::bvt_cdf(stats::t_quantile(u, c.df),
                                          stats::t_quantile(v, c.df), c.theta, c.df));
        case CopulaFamily::clayton:
            return std::pow(std::pow(u, -c.theta) + std::pow(v, -c.theta) - 1.0, -1.0 / c.theta);
        case CopulaFamily::gumbel:
            return gumbel_cdf(c.theta, u, v);
        case CopulaFamily::frank:
            return clamp01(frank_cdf(c.theta, u, v));
        case CopulaFamily::plackett:
            return clamp01(plackett_cdf(c.theta, u, v));
    }
    return 0.0;
}

double copula_density(const FittedCopula& c, double u, double v) {
    c.validate();
    if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0))
        raise(Errc::boundary_point, "copula_density requires interior points");
    switch (c.family) {
        case CopulaFamily::independence:
            return 1.0;
        case CopulaFamily::gaussian: {
            const double r = c.theta;
            const double x = stats::norm_quantile(u), y = stats::norm_quantile(v);
            const double omr2 = 1.0 - r * r;
            return std::exp(-(r * r * (x * x + y * y) - 2.0 * r * x * y) / (2.0 * omr2)) /
                   std::sqrt(omr2);
        }
        case CopulaFamily::student_t: {
            const double r = c.theta, nu = c.df;
            const double x = stats::t_quantile(u, nu), y = stats::t_quantile(v, nu);
            const double omr2 = 1.0 - r * r;
            const double quad = (x * x - 2.0 * r * x * y + y * y) / (nu * omr2);
            const double lc = std::lgamma(0.5 * (nu + 2.0)) + std::lgamma(0.5 * nu) -
                              2.0 * std::lgamma(0.5 * (nu + 1.0));
            return std::exp(lc) / std::sqrt(omr2) * std::pow(1.0 + quad, -0.5 * (nu + 2.0)) *
                   std::pow((1.0 + x * x / nu) * (1.0 + y * y / nu), 0.5 * (nu + 1.0));
        }
        case CopulaFamily::clayton: {
            const double t = c.theta;
            return (1.0 + t) * std::pow(u * v, -t - 1.0) *
                   std::pow(std::pow(u, -t) + std::pow(v, -t) - 1.0, -1.0 / t - 2.0);
        }
        case CopulaFamily::gumbel: {
            const double t = c.theta;
            const double x = -std::log(u), y = -std::log(v);
            const double s = std::pow(x, t) + std::pow(y, t);
            const double a = std::pow(s, 1.0 / t);
            return std::exp(-a) * std::pow(x * y, t - 1.0) / (u * v) *
                   std::pow(a, 2.0 - 2.0 * t) * (1.0 + (t - 1.0) / a);
        }
        case CopulaFamily::frank: {
            const double t = c.theta;
            if (std::fabs(t) < 1e-10) return 1.0;
            const double e = -std::expm1(-t);        // 1 - exp(-t)
            const double au = -std::expm1(-t * u);   // 1 - exp(-t u)
            const double av = -std::expm1(-t * v);
            const double den = e - au * av;
            return t * e * std::exp(-t * (u + v)) / (den * den);
        }
        case CopulaFamily::plackett: {
            const double t = c.theta;
            const double s = 1.0 + (t - 1.0) * (u + v);
            const double d2 = s * s - 4.0 * t * (t - 1.0) * u * v;
            return t * (1.0 + (t - 1.0) * (u + v - 2.0 * u * v)) / std::pow(d2, 1.5);
        }
    }
    return 1.0;
}

double conditional_cdf(const FittedCopula& c, double v, double u_given) {
    c.validate();
    const double u = u_given;
    if (!(u > 0.0 && u < 1.0))
        raise(Errc::boundary_point, "conditioning value must be interior");
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    switch (c.family) {
        case CopulaFamily::independence:
            return v;
        case CopulaFamily::gaussian: {
            const double r = c.theta;
            const double x = stats::norm_quantile(u), y = stats::norm_quantile(v);
            return stats::norm_cdf((y - r * x) / std::sqrt(1.0 - r * r));
        }
        case CopulaFamily::student_t: {
            const double r = c.theta, nu = c.df;
            const double x = stats::t_quantile(u, nu), y = stats::t_quantile(v, nu);
            const double scale = std::sqrt((nu + x * x) * (1.0 - r * r) / (nu + 1.0));
            return stats::t_cdf((y - r * x) / scale, nu + 1.0);
        }
        case CopulaFamily::clayton: {
            const double t = c.theta;
            return std::pow(u, -t - 1.0) *
                   std::pow(std::pow(u, -t) + std::pow(v, -t) - 1.0, -1.0 / t - 1.0);
        }
        case CopulaFamily::gumbel: {
            const double t = c.theta;
            const double x = -std::log(u), y = -std::log(v);
            const double s = std::pow(x, t) + std::pow(y, t);
            const double a = std::pow(s, 1.0 / t);
            return std::exp(-a) * std::pow(a, 1.0 - t) * std::pow(x, t - 1.0) / u;
        }
        case CopulaFamily::frank: {
            const double t = c.theta;
            if (std::fabs(t) < 1e-10) return v;
            const double gu = std::expm1(-t * u);
            const double gv = std::expm1(-t * v);
            const double g1 = std::expm1(-t);
            return std::exp(-t * u) * gv / (g1 + gu * gv);
        }
        case CopulaFamily::plackett: {
            const double t = c.theta;
            if (std::fabs(t - 1.0) < 1e-9) return v;
            const double s = 1.0 + (t - 1.0) * (u + v);
            const double d = std::sqrt(s * s - 4.0 * t * (t - 1.0) * u * v);
            return 0.5 * (1.0 - (s - 2.0 * t * v) / d);
        }
    }
    return v;
}

double conditional_quantile(const FittedCopula& c, double w, double u_given) {
    c.validate();
    const double u = u_given;
    if (!(u > 0.0 && u < 1.0))
        raise(Errc::boundary_point, "conditioning value must be interior");
    if (!(w > 0.0 && w < 1.0))
        raise(Errc::invalid_parameter, "conditional probability must be interior");
    switch (c.family) {
        case CopulaFamily::independence:
            return w;
        case CopulaFamily::gaussian: {
            const double r = c.theta;
            return stats::norm_cdf(r * stats::norm_quantile(u) +
                                   std::sqrt(1.0 - r * r) * stats::norm_quantile(w));
        }
        case CopulaFamily::student_t: {
            const double r = c.theta, nu = c.df;
            const double x = stats::t_quantile(u, nu);
            const double scale = std::sqrt((nu + x * x) * (1.0 - r * r) / (nu + 1.0));
            return stats::t_cdf(r * x + scale * stats::t_quantile(w, nu + 1.0), nu);
        }
        case CopulaFamily::clayton: {
            const double t = c.theta;
            const double inner = (std::pow(w, -t / (1.0 + t)) - 1.0) * std::pow(u, -t) + 1.0;
            return std::pow(inner, -1.0 / t);
        }
        case CopulaFamily::frank: {
            const double t = c.theta;
            if (std::fabs(t) < 1e-10) return w;
            const double gu = std::expm1(-t * u);
            const double g1 = std::expm1(-t);
            const double gv = w * g1 / (std::exp(-t * u) - w * gu);
            return -std::log1p(gv) / t;
        }
        case CopulaFamily::gumbel:
        case CopulaFamily::plackett: {
            // h(v|u) is continuous and increasing in v; bisect.
            double lo = 1e-15, hi = 1.0 - 1e-15;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (conditional_cdf(c, mid, u) < w) lo = mid;
                else hi = mid;
                if (hi - lo < 1e-15) break;
            }
            return 0.5 * (lo + hi);
        }
    }
    return w;
}

// --- tau relations ---

namespace {

// Debye function D1(x) = (1/x) Int_0^x t/(e^t - 1) dt for x > 0.
double debye1(double x) {
    if (x <= 0.0) raise(Errc::invalid_parameter, "debye1 requires x > 0");
    auto integrand = [](double t) { return t < 1e-12 ? 1.0 : t / std::expm1(t); };
    return stats::integrate(integrand, 0.0, x, 16, 20) / x;
}

double frank_tau(double theta) {
    if (std::fabs(theta) < 1e-12) return 0.0;
    const double a = std::fabs(theta);
    const double tau = 1.0 - 4.0 / a * (1.0 - debye1(a));
    return theta > 0.0 ? tau : -tau;
}

// tau = 1 - 4 Int Int dC/du * dC/dv du dv, evaluated with a tensor
// Gauss-Legendre rule (the partial derivatives are smooth and bounded).
// tau(theta) is continuous through theta = 1 (independence), so a bisection
// landing exactly on 1 is nudged rather than rejected.
double plackett_tau(double theta) {
    if (std::fabs(theta - 1.0) < 1e-12) theta = 1.0 + 1e-12;
    const FittedCopula c{CopulaFamily::plackett, theta, 25.0, FitMethod::fixed};
    const auto& rule = stats::gauss_legendre(64);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = 0.5 * (rule.nodes[i] + 1.0);
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double v = 0.5 * (rule.nodes[j] + 1.0);
            inner += rule.weights[j] * conditional_cdf(c, v, u) *
                     conditional_cdf({CopulaFamily::plackett, theta, 25.0, FitMethod::fixed}, u, v);
        }
        acc += rule.weights[i] * inner;
    }
    return 1.0 - 4.0 * acc * 0.25;
}

// Monotone bisection of f on [lo, hi] to |f(mid) - target| < 1e-12.
double invert_monotone(const std::function<double(double)>& f, double target, double lo,
                       double hi) {
    double flo = f(lo), fhi = f(hi);
    if ((target < flo && target < fhi) || (target > flo && target > fhi))
        raise(Errc::tau_out_of_range, "target outside attainable range");
    const bool increasing = fhi > flo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm - target) < 1e-12) return mid;
        if ((fm < target) == increasing) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-15 * (1.0 + std::fabs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double tau_to_param(CopulaFamily family, double tau) {
    switch (family) {
        case CopulaFamily::independence:
            return 0.0;
        case CopulaFamily::gaussian:
        case CopulaFamily::student_t:
            if (!(tau > -1.0 && tau < 1.0))
                raise(Errc::tau_out_of_range, "elliptical families require tau in (-1,1)");
            return std::sin(stats::pi * tau / 2.0);
        case CopulaFamily::gumbel:
            if (!(tau > 0.0 && tau < 1.0))
                raise(Errc::tau_out_of_range, "gumbel requires tau in (0,1)");
            return 1.0 / (1.0 - tau);
        case CopulaFamily::clayton:
            if (!(tau > 0.0 && tau < 1.0))
                raise(Errc::tau_out_of_range, "clayton requires tau in (0,1)");
            return 2.0 * tau / (1.0 - tau);
        case CopulaFamily::frank: {
            if (!(tau > -1.0 && tau < 1.0) || tau == 0.0)
                raise(Errc::tau_out_of_range, "frank requires tau in (-1,1), tau != 0");
            const double a = invert_monotone([](double t) { return frank_tau(t); },
                                             std::fabs(tau), 1e-9, 745.0);
            return tau > 0.0 ? a : -a;
        }
        case CopulaFamily::plackett: {
            if (!(tau > -1.0 && tau < 1.0) || tau == 0.0)
                raise(Errc::tau_out_of_range, "plackett requires tau in (-1,1), tau != 0");
            // Invert on log(theta); tau(theta) is increasing.
            const double x = invert_monotone(
                [](double lt) { return plackett_tau(std::exp(lt)); }, tau,
                std::log(1e-6), std::log(1e6));
            return std::exp(x);
        }
    }
    return 0.0;
}

double param_to_tau(CopulaFamily family, double param) {
    switch (family) {
        case CopulaFamily::independence:
            return 0.0;
        case CopulaFamily::gaussian:
        case CopulaFamily::student_t:
            return 2.0 / stats::pi * std::asin(param);
        case CopulaFamily::gumbel:
            return 1.0 - 1.0 / param;
        case CopulaFamily::clayton:
            return param / (param + 2.0);
        case CopulaFamily::frank:
            return frank_tau(param);
        case CopulaFamily::plackett:
            return plackett_tau(param);
    }
    return 0.0;
}

double lower_tail_dependence(const FittedCopula& c) {
    c.validate();
    switch (c.family) {
        case CopulaFamily::clayton:
            return std::pow(2.0, -1.0 / c.theta);
        case CopulaFamily::student_t:
            return 2.0 * stats::t_cdf(-std::sqrt((c.df + 1.0) * (1.0 - c.theta) /
                                                 (1.0 + c.theta)),
                                      c.df + 1.0);
        default:
            return 0.0;
    }
}

// --- fitting and sampling ---

namespace {

double log_pseudo_likelihood(const PseudoSample& u, const FittedCopula& c) {
    double ll = 0.0;
    for (std::size_t i = 0; i < u.n; ++i) {
        const double d = copula_density(c, u(i, 0), u(i, 1));
        if (!(d > 0.0) || !std::isfinite(d)) return -std::numeric_limits<double>::max();
        ll += std::log(d);
    }
    return ll;
}

// Golden-section maximization of the log pseudo-likelihood over [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-10 * (1.0 + std::fabs(a)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

FittedCopula fit_copula(const PseudoSample& u, CopulaFamily family, FitMethod method,
                        double t_df) {
    if (u.k != 2) raise(Errc::invalid_parameter, "fit_copula requires a bivariate sample");
    if (u.n < 10) raise(Errc::insufficient_length, "fit_copula requires n >= 10");
    if (family == CopulaFamily::independence)
        return {CopulaFamily::independence, 0.0, t_df, FitMethod::fixed};
    if (method == FitMethod::fixed)
        raise(Errc::invalid_parameter, "fit method must be tau_inversion or pseudo_mle");

    const double tau = kendall_tau(u.column(0), u.column(1)).tau;
    double start;
    try {
        start = tau_to_param(family, tau);
    } catch (const Error& e) {
        if (e.code() == Errc::tau_out_of_range)
            raise(Errc::family_incompatible,
                  family_name(family) + " cannot represent sample tau " + std::to_string(tau));
        throw;
    }

    FittedCopula fitted{family, start, t_df, FitMethod::tau_inversion};
    fitted.validate();
    if (method == FitMethod::tau_inversion) return fitted;

    // Pseudo-MLE: bounded 1-D search around the tau-inversion value.
    double lo, hi;
    bool log_scale = false;
    switch (family) {
        case CopulaFamily::gaussian:
        case CopulaFamily::student_t:
            lo = -0.999999;
            hi = 0.999999;
            break;
        case CopulaFamily::clayton:
            lo = std::log(1e-8);
            hi = std::log(200.0);
            log_scale = true;
            break;
        case CopulaFamily::gumbel:
            lo = std::log(1.0 + 1e-10);
            hi = std::log(200.0);
            log_scale = true;
            break;
        case CopulaFamily::frank:
            lo = tau >= 0.0 ? 1e-8 : -300.0;
            hi = tau >= 0.0 ? 300.0 : -1e-8;
            break;
        case CopulaFamily::plackett:
            lo = std::log(1e-6);
            hi = std::log(1e6);
            log_scale = true;
            break;
        default:
            raise(Errc::invalid_parameter, "unsupported family");
    }
    auto objective = [&](double x) {
        FittedCopula trial{family, log_scale ? std::exp(x) : x, t_df, FitMethod::pseudo_mle};
        if (family == CopulaFamily::plackett && std::fabs(trial.theta - 1.0) < 1e-12)
            trial.theta = 1.0 + 1e-12;
        if (family == CopulaFamily::gumbel && trial.theta < 1.0) trial.theta = 1.0;
        return log_pseudo_likelihood(u, trial);
    };
    const double best = golden_max(objective, lo, hi);
    double theta = log_scale ? std::exp(best) : best;
    if (family == CopulaFamily::frank && std::fabs(theta) < 1e-12)
        theta = theta < 0.0 ? -1e-12 : 1e-12;
    if (family == CopulaFamily::gumbel && theta < 1.0) theta = 1.0;
    if (family == CopulaFamily::plackett && std::fabs(theta - 1.0) < 1e-12)
        theta = 1.0 + 1e-12;
    if (!std::isfinite(theta)) raise(Errc::no_convergence, "pseudo-MLE search failed");
    FittedCopula out{family, theta, t_df, FitMethod::pseudo_mle};
    out.validate();
    return out;
}

PseudoSample sample(const FittedCopula& c, std::size_t n, std::uint64_t seed) {
    c.validate();
    PseudoSample out = PseudoSample::zeros(n, 2);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double w = rng.uniform();
        out(i, 0) = u;
        out(i, 1) = conditional_quantile(c, w, u);
    }
    return out;
}

}  // namespace arcop
