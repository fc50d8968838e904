#include "arcop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "arcop/error.hpp"

namespace arcop::stats {

double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779399461;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double norm_quantile(double p) {
    // Wichura (1988), algorithm AS 241, PPND16.
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return q < 0.0 ? -val : val;
}

namespace {

// Series expansion of P(a,x) for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), modified Lentz.
double gamma_q_cf(double a, double x) {
    const double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) raise(Errc::invalid_parameter, "gamma_p requires a > 0");
    if (x < 0.0) raise(Errc::invalid_parameter, "gamma_p requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(double x, double df) {
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_pdf(double x, double df) {
    if (x <= 0.0) return 0.0;
    const double k = 0.5 * df;
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::log(2.0) - std::lgamma(k));
}

namespace {

double betacf(double a, double b, double x) {
    const double fpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double t_cdf(double x, double df) {
    if (df <= 0.0) raise(Errc::invalid_df, "t_cdf requires df > 0");
    if (x == 0.0) return 0.5;
    const double ib = inc_beta(0.5 * df, 0.5, df / (df + x * x));
    return x > 0.0 ? 1.0 - 0.5 * ib : 0.5 * ib;
}

double t_pdf(double x, double df) {
    const double lg = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df);
    return std::exp(lg) / std::sqrt(df * pi) *
           std::pow(1.0 + x * x / df, -0.5 * (df + 1.0));
}

double t_quantile(double p, double df) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    if (p == 0.5) return 0.0;
    // Safeguarded Newton on the monotone CDF, bracket expanded from a
    // normal-quantile start.
    double x = norm_quantile(p);
    if (df > 2.0) x *= std::sqrt(df / (df - 2.0));
    double lo = std::min(x, 0.0), hi = std::max(x, 0.0);
    while (t_cdf(lo, df) > p) lo = lo * 2.0 - 1.0;
    while (t_cdf(hi, df) < p) hi = hi * 2.0 + 1.0;
    x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = t_cdf(x, df) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double dfdx = t_pdf(x, df);
        double step = dfdx > 0.0 ? f / dfdx : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) < 1e-14 * (1.0 + std::fabs(x))) { x = xn; break; }
        x = xn;
    }
    return x;
}

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            // Legendre recurrence for P_n(x) and derivative.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int points) {
    const QuadRule& rule = gauss_legendre(points);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double s = 0.0;
        for (int j = 0; j < points; ++j) s += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
        total += 0.5 * h * s;
    }
    return total;
}

namespace {

struct TanhSinhRule {
    std::vector<double> x;  // abscissae in (0,1)
    std::vector<double> w;
};

const TanhSinhRule& tanh_sinh_rule(int level) {
    static std::map<int, TanhSinhRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(level);
    if (it != cache.end()) return it->second;

    TanhSinhRule rule;
    const double tmax = 4.0;
    const double h = 1.0 / (1 << level);
    for (double t = -tmax; t <= tmax + 1e-12; t += h) {
        const double s = 0.5 * pi * std::sinh(t);
        const double x = 0.5 * (1.0 + std::tanh(s));
        const double ch = std::cosh(s);
        const double w = 0.25 * pi * std::cosh(t) / (ch * ch) * h;
        if (x > 0.0 && x < 1.0 && w > 1e-320) {
            rule.x.push_back(x);
            rule.w.push_back(w);
        }
    }
    return cache.emplace(level, std::move(rule)).first->second;
}

}  // namespace

double integrate_unit(const std::function<double(double)>& f, int level) {
    const TanhSinhRule& rule = tanh_sinh_rule(level);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * f(rule.x[i]);
    return s;
}

double integrate_unit_square(const std::function<double(double, double)>& f, int level) {
    const TanhSinhRule& rule = tanh_sinh_rule(level);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < rule.x.size(); ++j)
            inner += rule.w[j] * f(rule.x[i], rule.x[j]);
        s += rule.w[i] * inner;
    }
    return s;
}

double bvn_cdf(double x, double y, double rho) {
    // Genz (2004) rewrite of the Drezner-Wesolowsky algorithm; computes
    // P(X <= x, Y <= y) to about 5e-16.
    if (std::isnan(x) || std::isnan(y)) return std::numeric_limits<double>::quiet_NaN();
    if (rho > 1.0 || rho < -1.0) raise(Errc::invalid_parameter, "bvn_cdf requires |rho| <= 1");
    if (x == -std::numeric_limits<double>::infinity() ||
        y == -std::numeric_limits<double>::infinity())
        return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return norm_cdf(y);
    if (y == std::numeric_limits<double>::infinity()) return norm_cdf(x);
    if (rho == 1.0) return norm_cdf(std::min(x, y));
    if (rho == -1.0) return std::max(0.0, norm_cdf(x) + norm_cdf(y) - 1.0);

    const double twopi = 2.0 * pi;
    double h = -x;
    double k = -y;
    double hk = h * k;
    double bvn = 0.0;
    const double ar = std::fabs(rho);
    const int npts = ar < 0.3 ? 6 : (ar < 0.75 ? 12 : 20);
    const QuadRule& rule = gauss_legendre(npts);

    if (ar < 0.925) {
        if (ar > 0.0) {
            const double hs = 0.5 * (h * h + k * k);
            const double asr = std::asin(rho);
            for (int j = 0; j < npts; ++j) {
                const double sn = std::sin(asr * 0.5 * (rule.nodes[j] + 1.0));
                bvn += rule.weights[j] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
            bvn = bvn * asr / (2.0 * twopi);
        }
        bvn += norm_cdf(-h) * norm_cdf(-k);
    } else {
        if (rho < 0.0) {
            k = -k;
            hk = -hk;
        }
        {
            const double as = (1.0 - rho) * (1.0 + rho);
            double a = std::sqrt(as);
            const double bs = (h - k) * (h - k);
            const double c = (4.0 - hk) / 8.0;
            const double d = (12.0 - hk) / 16.0;
            double asr = -0.5 * (bs / as + hk);
            if (asr > -100.0)
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
            if (-hk < 100.0) {
                const double b = std::sqrt(bs);
                const double sp = std::sqrt(twopi) * norm_cdf(-b / a);
                bvn -= std::exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a *= 0.5;
            for (int j = 0; j < npts; ++j) {
                const double xs0 = a * (rule.nodes[j] + 1.0);
                const double xs = xs0 * xs0;
                asr = -0.5 * (bs / xs + hk);
                if (asr > -100.0) {
                    const double rs = std::sqrt(1.0 - xs);
                    const double sp = 1.0 + c * xs * (1.0 + d * xs);
                    const double ep = std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs;
                    bvn += a * rule.weights[j] * std::exp(asr) * (ep - sp);
                }
            }
            bvn = -bvn / twopi;
        }
        if (rho > 0.0) {
            bvn += norm_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) bvn += norm_cdf(k) - norm_cdf(h);
        }
    }
    return std::min(1.0, std::max(0.0, bvn));
}

double bvt_cdf(double x, double y, double rho, double df) {
    if (df <= 0.0) raise(Errc::invalid_df, "bvt_cdf requires df > 0");
    // E_W[ Phi2(x sqrt(W/df), y sqrt(W/df); rho) ] with W ~ chi^2(df),
    // integrated over log W where the integrand is analytic with
    // exponentially decaying tails.
    const double upper = std::log(df + 16.0 * std::sqrt(2.0 * df) + 30.0);
    const double lower = std::log(df) - 36.0 / df - 8.0;
    auto f = [&](double t) {
        const double w = std::exp(t);
        const double s = std::sqrt(w / df);
        return w * chi2_pdf(w, df) * bvn_cdf(x * s, y * s, rho);
    };
    return integrate(f, lower, upper, 32, 20);
}

double mean(const std::vector<double>& x) {
    if (x.empty()) raise(Errc::empty_input, "mean of empty vector");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(const std::vector<double>& x) {
    if (x.size() < 2) raise(Errc::insufficient_length, "variance needs n >= 2");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

}  // namespace arcop::stats
