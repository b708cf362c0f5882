#include "mmwsec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmwsec {

namespace {

double log_sum_exp(const std::vector<double>& logs) {
    double m = -kInf;
    for (double v : logs) m = std::max(m, v);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : logs) s += std::exp(v - m);
    return m + std::log(s);
}

// Continued fraction for e^x E1(x), Lentz's method; accurate for x > 1.
double e1_scaled_cf(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 300; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) return h;
    }
    return h;
}

// Series for E1(x), x <= 1: -gamma - ln x + sum (-1)^{k+1} x^k / (k k!).
double e1_series(double x) {
    constexpr double euler_gamma = 0.57721566490153286060651209;
    double sum = -euler_gamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / k;
        double add = -term / k;
        sum += add;
        if (std::fabs(add) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

// G_j(w) / j!  with  G_j(w) = int_0^inf t^j e^{-t}/(t+w) dt, w > 0.
double g_over_fact(int j, double w, const QuadratureSettings& qs) {
    if (j == 0) return exp_e1_scaled(w);
    if (w <= 1.0) {
        // Forward recurrence G_j = (j-1)! - w G_{j-1}; normalized error
        // ratio w/j <= 1, so it is stable on this branch.
        double g = exp_e1_scaled(w);  // G_0
        double fact = 1.0;            // (i-1)! entering iteration i
        for (int i = 1; i <= j; ++i) {
            g = fact - w * g;
            fact *= i;
        }
        return g / fact;  // fact == j!
    }
    // w > 1: the alternating recurrence cancels catastrophically; integrate
    // the (positive, unimodal) scaled integrand directly.
    const double lg = std::lgamma(j + 1.0);
    auto f = [j, w, lg](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp(j * std::log(t) - t - lg) / (t + w);
    };
    double hi = j + 50.0 * std::sqrt(static_cast<double>(j)) + 50.0;
    return adaptive_quad(f, 0.0, hi, qs);
}

struct GK15 {
    // Kronrod 15-point nodes (positive half) and weights, plus the embedded
    // Gauss 7-point weights; standard Patterson values.
    static constexpr double xk[8] = {
        0.0,
        0.2077849550078985,
        0.4058451513773972,
        0.5860872354676911,
        0.7415311855993944,
        0.8648644233597691,
        0.9491079123427585,
        0.9914553711208126};
    static constexpr double wk[8] = {
        0.2094821410847278,
        0.2044329400752989,
        0.1903505780647854,
        0.1690047266392679,
        0.1406532597155259,
        0.1047900103222502,
        0.0630920926299785,
        0.0229353220105292};
    static constexpr double wg[4] = {
        0.4179591836734694,
        0.3818300505051189,
        0.2797053914892767,
        0.1294849661688697};
};

struct Interval {
    double a, b, result, err;
};

void gk15(const std::function<double(double)>& f, double a, double b,
          double* result, double* err) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double fk[15];
    fk[7] = f(mid);
    for (int i = 1; i < 8; ++i) {
        fk[7 - i] = f(mid - h * GK15::xk[i]);
        fk[7 + i] = f(mid + h * GK15::xk[i]);
    }
    double rk = GK15::wk[0] * fk[7];
    for (int i = 1; i < 8; ++i) rk += GK15::wk[i] * (fk[7 - i] + fk[7 + i]);
    double rg = GK15::wg[0] * fk[7];
    for (int i = 1; i < 4; ++i)
        rg += GK15::wg[i] * (fk[7 - 2 * i] + fk[7 + 2 * i]);
    *result = rk * h;
    *err = std::fabs((rk - rg) * h);
}

}  // namespace

double regularized_gamma_q_int(int n, double x) {
    if (n < 1) throw std::domain_error("upper incomplete gamma: n must be >= 1");
    if (x < 0.0) throw std::domain_error("upper incomplete gamma: x must be >= 0");
    if (x == 0.0) return 1.0;
    // Q(n,x) = e^{-x} sum_{m=0}^{n-1} x^m/m!, evaluated in log space so large
    // x and n do not overflow before the final normalization.
    std::vector<double> logs(n);
    const double lx = std::log(x);
    double lgam = 0.0;  // log m!
    for (int m = 0; m < n; ++m) {
        if (m > 0) lgam += std::log(static_cast<double>(m));
        logs[m] = m * lx - lgam;
    }
    double q = std::exp(-x + log_sum_exp(logs));
    return std::min(1.0, std::max(0.0, q));
}

double upper_incomplete_gamma_int(int n, double x) {
    return regularized_gamma_q_int(n, x) * std::tgamma(static_cast<double>(n));
}

double exp_integral_neg(double x) {
    if (x <= 0.0) throw std::domain_error("exp_integral_neg: x must be > 0");
    if (x <= 1.0) return e1_series(x);
    if (x > 700.0) return 0.0;  // below double underflow once e^{-x} applied
    return std::exp(-x) * e1_scaled_cf(x);
}

double exp_e1_scaled(double x) {
    if (x <= 0.0) throw std::domain_error("exp_e1_scaled: x must be > 0");
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return e1_scaled_cf(x);
}

double v_aux(double x, int m) {
    if (x <= 0.0) throw std::domain_error("v_aux: x must be > 0");
    if (m < 0) throw std::domain_error("v_aux: m must be >= 0");
    if (m == 0) return 0.0;
    const double w = 1.0 / x;
    QuadratureSettings qs;
    qs.rel_tol = 1e-10;
    double sum = 0.0;
    if (w <= 1.0) {
        // One pass of the stable forward recurrence, accumulating G_j/j!.
        double g = exp_e1_scaled(w);
        double fact = 1.0;  // j!
        sum = g;
        for (int j = 1; j < m; ++j) {
            g = fact - w * g;  // now G_j, fact == (j-1)!
            fact *= j;
            sum += g / fact;
        }
    } else {
        for (int j = 0; j < m; ++j) sum += g_over_fact(j, w, qs);
    }
    return sum / std::log(2.0);
}

namespace {

// Plain series sum for 2F1 with |z| < 1 (used after transformation).
double hyp2f1_series(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 20000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::fabs(term) < 1e-16 * std::fabs(sum) && k > 2) return sum;
    }
    throw std::runtime_error("gauss_2f1_neg: series did not converge");
}

}  // namespace

namespace {

// ln|Gamma(x)| with sign, valid for any non-integer (or positive) x.
double lgamma_signed(double x, double* sign) {
    *sign = 1.0;
    if (x > 0.0) return std::lgamma(x);
    if (x == std::floor(x))
        throw std::domain_error("lgamma_signed: nonpositive integer argument");
    // Gamma alternates sign on successive negative unit intervals.
    double fl = std::floor(x);
    *sign = (std::fabs(std::fmod(fl, 2.0)) < 0.5) ? 1.0 : -1.0;
    return std::lgamma(x);  // std::lgamma returns ln|Gamma| here
}

}  // namespace

double gauss_2f1_neg(double a, double b, double c, double z) {
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("gauss_2f1_neg: c is a nonpositive integer");
    if (z > 0.0) throw std::domain_error("gauss_2f1_neg: requires z <= 0");
    if (z == 0.0) return 1.0;
    if (z >= -2.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)),
        // mapping z in [-2, 0) to w in (0, 2/3].
        double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
    }
    // Large |z|: connection formula in 1/z (DLMF 15.8.2), each term then
    // mapped through Pfaff since 1/z lies in (-1/2, 0).
    double diff = b - a;
    if (std::fabs(diff - std::round(diff)) < 1e-8)
        throw std::domain_error(
            "gauss_2f1_neg: b-a (near-)integer unsupported for z < -2");
    const double zi = 1.0 / z;
    const double w = zi / (zi - 1.0);
    double sg, sb, sca, sa, scb;
    double lg1 = std::lgamma(c) + lgamma_signed(b - a, &sg) -
                 lgamma_signed(b, &sb) - lgamma_signed(c - a, &sca);
    double s1 = sg * sb * sca * std::exp(lg1) * std::pow(-z, -a) *
                std::pow(1.0 - zi, -a) *
                hyp2f1_series(a, c - b, a - b + 1.0, w);
    double lg2 = std::lgamma(c) + lgamma_signed(a - b, &sg) -
                 lgamma_signed(a, &sa) - lgamma_signed(c - b, &scb);
    double s2 = sg * sa * scb * std::exp(lg2) * std::pow(-z, -b) *
                std::pow(1.0 - zi, -b) *
                hyp2f1_series(b, c - a, b - a + 1.0, w);
    return s1 + s2;
}

double adaptive_quad(const std::function<double(double)>& f, double lower,
                     double upper, QuadratureSettings settings) {
    if (std::isinf(upper)) {
        // map t = lower + u/(1-u), u in [0,1)
        auto g = [&f, lower](double u) {
            double om = 1.0 - u;
            double t = lower + u / om;
            double jac = 1.0 / (om * om);
            double v = f(t);
            return std::isfinite(v) ? v * jac : 0.0;
        };
        return adaptive_quad(g, 0.0, 1.0, settings);
    }
    std::vector<Interval> heap;
    Interval whole{lower, upper, 0.0, 0.0};
    gk15(f, lower, upper, &whole.result, &whole.err);
    heap.push_back(whole);
    double total = whole.result;
    double total_err = whole.err;
    int splits = 0;
    while (total_err >
               std::max(settings.abs_tol, settings.rel_tol * std::fabs(total)) &&
           splits < settings.max_subdivisions) {
        // split the interval with the largest error estimate
        size_t worst = 0;
        for (size_t i = 1; i < heap.size(); ++i)
            if (heap[i].err > heap[worst].err) worst = i;
        Interval cur = heap[worst];
        double mid = 0.5 * (cur.a + cur.b);
        if (mid <= cur.a || mid >= cur.b) break;  // machine-precision floor
        Interval l{cur.a, mid, 0.0, 0.0}, r{mid, cur.b, 0.0, 0.0};
        gk15(f, l.a, l.b, &l.result, &l.err);
        gk15(f, r.a, r.b, &r.result, &r.err);
        total += l.result + r.result - cur.result;
        total_err += l.err + r.err - cur.err;
        heap[worst] = l;
        heap.push_back(r);
        ++splits;
    }
    if (splits >= settings.max_subdivisions)
        throw std::runtime_error("adaptive_quad: max subdivisions exhausted");
    return total;
}

GaussLaguerreRule gauss_laguerre(int n) {
    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // initial guesses per standard practice
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
            z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - rule.nodes[i - 2]);
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (p1 - p2) / z;
            double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-14 * std::max(1.0, std::fabs(z))) break;
        }
        rule.nodes[i] = z;
        double p2 = 0.0;
        {
            double p1 = 1.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
            }
        }
        rule.weights[i] = -1.0 / (pp * n * p2);
    }
    return rule;
}

}  // namespace mmwsec
