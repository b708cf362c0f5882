#include "mmwsec/mrt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmwsec/specfun.hpp"

namespace mmwsec {

namespace {

constexpr double pi = std::numbers::pi;

double clamp_prob(double p) {
    if (p < -1e-9 || p > 1.0 + 1e-9)
        throw std::runtime_error("probability out of bounds beyond tolerance");
    return std::min(1.0, std::max(0.0, p));
}

double gamma_approx_q(int n) {
    return n * std::pow(std::tgamma(n + 1.0), -1.0 / n);
}

}  // namespace

double pmf_moment_sum(const SystemConfig& cfg, const CommonPathPmf& pmf) {
    const double q = 2.0 / cfg.alpha;
    double s = 0.0;
    for (int lc = 1; lc <= pmf.l_l; ++lc)
        s += pmf.probs[lc] * std::exp(std::lgamma(lc + q) - std::lgamma(lc));
    return s;
}

double connection_probability_mrt(const SystemConfig& cfg) {
    cfg.validate();
    const double arg =
        (std::pow(2.0, cfg.r_t) - 1.0) * std::pow(cfg.r_d, cfg.alpha) / cfg.c();
    return regularized_gamma_q_int(cfg.l_d, arg);
}

double cdf_xe_mrt(double x, double mu, const SystemConfig& cfg,
                  const CommonPathPmf& pmf) {
    cfg.validate();
    if (x <= 0.0) throw std::domain_error("cdf_xe_mrt: x must be > 0");
    if (mu <= 0.0) throw std::domain_error("cdf_xe_mrt: mu must be > 0");
    if (cfg.lambda_e == 0.0) return 1.0;
    const double q = 2.0 / cfg.alpha;
    const double expo = pi * cfg.lambda_e * std::tgamma(q + 1.0) *
                        std::pow(mu * x / cfg.a(), -q) * pmf_moment_sum(cfg, pmf);
    return std::exp(-expo);
}

ProbResult sop_noncolluding_mrt(double mu, const SystemConfig& cfg,
                                const CommonPathPmf& pmf) {
    cfg.validate();
    const double t = cfg.t_threshold();
    const double xi_d = cfg.c() * mu * std::pow(cfg.r_d, -cfg.alpha);
    if (xi_d <= t - 1.0) return {1.0, Status::Infeasible};
    if (cfg.lambda_e == 0.0) return {0.0, Status::Ok};
    const double x_star = (xi_d - (t - 1.0)) / t;
    return {clamp_prob(1.0 - cdf_xe_mrt(x_star, mu, cfg, pmf)), Status::Ok};
}

double laplace_ie_mrt(double s, const SystemConfig& cfg,
                      const CommonPathPmf& pmf) {
    cfg.validate();
    if (s < 0.0) throw std::domain_error("laplace_ie_mrt: s must be >= 0");
    if (s == 0.0 || cfg.lambda_e == 0.0) return 1.0;
    const double q = 2.0 / cfg.alpha;
    const double expo = pi * cfg.lambda_e * std::pow(s, q) *
                        std::tgamma(1.0 - q) * std::tgamma(1.0 + q) *
                        pmf_moment_sum(cfg, pmf);
    return std::exp(-expo);
}

ProbResult sop_colluding_mrt(double mu, const SystemConfig& cfg,
                             const CommonPathPmf& pmf) {
    cfg.validate();
    const double t = cfg.t_threshold();
    const double xi_d = cfg.c() * mu * std::pow(cfg.r_d, -cfg.alpha);
    if (xi_d <= t - 1.0) return {1.0, Status::Infeasible};
    if (cfg.lambda_e == 0.0) return {0.0, Status::Ok};
    const int n_terms = cfg.n_approx;
    const double qn = gamma_approx_q(n_terms);
    // threshold on I_e: mu (xi_d - (T-1)) / (a T)
    const double denom = mu * (xi_d - (t - 1.0));
    double sum = 0.0;
    double binom = 1.0;
    for (int n = 0; n <= n_terms; ++n) {
        if (n > 0) binom *= static_cast<double>(n_terms - n + 1) / n;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const double s_arg = qn * cfg.a() * t * n / denom;
        sum += sgn * binom * laplace_ie_mrt(s_arg, cfg, pmf);
    }
    return {clamp_prob(sum), Status::Ok};
}

namespace {

RateResult rate_params(const SystemConfig& cfg, const CommonPathPmf& pmf) {
    RateResult out;
    if (cfg.lambda_e > 0.0) {
        const double q = 2.0 / cfg.alpha;
        out.varpi = std::pow(-pi * cfg.lambda_e * std::tgamma(q + 1.0) *
                                 pmf_moment_sum(cfg, pmf) /
                                 std::log1p(-cfg.epsilon),
                             cfg.alpha / 2.0);
        out.z1 = out.varpi * cfg.a();
        out.delta = std::sqrt(out.z1 * std::pow(cfg.r_d, cfg.alpha) / cfg.c());
    }
    return out;
}

}  // namespace

RateResult max_secrecy_rate_mrt(double mu, const SystemConfig& cfg,
                                const CommonPathPmf& pmf) {
    cfg.validate();
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::domain_error("max_secrecy_rate_mrt: epsilon must be in (0,1)");
    RateResult out = rate_params(cfg, pmf);
    if (mu <= out.delta) {
        out.status = Status::Suspended;
        return out;
    }
    const double c_rd = cfg.c() * std::pow(cfg.r_d, -cfg.alpha);
    out.rate = std::log2((1.0 + c_rd * mu) / (1.0 + out.z1 / mu));
    return out;
}

double secrecy_throughput_mrt(const SystemConfig& cfg,
                              const CommonPathPmf& pmf) {
    cfg.validate();
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::domain_error("secrecy_throughput_mrt: epsilon in (0,1)");
    RateResult rr = rate_params(cfg, pmf);
    const double delta = rr.delta;
    const double z1 = rr.z1;
    const double c_rd = cfg.c() * std::pow(cfg.r_d, -cfg.alpha);
    const int ld = cfg.l_d;
    if (cfg.lambda_e == 0.0) {
        // no eavesdroppers: rate = C_d, threshold 0; only the top term of the
        // expansion survives (delta^{L_d-1-m} -> 0^0 at m = L_d-1).
        return v_aux(c_rd, ld);
    }
    double tot = 0.0;
    for (int m = 0; m < ld; ++m) {
        const double coeff = std::exp(-delta + (ld - 1 - m) * std::log(delta) -
                                      std::lgamma(ld - m));
        const double beta = c_rd / (1.0 + c_rd * delta);
        const double bracket =
            v_aux(1.0 / delta, m + 1) + v_aux(beta, m + 1) -
            v_aux(1.0 / (delta + z1), m + 1) +
            std::log2(delta * (1.0 + c_rd * delta) / (delta + z1));
        tot += coeff * bracket;
    }
    return tot;
}

double secrecy_throughput_mrt_high_power(const SystemConfig& cfg,
                                         const CommonPathPmf& pmf) {
    cfg.validate();
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::domain_error("secrecy_throughput_mrt_high_power: epsilon");
    if (cfg.lambda_e == 0.0)
        throw std::domain_error(
            "secrecy_throughput_mrt_high_power: unbounded at lambda = 0");
    const double q = 2.0 / cfg.alpha;
    const double varpi = std::pow(-pi * cfg.lambda_e * std::tgamma(q + 1.0) *
                                      pmf_moment_sum(cfg, pmf) /
                                      std::log1p(-cfg.epsilon),
                                  cfg.alpha / 2.0);
    // delta_inf = sqrt(varpi L_d r_d^alpha / L_e); a/c -> L_d/L_e, P cancels.
    const double delta = std::sqrt(varpi * cfg.l_d *
                                   std::pow(cfg.r_d, cfg.alpha) / cfg.l_e);
    const int ld = cfg.l_d;
    double tot = 0.0;
    for (int m = 0; m < ld; ++m) {
        const double coeff = std::exp(-delta + (ld - 1 - m) * std::log(delta) -
                                      std::lgamma(ld - m));
        tot += coeff * 2.0 * v_aux(1.0 / delta, m + 1);
    }
    return tot;
}

}  // namespace mmwsec
