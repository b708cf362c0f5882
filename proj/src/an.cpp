#include "mmwsec/an.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mmwsec/mrt.hpp"
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

void require_eta_open(double eta, const char* who) {
    if (eta <= 0.0 || eta > 1.0)
        throw std::domain_error(std::string(who) + ": requires eta in (0, 1]");
}

// 2F1(L_c+1, 1-q; L_e+1; w) for w in (-inf, 1): negative/zero w handled
// directly, w in (0,1) mapped through the Pfaff transformation on the
// second parameter so the series argument is nonpositive.
double hyp_for_laplace(int lc, double q, int le, double w) {
    const double a = lc + 1.0, b = 1.0 - q, c = le + 1.0;
    if (w <= 0.0) return gauss_2f1_neg(a, b, c, w);
    if (w >= 1.0)
        throw std::domain_error("hyp_for_laplace: argument must be < 1");
    return std::pow(1.0 - w, -b) * gauss_2f1_neg(c - a, b, c, w / (w - 1.0));
}

// J(rho) of the Jensen-bound quantile equation.
double j_of_rho(double rho, double eta, double q,
                const std::vector<double>& z4, const std::vector<double>& z5,
                int l_e) {
    double s = 0.0;
    for (size_t lc = 2; lc < z4.size(); ++lc) {
        if (z4[lc] == 0.0) continue;
        const int nv = l_e - static_cast<int>(lc);
        s += z4[lc] * std::pow(1.0 + z5[lc] * (1.0 - eta) * rho, -nv);
    }
    return std::pow(rho, -q) * s;
}

}  // namespace

ProbResult connection_probability_an(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.eta == 0.0)
        return {cfg.r_t > 0.0 ? 0.0 : 1.0, Status::Degenerate};
    const double arg = (std::pow(2.0, cfg.r_t) - 1.0) *
                       std::pow(cfg.r_d, cfg.alpha) / (cfg.eta * cfg.c());
    return {regularized_gamma_q_int(cfg.l_d, arg), Status::Ok};
}

double cdf_xe_an_exact(double x, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf) {
    cfg.validate();
    require_eta_open(cfg.eta, "cdf_xe_an_exact");
    if (x <= 0.0) throw std::domain_error("cdf_xe_an_exact: x must be > 0");
    if (mu <= 0.0) throw std::domain_error("cdf_xe_an_exact: mu must be > 0");
    if (cfg.eta == 1.0) return cdf_xe_mrt(x, mu, cfg, pmf);  // exact limit
    if (cfg.lambda_e == 0.0) return 1.0;
    const double q = 2.0 / cfg.alpha;
    const double b = (1.0 - cfg.eta) * mu * x / (cfg.eta * (cfg.n_t - cfg.l_d));
    QuadratureSettings qs;
    qs.rel_tol = 1e-10;
    double tot = 0.0;
    for (int lc = 1; lc <= pmf.l_l; ++lc) {
        if (pmf.probs[lc] == 0.0) continue;
        const int nv = cfg.l_e - lc;
        double kernel;
        if (nv == 0) {
            // no AN-only paths seen by this eavesdropper: MRT-type moment
            kernel = std::exp(std::lgamma(lc + q) - std::lgamma(lc));
        } else {
            // (1/Gamma(L_c)) int_0^inf t^{L_e+q-1} (t+b)^{-n_v} e^{-t} dt
            const double lg = std::lgamma(static_cast<double>(lc));
            const double p_exp = cfg.l_e + q - 1.0;
            auto f = [b, nv, p_exp, lg](double t) {
                if (t <= 0.0) return 0.0;
                return std::exp(p_exp * std::log(t) - t -
                                nv * std::log(t + b) - lg);
            };
            kernel = adaptive_quad(f, 0.0, kInf, qs);
        }
        tot += pmf.probs[lc] * kernel;
    }
    const double pref = pi * cfg.lambda_e * std::tgamma(q + 1.0) *
                        std::pow(mu * x / (cfg.eta * cfg.a()), -q);
    return std::exp(-pref * tot);
}

double cdf_xe_an_bound(double x, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf) {
    cfg.validate();
    require_eta_open(cfg.eta, "cdf_xe_an_bound");
    if (x <= 0.0) throw std::domain_error("cdf_xe_an_bound: x must be > 0");
    if (mu <= 0.0) throw std::domain_error("cdf_xe_an_bound: mu must be > 0");
    if (cfg.eta == 1.0) return cdf_xe_mrt(x, mu, cfg, pmf);  // consistency
    if (cfg.lambda_e == 0.0) return 1.0;
    const double q = 2.0 / cfg.alpha;
    double tot = 0.0;
    for (int lc = 2; lc <= pmf.l_l; ++lc) {  // L_c = 1 coefficient vanishes
        if (pmf.probs[lc] == 0.0) continue;
        const int nv = cfg.l_e - lc;
        const double base =
            1.0 + (1.0 - cfg.eta) * mu * x /
                      (cfg.eta * (cfg.n_t - cfg.l_d) * (lc - 1.0));
        tot += pmf.probs[lc] * std::pow(lc - 1.0, q) * std::pow(base, -nv);
    }
    const double pref = pi * cfg.lambda_e * std::tgamma(q + 1.0) *
                        std::pow(mu * x / (cfg.eta * cfg.a()), -q);
    return std::exp(-pref * tot);
}

ProbResult sop_noncolluding_an(double mu, const SystemConfig& cfg,
                               const CommonPathPmf& pmf) {
    cfg.validate();
    require_eta_open(cfg.eta, "sop_noncolluding_an");
    const double t = cfg.t_threshold();
    const double xi_d = cfg.eta * cfg.c() * mu * std::pow(cfg.r_d, -cfg.alpha);
    if (xi_d <= t - 1.0) return {1.0, Status::Infeasible};
    if (cfg.lambda_e == 0.0) return {0.0, Status::Ok};
    const double x_star = (xi_d - (t - 1.0)) / t;
    return {clamp_prob(1.0 - cdf_xe_an_bound(x_star, mu, cfg, pmf)), Status::Ok};
}

double laplace_ie_an(double s, double mu, const SystemConfig& cfg,
                     const CommonPathPmf& pmf) {
    cfg.validate();
    require_eta_open(cfg.eta, "laplace_ie_an");
    if (s < 0.0) throw std::domain_error("laplace_ie_an: s must be >= 0");
    if (mu <= 0.0) throw std::domain_error("laplace_ie_an: mu must be > 0");
    if (s == 0.0 || cfg.lambda_e == 0.0) return 1.0;
    const double q = 2.0 / cfg.alpha;
    const double z2 = cfg.eta * cfg.a() / mu;
    if (cfg.eta == 1.0) {
        // z3 = 0: I_e is the MRT interference scaled by z2
        return laplace_ie_mrt(s * z2, cfg, pmf);
    }
    const double z3 = (1.0 - cfg.eta) * cfg.a() / (cfg.n_t - cfg.l_d);
    const double g1q = std::tgamma(1.0 + q);
    const double g1mq = std::tgamma(1.0 - q);
    double expo = 0.0;
    for (int lc = 1; lc <= pmf.l_l; ++lc) {
        if (pmf.probs[lc] == 0.0) continue;
        const int nv = cfg.l_e - lc;
        double term;
        if (nv == 0) {
            // degenerate: no AN dimension; matches the MRT kernel
            term = std::pow(s * z2, q) *
                   std::exp(std::lgamma(lc + q) - std::lgamma(lc));
        } else {
            const double w = 1.0 - s * z2 / z3;
            const double ratio =
                lc * std::exp(std::lgamma(cfg.l_e + q) -
                              std::lgamma(cfg.l_e + 1.0));
            term = s * z2 * std::pow(z3, q - 1.0) * ratio *
                   hyp_for_laplace(lc, q, cfg.l_e, w);
        }
        expo += pmf.probs[lc] * term;
    }
    return std::exp(-pi * cfg.lambda_e * g1q * g1mq * expo);
}

ProbResult sop_colluding_an(double mu, const SystemConfig& cfg,
                            const CommonPathPmf& pmf) {
    cfg.validate();
    require_eta_open(cfg.eta, "sop_colluding_an");
    const double t = cfg.t_threshold();
    const double xi_d = cfg.eta * cfg.c() * mu * std::pow(cfg.r_d, -cfg.alpha);
    if (xi_d <= t - 1.0) return {1.0, Status::Infeasible};
    if (cfg.lambda_e == 0.0) return {0.0, Status::Ok};
    const int n_terms = cfg.n_approx;
    const double qn = gamma_approx_q(n_terms);
    double sum = 0.0;
    double binom = 1.0;
    for (int n = 0; n <= n_terms; ++n) {
        if (n > 0) binom *= static_cast<double>(n_terms - n + 1) / n;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const double s_arg = qn * t * n / (xi_d - (t - 1.0));
        sum += sgn * binom * laplace_ie_an(s_arg, mu, cfg, pmf);
    }
    return {clamp_prob(sum), Status::Ok};
}

RhoSolverState solve_rho(double eta, double mu, const SystemConfig& cfg,
                         const CommonPathPmf& pmf) {
    cfg.validate();
    if (eta < 0.0 || eta > 1.0)
        throw std::domain_error("solve_rho: eta must lie in [0, 1]");
    if (mu <= 0.0) throw std::domain_error("solve_rho: mu must be > 0");
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::domain_error("solve_rho: epsilon must be in (0, 1)");
    const double q = 2.0 / cfg.alpha;
    RhoSolverState st;
    st.z4_terms.assign(pmf.l_l + 1, 0.0);
    st.z5_terms.assign(pmf.l_l + 1, 0.0);
    double z4_sum = 0.0;
    for (int lc = 2; lc <= pmf.l_l; ++lc) {
        st.z4_terms[lc] = pmf.probs[lc] * std::pow(lc - 1.0, q);
        st.z5_terms[lc] = mu / ((cfg.n_t - cfg.l_d) * (lc - 1.0));
        z4_sum += st.z4_terms[lc];
    }
    if (cfg.lambda_e == 0.0) return st;  // rho = 0: unconstrained
    if (z4_sum == 0.0)
        throw std::runtime_error("solve_rho: AN bound degenerate (empty sum)");
    st.q_const = -std::log1p(-cfg.epsilon) * std::pow(mu / cfg.a(), q) /
                 (pi * cfg.lambda_e * std::tgamma(q + 1.0));
    st.rho_max = std::pow(z4_sum / st.q_const, cfg.alpha / 2.0);
    // Xi(rho) = 1/J - 1/Q: negative at 0+, nonnegative at rho_max
    double lo = 0.0;
    double hi = st.rho_max * (1.0 + 1e-9);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double xi =
            1.0 / j_of_rho(mid, eta, q, st.z4_terms, st.z5_terms, cfg.l_e) -
            1.0 / st.q_const;
        if (xi < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * st.rho_max) break;
    }
    st.rho = 0.5 * (lo + hi);
    return st;
}

double drho_deta(const RhoSolverState& state, double eta, double mu,
                 const SystemConfig& cfg, const CommonPathPmf& pmf) {
    (void)mu;
    (void)pmf;
    const double q = 2.0 / cfg.alpha;
    const double rho = state.rho;
    if (rho == 0.0) return 0.0;
    double c1 = 0.0, c2 = 0.0;
    for (size_t lc = 2; lc < state.z4_terms.size(); ++lc) {
        if (state.z4_terms[lc] == 0.0) continue;
        const int nv = cfg.l_e - static_cast<int>(lc);
        const double base = 1.0 + state.z5_terms[lc] * (1.0 - eta) * rho;
        c2 += state.z4_terms[lc] * std::pow(base, -nv);
        c1 += state.z4_terms[lc] * state.z5_terms[lc] * nv *
              std::pow(base, -nv - 1.0);
    }
    if (c1 == 0.0) return 0.0;
    const double sigma = c2 / c1;
    return rho * rho / (rho * (1.0 - eta) + q * sigma);
}

double secrecy_rate_an(double eta, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf) {
    const double c_rd = cfg.c() * std::pow(cfg.r_d, -cfg.alpha);
    if (eta == 0.0) return 0.0;
    RhoSolverState st = solve_rho(eta, mu, cfg, pmf);
    const double num = 1.0 + eta * c_rd * mu;
    const double den = 1.0 + eta * st.rho;
    return num > den ? std::log2(num / den) : 0.0;
}

double secrecy_rate_an_derivative(double eta, double mu,
                                  const SystemConfig& cfg,
                                  const CommonPathPmf& pmf) {
    const double c_rd_mu = cfg.c() * std::pow(cfg.r_d, -cfg.alpha) * mu;
    RhoSolverState st = solve_rho(eta, mu, cfg, pmf);
    const double dr = drho_deta(st, eta, mu, cfg, pmf);
    return (c_rd_mu / (1.0 + eta * c_rd_mu) -
            (st.rho + eta * dr) / (1.0 + eta * st.rho)) /
           std::log(2.0);
}

EtaOptimum optimal_eta(double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf) {
    cfg.validate();
    if (mu <= 0.0) throw std::domain_error("optimal_eta: mu must be > 0");
    EtaOptimum out;
    const double c_rd_mu = cfg.c() * std::pow(cfg.r_d, -cfg.alpha) * mu;
    if (cfg.lambda_e == 0.0) {
        out.eta_star = 1.0;
        out.boundary_case = true;
        out.rate_at_opt = std::log2(1.0 + c_rd_mu);
        return out;
    }
    RhoSolverState at0 = solve_rho(0.0, mu, cfg, pmf);
    if (at0.rho >= c_rd_mu) {
        out.status = Status::Suspended;
        out.eta_star = 0.0;
        return out;
    }
    // R_s(eta) is concave; the optimum is at eta = 1 iff the derivative is
    // still nonnegative there, otherwise it is the unique stationary point.
    if (secrecy_rate_an_derivative(1.0, mu, cfg, pmf) >= 0.0) {
        out.eta_star = 1.0;
        out.boundary_case = true;
        out.rate_at_opt = secrecy_rate_an(1.0, mu, cfg, pmf);
        return out;
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (secrecy_rate_an_derivative(mid, mu, cfg, pmf) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.eta_star = 0.5 * (lo + hi);
    out.rate_at_opt = secrecy_rate_an(out.eta_star, mu, cfg, pmf);
    return out;
}

double an_gain_threshold(const SystemConfig& cfg, const CommonPathPmf& pmf) {
    cfg.validate();
    if (cfg.lambda_e == 0.0) return 0.0;
    // rho(0; mu) scales as 1/mu, so mu > r^alpha rho(0; mu)/c reduces to
    // mu > sqrt(rho_tilde(0) r^alpha / c) with rho_tilde solved at mu = 1.
    RhoSolverState st = solve_rho(0.0, 1.0, cfg, pmf);
    return std::sqrt(st.rho * std::pow(cfg.r_d, cfg.alpha) / cfg.c());
}

double secrecy_throughput_an(const SystemConfig& cfg, const CommonPathPmf& pmf) {
    cfg.validate();
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::domain_error("secrecy_throughput_an: epsilon in (0,1)");
    const double delta = an_gain_threshold(cfg, pmf);
    const double lgl = std::lgamma(static_cast<double>(cfg.l_d));
    auto rate_at = [&](double x) {
        EtaOptimum opt = optimal_eta(x, cfg, pmf);
        return opt.status == Status::Ok ? opt.rate_at_opt : 0.0;
    };
    double prev = -1.0;
    for (int n = 16; n <= 512; n *= 2) {
        GaussLaguerreRule rule = gauss_laguerre(n);
        double est = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = rule.nodes[i] + delta;
            const double dens =
                std::exp((cfg.l_d - 1.0) * std::log(x) - delta - lgl);
            est += rule.weights[i] * rate_at(x) * dens;
        }
        if (prev >= 0.0 && std::fabs(est - prev) <= 1e-6 * std::fabs(est))
            return est;
        prev = est;
    }
    return prev;
}

}  // namespace mmwsec
