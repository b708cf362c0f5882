#ifndef MMWSEC_AN_HPP
#define MMWSEC_AN_HPP

#include <vector>

#include "mmwsec/config.hpp"
#include "mmwsec/geometry.hpp"

namespace mmwsec {

// Connection probability with a fraction eta of power on the information
// beam (artificial noise is nulled at the destination).
ProbResult connection_probability_an(const SystemConfig& cfg);

// Exact CDF of the strongest eavesdropper SINR (expectation form, evaluated
// by adaptive quadrature).  eta = 1 reduces to the MRT CDF.
double cdf_xe_an_exact(double x, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf);

// Closed-form Jensen upper bound on the same CDF.
double cdf_xe_an_bound(double x, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf);

// Non-colluding SOP built on the Jensen bound (the optimizer's objective).
ProbResult sop_noncolluding_an(double mu, const SystemConfig& cfg,
                               const CommonPathPmf& pmf);

// Laplace transform of I_e = sum_k z2 mu_c,k u_k / (z3 v_k + r_k^alpha),
// z2 = eta a / mu, z3 = (1-eta) a / (N_t - L_d).
double laplace_ie_an(double s, double mu, const SystemConfig& cfg,
                     const CommonPathPmf& pmf);

// Colluding SOP via the alternating gamma-approximation.
ProbResult sop_colluding_an(double mu, const SystemConfig& cfg,
                            const CommonPathPmf& pmf);

struct RhoSolverState {
    double rho = 0.0;
    double rho_max = 0.0;
    double q_const = 0.0;         // Q
    std::vector<double> z4_terms;  // indexed by L_c (0..l_l; first two zero)
    std::vector<double> z5_terms;
};

// Equivalent-SINR threshold rho(eta) such that the Jensen-bound CDF equals
// 1 - epsilon at SINR eta*rho.  Bisection on Xi(rho) = 1/J(rho) - 1/Q.
RhoSolverState solve_rho(double eta, double mu, const SystemConfig& cfg,
                         const CommonPathPmf& pmf);

// d rho / d eta at a solved state (implicit differentiation of J(rho) = Q).
double drho_deta(const RhoSolverState& state, double eta, double mu,
                 const SystemConfig& cfg, const CommonPathPmf& pmf);

struct EtaOptimum {
    double eta_star = 1.0;
    double rate_at_opt = 0.0;
    bool boundary_case = false;  // optimum pinned at eta = 1
    Status status = Status::Ok;
};

// Power split maximizing the epsilon-constrained secrecy rate at gain mu.
EtaOptimum optimal_eta(double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf);

// Secrecy rate at a given eta (shared by the optimizer and its tests).
double secrecy_rate_an(double eta, double mu, const SystemConfig& cfg,
                       const CommonPathPmf& pmf);

// dR_s/d eta at a given eta.
double secrecy_rate_an_derivative(double eta, double mu, const SystemConfig& cfg,
                                  const CommonPathPmf& pmf);

// E_mu[rate at eta*(mu); mu > delta], Gauss-Laguerre with node doubling.
double secrecy_throughput_an(const SystemConfig& cfg, const CommonPathPmf& pmf);

// On-off threshold: smallest gain with a feasible positive secrecy rate.
double an_gain_threshold(const SystemConfig& cfg, const CommonPathPmf& pmf);

}  // namespace mmwsec

#endif
