#ifndef MMWSEC_MRT_HPP
#define MMWSEC_MRT_HPP

#include "mmwsec/config.hpp"
#include "mmwsec/geometry.hpp"

namespace mmwsec {

// P{ log2(1 + c mu r_d^-alpha) > R_t } with mu ~ Gamma(L_d, 1).
double connection_probability_mrt(const SystemConfig& cfg);

// CDF of the strongest eavesdropper SNR, conditioned on destination gain mu.
double cdf_xe_mrt(double x, double mu, const SystemConfig& cfg,
                  const CommonPathPmf& pmf);

// Secrecy outage probability, independent eavesdroppers, codeword rate C_d.
ProbResult sop_noncolluding_mrt(double mu, const SystemConfig& cfg,
                                const CommonPathPmf& pmf);

// Laplace transform of the aggregate eavesdropper interference
// I_e = sum_k mu_c,k u_k r_k^-alpha.
double laplace_ie_mrt(double s, const SystemConfig& cfg,
                      const CommonPathPmf& pmf);

// Colluding (maximum-ratio-combining) SOP via the N-term alternating
// gamma-approximation with q = N (N!)^{-1/N}.
ProbResult sop_colluding_mrt(double mu, const SystemConfig& cfg,
                             const CommonPathPmf& pmf);

struct RateResult {
    double rate = 0.0;    // bits/s/Hz; 0 when transmission is suspended
    double delta = 0.0;   // on-off gain threshold
    double varpi = 0.0;   // density/epsilon aggregate
    double z1 = 0.0;      // varpi * a
    Status status = Status::Ok;
};

// Largest secrecy rate meeting the SOP constraint epsilon at gain mu.
RateResult max_secrecy_rate_mrt(double mu, const SystemConfig& cfg,
                                const CommonPathPmf& pmf);

// E_mu[max rate; mu > delta] with mu ~ Gamma(L_d, 1), closed form.
double secrecy_throughput_mrt(const SystemConfig& cfg, const CommonPathPmf& pmf);

// P -> infinity limit of the throughput (never reads the configured power).
double secrecy_throughput_mrt_high_power(const SystemConfig& cfg,
                                         const CommonPathPmf& pmf);

// Shared helper: sum_{L_c>=1} p(L_c) Gamma(L_c + 2/alpha) / Gamma(L_c).
double pmf_moment_sum(const SystemConfig& cfg, const CommonPathPmf& pmf);

}  // namespace mmwsec

#endif
