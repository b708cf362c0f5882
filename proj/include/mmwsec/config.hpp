#ifndef MMWSEC_CONFIG_HPP
#define MMWSEC_CONFIG_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmwsec {

enum class Status { Ok, Infeasible, Suspended, Degenerate };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Infeasible: return "infeasible";
        case Status::Suspended: return "suspended";
        case Status::Degenerate: return "degenerate";
    }
    return "unknown";
}

struct SystemConfig {
    int n_t = 100;            // transmit antennas
    int l_d = 20;             // destination resolvable paths
    int l_e = 20;             // eavesdropper resolvable paths
    double alpha = 4.0;       // path-loss exponent (> 2)
    double lambda_e = 1e-5;   // eavesdropper density per m^2
    double p_dbm = 10.0;      // transmit power
    double noise_dbm = -60.0; // noise power
    double r_d = 50.0;        // transmitter-destination distance, m
    double eta = 1.0;         // information-beam power fraction
    double r_s = 1.0;         // secrecy rate, bits/s/Hz
    double r_t = 6.0;         // codeword rate, bits/s/Hz
    double epsilon = 0.01;    // SOP constraint
    int n_approx = 5;         // gamma-approximation term count

    double p_lin() const { return std::pow(10.0, p_dbm / 10.0); }       // mW
    double noise_lin() const { return std::pow(10.0, noise_dbm / 10.0); }
    double a() const { return p_lin() / (l_e * noise_lin()); }
    double c() const { return p_lin() / (l_d * noise_lin()); }
    double t_threshold() const { return std::pow(2.0, r_s); }

    void validate() const {
        if (alpha <= 2.0)
            throw std::invalid_argument("config: alpha must exceed 2");
        if (l_d < 1 || l_d >= n_t || l_e < 1 || l_e >= n_t)
            throw std::invalid_argument("config: need 0 < L_d, L_e < N_t");
        if (lambda_e < 0.0)
            throw std::invalid_argument("config: lambda_e must be >= 0");
        if (eta < 0.0 || eta > 1.0)
            throw std::invalid_argument("config: eta must lie in [0, 1]");
        if (r_s < 0.0 || r_t < 0.0 || r_s > r_t)
            throw std::invalid_argument("config: need 0 <= R_s <= R_t");
        if (epsilon < 0.0 || epsilon > 1.0)
            throw std::invalid_argument("config: epsilon must lie in [0, 1]");
        if (n_approx < 1)
            throw std::invalid_argument("config: n_approx must be >= 1");
    }
};

// Probability-valued result whose conditioning may be infeasible/suspended.
struct ProbResult {
    double value = 0.0;
    Status status = Status::Ok;
};

}  // namespace mmwsec

#endif
