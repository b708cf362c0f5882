#ifndef MMWSEC_GEOMETRY_HPP
#define MMWSEC_GEOMETRY_HPP

#include <vector>

namespace mmwsec {

// Angular-domain grid of a uniform linear array with normalized aperture M.
struct AngularGrid {
    int n_t;
    double m;  // N_t * d / wavelength; N_t/2 under half-wavelength spacing

    static AngularGrid half_wavelength(int n_t) {
        return AngularGrid{n_t, n_t / 2.0};
    }
};

// Grid direction Psi_i = (1/M)(i - 1 - (N_t - 1)/2), 1 <= i <= N_t.
double psi(const AngularGrid& grid, int i);

// omega_i = arcsin(Psi_{(N_t-L_d)/2 + i + 1}) - arcsin(Psi_{(N_t-L_d)/2 + i});
// requires N_t - l_d even so the window is centered on integer indices.
double omega_width(const AngularGrid& grid, int l_d, int i);

// Centered destination window {(N_t-L_d)/2 + 1, ..., (N_t+L_d)/2}.
std::vector<int> destination_path_set(const AngularGrid& grid, int l_d);

// Eavesdropper window of l_e consecutive indices anchored by its upper edge:
// topmost index is the largest j with arcsin(Psi_j) <= theta_max, clamped so
// the window stays within [1, N_t].
std::vector<int> eavesdropper_path_set(const AngularGrid& grid, int l_e,
                                       double theta_max);

struct PathSets {
    std::vector<int> omega_d;  // destination paths
    std::vector<int> omega_k;  // eavesdropper paths
    std::vector<int> omega_c;  // common = omega_d n omega_k
    std::vector<int> omega_p;  // omega_d \ omega_c
    std::vector<int> omega_n;  // omega_k \ omega_c
    std::vector<int> omega_a;  // {1..N_t} \ omega_d
};
PathSets make_path_sets(const AngularGrid& grid, const std::vector<int>& omega_d,
                        const std::vector<int>& omega_k);

// Distribution of the common-path count L_c = |omega_d n omega_k| over a
// uniformly distributed eavesdropper direction.
struct CommonPathPmf {
    std::vector<double> probs;  // indexed 0..l_l
    int l_l = 0;                // min(L_d, L_e)
    int l_u = 0;                // max(L_d, L_e)
};
CommonPathPmf common_path_pmf(const AngularGrid& grid, int l_d, int l_e);

}  // namespace mmwsec

#endif
