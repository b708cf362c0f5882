#include "mmwsec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmwsec {

namespace {

void check_grid(const AngularGrid& grid) {
    if (grid.n_t < 2) throw std::invalid_argument("grid: n_t must be >= 2");
    if (grid.m <= 0.0) throw std::invalid_argument("grid: m must be > 0");
}

void check_parity(const AngularGrid& grid, int l_d) {
    if ((grid.n_t - l_d) % 2 != 0)
        throw std::invalid_argument("N_t - L_d must be even (centered window)");
}

}  // namespace

double psi(const AngularGrid& grid, int i) {
    check_grid(grid);
    if (i < 1 || i > grid.n_t) throw std::out_of_range("psi: index out of range");
    return (i - 1 - (grid.n_t - 1) / 2.0) / grid.m;
}

double omega_width(const AngularGrid& grid, int l_d, int i) {
    check_parity(grid, l_d);
    const int d = (grid.n_t - l_d) / 2;
    if (i < 1 || d + i + 1 > grid.n_t)
        throw std::out_of_range("omega_width: grid index out of range");
    const double lo = psi(grid, d + i);
    const double hi = psi(grid, d + i + 1);
    if (lo < -1.0 || hi > 1.0)
        throw std::domain_error("omega_width: direction outside [-1, 1]");
    return std::asin(hi) - std::asin(lo);
}

std::vector<int> destination_path_set(const AngularGrid& grid, int l_d) {
    check_grid(grid);
    check_parity(grid, l_d);
    if (l_d < 1 || l_d >= grid.n_t)
        throw std::invalid_argument("destination_path_set: need 1 <= L_d < N_t");
    std::vector<int> out(l_d);
    const int first = (grid.n_t - l_d) / 2 + 1;
    for (int i = 0; i < l_d; ++i) out[i] = first + i;
    return out;
}

std::vector<int> eavesdropper_path_set(const AngularGrid& grid, int l_e,
                                       double theta_max) {
    check_grid(grid);
    if (l_e < 1 || l_e >= grid.n_t)
        throw std::invalid_argument("eavesdropper_path_set: need 1 <= L_e < N_t");
    const double s = std::sin(theta_max);
    // largest j with Psi_j <= sin(theta_max): Psi_j = (j-1-(N_t-1)/2)/M
    int top = static_cast<int>(
        std::floor(grid.m * s + 1.0 + (grid.n_t - 1) / 2.0 + 1e-12));
    top = std::clamp(top, l_e, grid.n_t);
    std::vector<int> out(l_e);
    for (int i = 0; i < l_e; ++i) out[i] = top - l_e + 1 + i;
    return out;
}

PathSets make_path_sets(const AngularGrid& grid, const std::vector<int>& omega_d,
                        const std::vector<int>& omega_k) {
    PathSets ps;
    ps.omega_d = omega_d;
    ps.omega_k = omega_k;
    std::set_intersection(omega_d.begin(), omega_d.end(), omega_k.begin(),
                          omega_k.end(), std::back_inserter(ps.omega_c));
    std::set_difference(omega_d.begin(), omega_d.end(), ps.omega_c.begin(),
                        ps.omega_c.end(), std::back_inserter(ps.omega_p));
    std::set_difference(omega_k.begin(), omega_k.end(), ps.omega_c.begin(),
                        ps.omega_c.end(), std::back_inserter(ps.omega_n));
    for (int i = 1; i <= grid.n_t; ++i)
        if (!std::binary_search(omega_d.begin(), omega_d.end(), i))
            ps.omega_a.push_back(i);
    return ps;
}

CommonPathPmf common_path_pmf(const AngularGrid& grid, int l_d, int l_e) {
    check_grid(grid);
    check_parity(grid, l_d);
    if (l_d < 1 || l_d >= grid.n_t || l_e < 1 || l_e >= grid.n_t)
        throw std::invalid_argument("common_path_pmf: path counts out of range");
    const int l_l = std::min(l_d, l_e);
    const int l_u = std::max(l_d, l_e);
    CommonPathPmf pmf;
    pmf.l_l = l_l;
    pmf.l_u = l_u;
    pmf.probs.assign(l_l + 1, 0.0);
    constexpr double pi = std::numbers::pi;
    double tail = 0.0;
    for (int i = l_l; i <= l_u; ++i) tail += omega_width(grid, l_d, i);
    pmf.probs[l_l] = tail / pi;
    double acc = pmf.probs[l_l];
    for (int m = 1; m <= l_l - 1; ++m) {
        pmf.probs[m] = 2.0 * omega_width(grid, l_d, m) / pi;
        acc += pmf.probs[m];
    }
    pmf.probs[0] = 1.0 - acc;
    for (double p : pmf.probs)
        if (p < -1e-12 || p > 1.0 + 1e-12)
            throw std::domain_error("common_path_pmf: probability out of [0,1]");
    if (pmf.probs[0] < 0.0) pmf.probs[0] = 0.0;
    return pmf;
}

}  // namespace mmwsec
