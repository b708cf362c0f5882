#ifndef MMWSEC_MC_HPP
#define MMWSEC_MC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mmwsec/config.hpp"
#include "mmwsec/geometry.hpp"

namespace mmwsec {

// Deterministic 64-bit mix (splitmix64 finalizer); used to derive per-trial
// and per-ring substreams so results are independent of evaluation order.
std::uint64_t mix64(std::uint64_t x);

// Small deterministic RNG built on the splitmix64 sequence.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                 // (0, 1)
    double exponential();             // rate 1
    double gamma_int(int shape);      // integer shape, scale 1
    long poisson(double mean);
    std::pair<double, double> normal_pair();  // two standard normals

  private:
    std::uint64_t state_;
};

struct PppRealization {
    std::vector<std::pair<double, double>> positions;  // (radius m, angle rad)
    double density = 0.0;
};

// Half-disc PPP: count ~ Poisson(lambda (pi/2) r_max^2), radii area-uniform,
// angles uniform on [-pi/2, pi/2].
PppRealization sample_ppp(double lambda_e, double r_max, std::uint64_t seed);

enum class McMode { AnalysisFaithful, Physical };
enum class McMetric {
    Connection,
    SopNoncolluding,
    SopColluding,
    CdfPoint,
    LaplacePoint
};
enum class Scheme { Mrt, An };

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

struct McParams {
    double mu = 20.0;      // conditional destination gain (SOP/CDF/Laplace)
    double point = 1.0;    // x for CdfPoint, s for LaplacePoint
    double r_max = 5000.0; // PPP truncation radius
    double r_anchor = 0.0; // ring anchor; 0 means r_max (single ring). Radii
                           // in [0, anchor] reuse the same substream when
                           // r_max grows, so truncation checks are coupled.
    McMode mode = McMode::AnalysisFaithful;
};

McEstimate mc_metric(McMetric metric, Scheme scheme, const McParams& params,
                     const SystemConfig& cfg, const CommonPathPmf& pmf,
                     long trials, std::uint64_t seed);

// All PPP-based metrics from one set of realizations (shared draws; each
// entry equals the corresponding mc_metric output for the same seed).
struct McBundle {
    McEstimate sop_noncolluding;
    McEstimate sop_colluding;
    McEstimate laplace_point;
    McEstimate cdf_point;
};
McBundle mc_bundle(Scheme scheme, const McParams& params,
                   const SystemConfig& cfg, const CommonPathPmf& pmf,
                   long trials, std::uint64_t seed);

// Projection statistics |g_kc g_dc^H|^2 / ||g_dc||^2 from explicit
// complex-gain draws, for eavesdroppers with at least one common path.
// Used to check the Exp(1) distribution claim behind the analysis mode.
std::vector<double> physical_u_statistics(const SystemConfig& cfg, long samples,
                                          std::uint64_t seed);

// Geometric sampler for the common-path count: theta_max uniform on
// [-pi/2, pi/2], window anchored by its upper edge, overlap with the
// centered destination window.
std::vector<double> mc_common_path_pmf(const AngularGrid& grid, int l_d,
                                       int l_e, long samples,
                                       std::uint64_t seed);

}  // namespace mmwsec

#endif
