#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "mmwsec/an.hpp"
#include "mmwsec/mc.hpp"
#include "mmwsec/mrt.hpp"

using namespace mmwsec;

namespace {

SystemConfig base_cfg() {
    SystemConfig cfg;
    cfg.n_t = 100;
    cfg.l_d = 20;
    cfg.l_e = 20;
    cfg.alpha = 4.0;
    cfg.lambda_e = 1e-5;
    cfg.p_dbm = 0.0;
    cfg.noise_dbm = -60.0;
    cfg.r_d = 50.0;
    cfg.eta = 0.5;
    cfg.r_s = 0.5;
    cfg.r_t = 6.0;
    return cfg;
}

CommonPathPmf base_pmf(const SystemConfig& cfg) {
    return common_path_pmf(AngularGrid::half_wavelength(cfg.n_t), cfg.l_d,
                           cfg.l_e);
}

}  // namespace

TEST_CASE("rng distribution sanity") {
    Rng rng(7);
    const long n = 200000;
    double mean = 0.0, mean_exp = 0.0;
    for (long i = 0; i < n; ++i) {
        mean += rng.uniform();
        mean_exp += rng.exponential();
    }
    CHECK(mean / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(mean_exp / n == doctest::Approx(1.0).epsilon(0.01));
    // Poisson mean/variance at both sampler regimes
    for (double lam : {3.0, 80.0}) {
        double s = 0.0, s2 = 0.0;
        for (long i = 0; i < n / 4; ++i) {
            const double k = static_cast<double>(rng.poisson(lam));
            s += k;
            s2 += k * k;
        }
        const double m = s / (n / 4);
        const double var = s2 / (n / 4) - m * m;
        CHECK(m == doctest::Approx(lam).epsilon(0.02));
        CHECK(var == doctest::Approx(lam).epsilon(0.05));
    }
    // integer-shape gamma mean
    double g = 0.0;
    for (long i = 0; i < n / 4; ++i) g += rng.gamma_int(5);
    CHECK(g / (n / 4) == doctest::Approx(5.0).epsilon(0.02));
}

TEST_CASE("half-disc PPP sampling") {
    CHECK(sample_ppp(0.0, 100.0, 3).positions.empty());
    CHECK_THROWS(sample_ppp(-1.0, 100.0, 3));
    CHECK_THROWS(sample_ppp(1e-5, 0.0, 3));
    // determinism
    const PppRealization a = sample_ppp(1e-4, 2000.0, 99);
    const PppRealization b = sample_ppp(1e-4, 2000.0, 99);
    REQUIRE(a.positions.size() == b.positions.size());
    for (size_t i = 0; i < a.positions.size(); ++i) {
        CHECK(a.positions[i].first == b.positions[i].first);
        CHECK(a.positions[i].second == b.positions[i].second);
    }
    // Poisson mean over many draws: lambda * (pi/2) r^2
    const double lambda = 2e-5, r_max = 1000.0;
    const double expect = lambda * (M_PI / 2.0) * r_max * r_max;
    long total = 0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const PppRealization p = sample_ppp(lambda, r_max, 1000 + i);
        total += static_cast<long>(p.positions.size());
        for (const auto& [r, th] : p.positions) {
            CHECK(r > 0.0);
            CHECK(r <= r_max);
            CHECK(th >= -M_PI / 2);
            CHECK(th <= M_PI / 2);
        }
    }
    const double mean = static_cast<double>(total) / draws;
    const double sigma = std::sqrt(expect / draws);
    CHECK(std::fabs(mean - expect) < 3.0 * sigma);
}

TEST_CASE("exact estimates in degenerate regimes") {
    SystemConfig cfg = base_cfg();
    const CommonPathPmf pmf = base_pmf(cfg);
    McParams params;
    params.mu = 300.0;
    params.r_max = 1000.0;
    SystemConfig open = cfg;
    open.r_t = 0.0;
    open.r_s = 0.0;
    const McEstimate pc =
        mc_metric(McMetric::Connection, Scheme::Mrt, params, open, pmf, 2000, 5);
    CHECK(pc.mean == 1.0);
    CHECK(pc.std_error == 0.0);
    SystemConfig empty = cfg;
    empty.lambda_e = 0.0;
    const McEstimate sop = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                     params, empty, pmf, 2000, 5);
    CHECK(sop.mean == 0.0);
}

TEST_CASE("determinism across thread counts") {
    SystemConfig cfg = base_cfg();
    const CommonPathPmf pmf = base_pmf(cfg);
    McParams params;
    params.mu = 300.0;
    params.r_max = 800.0;
    setenv("MMWSEC_THREADS", "1", 1);
    const McEstimate one = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                     params, cfg, pmf, 20000, 11);
    setenv("MMWSEC_THREADS", "4", 1);
    const McEstimate four = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                      params, cfg, pmf, 20000, 11);
    unsetenv("MMWSEC_THREADS");
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
}

TEST_CASE("bundle matches individual metrics") {
    SystemConfig cfg = base_cfg();
    const CommonPathPmf pmf = base_pmf(cfg);
    McParams params;
    params.mu = 300.0;
    params.point = 0.4;
    params.r_max = 800.0;
    for (Scheme scheme : {Scheme::Mrt, Scheme::An}) {
        const McBundle b = mc_bundle(scheme, params, cfg, pmf, 5000, 17);
        CHECK(b.sop_noncolluding.mean ==
              mc_metric(McMetric::SopNoncolluding, scheme, params, cfg, pmf,
                        5000, 17)
                  .mean);
        CHECK(b.sop_colluding.mean ==
              mc_metric(McMetric::SopColluding, scheme, params, cfg, pmf, 5000,
                        17)
                  .mean);
        CHECK(b.laplace_point.mean ==
              mc_metric(McMetric::LaplacePoint, scheme, params, cfg, pmf, 5000,
                        17)
                  .mean);
        CHECK(b.cdf_point.mean ==
              mc_metric(McMetric::CdfPoint, scheme, params, cfg, pmf, 5000, 17)
                  .mean);
        CHECK(b.sop_colluding.mean >= b.sop_noncolluding.mean);
    }
}

TEST_CASE("estimates track the closed forms") {
    SystemConfig cfg = base_cfg();
    const CommonPathPmf pmf = base_pmf(cfg);
    McParams params;
    params.mu = 300.0;
    params.r_max = 1500.0;
    const long trials = 40000;
    const McBundle mrt = mc_bundle(Scheme::Mrt, params, cfg, pmf, trials, 23);
    const ProbResult sop = sop_noncolluding_mrt(params.mu, cfg, pmf);
    REQUIRE(sop.status == Status::Ok);
    CHECK(std::fabs(sop.value - mrt.sop_noncolluding.mean) <=
          3.5 * mrt.sop_noncolluding.std_error + 1e-4);
    const double x_star =
        (cfg.c() * params.mu * std::pow(cfg.r_d, -cfg.alpha) -
         (cfg.t_threshold() - 1.0)) /
        cfg.t_threshold();
    params.point = x_star;
    const McBundle at_x = mc_bundle(Scheme::Mrt, params, cfg, pmf, trials, 29);
    CHECK(std::fabs(cdf_xe_mrt(x_star, params.mu, cfg, pmf) -
                    at_x.cdf_point.mean) <=
          3.5 * at_x.cdf_point.std_error + 1e-4);
    // Laplace points, MRT and AN
    params.point = 1.0;
    const McBundle lap = mc_bundle(Scheme::Mrt, params, cfg, pmf, trials, 31);
    CHECK(std::fabs(laplace_ie_mrt(1.0, cfg, pmf) - lap.laplace_point.mean) <=
          3.5 * lap.laplace_point.std_error + 1e-4);
    params.point = 0.5;
    const McBundle lap_an = mc_bundle(Scheme::An, params, cfg, pmf, trials, 37);
    CHECK(std::fabs(laplace_ie_an(0.5, params.mu, cfg, pmf) -
                    lap_an.laplace_point.mean) <=
          3.5 * lap_an.laplace_point.std_error + 1e-4);
}

TEST_CASE("geometric common-path sampler") {
    const AngularGrid grid = AngularGrid::half_wavelength(100);
    const std::vector<double> hist = mc_common_path_pmf(grid, 20, 20, 200000, 3);
    CHECK(std::accumulate(hist.begin(), hist.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // far-off window dominated by zero overlap
    const std::vector<double> far = mc_common_path_pmf(grid, 4, 4, 100000, 5);
    CHECK(far[0] > 0.8);
}

TEST_CASE("geometric sampler vs closed-form pmf at the documented config") {
    // The upper-edge window convention carries an intrinsic deterministic
    // total-variation offset of ~0.012 against the closed form at
    // (100, 20, 20); the 0.01 target is not attainable for this pairing.
    // Kept at face value; see the sparse-window suite in the acceptance
    // runner for the regime where the two constructions agree.
    const AngularGrid grid = AngularGrid::half_wavelength(100);
    const CommonPathPmf pmf = common_path_pmf(grid, 20, 20);
    const std::vector<double> hist =
        mc_common_path_pmf(grid, 20, 20, 1000000, 7);
    double tv = 0.0;
    for (size_t i = 0; i < hist.size(); ++i)
        tv += std::fabs(hist[i] - pmf.probs[i]);
    tv /= 2.0;
    CHECK(tv <= 0.01);
}

TEST_CASE("physical projection statistic is Exp(1)") {
    SystemConfig cfg = base_cfg();
    const long n = 100000;
    std::vector<double> u = physical_u_statistics(cfg, n, 13);
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    for (long i = 0; i < n; ++i) {
        const double f = 1.0 - std::exp(-u[i]);
        ks = std::max(ks, std::fabs(f - (i + 1.0) / n));
        ks = std::max(ks, std::fabs(f - static_cast<double>(i) / n));
    }
    // 1% critical value of the Kolmogorov statistic
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("truncation coupling") {
    // growing r_max only adds the outer annulus: SOP can only move up
    SystemConfig cfg = base_cfg();
    const CommonPathPmf pmf = base_pmf(cfg);
    McParams near_field;
    near_field.mu = 300.0;
    near_field.r_max = 750.0;
    near_field.r_anchor = 750.0;
    McParams far_field = near_field;
    far_field.r_max = 1500.0;
    const McEstimate a = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                   near_field, cfg, pmf, 20000, 41);
    const McEstimate b = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                   far_field, cfg, pmf, 20000, 41);
    CHECK(b.mean >= a.mean);
}
