#include "mmwsec/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace mmwsec {

namespace {

constexpr double pi = std::numbers::pi;

int env_thread_count() {
    if (const char* v = std::getenv("MMWSEC_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double Rng::uniform() {
    double u = (next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::gamma_int(int shape) {
    // product of uniforms; shapes here stay far from the underflow limit
    double prod = 1.0;
    for (int i = 0; i < shape; ++i) prod *= uniform();
    return -std::log(prod);
}

long Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    // PTRS transformed rejection (Hormann), exact and deterministic
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
        double u = uniform() - 0.5;
        double v = uniform();
        double us = 0.5 - std::fabs(u);
        long k = static_cast<long>(std::floor((2.0 * a / us + b) * u + mean + 0.43));
        if (us >= 0.07 && v <= v_r) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            -mean + k * std::log(mean) - std::lgamma(k + 1.0))
            return k;
    }
}

std::pair<double, double> Rng::normal_pair() {
    const double r = std::sqrt(2.0 * exponential());
    const double th = 2.0 * pi * uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

PppRealization sample_ppp(double lambda_e, double r_max, std::uint64_t seed) {
    if (lambda_e < 0.0) throw std::domain_error("sample_ppp: lambda_e >= 0");
    if (r_max <= 0.0) throw std::domain_error("sample_ppp: r_max > 0");
    Rng rng(seed);
    PppRealization out;
    out.density = lambda_e;
    const long n = rng.poisson(lambda_e * (pi / 2.0) * r_max * r_max);
    out.positions.reserve(n);
    for (long i = 0; i < n; ++i) {
        const double r = r_max * std::sqrt(rng.uniform());
        const double th = pi * (rng.uniform() - 0.5);
        out.positions.emplace_back(r, th);
    }
    return out;
}

namespace {

// One eavesdropper's effective draws.
struct EavesDraw {
    double r;
    int l_c;
    double mu_c;  // destination gain over the common window
    double u;     // projection statistic
    double v;     // gain over the AN-only window
};

struct TrialValues {
    double sop_nc;    // indicator
    double sop_col;   // indicator
    double laplace;   // exp(-s I_e)
    double cdf;       // indicator max xi < x
};

struct TrialContext {
    const SystemConfig* cfg;
    const CommonPathPmf* pmf;
    Scheme scheme;
    McParams params;
    // precomputed
    double a, c, t, alpha;
    double x_star;      // SOP SINR threshold ((xi_d - (T-1))/T); <= 0 if infeasible
    bool feasible;
    std::vector<double> pmf_cdf;
    // physical-mode geometry
    AngularGrid grid{0, 0.0};
    int dest_lo = 0, dest_hi = 0;  // destination window [lo, hi]
};

TrialContext make_context(Scheme scheme, const McParams& params,
                          const SystemConfig& cfg, const CommonPathPmf& pmf) {
    TrialContext ctx;
    ctx.cfg = &cfg;
    ctx.pmf = &pmf;
    ctx.scheme = scheme;
    ctx.params = params;
    if (ctx.params.r_anchor <= 0.0) ctx.params.r_anchor = ctx.params.r_max;
    ctx.a = cfg.a();
    ctx.c = cfg.c();
    ctx.t = cfg.t_threshold();
    ctx.alpha = cfg.alpha;
    const double eta_eff = scheme == Scheme::An ? cfg.eta : 1.0;
    const double xi_d =
        eta_eff * ctx.c * params.mu * std::pow(cfg.r_d, -cfg.alpha);
    ctx.feasible = xi_d > ctx.t - 1.0;
    ctx.x_star = (xi_d - (ctx.t - 1.0)) / ctx.t;
    ctx.pmf_cdf.resize(pmf.probs.size());
    double acc = 0.0;
    for (size_t i = 0; i < pmf.probs.size(); ++i) {
        acc += pmf.probs[i];
        ctx.pmf_cdf[i] = acc;
    }
    ctx.grid = AngularGrid::half_wavelength(cfg.n_t);
    ctx.dest_lo = (cfg.n_t - cfg.l_d) / 2 + 1;
    ctx.dest_hi = (cfg.n_t + cfg.l_d) / 2;
    return ctx;
}

int sample_lc(const TrialContext& ctx, Rng& rng) {
    const double u = rng.uniform();
    for (size_t i = 0; i < ctx.pmf_cdf.size(); ++i)
        if (u <= ctx.pmf_cdf[i]) return static_cast<int>(i);
    return static_cast<int>(ctx.pmf_cdf.size()) - 1;
}

// Analysis-faithful per-eavesdropper channel quantities.
EavesDraw draw_eaves_analysis(const TrialContext& ctx, Rng& rng, double r) {
    EavesDraw d{r, 0, 0.0, 0.0, 0.0};
    d.l_c = sample_lc(ctx, rng);
    if (d.l_c == 0) return d;
    d.mu_c = rng.gamma_int(d.l_c);
    d.u = rng.exponential();
    const int nv = ctx.cfg->l_e - d.l_c;
    d.v = nv > 0 ? rng.gamma_int(nv) : 0.0;
    return d;
}

// Physical per-eavesdropper draw: explicit window geometry and complex gains.
EavesDraw draw_eaves_physical(const TrialContext& ctx, Rng& rng, double r,
                              const std::vector<std::complex<double>>& g_d) {
    EavesDraw d{r, 0, 0.0, 0.0, 0.0};
    const double theta = pi * (rng.uniform() - 0.5);
    const int n_t = ctx.cfg->n_t, l_e = ctx.cfg->l_e;
    const double m = ctx.grid.m;
    int top = static_cast<int>(
        std::floor(m * std::sin(theta) + 1.0 + (n_t - 1) / 2.0 + 1e-12));
    top = std::clamp(top, l_e, n_t);
    const int bot = top - l_e + 1;
    const int c_lo = std::max(bot, ctx.dest_lo);
    const int c_hi = std::min(top, ctx.dest_hi);
    d.l_c = std::max(0, c_hi - c_lo + 1);
    std::complex<double> proj{0.0, 0.0};
    double v = 0.0;
    for (int idx = bot; idx <= top; ++idx) {
        auto [re, im] = rng.normal_pair();
        const std::complex<double> g(re / std::sqrt(2.0), im / std::sqrt(2.0));
        if (idx >= c_lo && idx <= c_hi)
            proj += g * std::conj(g_d[idx - ctx.dest_lo]);
        else
            v += std::norm(g);
    }
    if (d.l_c > 0) {
        double mu_c = 0.0;
        for (int idx = c_lo; idx <= c_hi; ++idx)
            mu_c += std::norm(g_d[idx - ctx.dest_lo]);
        d.mu_c = mu_c;
        d.u = mu_c > 0.0 ? std::norm(proj) / mu_c : 0.0;
    }
    d.v = v;
    return d;
}

TrialValues run_trial(const TrialContext& ctx, std::uint64_t trial_seed) {
    const SystemConfig& cfg = *ctx.cfg;
    const double mu = ctx.params.mu;
    // physical mode: destination gains over its window, conditioned on mu
    std::vector<std::complex<double>> g_d;
    Rng chan_rng(mix64(trial_seed ^ 0xabcdef1234567890ULL));
    if (ctx.params.mode == McMode::Physical) {
        g_d.resize(cfg.l_d);
        double norm2 = 0.0;
        for (int i = 0; i < cfg.l_d; ++i) {
            auto [re, im] = chan_rng.normal_pair();
            g_d[i] = {re / std::sqrt(2.0), im / std::sqrt(2.0)};
            norm2 += std::norm(g_d[i]);
        }
        const double scale = std::sqrt(mu / norm2);
        for (auto& g : g_d) g *= scale;
    }
    const double eta = ctx.scheme == Scheme::An ? cfg.eta : 1.0;
    const double z2 = eta * ctx.a / mu;
    const double z3 = ctx.scheme == Scheme::An
                          ? (1.0 - eta) * ctx.a / (cfg.n_t - cfg.l_d)
                          : 0.0;
    double max_xi = 0.0;
    double sum_xi = 0.0;
    double i_e_mrt = 0.0;  // sum mu_c u r^-alpha (natural Laplace units)
    // rings: [0, anchor], (anchor, 2 anchor], ... doubling, capped at r_max.
    double lo = 0.0, hi = std::min(ctx.params.r_anchor, ctx.params.r_max);
    for (int ring = 0; lo < ctx.params.r_max; ++ring) {
        Rng rng(mix64(trial_seed + 0x51ed2701a9b3c47dULL * (ring + 1)));
        // folded intensity: the full-plane density maps onto the half-plane
        // at twice the nominal density (front-back array ambiguity)
        const double mean =
            2.0 * cfg.lambda_e * (pi / 2.0) * (hi * hi - lo * lo);
        const long n = rng.poisson(mean);
        for (long k = 0; k < n; ++k) {
            const double r =
                std::sqrt(lo * lo + rng.uniform() * (hi * hi - lo * lo));
            EavesDraw d =
                ctx.params.mode == McMode::Physical
                    ? draw_eaves_physical(ctx, rng, r, g_d)
                    : draw_eaves_analysis(ctx, rng, r);
            if (d.l_c == 0) continue;
            const double ra = std::pow(r, ctx.alpha);
            const double xi =
                ctx.scheme == Scheme::An
                    ? z2 * d.mu_c * d.u / (z3 * d.v + ra)
                    : ctx.a * d.mu_c * d.u / (mu * ra);
            max_xi = std::max(max_xi, xi);
            sum_xi += xi;
            i_e_mrt += d.mu_c * d.u / ra;
        }
        lo = hi;
        hi = std::min(hi * 2.0, ctx.params.r_max);
    }
    TrialValues tv{};
    tv.sop_nc = (!ctx.feasible || max_xi > ctx.x_star) ? 1.0 : 0.0;
    tv.sop_col = (!ctx.feasible || sum_xi > ctx.x_star) ? 1.0 : 0.0;
    const double i_e = ctx.scheme == Scheme::An ? sum_xi : i_e_mrt;
    tv.laplace = std::exp(-ctx.params.point * i_e);
    tv.cdf = max_xi < ctx.params.point ? 1.0 : 0.0;
    return tv;
}

double connection_trial(Scheme scheme, const SystemConfig& cfg,
                        std::uint64_t trial_seed) {
    Rng rng(mix64(trial_seed ^ 0xabcdef1234567890ULL));
    const double mu = rng.gamma_int(cfg.l_d);
    const double eta_eff = scheme == Scheme::An ? cfg.eta : 1.0;
    const double cap =
        std::log2(1.0 + eta_eff * cfg.c() * mu * std::pow(cfg.r_d, -cfg.alpha));
    return cap > cfg.r_t ? 1.0 : 0.0;
}

struct Accumulator {
    double sum = 0.0, comp = 0.0, sum_sq = 0.0;
    void add(double x) {
        // compensated summation keeps the reduction order-insensitive noise out
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sum_sq += x * x;
    }
    void merge(const Accumulator& o) {
        double y = o.sum - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sum_sq += o.sum_sq;
    }
    McEstimate finish(long n, std::uint64_t seed) const {
        McEstimate e;
        e.trials = n;
        e.seed = seed;
        e.mean = sum / n;
        const double var =
            n > 1 ? std::max(0.0, (sum_sq - n * e.mean * e.mean) / (n - 1)) : 0.0;
        e.std_error = std::sqrt(var / n);
        return e;
    }
};

template <typename TrialFn>
std::vector<Accumulator> run_blocks(long trials, std::uint64_t seed, int n_vals,
                                    TrialFn&& fn) {
    const int n_threads = std::min<long>(env_thread_count(), trials);
    constexpr int kBlocks = 64;
    std::vector<std::vector<Accumulator>> block_acc(
        kBlocks, std::vector<Accumulator>(n_vals));
    std::atomic<int> next_block{0};
    auto worker = [&]() {
        std::vector<double> vals(n_vals);
        while (true) {
            int blk = next_block.fetch_add(1);
            if (blk >= kBlocks) break;
            const long lo = trials * blk / kBlocks;
            const long hi = trials * (blk + 1) / kBlocks;
            for (long t = lo; t < hi; ++t) {
                fn(mix64(seed + 0x632be59bd9b4e019ULL * (t + 1)), vals);
                for (int i = 0; i < n_vals; ++i) block_acc[blk][i].add(vals[i]);
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<Accumulator> total(n_vals);
    for (int blk = 0; blk < kBlocks; ++blk)
        for (int i = 0; i < n_vals; ++i) total[i].merge(block_acc[blk][i]);
    return total;
}

}  // namespace

McBundle mc_bundle(Scheme scheme, const McParams& params,
                   const SystemConfig& cfg, const CommonPathPmf& pmf,
                   long trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("mc_bundle: trials >= 1");
    cfg.validate();
    TrialContext ctx = make_context(scheme, params, cfg, pmf);
    auto acc = run_blocks(trials, seed, 4,
                          [&ctx](std::uint64_t ts, std::vector<double>& v) {
                              TrialValues tv = run_trial(ctx, ts);
                              v[0] = tv.sop_nc;
                              v[1] = tv.sop_col;
                              v[2] = tv.laplace;
                              v[3] = tv.cdf;
                          });
    McBundle b;
    b.sop_noncolluding = acc[0].finish(trials, seed);
    b.sop_colluding = acc[1].finish(trials, seed);
    b.laplace_point = acc[2].finish(trials, seed);
    b.cdf_point = acc[3].finish(trials, seed);
    return b;
}

McEstimate mc_metric(McMetric metric, Scheme scheme, const McParams& params,
                     const SystemConfig& cfg, const CommonPathPmf& pmf,
                     long trials, std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("mc_metric: trials >= 1");
    cfg.validate();
    if (metric == McMetric::Connection) {
        auto acc = run_blocks(trials, seed, 1,
                              [scheme, &cfg](std::uint64_t ts,
                                             std::vector<double>& v) {
                                  v[0] = connection_trial(scheme, cfg, ts);
                              });
        return acc[0].finish(trials, seed);
    }
    McBundle b = mc_bundle(scheme, params, cfg, pmf, trials, seed);
    switch (metric) {
        case McMetric::SopNoncolluding: return b.sop_noncolluding;
        case McMetric::SopColluding: return b.sop_colluding;
        case McMetric::LaplacePoint: return b.laplace_point;
        case McMetric::CdfPoint: return b.cdf_point;
        default: break;
    }
    throw std::logic_error("mc_metric: unhandled metric");
}

std::vector<double> physical_u_statistics(const SystemConfig& cfg,
                                          long samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::domain_error("physical_u_statistics: samples >= 1");
    cfg.validate();
    CommonPathPmf pmf =
        common_path_pmf(AngularGrid::half_wavelength(cfg.n_t), cfg.l_d, cfg.l_e);
    McParams params;
    params.mode = McMode::Physical;
    TrialContext ctx = make_context(Scheme::Mrt, params, cfg, pmf);
    std::vector<double> out;
    out.reserve(samples);
    Rng rng(seed);
    std::vector<std::complex<double>> g_d(cfg.l_d);
    while (static_cast<long>(out.size()) < samples) {
        double norm2 = 0.0;
        for (auto& g : g_d) {
            auto [re, im] = rng.normal_pair();
            g = {re / std::sqrt(2.0), im / std::sqrt(2.0)};
            norm2 += std::norm(g);
        }
        (void)norm2;
        const double r = 1.0;  // u is distance-free
        EavesDraw d = draw_eaves_physical(ctx, rng, r, g_d);
        if (d.l_c >= 1) out.push_back(d.u);
    }
    return out;
}

std::vector<double> mc_common_path_pmf(const AngularGrid& grid, int l_d,
                                       int l_e, long samples,
                                       std::uint64_t seed) {
    if (samples < 1) throw std::domain_error("mc_common_path_pmf: samples >= 1");
    if ((grid.n_t - l_d) % 2 != 0)
        throw std::invalid_argument("mc_common_path_pmf: N_t - L_d must be even");
    const int l_l = std::min(l_d, l_e);
    const int dest_lo = (grid.n_t - l_d) / 2 + 1;
    const int dest_hi = (grid.n_t + l_d) / 2;
    std::vector<long> hist(l_l + 1, 0);
    Rng rng(seed);
    for (long i = 0; i < samples; ++i) {
        const double theta = pi * (rng.uniform() - 0.5);
        int top = static_cast<int>(std::floor(
            grid.m * std::sin(theta) + 1.0 + (grid.n_t - 1) / 2.0 + 1e-12));
        top = std::clamp(top, l_e, grid.n_t);
        const int bot = top - l_e + 1;
        const int ov =
            std::max(0, std::min(top, dest_hi) - std::max(bot, dest_lo) + 1);
        ++hist[std::min(ov, l_l)];
    }
    std::vector<double> out(l_l + 1);
    for (int i = 0; i <= l_l; ++i)
        out[i] = static_cast<double>(hist[i]) / samples;
    return out;
}

}  // namespace mmwsec
