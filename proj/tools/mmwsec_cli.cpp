#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mmwsec/experiment.hpp"
#include "mmwsec/mc.hpp"
#include "mmwsec/mrt.hpp"

namespace {

using namespace mmwsec;

ExperimentSpec load_spec(const std::string& path,
                         const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    ExperimentSpec spec = parse_spec(in);
    for (const std::string& ov : overrides) apply_override(spec, ov);
    return spec;
}

int write_result(const ExperimentSpec& spec, const RunResult& result,
                 const std::string& out_path) {
    const std::string csv = to_csv(spec, result);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        out << csv;
    }
    if (result.any_error) {
        for (const RunRow& r : result.rows)
            if (r.status == "error")
                std::cerr << "error: " << spec.sweep.param << "="
                          << format_number(r.swept) << " scheme=" << r.scheme
                          << ": " << r.note << "\n";
        return 2;
    }
    return 0;
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
    ExperimentSpec spec = load_spec(path, overrides);
    return write_result(spec, run_experiment(spec), spec.output);
}

int cmd_preset(const std::string& id, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    int rc = 0;
    for (const PresetEntry& entry : preset(id)) {
        const std::string path =
            (std::filesystem::path(out_dir) / entry.spec.output).string();
        const int r = write_result(entry.spec, run_experiment(entry.spec), path);
        rc = std::max(rc, r);
        std::cout << entry.name << " -> " << path << "\n";
    }
    return rc;
}

int cmd_validate(const std::string& path,
                 const std::vector<std::string>& overrides) {
    ExperimentSpec spec = load_spec(path, overrides);
    // check both sweep endpoints against the config invariants
    for (double v : {spec.sweep.start, spec.sweep.stop}) {
        ExperimentSpec tmp = spec;
        apply_override(tmp, tmp.sweep.param + "=" + format_number(v));
        tmp.base.validate();
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_mc_selftest() {
    // quick determinism and sanity pass; dense field and a moderate gain so
    // the outage probability is far from both 0 and the noise floor
    SystemConfig cfg;
    cfg.lambda_e = 2e-4;
    cfg.r_s = 0.5;
    CommonPathPmf pmf =
        common_path_pmf(AngularGrid::half_wavelength(cfg.n_t), cfg.l_d, cfg.l_e);
    McParams params;
    params.mu = 100.0;
    params.r_max = 1500.0;
    const McEstimate a = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                   params, cfg, pmf, 5000, 42);
    const McEstimate b = mc_metric(McMetric::SopNoncolluding, Scheme::Mrt,
                                   params, cfg, pmf, 5000, 42);
    if (a.mean != b.mean || a.std_error != b.std_error) {
        std::cerr << "selftest: determinism violated\n";
        return 1;
    }
    const ProbResult closed = sop_noncolluding_mrt(params.mu, cfg, pmf);
    const double gap = std::fabs(closed.value - a.mean);
    std::cout << "sop closed-form " << format_number(closed.value) << " mc "
              << format_number(a.mean) << " +- " << format_number(a.std_error)
              << "\n";
    if (gap > 4.0 * a.std_error + 1e-3) {
        std::cerr << "selftest: closed form and MC disagree\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy performance evaluator for mmWave links with "
                 "PPP-distributed eavesdroppers"};
    app.require_subcommand(1);

    std::string spec_path, preset_id, out_dir = ".";
    std::vector<std::string> overrides;

    CLI::App* run = app.add_subcommand("run", "run an experiment spec file");
    run->add_option("spec", spec_path, "key = value spec file")->required();
    run->add_option("--set", overrides, "key=value override (repeatable)");

    CLI::App* pre = app.add_subcommand("preset", "run a built-in figure preset");
    pre->add_option("id", preset_id, "preset id (fig3..fig12)")->required();
    pre->add_option("--out", out_dir, "output directory");

    CLI::App* val = app.add_subcommand("validate", "check a spec without running");
    val->add_option("spec", spec_path, "key = value spec file")->required();
    val->add_option("--set", overrides, "key=value override (repeatable)");

    app.add_subcommand("mc-selftest", "quick Monte Carlo determinism check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(spec_path, overrides);
        if (pre->parsed()) return cmd_preset(preset_id, out_dir);
        if (val->parsed()) return cmd_validate(spec_path, overrides);
        return cmd_mc_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
