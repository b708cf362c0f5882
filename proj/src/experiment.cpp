#include "mmwsec/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "mmwsec/an.hpp"
#include "mmwsec/mrt.hpp"

namespace mmwsec {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
    size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("bad numeric value for " + key + ": " + v);
    return d;
}

long to_long(const std::string& v, const std::string& key) {
    const double d = to_double(v, key);
    if (d != std::floor(d))
        throw std::invalid_argument(key + " must be an integer: " + v);
    return static_cast<long>(d);
}

void set_key(ExperimentSpec& spec, const std::string& key,
             const std::string& value) {
    SystemConfig& c = spec.base;
    if (key == "scheme") {
        if (value == "mrt") spec.scheme = SchemeSel::Mrt;
        else if (value == "an") spec.scheme = SchemeSel::An;
        else if (value == "both") spec.scheme = SchemeSel::Both;
        else throw std::invalid_argument("scheme must be mrt|an|both");
    } else if (key == "metric") {
        if (value == "pc") spec.metric = Metric::Pc;
        else if (value == "sop") spec.metric = Metric::Sop;
        else if (value == "throughput") spec.metric = Metric::Throughput;
        else if (value == "eta_star") spec.metric = Metric::EtaStar;
        else if (value == "cdf") spec.metric = Metric::Cdf;
        else if (value == "laplace") spec.metric = Metric::Laplace;
        else throw std::invalid_argument("unknown metric: " + value);
    } else if (key == "model") {
        if (value == "noncolluding") spec.model = EavesModel::Noncolluding;
        else if (value == "colluding") spec.model = EavesModel::Colluding;
        else throw std::invalid_argument("model must be noncolluding|colluding");
    } else if (key == "sweep_param") spec.sweep.param = value;
    else if (key == "sweep_start") spec.sweep.start = to_double(value, key);
    else if (key == "sweep_stop") spec.sweep.stop = to_double(value, key);
    else if (key == "sweep_steps") {
        spec.sweep.steps = static_cast<int>(to_long(value, key));
        if (spec.sweep.steps < 1)
            throw std::invalid_argument("sweep_steps must be >= 1");
    } else if (key == "sweep_scale") {
        if (value == "linear") spec.sweep.log_scale = false;
        else if (value == "log") spec.sweep.log_scale = true;
        else throw std::invalid_argument("sweep_scale must be linear|log");
    } else if (key == "n_t") c.n_t = static_cast<int>(to_long(value, key));
    else if (key == "l_d") c.l_d = static_cast<int>(to_long(value, key));
    else if (key == "l_e") c.l_e = static_cast<int>(to_long(value, key));
    else if (key == "alpha") c.alpha = to_double(value, key);
    else if (key == "lambda_e") c.lambda_e = to_double(value, key);
    else if (key == "p_dbm") c.p_dbm = to_double(value, key);
    else if (key == "noise_dbm") c.noise_dbm = to_double(value, key);
    else if (key == "r_d") c.r_d = to_double(value, key);
    else if (key == "eta") c.eta = to_double(value, key);
    else if (key == "r_s") c.r_s = to_double(value, key);
    else if (key == "r_t") c.r_t = to_double(value, key);
    else if (key == "epsilon") c.epsilon = to_double(value, key);
    else if (key == "n_approx") c.n_approx = static_cast<int>(to_long(value, key));
    else if (key == "mu") spec.mu = to_double(value, key);
    else if (key == "point") spec.point = to_double(value, key);
    else if (key == "mc_trials") spec.mc.trials = to_long(value, key);
    else if (key == "mc_seed")
        spec.mc.seed = static_cast<std::uint64_t>(to_long(value, key));
    else if (key == "mc_mode") {
        if (value == "analysis") spec.mc.mode = McMode::AnalysisFaithful;
        else if (value == "physical") spec.mc.mode = McMode::Physical;
        else throw std::invalid_argument("mc_mode must be analysis|physical");
    } else if (key == "mc_r_max") spec.mc.r_max = to_double(value, key);
    else if (key == "mc_r_anchor") spec.mc.r_anchor = to_double(value, key);
    else if (key == "output") spec.output = value;
    else if (key == "note") spec.note = value;
    else throw std::invalid_argument("unknown key: " + key);
}

void set_swept(SystemConfig& cfg, double& mu, double& point,
               const std::string& param, double value) {
    auto as_int = [&](const char* name) {
        const long v = std::lround(value);
        if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
        return static_cast<int>(v);
    };
    if (param == "l_d") cfg.l_d = as_int("l_d");
    else if (param == "l_e") cfg.l_e = as_int("l_e");
    else if (param == "n_t") cfg.n_t = as_int("n_t");
    else if (param == "lambda_e") cfg.lambda_e = value;
    else if (param == "p_dbm") cfg.p_dbm = value;
    else if (param == "r_d") cfg.r_d = value;
    else if (param == "eta") cfg.eta = value;
    else if (param == "r_s") cfg.r_s = value;
    else if (param == "r_t") cfg.r_t = value;
    else if (param == "epsilon") cfg.epsilon = value;
    else if (param == "alpha") cfg.alpha = value;
    else if (param == "mu") mu = value;
    else if (param == "point") point = value;
    else throw std::invalid_argument("unknown sweep parameter: " + param);
}

bool metric_needs_pmf(Metric m) { return m != Metric::Pc; }

bool metric_has_mc(Metric m) {
    return m == Metric::Pc || m == Metric::Sop || m == Metric::Cdf ||
           m == Metric::Laplace;
}

struct Eval {
    double value;
    Status status;
};

Eval eval_analytic(Metric metric, EavesModel model, Scheme scheme,
                   const SystemConfig& cfg, const CommonPathPmf& pmf,
                   double mu, double point) {
    switch (metric) {
        case Metric::Pc: {
            if (scheme == Scheme::Mrt)
                return {connection_probability_mrt(cfg), Status::Ok};
            const ProbResult r = connection_probability_an(cfg);
            return {r.value, r.status};
        }
        case Metric::Sop: {
            ProbResult r;
            if (scheme == Scheme::Mrt)
                r = model == EavesModel::Noncolluding
                        ? sop_noncolluding_mrt(mu, cfg, pmf)
                        : sop_colluding_mrt(mu, cfg, pmf);
            else
                r = model == EavesModel::Noncolluding
                        ? sop_noncolluding_an(mu, cfg, pmf)
                        : sop_colluding_an(mu, cfg, pmf);
            return {r.value, r.status};
        }
        case Metric::Throughput:
            return {scheme == Scheme::Mrt ? secrecy_throughput_mrt(cfg, pmf)
                                          : secrecy_throughput_an(cfg, pmf),
                    Status::Ok};
        case Metric::EtaStar: {
            if (scheme == Scheme::Mrt)
                throw std::invalid_argument("metric eta_star requires scheme an");
            const EtaOptimum opt = optimal_eta(mu, cfg, pmf);
            return {opt.eta_star, opt.status};
        }
        case Metric::Cdf:
            return {scheme == Scheme::Mrt
                        ? cdf_xe_mrt(point, mu, cfg, pmf)
                        : cdf_xe_an_exact(point, mu, cfg, pmf),
                    Status::Ok};
        case Metric::Laplace:
            return {scheme == Scheme::Mrt
                        ? laplace_ie_mrt(point, cfg, pmf)
                        : laplace_ie_an(point, mu, cfg, pmf),
                    Status::Ok};
    }
    throw std::logic_error("unhandled metric");
}

McMetric mc_metric_for(Metric m, EavesModel model) {
    switch (m) {
        case Metric::Pc: return McMetric::Connection;
        case Metric::Sop:
            return model == EavesModel::Noncolluding ? McMetric::SopNoncolluding
                                                     : McMetric::SopColluding;
        case Metric::Cdf: return McMetric::CdfPoint;
        case Metric::Laplace: return McMetric::LaplacePoint;
        default: break;
    }
    throw std::logic_error("metric has no MC counterpart");
}

std::string sanitize_note(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n') ch = ';';
    return s;
}

}  // namespace

ExperimentSpec parse_spec(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected key = value");
        try {
            set_key(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                        e.what());
        }
    }
    if (spec.sweep.param.empty())
        throw std::invalid_argument("spec needs a sweep_param");
    return spec;
}

ExperimentSpec parse_spec_text(const std::string& text) {
    std::istringstream in(text);
    return parse_spec(in);
}

void apply_override(ExperimentSpec& spec, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like key=value: " +
                                    assignment);
    set_key(spec, trim(assignment.substr(0, eq)),
            trim(assignment.substr(eq + 1)));
}

RunResult run_experiment(const ExperimentSpec& spec) {
    RunResult out;
    const SweepSpec& sw = spec.sweep;
    if (sw.log_scale && (sw.start <= 0.0 || sw.stop <= 0.0))
        throw std::invalid_argument("log sweep needs positive bounds");
    std::vector<Scheme> schemes;
    if (spec.scheme != SchemeSel::An) schemes.push_back(Scheme::Mrt);
    if (spec.scheme != SchemeSel::Mrt) schemes.push_back(Scheme::An);
    for (int i = 0; i < sw.steps; ++i) {
        const double t = sw.steps == 1 ? 0.0 : static_cast<double>(i) /
                                                   (sw.steps - 1);
        const double value =
            sw.log_scale
                ? std::exp(std::log(sw.start) +
                           t * (std::log(sw.stop) - std::log(sw.start)))
                : sw.start + t * (sw.stop - sw.start);
        for (size_t s = 0; s < schemes.size(); ++s) {
            RunRow row;
            row.swept = value;
            row.scheme = schemes[s] == Scheme::Mrt ? "mrt" : "an";
            row.note = sanitize_note(spec.note);
            try {
                SystemConfig cfg = spec.base;
                double mu = spec.mu;
                double point = spec.point;
                set_swept(cfg, mu, point, sw.param, value);
                cfg.validate();
                CommonPathPmf pmf;
                if (metric_needs_pmf(spec.metric))
                    pmf = common_path_pmf(AngularGrid::half_wavelength(cfg.n_t),
                                          cfg.l_d, cfg.l_e);
                const Eval ev = eval_analytic(spec.metric, spec.model,
                                              schemes[s], cfg, pmf, mu, point);
                row.analytic = ev.value;
                row.status = status_name(ev.status);
                if (spec.mc.trials > 0 && metric_has_mc(spec.metric)) {
                    McParams params;
                    params.mu = mu;
                    params.point = point;
                    params.r_max = spec.mc.r_max;
                    params.r_anchor = spec.mc.r_anchor;
                    params.mode = spec.mc.mode;
                    const std::uint64_t row_seed =
                        mix64(spec.mc.seed +
                              0x9e3779b97f4a7c15ULL * (i * 2 + s + 1));
                    const McEstimate est = mc_metric(
                        mc_metric_for(spec.metric, spec.model), schemes[s],
                        params, cfg, pmf, spec.mc.trials, row_seed);
                    row.has_mc = true;
                    row.mc_mean = est.mean;
                    row.mc_std_error = est.std_error;
                }
            } catch (const std::exception& e) {
                row.status = "error";
                row.note = sanitize_note(e.what());
                out.any_error = true;
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string to_csv(const ExperimentSpec& spec, const RunResult& result) {
    std::string out =
        "param,value,scheme,analytic,status,mc_mean,mc_std_error,note\n";
    for (const RunRow& r : result.rows) {
        out += spec.sweep.param;
        out += ',';
        out += format_number(r.swept);
        out += ',';
        out += r.scheme;
        out += ',';
        out += r.status == "error" ? "" : format_number(r.analytic);
        out += ',';
        out += r.status;
        out += ',';
        if (r.has_mc) {
            out += format_number(r.mc_mean);
            out += ',';
            out += format_number(r.mc_std_error);
        } else {
            out += ',';
        }
        out += ',';
        out += r.note;
        out += '\n';
    }
    return out;
}

namespace {

ExperimentSpec preset_base() {
    ExperimentSpec s;
    s.base = SystemConfig{};
    s.base.n_t = 100;
    s.base.alpha = 4.0;
    s.base.noise_dbm = -60.0;
    return s;
}

void push(std::vector<PresetEntry>& v, std::string name, ExperimentSpec spec) {
    spec.output = name + ".csv";
    v.push_back({std::move(name), std::move(spec)});
}

}  // namespace

std::vector<std::string> preset_ids() {
    return {"fig3", "fig4", "fig5", "fig6", "fig7",
            "fig8", "fig9", "fig10", "fig11", "fig12"};
}

std::vector<PresetEntry> preset(const std::string& id) {
    std::vector<PresetEntry> out;
    if (id == "fig3") {
        // strongest-eavesdropper SINR CDF vs x; dense field (lambda = 1)
        for (double eta : {0.5, 0.8, 1.0}) {
            ExperimentSpec s = preset_base();
            s.metric = Metric::Cdf;
            s.scheme = eta == 1.0 ? SchemeSel::Mrt : SchemeSel::An;
            s.base.l_d = 20;
            s.base.l_e = 20;
            s.base.lambda_e = 1.0;
            s.base.p_dbm = 0.0;
            s.base.eta = eta;
            s.mu = 20.0;
            s.sweep = {"point", 1e2, 1e8, 61, true};
            s.note = "eta set {0.5;0.8;1} chosen; mu=20 (mean gain)";
            push(out, "fig3_eta" + format_number(eta), s);
        }
    } else if (id == "fig4") {
        // SOP vs L_d; conditioning gain chosen so the on state is feasible
        // for both schemes over the whole sweep (mu > 187.5 L_d at eta=0.5)
        for (double lambda : {1e-5, 5e-6}) {
            for (EavesModel model :
                 {EavesModel::Noncolluding, EavesModel::Colluding}) {
                ExperimentSpec s = preset_base();
                s.metric = Metric::Sop;
                s.scheme = SchemeSel::Both;
                s.model = model;
                s.base.l_e = 20;
                s.base.lambda_e = lambda;
                s.base.p_dbm = 0.0;
                s.base.r_d = 50.0;
                s.base.eta = 0.5;
                s.base.r_s = 4.0;
                s.base.r_t = 6.0;
                s.mu = 8400.0;
                s.sweep = {"l_d", 10, 30, 11, false};
                s.mc.trials = 2000;
                s.mc.seed = 20240817;
                s.mc.r_max = 1500.0;
                s.note = "mu=8400 chosen for on-state feasibility across sweep";
                push(out,
                     "fig4_lambda" + format_number(lambda) + "_" +
                         (model == EavesModel::Noncolluding ? "noncolluding"
                                                            : "colluding"),
                     s);
            }
        }
    } else if (id == "fig5" || id == "fig6") {
        for (double r_d : {40.0, 50.0}) {
            ExperimentSpec s = preset_base();
            s.metric = id == "fig5" ? Metric::EtaStar : Metric::Throughput;
            s.scheme = id == "fig5" ? SchemeSel::An : SchemeSel::Both;
            s.base.l_e = 20;
            s.base.lambda_e = 5e-6;
            s.base.p_dbm = 10.0;
            s.base.r_d = r_d;
            s.base.epsilon = 0.01;
            s.mu = 20.0;
            s.sweep = {"l_d", 10, 30, 11, false};
            s.note = "r_d set {40;50} chosen" +
                     std::string(id == "fig5" ? "; mu=20 (mean gain)" : "");
            push(out, id + "_rd" + format_number(r_d), s);
        }
    } else if (id == "fig7") {
        for (int l_e : {10, 20, 30}) {
            ExperimentSpec s = preset_base();
            s.metric = Metric::EtaStar;
            s.scheme = SchemeSel::An;
            s.base.l_d = 20;
            s.base.l_e = l_e;
            s.base.p_dbm = 10.0;
            s.base.r_d = 50.0;
            s.base.epsilon = 0.01;
            s.mu = 20.0;
            s.sweep = {"lambda_e", 1e-7, 1e-4, 31, true};
            s.note = "L_e set {10;20;30} chosen; mu=20 (mean gain)";
            push(out, "fig7_le" + std::to_string(l_e), s);
        }
    } else if (id == "fig8") {
        for (double lambda : {1e-5, 5e-6}) {
            ExperimentSpec s = preset_base();
            s.metric = Metric::Throughput;
            s.scheme = SchemeSel::Both;
            s.base.l_d = 20;
            s.base.lambda_e = lambda;
            s.base.p_dbm = 10.0;
            s.base.r_d = 50.0;
            s.base.epsilon = 0.01;
            s.sweep = {"l_e", 10, 30, 21, false};
            s.note = "lambda set {1e-5;5e-6} chosen";
            push(out, "fig8_lambda" + format_number(lambda), s);
        }
    } else if (id == "fig9" || id == "fig10") {
        for (double eps : {0.1, 0.01}) {
            ExperimentSpec s = preset_base();
            s.metric = id == "fig9" ? Metric::EtaStar : Metric::Throughput;
            s.scheme = id == "fig9" ? SchemeSel::An : SchemeSel::Both;
            s.base.l_d = 20;
            s.base.l_e = 20;
            s.base.lambda_e = 5e-6;
            s.base.r_d = 50.0;
            s.base.epsilon = eps;
            s.mu = 20.0;
            s.sweep = {"p_dbm", -10, 40, 26, false};
            s.note = "epsilon set {0.1;0.01} chosen (exact published set "
                     "unreadable)" +
                     std::string(id == "fig9" ? "; mu=20 (mean gain)" : "");
            push(out, id + "_eps" + format_number(eps), s);
        }
    } else if (id == "fig11") {
        // colluding SOP vs R_s for increasing approximation order N
        for (int n = 1; n <= 5; ++n) {
            ExperimentSpec s = preset_base();
            s.metric = Metric::Sop;
            s.scheme = SchemeSel::Mrt;
            s.model = EavesModel::Colluding;
            s.base.l_d = 20;
            s.base.l_e = 20;
            s.base.lambda_e = 1e-5;
            s.base.p_dbm = 0.0;
            s.base.r_d = 50.0;
            s.base.r_t = 6.0;
            s.base.n_approx = n;
            s.mu = 250.0;
            s.sweep = {"r_s", 0.05, 1.0, 20, false};
            s.note = "mu=250 and R_s<=1 chosen so the on state is feasible";
            push(out, "fig11_n" + std::to_string(n), s);
        }
    } else if (id == "fig12") {
        for (double r_d : {40.0, 50.0}) {
            ExperimentSpec s = preset_base();
            s.metric = Metric::Pc;
            s.scheme = SchemeSel::Both;
            s.base.p_dbm = 10.0;
            s.base.r_t = 6.0;
            s.base.r_s = 1.0;
            s.base.eta = 0.8;
            s.base.r_d = r_d;
            s.sweep = {"l_d", 10, 30, 21, false};
            s.note = "r_d set {40;50} chosen";
            push(out, "fig12_rd" + format_number(r_d), s);
        }
    } else {
        throw std::invalid_argument("unknown preset id: " + id);
    }
    return out;
}

}  // namespace mmwsec
