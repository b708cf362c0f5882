#ifndef MMWSEC_EXPERIMENT_HPP
#define MMWSEC_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mmwsec/config.hpp"
#include "mmwsec/mc.hpp"

namespace mmwsec {

enum class Metric { Pc, Sop, Throughput, EtaStar, Cdf, Laplace };
enum class SchemeSel { Mrt, An, Both };
enum class EavesModel { Noncolluding, Colluding };

struct SweepSpec {
    std::string param;  // l_d, l_e, n_t, lambda_e, p_dbm, r_d, eta, r_s,
                        // r_t, epsilon, mu, point
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;      // number of points
    bool log_scale = false;
};

struct McSpec {
    long trials = 0;  // 0 disables MC columns
    std::uint64_t seed = 1;
    McMode mode = McMode::AnalysisFaithful;
    double r_max = 5000.0;
    double r_anchor = 0.0;
};

struct ExperimentSpec {
    SchemeSel scheme = SchemeSel::Mrt;
    Metric metric = Metric::Sop;
    EavesModel model = EavesModel::Noncolluding;
    SweepSpec sweep;
    SystemConfig base;
    double mu = 20.0;    // conditional destination gain for sop/cdf/laplace
    double point = 1.0;  // x for cdf, s for laplace
    McSpec mc;
    std::string output;  // CSV path; empty means stdout
    std::string note;    // carried into every row's note column
};

// Key-value text: one `key = value` per line, `#` comments, blank lines ok.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_text(const std::string& text);
// `key=value` override; throws on unknown key or malformed value.
void apply_override(ExperimentSpec& spec, const std::string& assignment);

struct RunRow {
    double swept = 0.0;
    std::string scheme;   // "mrt" or "an"
    double analytic = 0.0;
    std::string status;   // ok/infeasible/suspended/degenerate/error
    bool has_mc = false;
    double mc_mean = 0.0;
    double mc_std_error = 0.0;
    std::string note;
};

struct RunResult {
    std::vector<RunRow> rows;
    bool any_error = false;
};

RunResult run_experiment(const ExperimentSpec& spec);

// Stable schema: param,value,scheme,analytic,status,mc_mean,mc_std_error,note.
// Numbers printed with enough digits to round-trip at 1e-12 relative.
std::string to_csv(const ExperimentSpec& spec, const RunResult& result);
std::string format_number(double v);

struct PresetEntry {
    std::string name;  // file stem, e.g. "fig4_lambda1e-05_colluding"
    ExperimentSpec spec;
};
// Known ids: fig3..fig12. Throws std::invalid_argument on unknown id.
std::vector<PresetEntry> preset(const std::string& id);
std::vector<std::string> preset_ids();

}  // namespace mmwsec

#endif
