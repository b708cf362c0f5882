#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mmwsec/experiment.hpp"

using namespace mmwsec;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("MMWSEC_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir() {
    const fs::path dir =
        fs::temp_directory_path() / ("mmwsec_cli_test_" + std::to_string(getpid()));
    fs::create_directories(dir);
    return dir;
}

int run_cmd(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kSpecText =
    "# noncolluding SOP sweep\n"
    "scheme = both\n"
    "metric = sop\n"
    "model = noncolluding\n"
    "sweep_param = r_s\n"
    "sweep_start = 0.1\n"
    "sweep_stop = 0.5\n"
    "sweep_steps = 5\n"
    "l_d = 20\n"
    "l_e = 20\n"
    "p_dbm = 10\n"
    "r_d = 50\n"
    "eta = 0.6\n"
    "lambda_e = 1e-5\n"
    "mu = 100\n"
    "mc_trials = 500\n"
    "mc_seed = 7\n"
    "mc_r_max = 500\n";

}  // namespace

TEST_CASE("spec parsing and overrides") {
    ExperimentSpec spec = parse_spec_text(kSpecText);
    CHECK(spec.scheme == SchemeSel::Both);
    CHECK(spec.metric == Metric::Sop);
    CHECK(spec.sweep.param == "r_s");
    CHECK(spec.sweep.steps == 5);
    CHECK(spec.base.p_dbm == 10.0);
    CHECK(spec.mu == 100.0);
    CHECK(spec.mc.trials == 500);
    apply_override(spec, "lambda_e=5e-6");
    CHECK(spec.base.lambda_e == 5e-6);
    CHECK_THROWS(apply_override(spec, "bogus_key=1"));
    CHECK_THROWS(apply_override(spec, "p_dbm=ten"));
    CHECK_THROWS(parse_spec_text("metric = sop\n"));  // no sweep
}

TEST_CASE("number formatting round-trips") {
    for (double v : {1.0, 0.1, 1e-5, 3.141592653589793, 2.0 / 3.0, 1e17,
                     6.62607015e-34}) {
        const double back = std::stod(format_number(v));
        CHECK(std::fabs(back - v) <= 1e-12 * std::fabs(v));
    }
}

TEST_CASE("run produces a stable CSV") {
    ExperimentSpec spec = parse_spec_text(kSpecText);
    const RunResult res = run_experiment(spec);
    CHECK_FALSE(res.any_error);
    REQUIRE(res.rows.size() == 10);  // 5 points x 2 schemes
    const std::string csv = to_csv(spec, res);
    CHECK(csv.rfind("param,value,scheme,analytic,status,mc_mean,mc_std_error,"
                    "note\n",
                    0) == 0);
    // identical rerun is byte-identical
    CHECK(to_csv(spec, run_experiment(spec)) == csv);
    // SOP grows with the secrecy rate for each scheme
    double prev_mrt = -1.0;
    for (const RunRow& r : res.rows) {
        CHECK(r.status == "ok");
        CHECK(r.has_mc);
        if (r.scheme == "mrt") {
            CHECK(r.analytic >= prev_mrt);
            prev_mrt = r.analytic;
        }
    }
}

TEST_CASE("error rows carry status and poison the exit code") {
    ExperimentSpec spec = parse_spec_text(kSpecText);
    spec.scheme = SchemeSel::Mrt;
    spec.sweep = {"l_d", 19, 19, 1, false};  // violates the parity rule
    const RunResult res = run_experiment(spec);
    CHECK(res.any_error);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].status == "error");
    CHECK_FALSE(res.rows[0].note.empty());
}

TEST_CASE("presets are valid and self-describing") {
    for (const std::string& id : preset_ids()) {
        const auto entries = preset(id);
        CHECK_FALSE(entries.empty());
        for (const PresetEntry& e : entries) {
            CHECK_FALSE(e.name.empty());
            CHECK(e.spec.output == e.name + ".csv");
            e.spec.base.validate();
            CHECK(e.spec.sweep.steps >= 2);
        }
    }
    CHECK_THROWS(preset("fig99"));
}

TEST_CASE("command-line round trip") {
    const std::string cli = cli_path();
    const fs::path dir = temp_dir();
    const fs::path spec_file = dir / "sweep.spec";
    {
        std::ofstream out(spec_file);
        out << kSpecText;
        out << "output = " << (dir / "out1.csv").string() << "\n";
    }
    CHECK(run_cmd(cli + " validate " + spec_file.string() + " > /dev/null") ==
          0);
    CHECK(run_cmd(cli + " run " + spec_file.string()) == 0);
    CHECK(run_cmd(cli + " run " + spec_file.string() + " --set output=" +
                  (dir / "out2.csv").string()) == 0);
    CHECK(slurp(dir / "out1.csv") == slurp(dir / "out2.csv"));
    // unknown preset id fails loudly
    CHECK(run_cmd(cli + " preset fig99 --out " + dir.string() +
                  " 2> /dev/null") != 0);
    // invalid sweep makes the run exit nonzero
    CHECK(run_cmd(cli + " run " + spec_file.string() +
                  " --set sweep_param=l_d --set sweep_start=19" +
                  " --set sweep_stop=19 --set sweep_steps=1" + " --set output=" +
                  (dir / "bad.csv").string() + " 2> /dev/null") != 0);
    fs::remove_all(dir);
}
