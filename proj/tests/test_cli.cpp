#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "faraday/constants.hpp"
#include "faraday/io.hpp"

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path log = workdir / "stdout.log";
    const std::string cmd =
        std::string("\"") + FARADAY_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = slurp(log);
    return r;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("faraday_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

// moderate-Q cavity for the response curves
const std::string kFigureParams =
    "omega_p = 1.7e15\n"
    "gamma_p = 2 THz\n"
    "v_cav = 2e-20\n"
    "n0 = 3.6\n"
    "omega_ex = 2.1e15\n"
    "gamma_ex = 10 GHz\n"
    "gamma_rad = 2 GHz\n"
    "omega_rabi = 300 GHz\n"
    "power_w = 0.5e-3\n"
    "tau = 5e-9\n";

// high-Q cavity at half a milliwatt: every condition holds at 5 ns
const std::string kCheckParams =
    "omega_p = 1.7e15\n"
    "q_factor = 1e4\n"
    "v_cav = 2e-20\n"
    "n0 = 3.6\n"
    "omega_ex = 2.1e15\n"
    "gamma_ex = 10 GHz\n"
    "gamma_rad = 2 GHz\n"
    "omega_rabi = 300 GHz\n"
    "power_w = 0.5e-3\n"
    "tau = 5e-9\n";

const std::string kBundled = std::string(FARADAY_DATA_DIR) + "/paper.params";

} // namespace

TEST_CASE("check returns the feasibility verdict as its exit code", "[cli]") {
    SECTION("bundled 10 mW point falls short of shot noise at Q ~ 1e3") {
        const fs::path dir = fresh_dir("check_bundled");
        const RunResult r = run_cli("check --params \"" + kBundled + "\" --out \"" + dir.string() + "\"", dir);
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("INFEASIBLE") != std::string::npos);
        const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
        CHECK(report["binding"].get<std::string>() == "A");
        CHECK(report["margin_a"].get<double>() == Approx(0.714364).epsilon(1e-4));
        CHECK(report["margin_b"].get<double>() == Approx(1.574827).epsilon(1e-4));
        CHECK(report["n_ex"].get<double>() == Approx(0.01270).epsilon(1e-3));
        CHECK_FALSE(report["n_ex_warning"].get<bool>());
    }
    SECTION("half a milliwatt at Q = 1e4 passes every condition") {
        const fs::path dir = fresh_dir("check_ok");
        write_file(dir / "p.params", kCheckParams);
        const RunResult r = run_cli(
            "check --params \"" + (dir / "p.params").string() + "\" --out \"" + dir.string() + "\"", dir);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("FEASIBLE") != std::string::npos);
        const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
        CHECK(report["feasible"].get<bool>());
        CHECK(report["margin_a"].get<double>() == Approx(6.10692).epsilon(1e-3));
        CHECK(report["margin_b"].get<double>() == Approx(2.16726).epsilon(1e-3));
    }
    SECTION("spin-lifetime override can veto the verdict") {
        const fs::path dir = fresh_dir("check_lifetime");
        write_file(dir / "p.params", kCheckParams);
        const RunResult r = run_cli("check --params \"" + (dir / "p.params").string() +
                                        "\" --out \"" + dir.string() + "\" --spin-lifetime 1e-9",
                                    dir);
        CHECK(r.exit_code == 1);
        const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
        CHECK(report["binding"].get<std::string>() == "D");
        CHECK(report["feasible_without_d"].get<bool>());
    }
    SECTION("json rendering on stdout") {
        const fs::path dir = fresh_dir("check_json");
        write_file(dir / "p.params", kCheckParams);
        const RunResult r = run_cli("check --params \"" + (dir / "p.params").string() +
                                        "\" --out \"" + dir.string() + "\" --format json",
                                    dir);
        CHECK(r.exit_code == 0);
        const auto parsed = nlohmann::json::parse(r.output);
        CHECK(parsed["feasible"].get<bool>());
    }
}

TEST_CASE("configuration errors exit with code 2", "[cli]") {
    const fs::path dir = fresh_dir("config_errors");
    write_file(dir / "typo.params", kFigureParams + "gamma_px = 1\n");
    CHECK(run_cli("check --params \"" + (dir / "typo.params").string() + "\"", dir).exit_code == 2);
    CHECK(run_cli("check --params \"" + (dir / "absent.params").string() + "\"", dir).exit_code == 2);
    write_file(dir / "p.params", kFigureParams);
    CHECK(run_cli("response --params \"" + (dir / "p.params").string() +
                      "\" --grid omega:1:10:1:lin --out \"" + dir.string() + "\"",
                  dir).exit_code == 2);
    CHECK(run_cli("response --params \"" + (dir / "p.params").string() +
                      "\" --grid bogus:1:10:100:lin --out \"" + dir.string() + "\"",
                  dir).exit_code == 2);
    CHECK(run_cli("check --params \"" + (dir / "p.params").string() + "\" --format yaml", dir)
              .exit_code == 2);
    CHECK(run_cli("check", dir).exit_code == 2);  // missing --params
}

TEST_CASE("rabi prints the coupling in both renderings", "[cli]") {
    const fs::path dir = fresh_dir("rabi");
    const RunResult text = run_cli("rabi --params \"" + kBundled + "\"", dir);
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("rad/s") != std::string::npos);
    CHECK(text.output.find("~300 GHz") != std::string::npos);

    const RunResult json = run_cli("rabi --params \"" + kBundled + "\" --format json", dir);
    const auto parsed = nlohmann::json::parse(json.output);
    CHECK(parsed["omega_rabi"].get<double>() == Approx(2.87e11).epsilon(5e-3));
    CHECK(parsed["omega_rabi_override"].get<double>() == 3e11);
}

TEST_CASE("response sweep emits the two-channel phase curves", "[cli]") {
    const fs::path dir = fresh_dir("response");
    write_file(dir / "p.params", kFigureParams);
    const RunResult r = run_cli(
        "response --params \"" + (dir / "p.params").string() + "\" --out \"" + dir.string() + "\"", dir);
    REQUIRE(r.exit_code == 0);

    const faraday::io::CsvTable table = faraday::io::read_csv(dir / "response.csv");
    REQUIRE(table.header ==
            std::vector<std::string>{"omega_offset", "r0_mag", "r0_phase", "r_mag", "r_phase", "phase_diff"});
    REQUIRE(table.rows.size() == 2001);

    const auto offset = table.numeric_column("omega_offset");
    const auto r0_mag = table.numeric_column("r0_mag");
    const auto r0_phase = table.numeric_column("r0_phase");
    const auto r_phase = table.numeric_column("r_phase");

    SECTION("empty channel is unimodular and spans a full turn") {
        for (const double m : r0_mag) CHECK(m == Approx(1.0).epsilon(1e-12));
        CHECK(r0_phase.back() - r0_phase.front() == Approx(faraday::constants::two_pi).epsilon(0.05));
    }

    SECTION("zero-crossing shift recovers the dispersive pull") {
        const auto crossing = [&](const std::vector<double>& phase) {
            for (std::size_t k = 1; k < phase.size(); ++k)
                if (phase[k - 1] < 0.0 && phase[k] >= 0.0)
                    return offset[k - 1] - phase[k - 1] * (offset[k] - offset[k - 1]) /
                                               (phase[k] - phase[k - 1]);
            return 1e300;
        };
        const double pull = crossing(r0_phase) - crossing(r_phase);
        const double expected = 0.25 * 3e11 * 3e11 / 4e14;  // 5.625e7 rad/s
        CHECK(pull == Approx(expected).epsilon(0.02));
    }

    SECTION("decoupled dot leaves no phase difference anywhere") {
        write_file(dir / "empty.params",
                   "omega_p = 1.7e15\ngamma_p = 2 THz\nv_cav = 2e-20\nn0 = 3.6\n"
                   "omega_ex = 2.1e15\ngamma_ex = 10 GHz\ngamma_rad = 2 GHz\nomega_rabi = 0\n");
        const RunResult r2 = run_cli("response --params \"" + (dir / "empty.params").string() +
                                         "\" --out \"" + (dir / "empty").string() + "\"",
                                     dir);
        REQUIRE(r2.exit_code == 0);
        const auto t2 = faraday::io::read_csv(dir / "empty" / "response.csv");
        for (const double d : t2.numeric_column("phase_diff")) CHECK(d == 0.0);
    }
}

TEST_CASE("simulate is reproducible byte for byte", "[cli]") {
    const fs::path dir = fresh_dir("simulate");
    write_file(dir / "p.params", kFigureParams);
    const std::string base = "simulate --params \"" + (dir / "p.params").string() +
                             "\" --seed 7 --trials 500 --t-end 2e-12";
    REQUIRE(run_cli(base + " --out \"" + (dir / "a").string() + "\"", dir).exit_code == 0);
    REQUIRE(run_cli(base + " --out \"" + (dir / "b").string() + "\"", dir).exit_code == 0);
    CHECK(slurp(dir / "a" / "trajectory.csv") == slurp(dir / "b" / "trajectory.csv"));
    CHECK(slurp(dir / "a" / "mc.json") == slurp(dir / "b" / "mc.json"));
    CHECK(!slurp(dir / "a" / "trajectory.csv").empty());

    SECTION("different seed changes the Monte Carlo stream") {
        REQUIRE(run_cli("simulate --params \"" + (dir / "p.params").string() +
                            "\" --seed 8 --trials 500 --t-end 2e-12 --out \"" +
                            (dir / "c").string() + "\"",
                        dir).exit_code == 0);
        CHECK(slurp(dir / "a" / "mc.json") != slurp(dir / "c" / "mc.json"));
        CHECK(slurp(dir / "a" / "trajectory.csv") == slurp(dir / "c" / "trajectory.csv"));
    }

    SECTION("zero drive leaves every field column at zero") {
        write_file(dir / "dark.params",
                   "omega_p = 1.7e15\ngamma_p = 2 THz\nv_cav = 2e-20\nn0 = 3.6\n"
                   "omega_ex = 2.1e15\ngamma_ex = 10 GHz\ngamma_rad = 2 GHz\nomega_rabi = 3e11\n"
                   "n_in = 0\ntau = 5e-9\n");
        REQUIRE(run_cli("simulate --params \"" + (dir / "dark.params").string() +
                            "\" --t-end 2e-12 --out \"" + (dir / "dark").string() + "\"",
                        dir).exit_code == 0);
        const auto table = faraday::io::read_csv(dir / "dark" / "trajectory.csv");
        for (const std::string col : {"re_a", "im_a", "re_sigma", "im_sigma", "re_aout", "im_aout"})
            for (const double v : table.numeric_column(col)) CHECK(v == 0.0);
    }
}

TEST_CASE("region sweeps write deterministic figure data", "[cli]") {
    const fs::path dir = fresh_dir("regions");
    write_file(dir / "p.params", kFigureParams);

    SECTION("detuning regions") {
        const std::string cmd = "feasibility --params \"" + (dir / "p.params").string() +
                                "\" --grid detuning:1:1e6:50:log --grid nphoton:1:1e12:40:log";
        REQUIRE(run_cli(cmd + " --out \"" + (dir / "a").string() + "\"", dir).exit_code == 0);
        REQUIRE(run_cli(cmd + " --out \"" + (dir / "b").string() + "\"", dir).exit_code == 0);
        CHECK(slurp(dir / "a" / "region.csv") == slurp(dir / "b" / "region.csv"));
        CHECK(slurp(dir / "a" / "boundaries.csv") == slurp(dir / "b" / "boundaries.csv"));
        const auto region = faraday::io::read_csv(dir / "a" / "region.csv");
        CHECK(region.rows.size() == 50u * 40u);
        CHECK(region.header.front() == "detuning");
        const auto bounds = faraday::io::read_csv(dir / "a" / "boundaries.csv");
        CHECK(bounds.rows.size() == 3u * 50u);
    }

    SECTION("tau-Q regions carry the three-triangle ladder") {
        const std::string cmd = "tau-q --params \"" + (dir / "p.params").string() +
                                "\" --grid q:1e2:1e6:60:log --grid tau:1e-12:1e-6:30:log";
        REQUIRE(run_cli(cmd + " --out \"" + (dir / "t").string() + "\"", dir).exit_code == 0);
        const auto region = faraday::io::read_csv(dir / "t" / "region.csv");
        CHECK(region.rows.size() == 60u * 30u);
        CHECK(region.header.size() == 2 + 9 + 3 + 1);  // axes, margins, flags, union
        const auto bounds = faraday::io::read_csv(dir / "t" / "boundaries.csv");
        // 2 curves per occupation + rising line + critical vertical
        CHECK(bounds.rows.size() == 3u * 2u * 60u + 60u + 2u);
    }
}
