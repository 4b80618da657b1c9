#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "drnet/csv.hpp"
#include "drnet/run.hpp"

using namespace drnet;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(name: cli-small
geometry:
  silencing_radius_m: 4000
  sim_radius_m: 6000
network:
  bs_density_per_m2: 2e-6
simulation:
  n_trials: 300
  master_seed: 11
policies: [none, "partial:0.5", complete, spectrum-split]
sweep:
  rho_values: [0, 0.5, 1]
  silencing_radii_m: [3000, 4000, 5000, 6000]
satwet:
  heights_m: [200000, 400000]
  payloads_bits: [400, 1000000]
acb:
  capacity_per_s: 3
  horizon_s: 100
  classes:
    - {name: sos, acdc_category: 1, arrival_rate_per_s: 2, barring_prob: 1}
    - {name: chat, acdc_category: 2, arrival_rate_per_s: 3, barring_prob: 0.4}
)";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("drnet_cli_" + std::to_string(std::rand()) + "_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_scenario(const fs::path& dir, const std::string& text) {
    const auto p = dir / "scenario.yaml";
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(DRNET_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("same scenario and seed give byte-identical CSV") {
    TempDir tmp;
    const auto sc = write_scenario(tmp.path, kSmall);
    for (const char* sub : {"silencing-run", "silencing-sweep", "satwet-curve", "acb-run"}) {
        const auto a = tmp.path / (std::string(sub) + "_a.csv");
        const auto b = tmp.path / (std::string(sub) + "_b.csv");
        REQUIRE(cli(std::string(sub) + " --scenario " + sc.string() + " --out " + a.string()) == 0);
        REQUIRE(cli(std::string(sub) + " --scenario " + sc.string() + " --out " + b.string()) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(slurp(run::manifest_path(a)) == slurp(run::manifest_path(b)));
        CHECK(slurp(a).find('\r') == std::string::npos);
    }
}

TEST_CASE("seed override changes the Monte Carlo output and is recorded") {
    TempDir tmp;
    const auto sc = write_scenario(tmp.path, kSmall);
    const auto a = tmp.path / "a.csv";
    const auto b = tmp.path / "b.csv";
    REQUIRE(cli("silencing-run --scenario " + sc.string() + " --out " + a.string()) == 0);
    REQUIRE(cli("silencing-run --scenario " + sc.string() + " --out " + b.string() +
                " --seed 12345 --trials 200") == 0);
    CHECK(slurp(a) != slurp(b));
    const auto manifest = slurp(run::manifest_path(b));
    CHECK(manifest.find("master_seed: 12345") != std::string::npos);
    CHECK(manifest.find("n_trials: 200") != std::string::npos);
    CHECK(manifest.find(run::kVersion) != std::string::npos);
    CHECK(manifest.find("resolved_scenario:") != std::string::npos);
}

TEST_CASE("nonexistent scenario exits 2 and writes nothing") {
    TempDir tmp;
    const auto out = tmp.path / "out.csv";
    CHECK(cli("silencing-run --scenario " + (tmp.path / "missing.yaml").string() + " --out " +
              out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
    CHECK_FALSE(fs::exists(run::manifest_path(out)));
}

TEST_CASE("invalid scenarios exit 2 and write nothing") {
    TempDir tmp;
    const auto out = tmp.path / "out.csv";
    const auto sc = write_scenario(tmp.path, "geometry:\n  silencing_radius_m: 1000\n");
    std::ostringstream log;
    run::RunSpec spec{"silencing-run", sc, out};
    CHECK(run::run_scenario(spec, log) == run::kInputError);
    CHECK(log.str().find("geometry.silencing_radius_m") != std::string::npos);
    CHECK_FALSE(fs::exists(out));

    write_scenario(tmp.path, "name: x\n");
    spec.subcommand = "silencing-sweep";
    log.str("");
    CHECK(run::run_scenario(spec, log) == run::kInputError);
    CHECK(log.str().find("sweep") != std::string::npos);
    CHECK_FALSE(fs::exists(out));

    CHECK(cli("bogus-command --scenario x --out y") == 2);
    CHECK(cli("silencing-run --scenario " + sc.string()) == 2);
    CHECK(cli("silencing-run --scenario " + sc.string() + " --out " + out.string() + " --workers 0") == 2);
}

TEST_CASE("unwritable output path exits 3") {
    TempDir tmp;
    const auto sc = write_scenario(tmp.path, kSmall);
    const auto out = tmp.path / "no_such_dir" / "out.csv";
    CHECK(cli("satwet-curve --scenario " + sc.string() + " --out " + out.string()) == 3);
    CHECK(cli("satwet-curve --scenario " + sc.string() + " --out " + tmp.path.string()) == 3);
}

TEST_CASE("3x4 sweep grid yields 12 data rows") {
    TempDir tmp;
    const auto sc = write_scenario(tmp.path, kSmall);
    const auto out = tmp.path / "sweep.csv";
    REQUIRE(cli("silencing-sweep --scenario " + sc.string() + " --out " + out.string()) == 0);
    const auto parsed = csv::read_table(out);
    CHECK(parsed.rows.size() == 12);
    CHECK(count_lines(slurp(out)) == 13);
    CHECK(parsed.header == std::vector<std::string>{"rho", "silencing_radius_m", "p_disaster",
                                                    "p_disaster_ci", "p_silencing", "p_silencing_ci",
                                                    "utility", "n_trials", "seed"});
    CHECK(slurp(run::manifest_path(out)).find("optimum: rho=") != std::string::npos);
}

TEST_CASE("silencing-sweep is byte-identical across worker counts") {
    TempDir tmp;
    const auto sc = write_scenario(tmp.path, kSmall);
    const auto one = tmp.path / "w1.csv";
    const auto eight = tmp.path / "w8.csv";
    REQUIRE(cli("silencing-sweep --scenario " + sc.string() + " --out " + one.string() + " --workers 1") == 0);
    REQUIRE(cli("silencing-sweep --scenario " + sc.string() + " --out " + eight.string() + " --workers 8") == 0);
    CHECK(slurp(one) == slurp(eight));
    CHECK(slurp(run::manifest_path(one)) == slurp(run::manifest_path(eight)));
}

TEST_CASE("table writer edge cases") {
    TempDir tmp;
    csv::Table t;
    t.header = {"a", "b", "c"};
    CHECK(csv::to_string(t) == "a,b,c\n");
    t.rows.push_back({1.0 / 3.0, std::uint64_t{18446744073709551615ull}, std::string("x")});
    CHECK(csv::to_string(t) == "a,b,c\n0.333333,18446744073709551615,x\n");
    CHECK(csv::format_number(123456789.0) == "1.23457e+08");
    CHECK(csv::format_number(0.0) == "0");
    CHECK_THROWS_AS(csv::write_table(tmp.path / "missing" / "t.csv", t), csv::IoError);
}

TEST_CASE("emitted CSV parses back to the in-memory rows at 6 significant digits") {
    TempDir tmp;
    const auto sc = scenario::load_scenario(write_scenario(tmp.path, kSmall));
    for (const auto& table : {run::silencing_run_table(sc, 1), run::satwet_curve_table(sc),
                              run::acb_run_table(sc)}) {
        const auto path = tmp.path / "t.csv";
        csv::write_table(path, table);
        const auto parsed = csv::read_table(path);
        REQUIRE(parsed.header == table.header);
        REQUIRE(parsed.rows.size() == table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            REQUIRE(parsed.rows[r].size() == table.rows[r].size());
            for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
                const auto& cell = table.rows[r][c];
                const auto& text = parsed.rows[r][c];
                if (const double* v = std::get_if<double>(&cell)) {
                    const double back = std::stod(text);
                    const double tol = std::abs(*v) * 5e-6;
                    CHECK(std::abs(back - *v) <= tol);
                } else {
                    CHECK(text == csv::format_cell(cell));
                }
            }
        }
    }
}
