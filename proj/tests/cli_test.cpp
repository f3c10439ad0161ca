#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"
#include "insulab/errors.hpp"

using namespace insulab;
namespace cl = insulab::cli;

namespace {

constexpr double kPi = std::numbers::pi;

std::string render_json(const cl::Report& rep) {
    std::ostringstream os;
    cl::write_json(os, rep);
    return os.str();
}

#ifdef INSULAB_BIN_PATH
int run_binary(const std::string& args, const std::string& out_file) {
    const std::string cmd = std::string(INSULAB_BIN_PATH) + " " + args + " > " +
                            out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("m expression resolution") {
    CHECK(cl::resolve_m_expression("1.5", 2, 1.0) == doctest::Approx(1.5));
    const double m0 = cl::resolve_m_expression("m0", 2, 1.0);
    CHECK(m0 >= 1.8529);
    CHECK(m0 <= 1.8541);
    CHECK(cl::resolve_m_expression("2m0", 2, 1.0) ==
          doctest::Approx(2.0 * m0).epsilon(1e-14));
    CHECK(cl::resolve_m_expression("0.5m0", 2, 1.0) ==
          doctest::Approx(0.5 * m0).epsilon(1e-14));
    CHECK(cl::resolve_m_expression("1e6", 2, 1.0) == doctest::Approx(1e6));
    CHECK_THROWS_AS(cl::resolve_m_expression("abc", 2, 1.0), validation_error);
    CHECK_THROWS_AS(cl::resolve_m_expression("-1", 2, 1.0), validation_error);
    CHECK_THROWS_AS(cl::resolve_m_expression("2x", 2, 1.0), validation_error);
}

TEST_CASE("m grid resolution") {
    const auto grid = cl::resolve_m_grid("log:1:100:3", 2, 1.0);
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == doctest::Approx(1.0));
    CHECK(grid[1] == doctest::Approx(10.0));
    CHECK(grid[2] == doctest::Approx(100.0));

    const auto lin = cl::resolve_m_grid("lin:1:2:5", 2, 1.0);
    CHECK(lin[1] == doctest::Approx(1.25));

    const auto list = cl::resolve_m_grid("1,2m0,3", 2, 1.0);
    REQUIRE(list.size() == 3);
    CHECK(list[1] == doctest::Approx(2.0 * cl::resolve_m_expression("m0", 2, 1.0)));

    CHECK_THROWS_AS(cl::resolve_m_grid("log:1:100", 2, 1.0), validation_error);
    CHECK_THROWS_AS(cl::resolve_m_grid("log:100:1:5", 2, 1.0), validation_error);
}

TEST_CASE("config round trip is byte-identical") {
    cl::RunConfig cfg;
    cfg.command = "eigen";
    cfg.n = 2;
    cfg.R = 1.5;
    cfg.f_coeffs = {1.0, 0.0, -0.25};
    cfg.m_grid_expr = "log:1.01m0:1e6:40";
    cfg.smax = 12;
    cfg.fs_tables = true;
    const std::string once = cfg.to_json();
    const std::string twice = cl::RunConfig::from_json(once).to_json();
    CHECK(once == twice);

    cl::RunConfig fem;
    fem.command = "fem-verify";
    fem.problem = "energy";
    fem.m_expr = "2m0";
    fem.s = 3;
    fem.a = 0.5;
    fem.dt = 0.02;
    fem.n_r = 24;
    fem.n_theta = 96;
    fem.out_path = "/tmp/x.json";
    CHECK(fem.to_json() == cl::RunConfig::from_json(fem.to_json()).to_json());
}

TEST_CASE("energy-ball command") {
    cl::RunConfig cfg;
    cfg.command = "energy-ball";
    cfg.m_expr = "1";
    const auto rep = cl::cmd_energy_ball(cfg);
    const auto text = render_json(rep);
    const auto parsed = nlohmann::json::parse(text);
    CHECK(parsed["results"]["u_R"].get<double>() ==
          doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-10));
    CHECK(parsed["results"]["h_constant"].get<double>() ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-10));
    // Determinism: rendering twice gives identical bytes.
    CHECK(render_json(cl::cmd_energy_ball(cfg)) == text);

    cl::RunConfig missing;
    missing.command = "energy-ball";
    CHECK_THROWS_AS(cl::cmd_energy_ball(missing), validation_error);
}

TEST_CASE("stability command") {
    cl::RunConfig cfg;
    cfg.command = "stability";
    cfg.m_expr = "1";
    cfg.smax = 12;
    const auto rep = cl::cmd_stability(cfg);
    const auto parsed = nlohmann::json::parse(render_json(rep));
    CHECK(parsed["results"]["stable"].get<bool>());
    CHECK(parsed["results"]["worst_mode"].get<int>() == 1);
    CHECK(std::abs(parsed["results"]["criterion_value"].get<double>()) <= 1e-12);
    CHECK(parsed["results"]["modes"].size() == 12);

    cfg.f_coeffs = {1.0, 0.0, 1.0};
    const auto rep2 = cl::cmd_stability(cfg);
    const auto parsed2 = nlohmann::json::parse(render_json(rep2));
    CHECK_FALSE(parsed2["results"]["stable"].get<bool>());

    cfg.smax = 0;
    CHECK_THROWS_AS(cl::cmd_stability(cfg), validation_error);
}

TEST_CASE("eigen command") {
    cl::RunConfig cfg;
    cfg.command = "eigen";
    cfg.m_grid_expr = "log:1.1m0:100m0:8";
    auto rep = cl::cmd_eigen(cfg);
    const auto parsed = nlohmann::json::parse(render_json(rep));
    CHECK(parsed["results"]["m0_mu2"].get<double>() ==
          doctest::Approx(2.0 * kPi).epsilon(1e-10));
    const auto rows = parsed["results"]["lambda"];
    REQUIRE(rows.size() == 8);
    double prev = 0.0;
    for (const auto& row : rows) {
        CHECK(row["m_lambda"].get<double>() > prev);
        prev = row["m_lambda"].get<double>();
    }

    // f_s tables are n = 2 only.
    cl::RunConfig bad;
    bad.command = "eigen";
    bad.n = 3;
    bad.fs_tables = true;
    bad.smax = 4;
    bad.m_expr = "100";
    CHECK_THROWS_AS(cl::cmd_eigen(bad), unsupported_dimension_error);

    // CSV: one row per (m, s) pair; comma-bearing cells are quoted.
    cfg.fs_tables = true;
    cfg.smax = 3;
    cfg.m_grid_expr = "2m0,4m0";
    cfg.f_coeffs = {1.0, 0.0, 0.5};
    const auto rep2 = cl::cmd_eigen(cfg);
    std::ostringstream os;
    cl::write_csv(os, rep2);
    std::istringstream is(os.str());
    std::string header, first;
    std::getline(is, header);
    std::getline(is, first);
    const auto cols = std::count(header.begin(), header.end(), ',');
    CHECK(first.find("\"1,0,0.5\"") != std::string::npos);
    CHECK(first.find("\"2m0,4m0\"") != std::string::npos);
    // Quoted commas must not change the column count.
    long commas = std::count(first.begin(), first.end(), ',');
    CHECK(commas == cols + 3);  // two inside the f cell, one inside m_grid
    int lines = 2;
    std::string line;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 1 + 2 * 3);
}

#ifdef INSULAB_BIN_PATH
TEST_CASE("binary end-to-end") {
    CHECK(run_binary("energy-ball --n 2 --R 1 --f 1 --m 1", "/tmp/il_e2e_a.json") == 0);
    std::ifstream in("/tmp/il_e2e_a.json");
    const auto parsed = nlohmann::json::parse(in);
    CHECK(parsed["results"]["u_R"].get<double>() ==
          doctest::Approx(0.0795775).epsilon(1e-5));

    // Missing --m is a usage error.
    CHECK(run_binary("energy-ball --n 2 --R 1 --f 1", "/tmp/il_e2e_b.json") == 2);
    // Source dipping negative on the grid is a validation error; touching
    // zero at the rim is admissible.
    CHECK(run_binary("energy-ball --n 2 --R 1 --f 1,0,-2 --m 1",
                     "/tmp/il_e2e_c.json") == 2);
    CHECK(run_binary("energy-ball --n 2 --R 1 --f 1,0,-1 --m 1",
                     "/tmp/il_e2e_d.json") == 0);
    // Angular resolution must divide into the perturbation mode.
    CHECK(run_binary("fem-verify --problem energy --s 3 --ntheta 100 --nr 16 "
                     "--m 1 --f 1",
                     "/tmp/il_e2e_e.json") == 2);
    // Unknown flags are usage errors.
    CHECK(run_binary("eigen --bogus 1", "/tmp/il_e2e_f.json") == 2);

    // Byte-identical reruns.
    CHECK(run_binary("stability --n 2 --R 1 --f 2,0,-1 --m 2m0 --smax 6",
                     "/tmp/il_e2e_g1.json") == 0);
    CHECK(run_binary("stability --n 2 --R 1 --f 2,0,-1 --m 2m0 --smax 6",
                     "/tmp/il_e2e_g2.json") == 0);
    std::ifstream g1("/tmp/il_e2e_g1.json"), g2("/tmp/il_e2e_g2.json");
    std::stringstream s1, s2;
    s1 << g1.rdbuf();
    s2 << g2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("\"case\": \"nonincreasing-stable\"") != std::string::npos);

    // Mesh/field dump through the CLI flag.
    std::remove("/tmp/il_e2e_dump.txt");
    CHECK(run_binary("fem-verify --problem eigen --m 2m0 --nr 10 --ntheta 32 "
                     "--f 1 --dump /tmp/il_e2e_dump.txt",
                     "/tmp/il_e2e_h.json") == 0);
    std::ifstream dump("/tmp/il_e2e_dump.txt");
    std::string header;
    std::getline(dump, header);
    CHECK(header == "insulation-lab dump 1");
}
#endif
