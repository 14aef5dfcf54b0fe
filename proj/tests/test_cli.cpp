// Black-box checks of the installed command line tool; the binary path is
// injected by the build as CONTSENSE_CLI_PATH.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(CONTSENSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("") == 2);                        // missing subcommand
    CHECK(run_cli("sweep-gamma") == 2);             // missing --config
    CHECK(run_cli("frobnicate --config x") == 2);   // unknown subcommand
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("sweep-gamma --help") == 0);

    write_file("cli_bad.json", "{ not json");
    CHECK(run_cli("sweep-gamma --config cli_bad.json") == 2);
    write_file("cli_unknown.json",
               R"({"family":"high_temperature","t_final":1.0,"gamma_min":1.0,)"
               R"("gamma_max":1.0,"bogus_key":3})");
    CHECK(run_cli("sweep-gamma --config cli_unknown.json") == 2);
    CHECK(run_cli("sweep-gamma --config cli_no_such_file.json") == 2);
}

TEST_CASE("coupling sweep: schema, shape and determinism") {
    write_file("cli_sweep.json",
               R"({"family":"high_temperature","n":8,"t_final":1.0,)"
               R"("gamma_min":0.2,"gamma_max":20.0,"points":16})");
    CHECK(run_cli("sweep-gamma --config cli_sweep.json --out cli_sweep_a.csv") == 0);
    CHECK(run_cli("sweep-gamma --config cli_sweep.json --out cli_sweep_b.csv") == 0);
    const std::string text = read_file("cli_sweep_a.csv");
    CHECK(text == read_file("cli_sweep_b.csv"));  // byte-identical rerun

    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "gamma,gamma_T,I_E,I_G,route,err");

    std::vector<double> gam, env, glob;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 6);
        gam.push_back(std::stod(cells[0]));
        env.push_back(std::stod(cells[2]));
        glob.push_back(std::stod(cells[3]));
        CHECK(cells[4] == "closed_form");
    }
    // ascending coupling, environmental below global, rise then fall
    size_t peak = 0;
    for (size_t i = 1; i < gam.size(); ++i) {
        CHECK(gam[i] > gam[i - 1]);
        if (env[i] > env[peak]) peak = i;
    }
    for (size_t i = 0; i < env.size(); ++i) CHECK(env[i] <= glob[i] * (1 + 1e-12));
    CHECK(peak > 0);
    CHECK(peak < env.size() - 1);
    for (size_t i = 1; i <= peak; ++i) CHECK(env[i] >= env[i - 1]);
    for (size_t i = peak + 1; i < env.size(); ++i) CHECK(env[i] <= env[i - 1]);
}

TEST_CASE("coupling sweep: degenerate bracket and json format") {
    write_file("cli_point.json",
               R"({"family":"single_qubit_loss","t_final":1.0,)"
               R"("gamma_min":1.0,"gamma_max":1.0,"points":7})");
    CHECK(run_cli("sweep-gamma --config cli_point.json --out cli_point.csv") == 0);
    CHECK(lines_of(read_file("cli_point.csv")).size() == 2);  // header + one row

    CHECK(run_cli("sweep-gamma --config cli_point.json --format json"
                  " --out cli_point.json.out") == 0);
    const std::string doc = read_file("cli_point.json.out");
    CHECK(doc.find("\"I_E\"") != std::string::npos);
    CHECK(doc.find("\"gamma_T\"") != std::string::npos);
    CHECK(doc.front() == '[');
}

TEST_CASE("numeric failures exit with code 3") {
    // a huge stencil step makes the 5- and 3-point curvatures disagree
    write_file("cli_numeric.json",
               R"({"family":"high_temperature","n":1,"t_final":1.0,)"
               R"("gamma_min":1.0,"gamma_max":1.0,"points":1,)"
               R"("route":"finite_difference","theta_step":40.0})");
    CHECK(run_cli("sweep-gamma --config cli_numeric.json") == 3);
}

TEST_CASE("scaling sweep output") {
    write_file("cli_scaling.json",
               R"({"family":"high_temperature","t_final":1.0,"n_list":[32,64,128]})");
    CHECK(run_cli("scaling --config cli_scaling.json --out cli_scaling.csv") == 0);
    const auto lines = lines_of(read_file("cli_scaling.csv"));
    REQUIRE(lines.size() == 6);  // header, three rows, exponent, coefficient
    CHECK(lines[0] == "n,t,gamma_opt,qfi_opt,route,err");
    CHECK(lines[4].rfind("# exponent ", 0) == 0);
    CHECK(lines[5].rfind("# coefficient ", 0) == 0);
    const double exponent = std::stod(lines[4].substr(11));
    CHECK(exponent > 1.9);
    CHECK(exponent < 2.01);

    write_file("cli_scaling_empty.json",
               R"({"family":"high_temperature","t_final":1.0,"n_list":[]})");
    CHECK(run_cli("scaling --config cli_scaling_empty.json") == 2);
}

TEST_CASE("correlator table") {
    write_file("cli_corr.json",
               R"({"family":"dephasing_family","n":3,"eta":0.5,"axis":"y",)"
               R"("t_max":2.0,"points":21})");
    CHECK(run_cli("correlator --config cli_corr.json --out cli_corr.csv") == 0);
    const auto lines = lines_of(read_file("cli_corr.csv"));
    REQUIRE(lines.size() == 22);
    CHECK(lines[0] == "t,C_numeric,C_analytic,rel_err");
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_csv(lines[i]);
        REQUIRE(cells.size() == 4);
        CHECK(std::stod(cells[3]) < 1e-6);  // numeric regression matches closed form
    }
}
