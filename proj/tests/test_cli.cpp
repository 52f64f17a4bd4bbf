#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return QBSIM_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string command = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "qbsim_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string last_line(const std::string& text) {
    const auto end = text.find_last_not_of('\n');
    const auto start = text.rfind('\n', end);
    return text.substr(start + 1, end - start);
}

} // namespace

TEST_CASE("run: CSV output is deterministic byte for byte") {
    const fs::path dir = temp_dir();
    write_file(dir / "a.json",
               R"({"n_charger": 1000, "battery_sizes": [10], "tau_max": 20.0,)"
               R"( "output_stride": 0.5})");
    const std::string base = "run --config " + (dir / "a.json").string();

    REQUIRE(run_cli(base + " --out " + (dir / "one.csv").string()) == 0);
    REQUIRE(run_cli(base + " --out " + (dir / "two.csv").string()) == 0);
    const std::string one = read_file(dir / "one.csv");
    CHECK(one == read_file(dir / "two.csv"));
    CHECK(one.substr(0, 14) == "tau,E_C,E_B1\n0");
    CHECK(one.find("\r") == std::string::npos);
}

TEST_CASE("run: schema violations exit with code 2") {
    const fs::path dir = temp_dir();
    write_file(dir / "bad.json", R"({"n_charger": 0, "battery_sizes": [10]})");
    CHECK(run_cli("run --config " + (dir / "bad.json").string() + " --out " +
                  (dir / "x.csv").string()) == 2);

    write_file(dir / "unknown.json",
               R"({"n_charger": 5, "battery_sizes": [10], "gamma": 1.0})");
    CHECK(run_cli("run --config " + (dir / "unknown.json").string() + " --out " +
                  (dir / "x.csv").string()) == 2);
}

TEST_CASE("run: the exact-solver capacity guard exits with code 4") {
    const fs::path dir = temp_dir();
    write_file(dir / "huge.json",
               R"({"n_charger": 10000000, "battery_sizes": [100], "method": "exact"})");
    CHECK(run_cli("run --config " + (dir / "huge.json").string() + " --out " +
                  (dir / "x.csv").string()) == 4);
}

TEST_CASE("figure: panel b lands on the one-half ceiling") {
    const fs::path dir = temp_dir() / "figs";
    REQUIRE(run_cli("figure --panel b --out " + dir.string()) == 0);
    REQUIRE(fs::exists(dir / "panel_b.csv"));
    REQUIRE(fs::exists(dir / "panel_b.svg"));

    const std::string csv = read_file(dir / "panel_b.csv");
    const std::string final_row = last_line(csv);
    // tau,E_C,E_B1,E_B2
    std::stringstream row(final_row);
    std::string cell;
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    const double e_b1 = std::stod(cell);
    CHECK(e_b1 > 0.45);
    CHECK(e_b1 < 0.55);

    const std::string svg = read_file(dir / "panel_b.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(run_cli("figure --panel nope --out " + dir.string()) == 2);
}

TEST_CASE("sweep: pump strengths reproduce the three-reservoir ceilings") {
    const fs::path dir = temp_dir();
    write_file(dir / "base3.json",
               R"({"n_charger": 10000000, "battery_sizes": [100, 100, 100]})");
    const fs::path out = dir / "sweep.csv";
    REQUIRE(run_cli("sweep --config " + (dir / "base3.json").string() +
                    " --param gamma_up --values 0,1,2 --jobs 3 --out " + out.string()) == 0);

    std::ifstream in(out);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "param,value,steady_E_C,steady_E_B1,steady_E_B2,steady_E_B3,charging_tau,error");
    const double expected[] = {0.25, 0.5, 1.0};
    for (int k = 0; k < 3; ++k) {
        REQUIRE(std::getline(in, row));
        std::stringstream cells(row);
        std::string cell;
        std::getline(cells, cell, ',');   // param
        CHECK(cell == "gamma_up");
        std::getline(cells, cell, ',');   // value
        CHECK(std::stod(cell) == doctest::Approx(k));
        std::getline(cells, cell, ',');   // steady_E_C
        std::getline(cells, cell, ',');   // steady_E_B1
        CHECK(std::stod(cell) == doctest::Approx(expected[k]).epsilon(0.05));
    }
}

TEST_CASE("run: --method override reaches the exact-solver guard") {
    const fs::path dir = temp_dir();
    write_file(dir / "mf_huge.json",
               R"({"n_charger": 10000000, "battery_sizes": [100]})");
    const std::string base = "run --config " + (dir / "mf_huge.json").string() + " --out " +
                             (dir / "y.csv").string();
    CHECK(run_cli(base) == 0);                          // mean-field handles the size
    CHECK(run_cli(base + " --method exact") == 4);      // override takes effect
}

TEST_CASE("sweep: output is independent of the worker count") {
    const fs::path dir = temp_dir();
    write_file(dir / "base.json",
               R"({"n_charger": 100000, "battery_sizes": [100, 100], "tau_max": 30.0})");
    const std::string base = "sweep --config " + (dir / "base.json").string() +
                             " --param n_charger --values 1000,100000,10000000";
    REQUIRE(run_cli(base + " --jobs 1 --out " + (dir / "serial.csv").string()) == 0);
    REQUIRE(run_cli(base + " --jobs 3 --out " + (dir / "pooled.csv").string()) == 0);
    const std::string serial = read_file(dir / "serial.csv");
    CHECK(serial == read_file(dir / "pooled.csv"));

    // every charger size hits the two-reservoir ceiling
    std::stringstream lines(serial);
    std::string line;
    std::getline(lines, line);   // header
    while (std::getline(lines, line)) {
        std::stringstream cells(line);
        std::string cell;
        for (int k = 0; k < 4; ++k) std::getline(cells, cell, ',');
        CHECK(std::stod(cell) <= 0.55);
    }
}

TEST_CASE("figure: --panel all renders every panel") {
    const fs::path dir = temp_dir() / "all_figs";
    REQUIRE(run_cli("figure --panel all --out " + dir.string()) == 0);
    std::size_t csvs = 0, svgs = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".csv") ++csvs;
        if (entry.path().extension() == ".svg") ++svgs;
    }
    CHECK(csvs == 7);
    CHECK(svgs == 7);
}

TEST_CASE("figure: reruns are byte-identical") {
    const fs::path one = temp_dir() / "fig_one";
    const fs::path two = temp_dir() / "fig_two";
    REQUIRE(run_cli("figure --panel inset --out " + one.string()) == 0);
    REQUIRE(run_cli("figure --panel inset --out " + two.string()) == 0);
    CHECK(read_file(one / "panel_inset.csv") == read_file(two / "panel_inset.csv"));
    CHECK(read_file(one / "panel_inset.svg") == read_file(two / "panel_inset.svg"));
}
