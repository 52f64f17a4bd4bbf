#include <doctest.h>

#include <sstream>

#include "qbsim/config.hpp"
#include "qbsim/csv.hpp"
#include "qbsim/errors.hpp"
#include "qbsim/sweep.hpp"

using namespace qbsim;
using nlohmann::json;

TEST_CASE("a full scenario document round-trips") {
    const json doc = {
        {"label", "two reservoirs"},
        {"method", "exact"},
        {"n_charger", 12},
        {"battery_sizes", {2, 2}},
        {"gamma_down", 1.0},
        {"gamma_up", 0.5},
        {"nbar", 0.0},
        {"initial_levels", {"excited", "ground", "ground"}},
        {"tau_max", 25.0},
        {"rtol", 1e-9},
        {"atol", 1e-11},
        {"output_stride", 0.25},
    };
    const ScenarioFile file = parse_scenario_json(doc);
    CHECK(file.method == Method::exact);
    CHECK(file.label == "two reservoirs");
    CHECK(file.scenario.n_charger == 12);
    CHECK(file.scenario.battery_sizes == std::vector<int>{2, 2});
    CHECK(file.scenario.gamma_up == doctest::Approx(0.5));
    CHECK(file.scenario.tau_max == doctest::Approx(25.0));
    CHECK(file.scenario.level(0) == Level::excited);
}

TEST_CASE("defaults fill unspecified fields") {
    const ScenarioFile file =
        parse_scenario_json(json{{"n_charger", 5}, {"battery_sizes", {3}}});
    CHECK(file.method == Method::meanfield);
    CHECK(file.scenario.gamma_down == doctest::Approx(1.0));
    CHECK(file.scenario.gamma_up == doctest::Approx(0.0));
    CHECK(file.scenario.nbar == doctest::Approx(0.0));
    CHECK(file.scenario.tau_max == doctest::Approx(50.0));
    CHECK(file.scenario.rtol == doctest::Approx(1e-8));
    CHECK(file.scenario.level(0) == Level::excited);
    CHECK(file.scenario.level(1) == Level::ground);
}

TEST_CASE("unknown keys are rejected by name") {
    const json doc = {{"n_charger", 5}, {"battery_sizes", {3}}, {"gamma_dwn", 1.0}};
    try {
        parse_scenario_json(doc);
        FAIL("expected SchemaError");
    } catch (const SchemaError& err) {
        CHECK(std::string(err.what()).find("gamma_dwn") != std::string::npos);
    }
}

TEST_CASE("schema violations name the offending field") {
    CHECK_THROWS_AS(parse_scenario_json(json{{"battery_sizes", {3}}}), SchemaError);
    try {
        parse_scenario_json(json{{"n_charger", 0}, {"battery_sizes", {3}}});
        FAIL("expected SchemaError");
    } catch (const SchemaError& err) {
        CHECK(std::string(err.what()).find("n_charger") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario_json(json{{"n_charger", 5}, {"battery_sizes", "x"}}),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario_json(json{{"n_charger", 5},
                                             {"battery_sizes", json::array()}}),
                    SchemaError);
    CHECK_THROWS_AS(
        parse_scenario_json(json{
            {"n_charger", 5}, {"battery_sizes", {3}}, {"initial_levels", {"blah", "ground"}}}),
        SchemaError);
    CHECK_THROWS_AS(
        parse_scenario_json(json{
            {"n_charger", 5}, {"battery_sizes", {3}}, {"method", "magic"}}),
        SchemaError);
    CHECK_THROWS_AS(
        parse_scenario_json(json{
            {"n_charger", 5}, {"battery_sizes", {3}}, {"gamma_down", -1.0}}),
        SchemaError);
}

TEST_CASE("format_value prints nine significant digits in the C locale") {
    CHECK(format_value(0.5) == "0.5");
    CHECK(format_value(1.0 / 3.0) == "0.333333333");
    CHECK(format_value(123456789.25) == "123456789");
    CHECK(format_value(1e-7) == "1e-07");
}

TEST_CASE("trajectory CSV layout") {
    TrajectoryResult traj;
    traj.tau_grid = {0.0, 0.5};
    traj.energies = {{1.0, 0.75}, {0.0, 0.25}, {0.0, 0.125}};
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    CHECK(out.str() == "tau,E_C,E_B1,E_B2\n0,1,0,0\n0.5,0.75,0.25,0.125\n");
}

TEST_CASE("sweep CSV uses NA sentinels") {
    std::vector<SweepRow> rows(2);
    rows[0].value = 1.0;
    rows[0].steady = {0.1, 0.9};
    rows[0].charging_tau = 2.5;
    rows[1].value = 2.0;
    rows[1].error = "boom, with commas";
    std::ostringstream out;
    write_sweep_csv(out, "gamma_up", rows);
    CHECK(out.str() ==
          "param,value,steady_E_C,steady_E_B1,charging_tau,error\n"
          "gamma_up,1,0.1,0.9,2.5,\n"
          "gamma_up,2,NA,NA,NA,boom; with commas\n");
}

TEST_CASE("sweep parameter names") {
    CHECK(parse_sweep_param("gamma_up") == SweepParam::gamma_up);
    CHECK(parse_sweep_param("n_charger") == SweepParam::n_charger);
    CHECK(parse_sweep_param("nbar") == SweepParam::nbar);
    CHECK(parse_sweep_param("m_reservoirs") == SweepParam::m_reservoirs);
    CHECK_THROWS_AS(parse_sweep_param("gammaup"), SchemaError);
}

TEST_CASE("nonpositive controls are schema violations") {
    CHECK_THROWS_AS(parse_scenario_json(
                        json{{"n_charger", 5}, {"battery_sizes", {3}}, {"tau_max", 0.0}}),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario_json(
                        json{{"n_charger", 5}, {"battery_sizes", {3}}, {"rtol", -1e-8}}),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario_json(json{{"n_charger", 5},
                                             {"battery_sizes", {3}},
                                             {"output_stride", 0.0}}),
                    SchemaError);
}
