// qbsim_main.cpp — CLI: scenario runs, figure reproduction, parameter sweeps
//
// Exit codes are stable API for scripting:
//   0 success, 2 schema violation, 3 integration/convergence failure,
//   4 exact-solver capacity guard, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbsim/config.hpp"
#include "qbsim/csv.hpp"
#include "qbsim/dynamics.hpp"
#include "qbsim/errors.hpp"
#include "qbsim/figures.hpp"
#include "qbsim/sweep.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw qbsim::SchemaError("values: \"" + item + "\" is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw qbsim::SchemaError("values: at least one value is required");
    return values;
}

struct Overrides {
    std::optional<std::string> method;
    std::optional<double> rtol, atol, tau_max;

    void apply(qbsim::ScenarioFile& file) const {
        if (method) file.method = qbsim::parse_method(*method);
        if (rtol) file.scenario.rtol = *rtol;
        if (atol) file.scenario.atol = *atol;
        if (tau_max) file.scenario.tau_max = *tau_max;
    }
};

int run_command(const std::string& config_path, const std::string& out_path,
                const Overrides& overrides) {
    qbsim::ScenarioFile file = qbsim::load_scenario_file(config_path);
    overrides.apply(file);
    const qbsim::TrajectoryResult trajectory =
        qbsim::integrate(file.scenario, file.method);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    qbsim::write_trajectory_csv(out, trajectory);
    return 0;
}

int figure_command(const std::string& panel_id, const std::string& out_dir) {
    if (panel_id == "all") {
        for (const auto& panel : qbsim::figure_panels()) qbsim::run_figure_panel(panel, out_dir);
        return 0;
    }
    qbsim::run_figure_panel(qbsim::find_panel(panel_id), out_dir);
    return 0;
}

int sweep_command(const std::string& config_path, const std::string& out_path,
                  const std::string& param_name, const std::string& values_text,
                  unsigned jobs, const Overrides& overrides) {
    qbsim::ScenarioFile base = qbsim::load_scenario_file(config_path);
    overrides.apply(base);
    const auto param = qbsim::parse_sweep_param(param_name);
    const auto values = parse_values(values_text);
    const auto rows = qbsim::run_sweep(base, param, values, jobs);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    qbsim::write_sweep_csv(out, param_name, rows);

    bool any_ok = false;
    for (const auto& row : rows) any_ok |= row.error.empty();
    if (!any_ok) {
        std::cerr << "sweep: every row failed; first error: " << rows.front().error << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"open quantum battery charging simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string config_path, out_path = "trajectory.csv";
    std::string panel_id, out_dir = ".";
    std::string param_name, values_text;
    unsigned jobs = 0;

    auto add_tolerance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--method", overrides.method, "override solver: exact or meanfield");
        cmd->add_option("--rtol", overrides.rtol, "integrator relative tolerance");
        cmd->add_option("--atol", overrides.atol, "integrator absolute tolerance");
        cmd->add_option("--tau-max", overrides.tau_max, "scaled-time horizon");
    };

    CLI::App* run = app.add_subcommand("run", "integrate one scenario and write a CSV");
    run->add_option("--config", config_path, "scenario file (JSON)")->required();
    run->add_option("--out", out_path, "output CSV path");
    add_tolerance_flags(run);

    CLI::App* figure = app.add_subcommand("figure", "reproduce a reference-figure panel");
    figure->add_option("--panel", panel_id, "a, b, c, d, e, f, inset, or all")->required();
    figure->add_option("--out", out_dir, "output directory");

    CLI::App* sweep = app.add_subcommand("sweep", "steady-state summary over a parameter");
    sweep->add_option("--config", config_path, "base scenario file (JSON)")->required();
    sweep->add_option("--param", param_name, "gamma_up, n_charger, nbar, or m_reservoirs")
        ->required();
    sweep->add_option("--values", values_text, "comma-separated values")->required();
    sweep->add_option("--out", out_path, "output CSV path");
    sweep->add_option("--jobs", jobs, "worker threads (default: available parallelism)");
    add_tolerance_flags(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, out_path, overrides);
        if (figure->parsed()) return figure_command(panel_id, out_dir);
        return sweep_command(config_path, out_path, param_name, values_text, jobs, overrides);
    } catch (const qbsim::SchemaError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const qbsim::CapacityError& err) {
        std::cerr << "capacity error: " << err.what() << "\n";
        return 4;
    } catch (const qbsim::IntegrationFailure& err) {
        std::cerr << "integration error: " << err.what() << "\n";
        return 3;
    } catch (const qbsim::DiagnosticFailure& err) {
        std::cerr << "diagnostic failure: " << err.what() << "\n";
        return 3;
    } catch (const qbsim::NotConverged& err) {
        std::cerr << "not converged: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
