#include "qbsim/figures.hpp"

#include <fstream>
#include "qbsim/errors.hpp"

#include "qbsim/csv.hpp"
#include "qbsim/svg.hpp"

namespace qbsim {

namespace {

// single table of figure constants; panels never restate them
constexpr int kChargerSpins = 10'000'000;
constexpr int kBatterySpins = 100;
constexpr double kGammaDown = 1.0;
constexpr double kTauMax = 30.0;
constexpr double kStride = 0.05;

} // namespace

const std::vector<PanelSpec>& figure_panels() {
    static const std::vector<PanelSpec> panels = {
        {"a", 1, 0.0, true},  {"b", 2, 0.0, true},     {"c", 2, 1.0, true},
        {"d", 3, 0.0, true},  {"e", 3, 1.0, true},     {"f", 3, 2.0, true},
        {"inset", 3, 2.0, false},
    };
    return panels;
}

const PanelSpec& find_panel(const std::string& id) {
    for (const PanelSpec& panel : figure_panels())
        if (panel.id == id) return panel;
    throw SchemaError("panel: unknown figure panel \"" + id + "\"");
}

ScenarioConfig panel_scenario(const PanelSpec& panel) {
    ScenarioConfig scenario;
    scenario.n_charger = kChargerSpins;
    scenario.battery_sizes.assign(panel.reservoirs, kBatterySpins);
    scenario.gamma_down = kGammaDown;
    scenario.gamma_up = panel.pump_factor * kGammaDown;
    scenario.tau_max = kTauMax;
    scenario.output_stride = kStride;
    if (!panel.charger_excited) {
        scenario.initial_levels.assign(scenario.ensemble_count(), Level::ground);
    }
    return scenario;
}

TrajectoryResult run_figure_panel(const PanelSpec& panel,
                                  const std::filesystem::path& out_dir) {
    const TrajectoryResult trajectory = integrate_meanfield(panel_scenario(panel));

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir / ("panel_" + panel.id + ".csv"), std::ios::binary);
        write_trajectory_csv(csv, trajectory);
    }
    std::vector<PlotSeries> series;
    series.push_back({"E_C", trajectory.energies[0]});
    for (std::size_t m = 1; m < trajectory.energies.size(); ++m)
        series.push_back({"E_B" + std::to_string(m), trajectory.energies[m]});
    std::ofstream svg(out_dir / ("panel_" + panel.id + ".svg"), std::ios::binary);
    write_line_plot_svg(svg, "panel " + panel.id, trajectory.tau_grid, series, "tau",
                        "energy density");
    return trajectory;
}

} // namespace qbsim
