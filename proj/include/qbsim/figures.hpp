// figures.hpp — Reproduction of the reference figure's panels

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qbsim/dynamics.hpp"

namespace qbsim {

/// Panel map: (a) M=1 no pump, (b) M=2 no pump, (c) M=2 pump gamma_up =
/// gamma_down, (d) M=3 no pump, (e) M=3 pump gamma_up = gamma_down,
/// (f) M=3 pump gamma_up = 2 gamma_down, inset = panel-(f) rates with the
/// charger starting in the ground state. All panels share one constants
/// table (charger 1e7 spins, batteries 1e2 each).
struct PanelSpec {
    std::string id;
    int reservoirs;
    double pump_factor;       // gamma_up / gamma_down
    bool charger_excited;
};

const std::vector<PanelSpec>& figure_panels();

/// nullptr-free lookup; throws std::invalid_argument for unknown ids.
const PanelSpec& find_panel(const std::string& id);

ScenarioConfig panel_scenario(const PanelSpec& panel);

/// Runs one panel and writes panel_<id>.csv and panel_<id>.svg.
TrajectoryResult run_figure_panel(const PanelSpec& panel,
                                  const std::filesystem::path& out_dir);

} // namespace qbsim
