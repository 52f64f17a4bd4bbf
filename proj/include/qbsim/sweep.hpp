// sweep.hpp — Parameter sweeps over independent scenario integrations

#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qbsim/config.hpp"

namespace qbsim {

enum class SweepParam { gamma_up, n_charger, nbar, m_reservoirs };

SweepParam parse_sweep_param(const std::string& name);

struct SweepRow {
    double value = 0.0;
    std::vector<double> steady;              // per ensemble, charger first
    std::optional<double> charging_tau;      // first battery, 0.9 threshold
    std::string error;                       // empty on success
};

/// One row per value; rows run on a worker pool (`jobs` threads) with no
/// shared mutable state, and the output order always matches the input
/// value order. Per-row failures land in the row's error field.
std::vector<SweepRow> run_sweep(const ScenarioFile& base, SweepParam param,
                                std::span<const double> values, unsigned jobs);

/// Header `param,value,steady_E_C,steady_E_B1,...,charging_tau,error`;
/// missing values (failed rows, shorter battery lists) print as NA.
void write_sweep_csv(std::ostream& out, const std::string& param_name,
                     std::span<const SweepRow> rows);

} // namespace qbsim
