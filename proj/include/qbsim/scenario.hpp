// scenario.hpp — Protocol description: one charger, M batteries in separate reservoirs

#pragma once

#include <cstddef>
#include <vector>

namespace qbsim {

enum class Level { excited, ground };

/// Full protocol configuration. Ensemble 0 is the charger; ensembles
/// 1..M are the batteries, one per reservoir.
struct ScenarioConfig {
    int n_charger = 1;
    std::vector<int> battery_sizes;

    double gamma_down = 1.0;  // collective dissipation rate (rate units)
    double gamma_up = 0.0;    // incoherent collective pump on the charger
    double nbar = 0.0;        // reservoir thermal occupation (0 = zero temperature)

    /// Per-ensemble initial level, charger first. Empty means the default
    /// protocol state: charger excited, every battery ground.
    std::vector<Level> initial_levels;

    double tau_max = 50.0;        // scaled-time horizon
    double rtol = 1e-8;
    double atol = 1e-10;
    double output_stride = 0.1;   // grid spacing in scaled time

    std::size_t reservoir_count() const { return battery_sizes.size(); }
    std::size_t ensemble_count() const { return battery_sizes.size() + 1; }
    int ensemble_size(std::size_t mu) const;
    Level level(std::size_t mu) const;

    /// Joint symmetric-sector dimension Π (N_mu + 1).
    long long joint_dimension() const;

    /// Scaled time unit: tau = N_C * gamma_down * t, falling back to
    /// tau = gamma_up * t for pump-only scenarios.
    double time_scale() const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

} // namespace qbsim
