#include "qbsim/scenario.hpp"

#include <stdexcept>
#include <string>

namespace qbsim {

int ScenarioConfig::ensemble_size(std::size_t mu) const {
    return mu == 0 ? n_charger : battery_sizes.at(mu - 1);
}

Level ScenarioConfig::level(std::size_t mu) const {
    if (!initial_levels.empty()) return initial_levels.at(mu);
    return mu == 0 ? Level::excited : Level::ground;
}

long long ScenarioConfig::joint_dimension() const {
    long long d = n_charger + 1;
    for (int nb : battery_sizes) d *= nb + 1;
    return d;
}

double ScenarioConfig::time_scale() const {
    return gamma_down > 0.0 ? static_cast<double>(n_charger) * gamma_down : gamma_up;
}

void ScenarioConfig::validate() const {
    if (n_charger < 1) throw std::invalid_argument("n_charger: must be a positive integer");
    if (battery_sizes.empty())
        throw std::invalid_argument("battery_sizes: at least one reservoir is required");
    for (int nb : battery_sizes)
        if (nb < 1) throw std::invalid_argument("battery_sizes: entries must be positive integers");
    if (gamma_down < 0.0) throw std::invalid_argument("gamma_down: must be nonnegative");
    if (gamma_up < 0.0) throw std::invalid_argument("gamma_up: must be nonnegative");
    if (nbar < 0.0) throw std::invalid_argument("nbar: must be nonnegative");
    if (gamma_down <= 0.0 && gamma_up <= 0.0)
        throw std::invalid_argument("gamma_down: gamma_down or gamma_up must be positive");
    if (!initial_levels.empty() && initial_levels.size() != ensemble_count())
        throw std::invalid_argument("initial_levels: need one entry per ensemble (charger first)");
    if (!(tau_max > 0.0)) throw std::invalid_argument("tau_max: must be positive");
    if (!(rtol > 0.0)) throw std::invalid_argument("rtol: must be positive");
    if (!(atol > 0.0)) throw std::invalid_argument("atol: must be positive");
    if (!(output_stride > 0.0)) throw std::invalid_argument("output_stride: must be positive");
}

} // namespace qbsim
