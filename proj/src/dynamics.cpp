#include "qbsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbsim/channels.hpp"
#include "qbsim/errors.hpp"
#include "qbsim/exact_solver.hpp"
#include "qbsim/ode.hpp"
#include "qbsim/spin_algebra.hpp"

namespace qbsim {

namespace {

// bound triage for one mean-field value: breaches below `dust` (relative)
// are clamped, breaches past the breakdown guard abort
double triage_lower_bound(double value, double bound, double scale, double tau,
                          const char* what) {
    const double breach = (bound - value) / scale;
    if (breach <= 0.0) return value;
    if (breach <= 1e-6) return bound;
    if (breach > kClosureBreakdownGuard)
        throw DiagnosticFailure(std::string(what) + " breached its bound by " +
                                std::to_string(breach) + " (relative) at tau=" +
                                std::to_string(tau) + "; closure breakdown");
    return value;
}

double triage_upper_bound(double value, double bound, double scale, double tau,
                          const char* what) {
    return -triage_lower_bound(-value, -bound, scale, tau, what);
}

void meanfield_step_checks(const ScenarioConfig& scenario, double tau, const OdeState& y) {
    const std::size_t n = scenario.ensemble_count();
    const std::size_t P = MomentState::pair_count(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        const double half_n = 0.5 * scenario.ensemble_size(mu);
        const double s_scale = std::max(1.0, half_n * half_n);
        triage_lower_bound(y[mu], -half_n, half_n, tau, "z");
        triage_upper_bound(y[mu], half_n, half_n, tau, "z");
        const std::size_t p = MomentState::pair_slot(mu, mu, n);
        triage_lower_bound(y[n + p], 0.0, s_scale, tau, "diagonal s");
        // Im s_mumu is structurally zero under the real-coefficient tape
        if (std::abs(y[n + P + p]) > 1e-6 * s_scale)
            throw DiagnosticFailure("Im s_" + std::to_string(mu) + "_" + std::to_string(mu) +
                                    " = " + std::to_string(y[n + P + p]) + " at tau=" +
                                    std::to_string(tau));
    }
}

double clamped_energy(const ScenarioConfig& scenario, std::size_t mu, double z, double tau) {
    const double half_n = 0.5 * scenario.ensemble_size(mu);
    z = triage_lower_bound(z, -half_n, half_n, tau, "z");
    z = triage_upper_bound(z, half_n, half_n, tau, "z");
    return z / (2.0 * half_n) + 0.5;
}

} // namespace

TrajectoryResult integrate_meanfield(const ScenarioConfig& scenario) {
    scenario.validate();
    const MomentSystem system = generate_moment_system(scenario);
    const MomentTape tape = system.compile();
    const std::size_t n = scenario.ensemble_count();
    const double scale = scenario.time_scale();

    TrajectoryResult result;
    result.method = Method::meanfield;
    result.scenario = scenario;
    result.energies.assign(n, {});

    const MomentState y0 = initial_moments(scenario);
    const std::vector<double> grid = uniform_grid(scenario.tau_max, scenario.output_stride);

    auto rhs = [&tape, n, scale](const OdeState& y, OdeState& dy, double /*tau*/) {
        tape.eval(y.data(), dy.data(), n);
        for (double& v : dy) v /= scale;
    };
    auto on_grid = [&](double tau, const OdeState& y) {
        result.tau_grid.push_back(tau);
        MomentState snapshot;
        snapshot.n_ensembles = n;
        snapshot.packed = y;
        result.moment_snapshots.push_back(std::move(snapshot));
        for (std::size_t mu = 0; mu < n; ++mu)
            result.energies[mu].push_back(clamped_energy(scenario, mu, y[mu], tau));
    };
    auto on_step = [&scenario](double tau, const OdeState& y) {
        meanfield_step_checks(scenario, tau, y);
    };

    OdeOptions options;
    options.rtol = scenario.rtol;
    options.atol = scenario.atol;
    integrate_grid(rhs, y0.packed, grid, options, on_grid, on_step);
    return result;
}

TrajectoryResult integrate_exact(const ScenarioConfig& scenario) {
    scenario.validate();
    if (scenario.joint_dimension() > kExactDimensionGuard)
        throw CapacityError("joint dimension " + std::to_string(scenario.joint_dimension()) +
                            " exceeds the exact-solver guard (" +
                            std::to_string(kExactDimensionGuard) +
                            "); use method=meanfield for this size");

    const DensityMatrix rho0 = initial_state(scenario);
    const auto channels = build_channels(scenario);
    const std::vector<double> grid = uniform_grid(scenario.tau_max, scenario.output_stride);

    EvolveOptions options;
    options.time_scale = scenario.time_scale();
    options.rtol = scenario.rtol;
    options.atol = scenario.atol;
    const auto jz = evolve_jz(rho0, channels, grid, options);

    TrajectoryResult result;
    result.method = Method::exact;
    result.scenario = scenario;
    result.tau_grid = grid;
    result.energies.assign(scenario.ensemble_count(), {});
    for (std::size_t mu = 0; mu < scenario.ensemble_count(); ++mu) {
        const double n_mu = scenario.ensemble_size(mu);
        for (double value : jz[mu])
            result.energies[mu].push_back(value / n_mu + 0.5);
    }
    return result;
}

TrajectoryResult integrate(const ScenarioConfig& scenario, Method method) {
    return method == Method::exact ? integrate_exact(scenario) : integrate_meanfield(scenario);
}

double steady_state_value(const TrajectoryResult& trajectory, std::size_t ensemble,
                          double window, double tol) {
    const auto& grid = trajectory.tau_grid;
    const auto& energy = trajectory.energies.at(ensemble);
    if (grid.size() < 2) throw NotConverged("trajectory too short for steady-state detection");

    const double tau_start = grid.back() - window * (grid.back() - grid.front());
    double lo = energy.back(), hi = energy.back(), sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k] < tau_start) continue;
        lo = std::min(lo, energy[k]);
        hi = std::max(hi, energy[k]);
        sum += energy[k];
        ++count;
    }
    if (count < 2 || hi - lo > tol)
        throw NotConverged("energy still varies by " + std::to_string(hi - lo) +
                           " over the trailing window; increase tau_max");
    return sum / static_cast<double>(count);
}

std::optional<double> charging_time(const TrajectoryResult& trajectory, std::size_t ensemble,
                                    double threshold) {
    const double target = threshold * steady_state_value(trajectory, ensemble);
    const auto& grid = trajectory.tau_grid;
    const auto& energy = trajectory.energies.at(ensemble);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (energy[k] < target) continue;
        if (k == 0) return grid[0];
        const double e0 = energy[k - 1], e1 = energy[k];
        if (e1 == e0) return grid[k];
        return grid[k - 1] + (target - e0) / (e1 - e0) * (grid[k] - grid[k - 1]);
    }
    return std::nullopt;
}

TrajectoryResult integrate_to_steady(ScenarioConfig scenario, Method method, double window,
                                     double tol) {
    constexpr int kMaxDoublings = 4;
    for (int attempt = 0;; ++attempt) {
        TrajectoryResult trajectory = integrate(scenario, method);
        bool converged = true;
        for (std::size_t mu = 0; mu < scenario.ensemble_count() && converged; ++mu) {
            try {
                steady_state_value(trajectory, mu, window, tol);
            } catch (const NotConverged&) {
                converged = false;
            }
        }
        if (converged) return trajectory;
        if (attempt == kMaxDoublings)
            throw NotConverged("no steady state within tau_max=" +
                               std::to_string(scenario.tau_max) + " after " +
                               std::to_string(kMaxDoublings) + " doublings");
        scenario.tau_max *= 2.0;
    }
}

} // namespace qbsim
