// ode.hpp — Adaptive embedded Runge-Kutta integration with dense output
//
// Thin wrapper over boost::numeric::odeint's Dormand-Prince 5(4) stepper.
// The integrator's internal steps are independent of the requested output
// grid; grid values come from the stepper's dense-output interpolation.

#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "qbsim/errors.hpp"

namespace qbsim {

struct OdeOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 1e-4;
};

using OdeState = std::vector<double>;

/// Integrates y' = rhs(y, t) from grid.front() to grid.back().
/// `on_grid(tau, y)` fires once per grid point (interpolated state);
/// `on_step(tau, y)`, when given, fires after every accepted step.
template <class Rhs>
void integrate_grid(Rhs&& rhs, OdeState y, std::span<const double> grid,
                    const OdeOptions& options,
                    const std::function<void(double, const OdeState&)>& on_grid,
                    const std::function<void(double, const OdeState&)>& on_step = {}) {
    namespace ode = boost::numeric::odeint;
    if (grid.empty()) return;

    const double t0 = grid.front();
    const double t_end = grid.back();
    std::size_t gi = 0;
    while (gi < grid.size() && grid[gi] <= t0) {
        on_grid(grid[gi], y);
        ++gi;
    }
    if (gi == grid.size()) return;

    auto stepper =
        ode::make_dense_output(options.atol, options.rtol, ode::runge_kutta_dopri5<OdeState>());
    stepper.initialize(y, t0, options.initial_step);

    OdeState interp(y.size());
    double tau = t0;
    try {
        while (stepper.current_time() < t_end) {
            stepper.do_step(rhs);
            tau = stepper.current_time();
            for (double v : stepper.current_state())
                if (!std::isfinite(v))
                    throw IntegrationFailure("integration produced a non-finite state", tau);
            if (on_step) on_step(tau, stepper.current_state());
            while (gi < grid.size() && grid[gi] <= tau + 1e-14) {
                stepper.calc_state(grid[gi], interp);
                on_grid(grid[gi], interp);
                ++gi;
            }
        }
    } catch (const ode::no_progress_error& err) {
        throw IntegrationFailure(std::string("step-size underflow: ") + err.what(), tau);
    } catch (const ode::step_adjustment_error& err) {
        throw IntegrationFailure(std::string("step adjustment failed: ") + err.what(), tau);
    }
}

/// Uniform output grid {0, stride, 2*stride, ...} ending exactly at tau_max.
inline std::vector<double> uniform_grid(double tau_max, double stride) {
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor(tau_max / stride + 1e-9));
    grid.reserve(n + 2);
    for (std::size_t k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * stride);
    if (grid.back() < tau_max - 1e-9 * tau_max) grid.push_back(tau_max);
    else grid.back() = tau_max;
    return grid;
}

} // namespace qbsim
