// errors.hpp — Exception types shared across the solver modules

#pragma once

#include <stdexcept>
#include <string>

namespace qbsim {

/// Numerical integration could not proceed (step-size underflow,
/// positivity drift past the guard, non-finite state).
class IntegrationFailure : public std::runtime_error {
public:
    IntegrationFailure(const std::string& what, double tau_reached)
        : std::runtime_error(what), tau_reached_(tau_reached) {}
    double tau_reached() const { return tau_reached_; }

private:
    double tau_reached_;
};

/// Integration produced a state violating a structural invariant beyond
/// the documented guard (distinct from plain numerical trouble).
class DiagnosticFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Request exceeds the exact solver's size guard.
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Steady-state detection failed (tau_max too small).
class NotConverged : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cumulant closure asked to resolve a moment it does not support.
class ClosureError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scenario file violates the published schema.
class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qbsim
