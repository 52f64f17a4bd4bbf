// exact_solver.hpp — Exact Lindblad integration on the joint symmetric sector
//
// The master equation uses the convention
//     d rho/dt = sum_ch rate * (2 O rho O^dag - O^dag O rho - rho O^dag O),
// with the explicit factor 2 (a single spin's excited population decays as
// exp(-2 gamma t) under a lowering channel of rate gamma).
//
// Every generator built from collective J^± combinations conserves the
// difference q between the total magnetization of ket and bra indices, so
// the superoperator is block-diagonal in q. evolve_exact integrates only
// the sectors occupied by the initial state (diagonal initial states touch
// just q = 0, whose block is real), applying the generator as a sparse
// matrix on the sector coordinates; it is never materialized densely on
// the D^2 space. Steady states come from long-time integration — without
// pumping the generator's null space is degenerate (dark states), so the
// physical steady state depends on the initial condition.

#pragma once

#include <span>
#include <vector>

#include "qbsim/channels.hpp"
#include "qbsim/density_matrix.hpp"
#include "qbsim/scenario.hpp"

namespace qbsim {

/// Largest joint dimension the exact solver accepts.
inline constexpr long long kExactDimensionGuard = 4096;

struct EvolveOptions {
    /// tau = time_scale * t; rates are divided by this (use N_C * gamma_down).
    double time_scale = 1.0;
    double rtol = 1e-8;
    double atol = 1e-10;
    /// Bypass the sector reduction and integrate the dense density matrix.
    bool force_dense = false;
};

/// Right-hand side sum_ch rate*(2 O rho O^dag - O^dag O rho - rho O^dag O)
/// in raw rate units, evaluated with sparse embedded operators.
Eigen::MatrixXcd apply_generator(const DensityMatrix& rho,
                                 std::span<const LindbladChannel> channels);

/// Integrates rho through the channel list and returns the state at each
/// grid point. tau_grid must be strictly increasing and start at 0.
std::vector<DensityMatrix> evolve_exact(const DensityMatrix& rho0,
                                        std::span<const LindbladChannel> channels,
                                        std::span<const double> tau_grid,
                                        const EvolveOptions& options = {});

/// Same evolution, but records only <J_mu^z> per ensemble at the grid
/// points (result[mu][k]); trajectories of large systems never hold full
/// density matrices in memory.
std::vector<std::vector<double>> evolve_jz(const DensityMatrix& rho0,
                                           std::span<const LindbladChannel> channels,
                                           std::span<const double> tau_grid,
                                           const EvolveOptions& options = {});

/// Energy densities E_mu/(hbar omega0) = <J_mu^z>/N_mu + 1/2, one per
/// ensemble (N_mu inferred from ensemble_dims).
std::vector<double> energy_densities(const DensityMatrix& rho);

/// log2 of the trace norm of the partial transpose over the ensembles in
/// `partition`. Dense eigendecomposition; guarded by kExactDimensionGuard.
double logarithmic_negativity(const DensityMatrix& rho,
                              std::span<const std::size_t> partition);

} // namespace qbsim
