// spin_algebra.hpp — Collective spin operators in the maximal symmetric sector
//
// Each ensemble of N spin-1/2 particles is represented in its j = N/2 Dicke
// sector, basis |j, m> ordered m = j, j-1, ..., -j (index 0 is the fully
// excited level). The restriction is exact for this protocol, not an
// approximation: every jump operator is a combination of per-ensemble
// collective J^± operators, which commute with each ensemble's Casimir J·J,
// so a state prepared in the maximal-j sectors never leaves them.

#pragma once

#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qbsim/density_matrix.hpp"
#include "qbsim/scenario.hpp"

namespace qbsim {

/// One ensemble's collective spin-j sector and its operator matrices.
struct SpinRepresentation {
    int n_spins = 0;          // N
    double j = 0.0;           // N/2
    Eigen::Index dim = 0;     // N + 1
    Eigen::MatrixXd jplus;
    Eigen::MatrixXd jminus;
    Eigen::MatrixXd jz;

    static SpinRepresentation make(int n_spins);
};

/// Ladder and z operators for N spins, (N+1)x(N+1), in the descending-m
/// basis. Matrix elements follow J^-|j,m> = sqrt(j(j+1) - m(m-1)) |j,m-1>;
/// jplus is the transpose of jminus.
std::tuple<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd>
collective_operators(int n_spins);

/// Kronecker embedding I ⊗ ... ⊗ op ⊗ ... ⊗ I with op at position `slot`.
Eigen::MatrixXd embed(const Eigen::MatrixXd& op, std::size_t slot,
                      const std::vector<Eigen::Index>& dims);

/// Same embedding assembled directly in sparse form (the joint dimension
/// grows as the product of the per-ensemble blocks).
Eigen::SparseMatrix<double> embed_sparse(const Eigen::MatrixXd& op, std::size_t slot,
                                         const std::vector<Eigen::Index>& dims);

/// Pure product state with each ensemble fully excited (|j, +j>) or fully
/// ground (|j, -j>), returned as a density matrix.
DensityMatrix initial_state(const std::vector<Level>& levels,
                            const std::vector<int>& ensemble_sizes);

/// Protocol initial state of a scenario (charger excited, batteries ground
/// unless overridden in the config).
DensityMatrix initial_state(const ScenarioConfig& scenario);

} // namespace qbsim
