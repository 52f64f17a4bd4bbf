// density_matrix.hpp — Exact joint state over the product of symmetric sectors

#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qbsim {

/// Density matrix on the tensor product of per-ensemble symmetric sectors.
/// ensemble_dims[mu] = N_mu + 1 fixes the factorization used by partial
/// operations (basis index 0 of each factor is the fully excited level).
struct DensityMatrix {
    Eigen::MatrixXcd rho;
    std::vector<Eigen::Index> ensemble_dims;

    Eigen::Index dim() const { return rho.rows(); }
    std::size_t ensemble_count() const { return ensemble_dims.size(); }

    double trace_real() const { return rho.trace().real(); }
    double hermiticity_error() const;   // max elementwise |rho - rho^dag|
    double min_eigenvalue() const;      // dense self-adjoint eigendecomposition

    /// Checks trace (1e-10), Hermiticity (1e-10 elementwise) and, when
    /// `check_spectrum` is set, minimum eigenvalue >= -1e-8.
    /// Throws std::invalid_argument on the first violated invariant.
    void validate(bool check_spectrum = true) const;
};

} // namespace qbsim
