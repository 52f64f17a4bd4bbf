#include "qbsim/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbsim {

double DensityMatrix::hermiticity_error() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate(bool check_spectrum) const {
    Eigen::Index expected = 1;
    for (Eigen::Index d : ensemble_dims) expected *= d;
    if (rho.rows() != rho.cols() || rho.rows() != expected)
        throw std::invalid_argument("DensityMatrix: dimension does not match ensemble_dims");
    const double tr = trace_real();
    if (std::abs(tr - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(std::abs(tr - 1.0)));
    if (hermiticity_error() > 1e-10)
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    if (check_spectrum && min_eigenvalue() < -1e-8)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-8");
}

} // namespace qbsim
