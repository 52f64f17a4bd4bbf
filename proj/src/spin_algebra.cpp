#include "qbsim/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace qbsim {

SpinRepresentation SpinRepresentation::make(int n_spins) {
    SpinRepresentation rep;
    rep.n_spins = n_spins;
    rep.j = 0.5 * n_spins;
    rep.dim = n_spins + 1;
    std::tie(rep.jplus, rep.jminus, rep.jz) = collective_operators(n_spins);
    return rep;
}

std::tuple<Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd>
collective_operators(int n_spins) {
    if (n_spins < 1) throw std::invalid_argument("collective_operators: n_spins must be >= 1");
    const double j = 0.5 * n_spins;
    const Eigen::Index d = n_spins + 1;
    Eigen::MatrixXd jminus = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double m = j - static_cast<double>(i);
        jz(i, i) = m;
        if (i + 1 < d) jminus(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
    }
    return {jminus.transpose(), jminus, jz};
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& op, std::size_t slot,
                      const std::vector<Eigen::Index>& dims) {
    if (slot >= dims.size()) throw std::invalid_argument("embed: slot out of range");
    if (op.rows() != dims[slot] || op.cols() != dims[slot])
        throw std::invalid_argument("embed: operator dimension does not match dims[slot]");
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const Eigen::MatrixXd& factor =
            (k == slot) ? op : Eigen::MatrixXd(Eigen::MatrixXd::Identity(dims[k], dims[k]));
        Eigen::MatrixXd next(out.rows() * factor.rows(), out.cols() * factor.cols());
        for (Eigen::Index r = 0; r < out.rows(); ++r)
            for (Eigen::Index c = 0; c < out.cols(); ++c)
                next.block(r * factor.rows(), c * factor.cols(), factor.rows(), factor.cols()) =
                    out(r, c) * factor;
        out = std::move(next);
    }
    return out;
}

Eigen::SparseMatrix<double> embed_sparse(const Eigen::MatrixXd& op, std::size_t slot,
                                         const std::vector<Eigen::Index>& dims) {
    if (slot >= dims.size()) throw std::invalid_argument("embed_sparse: slot out of range");
    if (op.rows() != dims[slot] || op.cols() != dims[slot])
        throw std::invalid_argument("embed_sparse: operator dimension does not match dims[slot]");

    Eigen::Index total = 1, before = 1, after = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        total *= dims[k];
        if (k < slot) before *= dims[k];
        if (k > slot) after *= dims[k];
    }
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index r = 0; r < op.rows(); ++r)
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
            if (op(r, c) == 0.0) continue;
            for (Eigen::Index b = 0; b < before; ++b)
                for (Eigen::Index a = 0; a < after; ++a)
                    trip.emplace_back((b * dims[slot] + r) * after + a,
                                      (b * dims[slot] + c) * after + a, op(r, c));
        }
    Eigen::SparseMatrix<double> out(total, total);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

DensityMatrix initial_state(const std::vector<Level>& levels,
                            const std::vector<int>& ensemble_sizes) {
    if (levels.size() != ensemble_sizes.size())
        throw std::invalid_argument("initial_state: one level per ensemble required");
    DensityMatrix state;
    Eigen::Index total = 1, flat = 0;
    for (std::size_t k = 0; k < ensemble_sizes.size(); ++k) {
        if (ensemble_sizes[k] < 1)
            throw std::invalid_argument("initial_state: ensemble sizes must be >= 1");
        const Eigen::Index d = ensemble_sizes[k] + 1;
        // index 0 <-> m = +j (excited), index d-1 <-> m = -j (ground)
        flat = flat * d + (levels[k] == Level::excited ? 0 : d - 1);
        total *= d;
        state.ensemble_dims.push_back(d);
    }
    state.rho = Eigen::MatrixXcd::Zero(total, total);
    state.rho(flat, flat) = 1.0;
    return state;
}

DensityMatrix initial_state(const ScenarioConfig& scenario) {
    std::vector<Level> levels;
    std::vector<int> sizes;
    for (std::size_t mu = 0; mu < scenario.ensemble_count(); ++mu) {
        levels.push_back(scenario.level(mu));
        sizes.push_back(scenario.ensemble_size(mu));
    }
    return initial_state(levels, sizes);
}

} // namespace qbsim
