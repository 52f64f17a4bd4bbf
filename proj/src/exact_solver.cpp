#include "qbsim/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <utility>

#include <Eigen/Sparse>

#include "qbsim/errors.hpp"
#include "qbsim/ode.hpp"
#include "qbsim/spin_algebra.hpp"

namespace qbsim {
namespace {

using SparseReal = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseComplex = Eigen::SparseMatrix<std::complex<double>>;

// ---------------------------------------------------------------------------
// joint basis bookkeeping

struct JointBasis {
    std::vector<Eigen::Index> dims;
    std::vector<Eigen::Index> strides;
    std::vector<int> sizes;            // N_mu = dims[mu] - 1
    Eigen::Index dim = 1;
    std::vector<int> twice_totm;       // per basis state, sum of 2*m over ensembles

    Eigen::Index level_index(Eigen::Index v, std::size_t mu) const {
        return (v / strides[mu]) % dims[mu];
    }
    double m_value(Eigen::Index v, std::size_t mu) const {
        return 0.5 * sizes[mu] - static_cast<double>(level_index(v, mu));
    }
};

JointBasis make_basis(const std::vector<Eigen::Index>& dims) {
    JointBasis basis;
    basis.dims = dims;
    basis.strides.assign(dims.size(), 1);
    basis.sizes.assign(dims.size(), 0);
    for (std::size_t k = dims.size(); k-- > 0;) {
        basis.sizes[k] = static_cast<int>(dims[k]) - 1;
        if (k + 1 < dims.size()) basis.strides[k] = basis.strides[k + 1] * dims[k + 1];
        basis.dim *= dims[k];
    }
    basis.twice_totm.resize(basis.dim);
    for (Eigen::Index v = 0; v < basis.dim; ++v) {
        int t = 0;
        for (std::size_t mu = 0; mu < dims.size(); ++mu)
            t += basis.sizes[mu] - 2 * static_cast<int>(basis.level_index(v, mu));
        basis.twice_totm[v] = t;
    }
    return basis;
}

// J^- amplitude for index i -> i+1 (m -> m-1); J^+ for i -> i-1 (m -> m+1)
double amp_lowering(int n_spins, Eigen::Index i) {
    const double j = 0.5 * n_spins;
    const double m = j - static_cast<double>(i);
    return std::sqrt(j * (j + 1.0) - m * (m - 1.0));
}
double amp_raising(int n_spins, Eigen::Index i) {
    const double j = 0.5 * n_spins;
    const double m = j - static_cast<double>(i);
    return std::sqrt(j * (j + 1.0) - m * (m + 1.0));
}

using Targets = std::vector<std::pair<Eigen::Index, double>>;

// O|v> for a jump operator given as weighted ladder terms
void apply_jump(const JointBasis& basis, Eigen::Index v,
                const std::vector<JumpTerm>& jump, Targets& out) {
    out.clear();
    for (const JumpTerm& term : jump) {
        const Eigen::Index i = basis.level_index(v, term.ensemble);
        const int n = basis.sizes[term.ensemble];
        if (term.kind == Ladder::lowering) {
            if (i < n)
                out.emplace_back(v + basis.strides[term.ensemble],
                                 term.weight * amp_lowering(n, i));
        } else {
            if (i > 0)
                out.emplace_back(v - basis.strides[term.ensemble],
                                 term.weight * amp_raising(n, i));
        }
    }
}

std::vector<JumpTerm> adjoint_jump(const std::vector<JumpTerm>& jump) {
    std::vector<JumpTerm> adj = jump;
    for (JumpTerm& t : adj)
        t.kind = (t.kind == Ladder::lowering) ? Ladder::raising : Ladder::lowering;
    return adj;
}

// ---------------------------------------------------------------------------
// magnetization-difference sectors
//
// Pairs (v, w) label superoperator coordinates rho_{vw}; the generator of a
// homogeneous channel list conserves q = totm(v) - totm(w). Only sectors
// with q >= 0 are stored; q < 0 follows from Hermiticity.

struct SectorSpace {
    struct Block {
        int twice_t;                 // ket bucket label
        Eigen::Index offset;         // within the flat layout
        Eigen::Index ket_count;
        Eigen::Index bra_count;
    };
    struct Sector {
        int q;                       // twice the magnetization difference, >= 0
        std::vector<Block> blocks;
    };

    std::vector<std::vector<Eigen::Index>> buckets;  // by shifted twice_t
    int t_min = 0;
    std::vector<Eigen::Index> pos_in_bucket;         // per basis state
    std::vector<Sector> sectors;
    Eigen::Index total_size = 0;

    // per sector: block offset indexed by shifted ket t (-1 = absent)
    std::vector<std::vector<Eigen::Index>> block_offset;
    std::vector<std::vector<Eigen::Index>> bra_counts;
    std::map<int, std::size_t> sector_by_q;

    bool has_sector(int q) const { return sector_by_q.count(q) != 0; }

    Eigen::Index pair_index(const JointBasis& basis, Eigen::Index v, Eigen::Index w) const {
        const int q = basis.twice_totm[v] - basis.twice_totm[w];
        const auto it = sector_by_q.find(q);
        const std::size_t s = it->second;
        const int tv = basis.twice_totm[v] - t_min;
        return block_offset[s][tv] +
               pos_in_bucket[v] * bra_counts[s][tv] + pos_in_bucket[w];
    }
};

SectorSpace make_sectors(const JointBasis& basis, const std::vector<int>& qs) {
    SectorSpace space;
    int t_min = basis.twice_totm[0], t_max = basis.twice_totm[0];
    for (int t : basis.twice_totm) {
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
    }
    space.t_min = t_min;
    space.buckets.assign(t_max - t_min + 1, {});
    space.pos_in_bucket.resize(basis.dim);
    for (Eigen::Index v = 0; v < basis.dim; ++v) {
        auto& bucket = space.buckets[basis.twice_totm[v] - t_min];
        space.pos_in_bucket[v] = static_cast<Eigen::Index>(bucket.size());
        bucket.push_back(v);
    }

    for (int q : qs) {
        SectorSpace::Sector sector;
        sector.q = q;
        std::vector<Eigen::Index> offsets(space.buckets.size(), -1);
        std::vector<Eigen::Index> bra(space.buckets.size(), 0);
        for (std::size_t ti = 0; ti < space.buckets.size(); ++ti) {
            const int t_ket = static_cast<int>(ti) + t_min;
            const int t_bra = t_ket - q;
            if (t_bra < t_min || t_bra > t_max) continue;
            const auto& kets = space.buckets[ti];
            const auto& bras = space.buckets[t_bra - t_min];
            if (kets.empty() || bras.empty()) continue;
            offsets[ti] = space.total_size;
            bra[ti] = static_cast<Eigen::Index>(bras.size());
            sector.blocks.push_back({t_ket, space.total_size,
                                     static_cast<Eigen::Index>(kets.size()),
                                     static_cast<Eigen::Index>(bras.size())});
            space.total_size += static_cast<Eigen::Index>(kets.size() * bras.size());
        }
        space.sector_by_q[q] = space.sectors.size();
        space.sectors.push_back(std::move(sector));
        space.block_offset.push_back(std::move(offsets));
        space.bra_counts.push_back(std::move(bra));
    }
    return space;
}

// generator restricted to the sector union, already divided by time_scale
SparseReal build_sector_generator(const JointBasis& basis, const SectorSpace& space,
                                  std::span<const LindbladChannel> channels,
                                  double time_scale) {
    std::vector<Eigen::Triplet<double>> trip;

    // K = O^dag O action per channel, cached per basis state
    struct ChannelAction {
        double rate;
        std::vector<Targets> jump;   // O|v>
        std::vector<Targets> kact;   // O^dag O |v>
    };
    std::vector<ChannelAction> actions;
    Targets tmp;
    for (const LindbladChannel& ch : channels) {
        ChannelAction act;
        act.rate = ch.rate;
        act.jump.resize(basis.dim);
        act.kact.resize(basis.dim);
        const auto adj = adjoint_jump(ch.jump);
        for (Eigen::Index v = 0; v < basis.dim; ++v) {
            apply_jump(basis, v, ch.jump, act.jump[v]);
            std::map<Eigen::Index, double> acc;
            for (const auto& [v1, a1] : act.jump[v]) {
                apply_jump(basis, v1, adj, tmp);
                for (const auto& [v2, a2] : tmp) acc[v2] += a1 * a2;
            }
            act.kact[v].assign(acc.begin(), acc.end());
        }
        actions.push_back(std::move(act));
    }

    for (const auto& sector : space.sectors) {
        for (const auto& block : sector.blocks) {
            const auto& kets = space.buckets[block.twice_t - space.t_min];
            const auto& bras = space.buckets[block.twice_t - sector.q - space.t_min];
            for (Eigen::Index a = 0; a < block.ket_count; ++a) {
                for (Eigen::Index b = 0; b < block.bra_count; ++b) {
                    const Eigen::Index v = kets[a];
                    const Eigen::Index w = bras[b];
                    const Eigen::Index col = block.offset + a * block.bra_count + b;
                    for (const auto& act : actions) {
                        for (const auto& [v1, a1] : act.jump[v])
                            for (const auto& [w1, b1] : act.jump[w])
                                trip.emplace_back(space.pair_index(basis, v1, w1), col,
                                                  2.0 * act.rate * a1 * b1 / time_scale);
                        for (const auto& [v2, k] : act.kact[v])
                            trip.emplace_back(space.pair_index(basis, v2, w), col,
                                              -act.rate * k / time_scale);
                        for (const auto& [w2, k] : act.kact[w])
                            trip.emplace_back(space.pair_index(basis, v, w2), col,
                                              -act.rate * k / time_scale);
                    }
                }
            }
        }
    }

    SparseReal gen(space.total_size, space.total_size);
    gen.setFromTriplets(trip.begin(), trip.end());
    return gen;
}

// ---------------------------------------------------------------------------
// evolution drivers

bool all_homogeneous(std::span<const LindbladChannel> channels) {
    return std::all_of(channels.begin(), channels.end(),
                       [](const LindbladChannel& c) { return is_homogeneous(c); });
}

void check_grid(std::span<const double> grid) {
    if (grid.empty() || grid.front() != 0.0)
        throw std::invalid_argument("tau_grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1]))
            throw std::invalid_argument("tau_grid must be strictly increasing");
}

void check_channels(std::span<const LindbladChannel> channels, std::size_t n_ensembles) {
    for (const LindbladChannel& ch : channels) {
        if (ch.rate < 0.0)
            throw std::invalid_argument("LindbladChannel: rate must be nonnegative");
        for (const JumpTerm& term : ch.jump)
            if (term.ensemble >= n_ensembles)
                throw std::invalid_argument(
                    "LindbladChannel: jump term references ensemble " +
                    std::to_string(term.ensemble) + " of " + std::to_string(n_ensembles));
    }
}

struct SectorRun {
    JointBasis basis;
    SectorSpace space;
    SparseReal gen;
    bool complex_mode = false;
    OdeState y0;                      // [re | im] or just [re]
    std::vector<Eigen::Index> diag;   // flat index of (v, v) pairs
};

SectorRun prepare_sector_run(const DensityMatrix& rho0,
                             std::span<const LindbladChannel> channels,
                             double time_scale) {
    SectorRun run;
    run.basis = make_basis(rho0.ensemble_dims);

    // sectors occupied by rho0; Hermiticity covers q < 0
    std::vector<int> qs;
    double max_imag = 0.0;
    for (Eigen::Index v = 0; v < run.basis.dim; ++v)
        for (Eigen::Index w = 0; w < run.basis.dim; ++w) {
            if (rho0.rho(v, w) == std::complex<double>(0.0, 0.0)) continue;
            max_imag = std::max(max_imag, std::abs(rho0.rho(v, w).imag()));
            const int q = run.basis.twice_totm[v] - run.basis.twice_totm[w];
            if (q >= 0 && std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
        }
    if (qs.empty()) qs.push_back(0);
    if (std::find(qs.begin(), qs.end(), 0) == qs.end()) qs.push_back(0);
    std::sort(qs.begin(), qs.end());

    run.space = make_sectors(run.basis, qs);
    run.gen = build_sector_generator(run.basis, run.space, channels, time_scale);

    // the generator is real, so re/im halves evolve independently
    run.complex_mode = max_imag > 0.0;
    const Eigen::Index n = run.space.total_size;
    run.y0.assign(run.complex_mode ? 2 * n : n, 0.0);
    for (const auto& sector : run.space.sectors)
        for (const auto& block : sector.blocks) {
            const auto& kets = run.space.buckets[block.twice_t - run.space.t_min];
            const auto& bras = run.space.buckets[block.twice_t - sector.q - run.space.t_min];
            for (Eigen::Index a = 0; a < block.ket_count; ++a)
                for (Eigen::Index b = 0; b < block.bra_count; ++b) {
                    const std::complex<double> c = rho0.rho(kets[a], bras[b]);
                    const Eigen::Index p = block.offset + a * block.bra_count + b;
                    run.y0[p] = c.real();
                    if (run.complex_mode) run.y0[n + p] = c.imag();
                }
        }

    run.diag.resize(run.basis.dim);
    for (Eigen::Index v = 0; v < run.basis.dim; ++v)
        run.diag[v] = run.space.pair_index(run.basis, v, v);
    return run;
}

DensityMatrix reconstruct_state(const SectorRun& run, const OdeState& y,
                                const std::vector<Eigen::Index>& ensemble_dims) {
    DensityMatrix state;
    state.ensemble_dims = ensemble_dims;
    state.rho = Eigen::MatrixXcd::Zero(run.basis.dim, run.basis.dim);
    const Eigen::Index n = run.space.total_size;
    for (const auto& sector : run.space.sectors)
        for (const auto& block : sector.blocks) {
            const auto& kets = run.space.buckets[block.twice_t - run.space.t_min];
            const auto& bras = run.space.buckets[block.twice_t - sector.q - run.space.t_min];
            for (Eigen::Index a = 0; a < block.ket_count; ++a)
                for (Eigen::Index b = 0; b < block.bra_count; ++b) {
                    const Eigen::Index p = block.offset + a * block.bra_count + b;
                    const std::complex<double> c(y[p], run.complex_mode ? y[n + p] : 0.0);
                    state.rho(kets[a], bras[b]) = c;
                    if (sector.q != 0) state.rho(bras[b], kets[a]) = std::conj(c);
                }
        }
    return state;
}

// per accepted step: trace conservation and a cheap positivity canary
// (negative population is a sufficient witness of positivity loss)
void sector_step_checks(const SectorRun& run, double tau, const OdeState& y) {
    double trace = 0.0, min_pop = 0.0;
    for (Eigen::Index p : run.diag) {
        trace += y[p];
        min_pop = std::min(min_pop, y[p]);
    }
    if (std::abs(trace - 1.0) > 1e-8)
        throw DiagnosticFailure("trace drifted by " + std::to_string(trace - 1.0) +
                                " at tau=" + std::to_string(tau));
    if (min_pop < -1e-6)
        throw IntegrationFailure("positivity violated beyond -1e-6 (population " +
                                 std::to_string(min_pop) + ")", tau);
}

void run_sector_evolution(const SectorRun& run, std::span<const double> tau_grid,
                          const EvolveOptions& options,
                          const std::function<void(double, const OdeState&)>& on_grid) {
    const Eigen::Index n = run.space.total_size;
    auto rhs = [&run, n](const OdeState& y, OdeState& dy, double /*tau*/) {
        Eigen::Map<const Eigen::VectorXd> yr(y.data(), n);
        Eigen::Map<Eigen::VectorXd> dr(dy.data(), n);
        dr = run.gen * yr;
        if (run.complex_mode) {
            Eigen::Map<const Eigen::VectorXd> yi(y.data() + n, n);
            Eigen::Map<Eigen::VectorXd> di(dy.data() + n, n);
            di = run.gen * yi;
        }
    };
    OdeOptions ode_options;
    ode_options.rtol = options.rtol;
    ode_options.atol = options.atol;
    integrate_grid(rhs, run.y0, tau_grid, ode_options, on_grid,
                   [&run](double tau, const OdeState& y) { sector_step_checks(run, tau, y); });
}

// dense fallback for channels that mix raising and lowering in one jump

struct DenseOps {
    SparseComplex op;
    SparseComplex op_adj;
    SparseComplex kmat;   // O^dag O
    double rate;
};

std::vector<DenseOps> build_dense_ops(const std::vector<Eigen::Index>& dims,
                                      std::span<const LindbladChannel> channels) {
    std::vector<DenseOps> ops;
    std::vector<SpinRepresentation> reps;
    for (Eigen::Index d : dims) reps.push_back(SpinRepresentation::make(static_cast<int>(d) - 1));
    for (const LindbladChannel& ch : channels) {
        Eigen::Index total = 1;
        for (Eigen::Index d : dims) total *= d;
        SparseReal acc(total, total);
        for (const JumpTerm& term : ch.jump) {
            const Eigen::MatrixXd& block =
                term.kind == Ladder::lowering ? reps[term.ensemble].jminus
                                              : reps[term.ensemble].jplus;
            acc = acc + SparseReal(term.weight * embed_sparse(block, term.ensemble, dims));
        }
        DenseOps entry;
        entry.op = acc.cast<std::complex<double>>();
        entry.op_adj = entry.op.adjoint();
        entry.kmat = entry.op_adj * entry.op;
        entry.rate = ch.rate;
        ops.push_back(std::move(entry));
    }
    return ops;
}

void run_dense_evolution(const DensityMatrix& rho0, std::span<const LindbladChannel> channels,
                         std::span<const double> tau_grid, const EvolveOptions& options,
                         const std::function<void(double, const Eigen::MatrixXcd&)>& on_grid) {
    const Eigen::Index d = rho0.dim();
    const auto ops = build_dense_ops(rho0.ensemble_dims, channels);
    const double scale = options.time_scale;

    OdeState y0(2 * d * d);
    Eigen::Map<Eigen::MatrixXcd>(reinterpret_cast<std::complex<double>*>(y0.data()), d, d) =
        rho0.rho;

    auto rhs = [&ops, d, scale](const OdeState& y, OdeState& dy, double /*tau*/) {
        Eigen::Map<const Eigen::MatrixXcd> rho(
            reinterpret_cast<const std::complex<double>*>(y.data()), d, d);
        Eigen::Map<Eigen::MatrixXcd> out(reinterpret_cast<std::complex<double>*>(dy.data()), d,
                                         d);
        out.setZero();
        for (const auto& ch : ops) {
            const Eigen::MatrixXcd t = ch.op * rho;
            out.noalias() += (2.0 * ch.rate / scale) * (t * ch.op_adj);
            out.noalias() -= (ch.rate / scale) * (ch.kmat * rho);
            out.noalias() -= (ch.rate / scale) * (rho * ch.kmat);
        }
    };
    auto step_check = [d](double tau, const OdeState& y) {
        Eigen::Map<const Eigen::MatrixXcd> rho(
            reinterpret_cast<const std::complex<double>*>(y.data()), d, d);
        const double trace = rho.trace().real();
        if (std::abs(trace - 1.0) > 1e-8)
            throw DiagnosticFailure("trace drifted by " + std::to_string(trace - 1.0) +
                                    " at tau=" + std::to_string(tau));
        if (rho.diagonal().real().minCoeff() < -1e-6)
            throw IntegrationFailure("positivity violated beyond -1e-6", tau);
    };

    OdeOptions ode_options;
    ode_options.rtol = options.rtol;
    ode_options.atol = options.atol;
    integrate_grid(rhs, y0, tau_grid, ode_options,
                   [&on_grid, d](double tau, const OdeState& y) {
                       Eigen::Map<const Eigen::MatrixXcd> rho(
                           reinterpret_cast<const std::complex<double>*>(y.data()), d, d);
                       on_grid(tau, rho);
                   },
                   step_check);
}

void guard_dimension(const DensityMatrix& rho) {
    if (rho.dim() > kExactDimensionGuard)
        throw CapacityError("joint dimension " + std::to_string(rho.dim()) +
                            " exceeds the exact-solver guard (" +
                            std::to_string(kExactDimensionGuard) +
                            "); use the mean-field solver for this size");
}

std::vector<double> jz_from_diagonal(const JointBasis& basis,
                                     const std::function<double(Eigen::Index)>& population) {
    std::vector<double> jz(basis.dims.size(), 0.0);
    for (Eigen::Index v = 0; v < basis.dim; ++v) {
        const double p = population(v);
        if (p == 0.0) continue;
        for (std::size_t mu = 0; mu < basis.dims.size(); ++mu)
            jz[mu] += p * basis.m_value(v, mu);
    }
    return jz;
}

} // namespace

// ---------------------------------------------------------------------------

Eigen::MatrixXcd apply_generator(const DensityMatrix& rho,
                                 std::span<const LindbladChannel> channels) {
    check_channels(channels, rho.ensemble_dims.size());
    const auto ops = build_dense_ops(rho.ensemble_dims, channels);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
    for (const auto& ch : ops) {
        const Eigen::MatrixXcd t = ch.op * rho.rho;
        out.noalias() += (2.0 * ch.rate) * (t * ch.op_adj);
        out.noalias() -= ch.rate * (ch.kmat * rho.rho);
        out.noalias() -= ch.rate * (rho.rho * ch.kmat);
    }
    return out;
}

std::vector<DensityMatrix> evolve_exact(const DensityMatrix& rho0,
                                        std::span<const LindbladChannel> channels,
                                        std::span<const double> tau_grid,
                                        const EvolveOptions& options) {
    guard_dimension(rho0);
    check_grid(tau_grid);
    check_channels(channels, rho0.ensemble_dims.size());
    rho0.validate(rho0.dim() <= 256);

    std::vector<DensityMatrix> states;
    states.reserve(tau_grid.size());

    if (!options.force_dense && all_homogeneous(channels)) {
        const SectorRun run = prepare_sector_run(rho0, channels, options.time_scale);
        run_sector_evolution(run, tau_grid, options,
                             [&](double, const OdeState& y) {
                                 states.push_back(
                                     reconstruct_state(run, y, rho0.ensemble_dims));
                             });
    } else {
        run_dense_evolution(rho0, channels, tau_grid, options,
                            [&](double, const Eigen::MatrixXcd& rho) {
                                states.push_back(DensityMatrix{rho, rho0.ensemble_dims});
                            });
    }
    for (const DensityMatrix& state : states) state.validate(state.dim() <= 256);
    return states;
}

std::vector<std::vector<double>> evolve_jz(const DensityMatrix& rho0,
                                           std::span<const LindbladChannel> channels,
                                           std::span<const double> tau_grid,
                                           const EvolveOptions& options) {
    guard_dimension(rho0);
    check_grid(tau_grid);
    check_channels(channels, rho0.ensemble_dims.size());
    rho0.validate(rho0.dim() <= 256);

    const std::size_t n_ens = rho0.ensemble_dims.size();
    std::vector<std::vector<double>> series(n_ens);

    if (!options.force_dense && all_homogeneous(channels)) {
        const SectorRun run = prepare_sector_run(rho0, channels, options.time_scale);
        run_sector_evolution(run, tau_grid, options, [&](double, const OdeState& y) {
            const auto jz = jz_from_diagonal(
                run.basis, [&](Eigen::Index v) { return y[run.diag[v]]; });
            for (std::size_t mu = 0; mu < n_ens; ++mu) series[mu].push_back(jz[mu]);
        });
    } else {
        const JointBasis basis = make_basis(rho0.ensemble_dims);
        run_dense_evolution(rho0, channels, tau_grid, options,
                            [&](double, const Eigen::MatrixXcd& rho) {
                                const auto jz = jz_from_diagonal(basis, [&](Eigen::Index v) {
                                    return rho(v, v).real();
                                });
                                for (std::size_t mu = 0; mu < n_ens; ++mu)
                                    series[mu].push_back(jz[mu]);
                            });
    }
    return series;
}

std::vector<double> energy_densities(const DensityMatrix& rho) {
    const JointBasis basis = make_basis(rho.ensemble_dims);
    const auto jz =
        jz_from_diagonal(basis, [&](Eigen::Index v) { return rho.rho(v, v).real(); });
    std::vector<double> energies(jz.size());
    for (std::size_t mu = 0; mu < jz.size(); ++mu)
        energies[mu] = jz[mu] / basis.sizes[mu] + 0.5;
    return energies;
}

double logarithmic_negativity(const DensityMatrix& rho,
                              std::span<const std::size_t> partition) {
    if (rho.dim() > kExactDimensionGuard)
        throw CapacityError("joint dimension too large for dense partial transpose; "
                            "use the mean-field solver for dynamics at this size");
    const JointBasis basis = make_basis(rho.ensemble_dims);
    for (std::size_t mu : partition)
        if (mu >= basis.dims.size())
            throw std::invalid_argument("logarithmic_negativity: ensemble index out of range");

    auto transposed_index = [&](Eigen::Index row, Eigen::Index col,
                                std::size_t mu) -> std::pair<Eigen::Index, Eigen::Index> {
        const Eigen::Index ri = basis.level_index(row, mu);
        const Eigen::Index ci = basis.level_index(col, mu);
        return {row + (ci - ri) * basis.strides[mu], col + (ri - ci) * basis.strides[mu]};
    };

    Eigen::MatrixXcd pt = rho.rho;
    for (std::size_t mu : partition) {
        Eigen::MatrixXcd next(pt.rows(), pt.cols());
        for (Eigen::Index r = 0; r < pt.rows(); ++r)
            for (Eigen::Index c = 0; c < pt.cols(); ++c) {
                const auto [tr, tc] = transposed_index(r, c, mu);
                next(tr, tc) = pt(r, c);
            }
        pt = std::move(next);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
    const double trace_norm = es.eigenvalues().cwiseAbs().sum();
    return std::max(0.0, std::log2(trace_norm));
}

} // namespace qbsim
