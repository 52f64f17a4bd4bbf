// moment_engine.hpp — Closed mean-field ODEs from symbolic operator algebra
//
// Observables are normally ordered polynomials in per-ensemble collective
// operators, canonical intra-ensemble order (J^+)^a (J^z)^b (J^-)^c with
// different ensembles commuting. The adjoint Lindblad generator is applied
// symbolically and truncated with a second-order cumulant closure:
//
//     <J_a^+ J_b^z J_c^->  ->  z_b * s_ac        <J_a^z J_b^z>  ->  z_a * z_b
//     <J_a^+ J_b^->        ->  s_ab              <J_a^z>        ->  z_a
//
// and every monomial whose raising and lowering counts differ is dropped
// (U(1) sector: first moments <J^±> vanish for initial states diagonal in
// the joint |m> basis and are deliberately not variables). The paper-level
// treatment only names a mean-field approximation; this closure is the
// standard superradiance truncation and is cross-validated against the
// exact solver. Its accuracy degrades at small spin numbers — a single
// pumped spin equilibrates to the wrong fixed point under this closure.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qbsim/channels.hpp"
#include "qbsim/scenario.hpp"

namespace qbsim {

enum class OpKind : std::uint8_t { plus = 0, z = 1, minus = 2 };

/// One collective operator factor in a product word.
struct OpAtom {
    std::size_t ensemble;
    OpKind kind;
};

/// Sum of normally ordered monomials over a fixed ensemble count.
/// A monomial is stored as per-ensemble exponent triples (a, b, c) for
/// (J^+)^a (J^z)^b (J^-)^c; no two stored monomials share a signature and
/// zero coefficients are removed.
class OperatorPolynomial {
public:
    using Signature = std::vector<std::array<int, 3>>;
    using TermMap = std::map<Signature, std::complex<double>>;

    explicit OperatorPolynomial(std::size_t n_ensembles = 0) : n_ensembles_(n_ensembles) {}

    static OperatorPolynomial identity(std::size_t n_ensembles,
                                       std::complex<double> coeff = 1.0);
    static OperatorPolynomial atom(std::size_t n_ensembles, std::size_t ensemble, OpKind kind);
    static OperatorPolynomial jz(std::size_t n_ensembles, std::size_t ensemble) {
        return atom(n_ensembles, ensemble, OpKind::z);
    }
    static OperatorPolynomial jplus(std::size_t n_ensembles, std::size_t ensemble) {
        return atom(n_ensembles, ensemble, OpKind::plus);
    }
    static OperatorPolynomial jminus(std::size_t n_ensembles, std::size_t ensemble) {
        return atom(n_ensembles, ensemble, OpKind::minus);
    }

    std::size_t n_ensembles() const { return n_ensembles_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;

    OperatorPolynomial& operator+=(const OperatorPolynomial& other);
    OperatorPolynomial& operator-=(const OperatorPolynomial& other);
    OperatorPolynomial& operator*=(std::complex<double> factor);
    friend OperatorPolynomial operator*(const OperatorPolynomial& a,
                                        const OperatorPolynomial& b);

    /// Hermitian adjoint (reverses each monomial and swaps J^+ <-> J^-),
    /// renormal-ordered.
    OperatorPolynomial adjoint() const;

    void add_term(const Signature& signature, std::complex<double> coeff);

private:
    std::size_t n_ensembles_;
    TermMap terms_;
};

/// Rewrites an arbitrary product word into canonical normally ordered form
/// using J^-J^+ -> J^+J^- - 2J^z, J^zJ^+ -> J^+J^z + J^+,
/// J^-J^z -> J^zJ^- + J^- (atoms of different ensembles commute).
OperatorPolynomial normal_order(std::span<const OpAtom> word, std::size_t n_ensembles,
                                std::complex<double> coeff = 1.0);

/// Canonical form is the only stored form, so this is the identity;
/// provided for symmetry with the word overload.
OperatorPolynomial normal_order(const OperatorPolynomial& poly);

/// Heisenberg-picture Lindblad action sum_ch rate * (2 L^dag A L
/// - L^dag L A - A L^dag L), normal ordered. Degree <= 3 for degree-<=2
/// observables.
OperatorPolynomial adjoint_rhs(const OperatorPolynomial& observable,
                               std::span<const LindbladChannel> channels);

// ---------------------------------------------------------------------------
// moment expressions over the closed variable set

/// Variable reference: z_i or s_{i,j} = <J_i^+ J_j^-> (any ordered pair;
/// evaluation resolves s_{i,j} with i > j as conj(s_{j,i})).
struct MomentVar {
    enum class Kind : std::uint8_t { z = 0, s = 1 };
    Kind kind;
    std::uint16_t i = 0;
    std::uint16_t j = 0;

    static MomentVar make_z(std::size_t i);
    static MomentVar make_s(std::size_t i, std::size_t j);
    auto operator<=>(const MomentVar&) const = default;
};

/// Polynomial over moment variables (commuting symbols).
class MomentExpression {
public:
    using Monomial = std::vector<MomentVar>;   // sorted
    using TermMap = std::map<Monomial, std::complex<double>>;

    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    void add_term(Monomial monomial, std::complex<double> coeff);
    MomentExpression& operator+=(const MomentExpression& other);
    MomentExpression& operator-=(const MomentExpression& other);

    bool same_terms(const MomentExpression& other, double tol = 1e-12) const;
    std::string to_string(const std::vector<std::string>& ensemble_names) const;

private:
    TermMap terms_;
};

/// Second-order cumulant closure of a normally ordered polynomial.
/// Throws ClosureError for monomials outside the closure's reach
/// (degree > 3 or more than one raising/lowering pair).
MomentExpression cumulant_close(const OperatorPolynomial& poly);

// ---------------------------------------------------------------------------
// closed ODE system

/// Mean-field variable vector layout: [z_mu (real)] ++ [Re s_{mu<=nu}]
/// ++ [Im s_{mu<=nu}], pairs in lexicographic order.
struct MomentState {
    std::size_t n_ensembles = 0;
    std::vector<double> packed;

    static std::size_t pair_count(std::size_t n) { return n * (n + 1) / 2; }
    static std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t n);
    std::size_t size() const { return n_ensembles + 2 * pair_count(n_ensembles); }

    double z(std::size_t mu) const { return packed[mu]; }
    std::complex<double> s(std::size_t i, std::size_t j) const;
    void set_z(std::size_t mu, double value) { packed[mu] = value; }
    void set_s(std::size_t i, std::size_t j, std::complex<double> value);
};

/// Flat arithmetic tape: one fused multiply-accumulate list per output
/// variable, compiled once per scenario (the RHS is evaluated millions of
/// times by the integrator).
class MomentTape {
public:
    struct Factor {
        bool is_z;
        std::size_t slot;   // z index or pair slot
        bool conjugate;     // s_{i,j} with i > j fetched as conj
    };
    struct Term {
        std::size_t output;                 // packed output slot (z or Re-s slot)
        bool output_is_z;
        std::complex<double> coeff;
        std::vector<Factor> factors;
    };

    void eval(const double* y, double* dy, std::size_t n_ensembles) const;
    std::vector<Term>& terms() { return terms_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

/// Closed ODE set over {z_mu} ∪ {s_{mu nu}}, RHS in raw rate units
/// (unscaled time); the dynamics layer rescales to superradiant time.
struct MomentSystem {
    std::size_t n_ensembles = 0;
    int closure_order = 2;
    std::vector<MomentExpression> z_rhs;                  // per ensemble
    std::vector<MomentExpression> s_rhs;                  // per pair, mu <= nu lexicographic
    std::vector<std::string> ensemble_names;              // C, B1, B2, ...

    const MomentExpression& rhs_z(std::size_t mu) const { return z_rhs[mu]; }
    const MomentExpression& rhs_s(std::size_t i, std::size_t j) const {
        return s_rhs[MomentState::pair_slot(i, j, n_ensembles)];
    }

    MomentTape compile() const;

    /// Debug dump, one equation per line with canonical variable names
    /// (z_C, z_B1, ..., s_C_B1, ...).
    std::string to_text() const;
};

/// Derives the closed system for arbitrary collective-J^± channels.
MomentSystem generate_moment_system(std::size_t n_ensembles,
                                    std::span<const LindbladChannel> channels);
MomentSystem generate_moment_system(const ScenarioConfig& scenario);

/// Product-state moments: z_mu = ±N_mu/2; s_{mu mu} = N_mu when excited
/// (<J^+J^-> on |j, j> equals 2j), 0 when ground; off-diagonal s = 0.
MomentState initial_moments(const ScenarioConfig& scenario);

} // namespace qbsim
