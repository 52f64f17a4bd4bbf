#include "qbsim/moment_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "qbsim/errors.hpp"

namespace qbsim {

namespace {

using Word = std::vector<OpAtom>;

// canonical order inside one ensemble: +, z, -
int rank(OpKind kind) { return static_cast<int>(kind); }

Word signature_word(const OperatorPolynomial::Signature& signature) {
    Word word;
    for (std::size_t mu = 0; mu < signature.size(); ++mu) {
        const auto& [a, b, c] = signature[mu];
        for (int k = 0; k < a; ++k) word.push_back({mu, OpKind::plus});
        for (int k = 0; k < b; ++k) word.push_back({mu, OpKind::z});
        for (int k = 0; k < c; ++k) word.push_back({mu, OpKind::minus});
    }
    return word;
}

} // namespace

OperatorPolynomial OperatorPolynomial::identity(std::size_t n_ensembles,
                                                std::complex<double> coeff) {
    OperatorPolynomial poly(n_ensembles);
    poly.add_term(Signature(n_ensembles, {0, 0, 0}), coeff);
    return poly;
}

OperatorPolynomial OperatorPolynomial::atom(std::size_t n_ensembles, std::size_t ensemble,
                                            OpKind kind) {
    if (ensemble >= n_ensembles)
        throw std::invalid_argument("OperatorPolynomial: ensemble index out of range");
    Signature signature(n_ensembles, {0, 0, 0});
    signature[ensemble][rank(kind)] = 1;
    OperatorPolynomial poly(n_ensembles);
    poly.add_term(signature, 1.0);
    return poly;
}

int OperatorPolynomial::degree() const {
    int deg = 0;
    for (const auto& [signature, coeff] : terms_) {
        int d = 0;
        for (const auto& [a, b, c] : signature) d += a + b + c;
        deg = std::max(deg, d);
    }
    return deg;
}

void OperatorPolynomial::add_term(const Signature& signature, std::complex<double> coeff) {
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(signature, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

OperatorPolynomial& OperatorPolynomial::operator+=(const OperatorPolynomial& other) {
    for (const auto& [signature, coeff] : other.terms_) add_term(signature, coeff);
    return *this;
}

OperatorPolynomial& OperatorPolynomial::operator-=(const OperatorPolynomial& other) {
    for (const auto& [signature, coeff] : other.terms_) add_term(signature, -coeff);
    return *this;
}

OperatorPolynomial& OperatorPolynomial::operator*=(std::complex<double> factor) {
    if (factor == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [signature, coeff] : terms_) coeff *= factor;
    return *this;
}

OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    if (a.n_ensembles() != b.n_ensembles())
        throw std::invalid_argument("OperatorPolynomial: ensemble count mismatch");
    OperatorPolynomial out(a.n_ensembles());
    for (const auto& [sig_a, coeff_a] : a.terms())
        for (const auto& [sig_b, coeff_b] : b.terms()) {
            Word word = signature_word(sig_a);
            const Word tail = signature_word(sig_b);
            word.insert(word.end(), tail.begin(), tail.end());
            out += normal_order(word, a.n_ensembles(), coeff_a * coeff_b);
        }
    return out;
}

OperatorPolynomial OperatorPolynomial::adjoint() const {
    OperatorPolynomial out(n_ensembles_);
    for (const auto& [signature, coeff] : terms_) {
        Word word = signature_word(signature);
        std::reverse(word.begin(), word.end());
        for (OpAtom& atom : word) {
            if (atom.kind == OpKind::plus) atom.kind = OpKind::minus;
            else if (atom.kind == OpKind::minus) atom.kind = OpKind::plus;
        }
        out += normal_order(word, n_ensembles_, std::conj(coeff));
    }
    return out;
}

OperatorPolynomial normal_order(std::span<const OpAtom> word, std::size_t n_ensembles,
                                std::complex<double> coeff) {
    OperatorPolynomial out(n_ensembles);
    if (coeff == 0.0) return out;

    std::vector<std::pair<std::complex<double>, Word>> stack;
    stack.emplace_back(coeff, Word(word.begin(), word.end()));

    while (!stack.empty()) {
        auto [c, w] = std::move(stack.back());
        stack.pop_back();

        // atoms of different ensembles commute freely: stable sort by
        // ensemble keeps the intra-ensemble order intact
        std::stable_sort(w.begin(), w.end(),
                         [](const OpAtom& x, const OpAtom& y) { return x.ensemble < y.ensemble; });

        // first intra-ensemble violation of the +, z, - order
        bool rewritten = false;
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
            const OpAtom left = w[k];
            const OpAtom right = w[k + 1];
            if (left.ensemble != right.ensemble || rank(left.kind) <= rank(right.kind)) continue;

            Word swapped = w;
            std::swap(swapped[k], swapped[k + 1]);

            if (left.kind == OpKind::minus && right.kind == OpKind::plus) {
                // J^- J^+ = J^+ J^- - 2 J^z
                Word reduced = w;
                reduced.erase(reduced.begin() + k, reduced.begin() + k + 2);
                reduced.insert(reduced.begin() + k, OpAtom{left.ensemble, OpKind::z});
                stack.emplace_back(c, std::move(swapped));
                stack.emplace_back(-2.0 * c, std::move(reduced));
            } else if (left.kind == OpKind::z && right.kind == OpKind::plus) {
                // J^z J^+ = J^+ J^z + J^+
                Word reduced = w;
                reduced.erase(reduced.begin() + k);
                stack.emplace_back(c, std::move(swapped));
                stack.emplace_back(c, std::move(reduced));
            } else {
                // J^- J^z = J^z J^- + J^-
                Word reduced = w;
                reduced.erase(reduced.begin() + k + 1);
                stack.emplace_back(c, std::move(swapped));
                stack.emplace_back(c, std::move(reduced));
            }
            rewritten = true;
            break;
        }
        if (rewritten) continue;

        OperatorPolynomial::Signature signature(n_ensembles, {0, 0, 0});
        for (const OpAtom& atom : w) ++signature[atom.ensemble][rank(atom.kind)];
        out.add_term(signature, c);
    }
    return out;
}

OperatorPolynomial normal_order(const OperatorPolynomial& poly) { return poly; }

OperatorPolynomial adjoint_rhs(const OperatorPolynomial& observable,
                               std::span<const LindbladChannel> channels) {
    const std::size_t n = observable.n_ensembles();
    OperatorPolynomial out(n);
    for (const LindbladChannel& channel : channels) {
        OperatorPolynomial jump(n);
        for (const JumpTerm& term : channel.jump) {
            OperatorPolynomial atom = OperatorPolynomial::atom(
                n, term.ensemble,
                term.kind == Ladder::lowering ? OpKind::minus : OpKind::plus);
            atom *= term.weight;
            jump += atom;
        }
        const OperatorPolynomial jump_adj = jump.adjoint();
        OperatorPolynomial term = (jump_adj * observable) * jump;
        term *= 2.0;
        const OperatorPolynomial ldag_l = jump_adj * jump;
        term -= ldag_l * observable;
        term -= observable * ldag_l;
        term *= channel.rate;
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// moment expressions

MomentVar MomentVar::make_z(std::size_t i) {
    return {Kind::z, static_cast<std::uint16_t>(i), 0};
}
MomentVar MomentVar::make_s(std::size_t i, std::size_t j) {
    return {Kind::s, static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)};
}

void MomentExpression::add_term(Monomial monomial, std::complex<double> coeff) {
    if (coeff == 0.0) return;
    std::sort(monomial.begin(), monomial.end());
    auto [it, inserted] = terms_.emplace(std::move(monomial), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

MomentExpression& MomentExpression::operator+=(const MomentExpression& other) {
    for (const auto& [monomial, coeff] : other.terms_) add_term(monomial, coeff);
    return *this;
}

MomentExpression& MomentExpression::operator-=(const MomentExpression& other) {
    for (const auto& [monomial, coeff] : other.terms_) add_term(monomial, -coeff);
    return *this;
}

bool MomentExpression::same_terms(const MomentExpression& other, double tol) const {
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    while (it != terms_.end() && jt != other.terms_.end()) {
        if (it->first != jt->first) return false;
        if (std::abs(it->second - jt->second) > tol) return false;
        ++it;
        ++jt;
    }
    return it == terms_.end() && jt == other.terms_.end();
}

std::string MomentExpression::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [monomial, coeff] : terms_) {
        double value = coeff.real();   // closure coefficients are real
        const bool negative = value < 0;
        if (first) {
            if (negative) out << "-";
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        value = std::abs(value);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        out << buf;
        for (const MomentVar& var : monomial) {
            out << "*";
            if (var.kind == MomentVar::Kind::z) out << "z_" << names[var.i];
            else out << "s_" << names[var.i] << "_" << names[var.j];
        }
    }
    return out.str();
}

MomentExpression cumulant_close(const OperatorPolynomial& poly) {
    MomentExpression expr;
    for (const auto& [signature, coeff] : poly.terms()) {
        int total_plus = 0, total_minus = 0, total_deg = 0;
        int plus_ensemble = -1, minus_ensemble = -1;
        for (std::size_t mu = 0; mu < signature.size(); ++mu) {
            const auto& [a, b, c] = signature[mu];
            total_plus += a;
            total_minus += c;
            total_deg += a + b + c;
            if (a > 0) plus_ensemble = static_cast<int>(mu);
            if (c > 0) minus_ensemble = static_cast<int>(mu);
        }
        if (total_plus != total_minus) continue;   // U(1) sector
        if (total_deg > 3)
            throw ClosureError("cumulant closure does not support degree " +
                               std::to_string(total_deg) + " moments");
        if (total_plus > 1)
            throw ClosureError("cumulant closure does not support multiple ladder pairs");

        MomentExpression::Monomial monomial;
        if (total_plus == 1)
            monomial.push_back(MomentVar::make_s(static_cast<std::size_t>(plus_ensemble),
                                                 static_cast<std::size_t>(minus_ensemble)));
        for (std::size_t mu = 0; mu < signature.size(); ++mu)
            for (int k = 0; k < signature[mu][1]; ++k)
                monomial.push_back(MomentVar::make_z(mu));
        expr.add_term(std::move(monomial), coeff);
    }
    return expr;
}

// ---------------------------------------------------------------------------
// moment state and tape

std::size_t MomentState::pair_slot(std::size_t i, std::size_t j, std::size_t n) {
    assert(i <= j && j < n);
    // lexicographic over (i, j) with i <= j
    return i * n - i * (i + 1) / 2 + j;
}

std::complex<double> MomentState::s(std::size_t i, std::size_t j) const {
    const std::size_t P = pair_count(n_ensembles);
    if (i <= j) {
        const std::size_t p = pair_slot(i, j, n_ensembles);
        return {packed[n_ensembles + p], packed[n_ensembles + P + p]};
    }
    return std::conj(s(j, i));
}

void MomentState::set_s(std::size_t i, std::size_t j, std::complex<double> value) {
    if (i > j) {
        set_s(j, i, std::conj(value));
        return;
    }
    const std::size_t P = pair_count(n_ensembles);
    const std::size_t p = pair_slot(i, j, n_ensembles);
    packed[n_ensembles + p] = value.real();
    packed[n_ensembles + P + p] = value.imag();
}

void MomentTape::eval(const double* y, double* dy, std::size_t n) const {
    const std::size_t P = MomentState::pair_count(n);
    std::fill(dy, dy + n + 2 * P, 0.0);
    for (const Term& term : terms_) {
        std::complex<double> value = term.coeff;
        for (const Factor& f : term.factors) {
            if (f.is_z) {
                value *= y[f.slot];
            } else {
                std::complex<double> s(y[n + f.slot], y[n + P + f.slot]);
                value *= f.conjugate ? std::conj(s) : s;
            }
        }
        if (term.output_is_z) {
            dy[term.output] += value.real();   // real on the constrained set
        } else {
            dy[n + term.output] += value.real();
            dy[n + P + term.output] += value.imag();
        }
    }
}

MomentTape MomentSystem::compile() const {
    MomentTape tape;
    const std::size_t n = n_ensembles;
    auto emit = [&](const MomentExpression& expr, std::size_t output, bool output_is_z) {
        for (const auto& [monomial, coeff] : expr.terms()) {
            MomentTape::Term term;
            term.output = output;
            term.output_is_z = output_is_z;
            term.coeff = coeff;
            for (const MomentVar& var : monomial) {
                if (var.kind == MomentVar::Kind::z) {
                    term.factors.push_back({true, var.i, false});
                } else if (var.i <= var.j) {
                    term.factors.push_back({false, MomentState::pair_slot(var.i, var.j, n), false});
                } else {
                    term.factors.push_back({false, MomentState::pair_slot(var.j, var.i, n), true});
                }
            }
            tape.terms().push_back(std::move(term));
        }
    };
    for (std::size_t mu = 0; mu < n; ++mu) emit(z_rhs[mu], mu, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            emit(s_rhs[MomentState::pair_slot(i, j, n)],
                 MomentState::pair_slot(i, j, n), false);
    return tape;
}

std::string MomentSystem::to_text() const {
    std::ostringstream out;
    for (std::size_t mu = 0; mu < n_ensembles; ++mu)
        out << "d z_" << ensemble_names[mu] << " = " << z_rhs[mu].to_string(ensemble_names)
            << "\n";
    for (std::size_t i = 0; i < n_ensembles; ++i)
        for (std::size_t j = i; j < n_ensembles; ++j)
            out << "d s_" << ensemble_names[i] << "_" << ensemble_names[j] << " = "
                << s_rhs[MomentState::pair_slot(i, j, n_ensembles)].to_string(ensemble_names)
                << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------

MomentSystem generate_moment_system(std::size_t n_ensembles,
                                    std::span<const LindbladChannel> channels) {
    MomentSystem system;
    system.n_ensembles = n_ensembles;
    system.ensemble_names.push_back("C");
    for (std::size_t m = 1; m < n_ensembles; ++m)
        system.ensemble_names.push_back("B" + std::to_string(m));

    for (std::size_t mu = 0; mu < n_ensembles; ++mu) {
        const auto observable = OperatorPolynomial::jz(n_ensembles, mu);
        system.z_rhs.push_back(cumulant_close(adjoint_rhs(observable, channels)));
    }
    for (std::size_t i = 0; i < n_ensembles; ++i)
        for (std::size_t j = i; j < n_ensembles; ++j) {
            const auto observable = OperatorPolynomial::jplus(n_ensembles, i) *
                                    OperatorPolynomial::jminus(n_ensembles, j);
            system.s_rhs.push_back(cumulant_close(adjoint_rhs(observable, channels)));
        }
    return system;
}

MomentSystem generate_moment_system(const ScenarioConfig& scenario) {
    const auto channels = build_channels(scenario);
    return generate_moment_system(scenario.ensemble_count(), channels);
}

MomentState initial_moments(const ScenarioConfig& scenario) {
    MomentState state;
    state.n_ensembles = scenario.ensemble_count();
    state.packed.assign(state.size(), 0.0);
    for (std::size_t mu = 0; mu < state.n_ensembles; ++mu) {
        const double n_mu = scenario.ensemble_size(mu);
        if (scenario.level(mu) == Level::excited) {
            state.set_z(mu, 0.5 * n_mu);
            state.set_s(mu, mu, n_mu);   // <J^+J^-> on |j, j> = 2j
        } else {
            state.set_z(mu, -0.5 * n_mu);
        }
    }
    return state;
}

} // namespace qbsim
