#pragma once

#include "lgspin/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <variant>

namespace lgspin {

/// Thrown when a Lueders update is requested for an outcome whose
/// probability vanishes.
struct impossible_branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Density matrix with validated invariants: Hermitian, unit trace,
/// positive semidefinite (all within the structural tolerance).
class QuantumState {
public:
    explicit QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {
        if (!is_square(rho_) || rho_.rows() < 1) {
            throw std::invalid_argument("QuantumState: density matrix must be square");
        }
        if (!is_hermitian(rho_)) {
            throw std::invalid_argument("QuantumState: density matrix is not Hermitian");
        }
        const double tr = rho_.trace().real();
        if (std::abs(tr - 1.0) > tol::structural) {
            throw std::invalid_argument("QuantumState: trace is " + std::to_string(tr) +
                                        ", expected 1");
        }
        const HermitianEig eig = eig_hermitian(rho_);
        if (eig.eigenvalues.back() < -tol::structural) {
            throw std::invalid_argument("QuantumState: negative eigenvalue " +
                                        std::to_string(eig.eigenvalues.back()));
        }
    }

    Eigen::Index dim() const { return rho_.rows(); }
    const ComplexMatrix& rho() const { return rho_; }

private:
    ComplexMatrix rho_;
};

inline QuantumState maximally_mixed(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("maximally_mixed: dimension must be >= 2");
    }
    return QuantumState(identity_matrix(dim) / static_cast<double>(dim));
}

/// A +-1 outcome sharp measurement: Hermitian operator q together with the
/// projectors onto its positive and negative eigenvalue sectors. Operators
/// with a zero eigenvalue are rejected; callers that need a zero sector
/// (block constructions) must assign it to a projector explicitly.
struct DichotomicObservable {
    ComplexMatrix q;
    ComplexMatrix p_plus;
    ComplexMatrix p_minus;

    /// Build from a Hermitian operator by splitting its spectrum at zero.
    static DichotomicObservable from_hermitian(const ComplexMatrix& q_in,
                                               double tolerance = tol::structural) {
        const HermitianEig eig = eig_hermitian(q_in, tolerance);
        const Eigen::Index n = q_in.rows();
        ComplexMatrix p_plus = ComplexMatrix::Zero(n, n);
        ComplexMatrix p_minus = ComplexMatrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double w = eig.eigenvalues[static_cast<std::size_t>(k)];
            if (std::abs(w) <= tolerance) {
                throw std::invalid_argument(
                    "DichotomicObservable: operator has a zero eigenvalue; assign the "
                    "zero sector explicitly");
            }
            const ComplexVector v = eig.eigenvectors.col(k);
            (w > 0 ? p_plus : p_minus) += v * v.adjoint();
        }
        return DichotomicObservable{q_in, std::move(p_plus), std::move(p_minus)};
    }

    /// Build from explicit orthogonal projectors; q is the +-1 labelled
    /// operator p_plus - p_minus.
    static DichotomicObservable from_projectors(ComplexMatrix p_plus, ComplexMatrix p_minus) {
        DichotomicObservable obs{p_plus - p_minus, std::move(p_plus), std::move(p_minus)};
        obs.validate();
        return obs;
    }

    void validate(double tolerance = tol::structural) const {
        if (!is_projector(p_plus, tolerance) || !is_projector(p_minus, tolerance)) {
            throw std::invalid_argument("DichotomicObservable: sectors are not projectors");
        }
        if (max_abs(p_plus + p_minus - identity_matrix(p_plus.rows())) > tolerance) {
            throw std::invalid_argument("DichotomicObservable: projectors do not sum to I");
        }
        if (max_abs(p_plus * p_minus) > tolerance) {
            throw std::invalid_argument("DichotomicObservable: projectors are not orthogonal");
        }
        if (max_abs(q * p_plus - p_plus * q) > tolerance) {
            throw std::invalid_argument("DichotomicObservable: q does not commute with p_plus");
        }
    }

    const ComplexMatrix& projector(int outcome) const {
        if (outcome == +1) return p_plus;
        if (outcome == -1) return p_minus;
        throw std::invalid_argument("DichotomicObservable: outcome must be +1 or -1");
    }
};

/// Two-outcome POVM {E+, E-} obtained by adding white noise to a sharp
/// observable: E_{+-} = lambda P_{+-} + (1-lambda)/2 I.
struct UnsharpEffectPair {
    double lambda = 1.0;
    ComplexMatrix e_plus;
    ComplexMatrix e_minus;

    const ComplexMatrix& effect(int outcome) const {
        if (outcome == +1) return e_plus;
        if (outcome == -1) return e_minus;
        throw std::invalid_argument("UnsharpEffectPair: outcome must be +1 or -1");
    }
};

inline UnsharpEffectPair make_unsharp(const DichotomicObservable& obs, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0) {
        throw std::invalid_argument("make_unsharp: sharpness must lie in (0, 1]");
    }
    const ComplexMatrix noise = ((1.0 - lambda) / 2.0) * identity_matrix(obs.p_plus.rows());
    return UnsharpEffectPair{lambda, lambda * obs.p_plus + noise, lambda * obs.p_minus + noise};
}

/// Joint outcome probabilities of two sequential +-1 measurements.
/// First index is the earlier time.
struct PairStatistics {
    double p_pp = 0, p_pm = 0, p_mp = 0, p_mm = 0;

    void validate() const {
        for (double p : {p_pp, p_pm, p_mp, p_mm}) {
            if (!(p >= -tol::algebraic) || !(p <= 1.0 + tol::algebraic)) {
                throw std::invalid_argument("PairStatistics: probability out of [0,1]: " +
                                            std::to_string(p));
            }
        }
        const double sum = p_pp + p_pm + p_mp + p_mm;
        if (std::abs(sum - 1.0) > tol::structural) {
            throw std::invalid_argument("PairStatistics: probabilities sum to " +
                                        std::to_string(sum));
        }
    }

    double joint(int a, int b) const {
        if (a == +1) return b == +1 ? p_pp : p_pm;
        return b == +1 ? p_mp : p_mm;
    }

    /// Marginal probability of outcome + at the earlier (slot 0) or the
    /// later (slot 1) measurement.
    double marginal_plus(int slot) const {
        return slot == 0 ? p_pp + p_pm : p_pp + p_mp;
    }
};

/// C = p^{++} - p^{-+} - p^{+-} + p^{--}, the +-1 outcome-product mean.
inline double correlation_of(const PairStatistics& stats) {
    return stats.p_pp - stats.p_mp - stats.p_pm + stats.p_mm;
}

struct MeasuredBranch {
    QuantumState post;
    double probability = 0.0;
};

namespace detail {

inline ComplexMatrix effect_sqrt(const ComplexMatrix& effect) {
    const HermitianEig eig = eig_hermitian(effect);
    const Eigen::Index n = effect.rows();
    ComplexVector roots(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        // Clamp round-off excursions outside [0,1] before the square root.
        const double w = std::clamp(eig.eigenvalues[static_cast<std::size_t>(k)], 0.0, 1.0);
        roots(k) = std::sqrt(w);
    }
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

inline MeasuredBranch luders_update(const QuantumState& state, const ComplexMatrix& kraus,
                                    double probability) {
    if (probability <= tol::algebraic) {
        throw impossible_branch_error(
            "luders update: requested outcome has vanishing probability " +
            std::to_string(probability));
    }
    ComplexMatrix post = kraus * state.rho() * kraus.adjoint() / probability;
    // Symmetrize away round-off before revalidating.
    post = (post + post.adjoint().eval()) / 2.0;
    return MeasuredBranch{QuantumState(post), probability};
}

}  // namespace detail

/// Sharp projective update: rho -> P rho P / tr(P rho).
inline MeasuredBranch luders_sharp(const QuantumState& state, const DichotomicObservable& obs,
                                   int outcome) {
    const ComplexMatrix& p = obs.projector(outcome);
    const double prob = (p * state.rho()).trace().real();
    return detail::luders_update(state, p, prob);
}

/// Generalized update: rho -> sqrt(E) rho sqrt(E) / tr(E rho).
inline MeasuredBranch luders_unsharp(const QuantumState& state, const UnsharpEffectPair& eff,
                                     int outcome) {
    const ComplexMatrix& e = eff.effect(outcome);
    const double prob = (e * state.rho()).trace().real();
    return detail::luders_update(state, detail::effect_sqrt(e), prob);
}

using TwoOutcomeMeasurement = std::variant<DichotomicObservable, UnsharpEffectPair>;

namespace detail {

inline ComplexMatrix kraus_of(const TwoOutcomeMeasurement& m, int outcome) {
    if (const auto* obs = std::get_if<DichotomicObservable>(&m)) {
        return obs->projector(outcome);
    }
    return effect_sqrt(std::get<UnsharpEffectPair>(m).effect(outcome));
}

inline const ComplexMatrix& operator_of(const TwoOutcomeMeasurement& m, int outcome) {
    if (const auto* obs = std::get_if<DichotomicObservable>(&m)) {
        return obs->projector(outcome);
    }
    return std::get<UnsharpEffectPair>(m).effect(outcome);
}

}  // namespace detail

/// Two-time measurement statistics: evolve by u_before, measure `first`
/// (both branches, Lueders rule), evolve each branch by u_between, measure
/// `second`. Joint probabilities follow Bayes' rule p^{ab} = p^a p^{b|a};
/// they are accumulated from unnormalized branches so vanishing-probability
/// branches contribute zero instead of dividing by ~0.
inline PairStatistics sequential_pair_statistics(
    const QuantumState& state, const TwoOutcomeMeasurement& first,
    const ComplexMatrix& u_between, const TwoOutcomeMeasurement& second,
    const std::optional<ComplexMatrix>& u_before = std::nullopt) {
    const Eigen::Index n = state.dim();
    const ComplexMatrix u0 = u_before.value_or(identity_matrix(n));
    if (u0.rows() != n || u_between.rows() != n) {
        throw std::invalid_argument("sequential_pair_statistics: dimension mismatch");
    }
    if (!is_unitary(u0) || !is_unitary(u_between)) {
        throw std::invalid_argument("sequential_pair_statistics: evolution is not unitary");
    }

    const ComplexMatrix rho0 = u0 * state.rho() * u0.adjoint();
    PairStatistics stats;
    double* cells[2][2] = {{&stats.p_pp, &stats.p_pm}, {&stats.p_mp, &stats.p_mm}};
    for (int ai = 0; ai < 2; ++ai) {
        const int a = ai == 0 ? +1 : -1;
        const ComplexMatrix m_a = detail::kraus_of(first, a);
        const ComplexMatrix branch =
            u_between * (m_a * rho0 * m_a.adjoint()) * u_between.adjoint();
        for (int bi = 0; bi < 2; ++bi) {
            const int b = bi == 0 ? +1 : -1;
            const double joint = (detail::operator_of(second, b) * branch).trace().real();
            *cells[ai][bi] = std::max(joint, 0.0);
        }
    }
    stats.validate();
    return stats;
}

/// Two-time correlation of a traceless +-1 observable on a qubit in the
/// maximally mixed state, computed in the Heisenberg picture:
/// C = tr[(u1^dag q u1)(u2^dag q u2)] / 2. Equals the sequential-measurement
/// correlation on I/2 for any unitaries u1, u2.
inline double heisenberg_correlation_2d(const DichotomicObservable& obs,
                                        const ComplexMatrix& u1, const ComplexMatrix& u2) {
    if (obs.q.rows() != 2 || u1.rows() != 2 || u2.rows() != 2) {
        throw std::invalid_argument("heisenberg_correlation_2d: requires dimension 2");
    }
    const double trace_q = std::abs(obs.q.trace());
    if (trace_q > tol::structural) {
        throw std::invalid_argument("heisenberg_correlation_2d: observable is not traceless, |tr q| = " +
                                    std::to_string(trace_q));
    }
    if (!is_unitary(u1) || !is_unitary(u2)) {
        throw std::invalid_argument("heisenberg_correlation_2d: evolutions must be unitary");
    }
    const ComplexMatrix q1 = u1.adjoint() * obs.q * u1;
    const ComplexMatrix q2 = u2.adjoint() * obs.q * u2;
    return 0.5 * (q1 * q2).trace().real();
}

}  // namespace lgspin
