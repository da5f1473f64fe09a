#pragma once

#include "lgspin/gisin_peres.hpp"
#include "lgspin/kofler_brukner.hpp"
#include "lgspin/macrorealism.hpp"
#include "lgspin/rng.hpp"

#include <cmath>

namespace lgspin {

/// Random weight vector over the 16 assignments (normalized exponential
/// draws, occasionally sparsified to hit polytope faces).
inline JointDistribution16 random_joint16(Rng& rng) {
    JointDistribution16 joint;
    const bool sparse = rng.uniform() < 0.25;
    double sum = 0.0;
    for (double& w : joint.weights) {
        w = sparse && rng.uniform() < 0.6 ? 0.0 : -std::log(1.0 - rng.uniform());
        sum += w;
    }
    if (sum == 0.0) {
        joint.weights[static_cast<std::size_t>(rng.uniform_int(0, 15))] = 1.0;
        sum = 1.0;
    }
    for (double& w : joint.weights) w /= sum;
    return joint;
}

/// Classical record: marginals of a random four-time joint distribution.
/// Satisfies NSIT exactly and every macrorealist criterion by construction.
inline ExperimentRecord random_classical_record(Rng& rng) {
    return record_from_joint(random_joint16(rng));
}

/// Unbiased-marginal record with independent random correlations; NSIT
/// holds by construction but the LG family may be violated.
inline ExperimentRecord random_correlation_record(Rng& rng) {
    return record_from_correlations(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                                    rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
}

/// NSIT-consistent corpus element: alternates between planted classical
/// records (feasible side) and random-correlation records (both sides).
inline ExperimentRecord random_nsit_record(Rng& rng) {
    return rng.coin() ? random_classical_record(rng) : random_correlation_record(rng);
}

inline AngleSchedule random_schedule(Rng& rng) {
    AngleSchedule schedule;
    double t = rng.uniform(0.0, 0.5);
    for (double& alpha : schedule.alphas) {
        alpha = t;
        t += rng.uniform(0.05, 1.2);
    }
    return schedule;
}

/// Quantum-generated record, rotating through the three concrete scenarios:
/// an explicitly simulated precessing qubit, the block scheme at a random
/// schedule and sharpness, and the parity scheme at equidistant times.
inline ExperimentRecord random_quantum_record(Rng& rng) {
    const int kind = rng.uniform_int(0, 2);
    if (kind == 0) {
        // Sequential qubit simulation at four random times.
        const DichotomicObservable obs =
            DichotomicObservable::from_hermitian(gamma_matrices(2).gz);
        const AngleSchedule times = random_schedule(rng);
        auto unitary = [](double angle) {
            return block_unitary(SpinValue(1), angle / 2.0);
        };
        auto stats = [&](int i, int j) {
            return sequential_pair_statistics(maximally_mixed(2), obs,
                                              unitary(times.alphas[j] - times.alphas[i]), obs,
                                              unitary(times.alphas[i]));
        };
        return record_from_pairs(stats(0, 1), stats(1, 2), stats(2, 3), stats(0, 3));
    }
    if (kind == 1) {
        const SpinValue spin(rng.uniform_int(1, 10));
        const AngleSchedule schedule = random_schedule(rng);
        const double lambda = rng.coin() ? 1.0 : rng.uniform(0.3, 1.0);
        const double scale = lambda * lambda;
        const auto& a = schedule.alphas;
        return record_from_correlations(
            scale * gp_correlation_closed(spin, a[0], a[1], +1),
            scale * gp_correlation_closed(spin, a[1], a[2], +1),
            scale * gp_correlation_closed(spin, a[2], a[3], +1),
            scale * gp_correlation_closed(spin, a[0], a[3], -1));
    }
    const SpinValue spin(rng.uniform_int(1, 6));
    const double omega_dt = rng.uniform(0.02, 1.0);
    const double near = kb_correlation_closed(spin, omega_dt);
    const double far = kb_correlation_closed(spin, 3.0 * omega_dt);
    return record_from_correlations(near, near, near, far);
}

}  // namespace lgspin
