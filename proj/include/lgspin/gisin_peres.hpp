#pragma once

#include "lgspin/spin.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace lgspin {

/// Measurement-time parameters alpha_i = omega t_i / 2 for the four-time
/// block scheme. The canonical schedule (0, pi/4, pi/2, 3pi/4) realizes the
/// maximal LG violation.
struct AngleSchedule {
    std::array<double, 4> alphas{};

    static AngleSchedule canonical() {
        using std::numbers::pi;
        return AngleSchedule{{0.0, pi / 4.0, pi / 2.0, 3.0 * pi / 4.0}};
    }
};

struct GammaMatrices {
    ComplexMatrix gx, gy, gz;
};

/// Block-diagonal Pauli-pattern matrices. With 1-based indices the only
/// nonvanishing elements are
///   (Gx)_{2n-1,2n} = (Gx)_{2n,2n-1} = 1,
///   (Gy)_{2n-1,2n} = i, (Gy)_{2n,2n-1} = -i,
///   (Gz)_{n,n} = (-1)^{n-1}.
/// For odd dimension the last basis state is unpaired: Gx, Gy have an empty
/// last row/column and Gz ends with +1.
inline GammaMatrices gamma_matrices(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("gamma_matrices: dimension must be >= 2");
    }
    GammaMatrices g;
    g.gx = ComplexMatrix::Zero(dim, dim);
    g.gy = ComplexMatrix::Zero(dim, dim);
    g.gz = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        g.gz(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    }
    for (int block = 0; 2 * block + 1 < dim; ++block) {
        const int a = 2 * block;
        const int b = a + 1;
        g.gx(a, b) = 1.0;
        g.gx(b, a) = 1.0;
        g.gy(a, b) = Complex(0.0, 1.0);
        g.gy(b, a) = Complex(0.0, -1.0);
    }
    return g;
}

/// Zero matrix for even dimension; for odd dimension the single
/// nonvanishing element is (Pi)_{N,N} = 1/sqrt(2).
inline ComplexMatrix pi_matrix(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("pi_matrix: dimension must be >= 2");
    }
    ComplexMatrix pi = ComplexMatrix::Zero(dim, dim);
    if (dim % 2 == 1) {
        pi(dim - 1, dim - 1) = 1.0 / std::sqrt(2.0);
    }
    return pi;
}

/// The block observable Q = (sigma_z x ... x sigma_z (+) sign * Pi) / sqrt(2j+1):
/// a direct string of sigma_z blocks plus, for odd dimension, the unpaired
/// scalar sector supplied entirely by Pi.
struct GpObservable {
    int sign = +1;
    ComplexMatrix q_matrix;
    std::vector<ComplexMatrix> paired_blocks;
    std::optional<double> unpaired;  // scalar sector value (odd N only)
};

inline GpObservable gp_observable(const SpinValue& spin, int sign) {
    if (sign != +1 && sign != -1) {
        throw std::invalid_argument("gp_observable: sign must be +1 or -1");
    }
    const int n = spin.dim();
    ComplexMatrix gz_paired = gamma_matrices(n).gz;
    if (n % 2 == 1) {
        gz_paired(n - 1, n - 1) = 0.0;  // the unpaired state belongs to Pi alone
    }
    const double norm = std::sqrt(static_cast<double>(n));
    GpObservable obs;
    obs.sign = sign;
    obs.q_matrix = (gz_paired + static_cast<double>(sign) * pi_matrix(n)) / norm;
    for (int block = 0; block < spin.paired_blocks(); ++block) {
        obs.paired_blocks.push_back(obs.q_matrix.block(2 * block, 2 * block, 2, 2) * norm);
    }
    if (n % 2 == 1) {
        obs.unpaired = obs.q_matrix(n - 1, n - 1).real();
    }
    return obs;
}

/// Direct sum of exp(-i alpha sigma_x) over the paired blocks, identity on
/// the unpaired sector. Conjugating the block observable by this unitary
/// rotates each sigma_z block by twice the angle:
///   U(alpha)^dag Q U(alpha) = (cos(2 alpha) Gz + sin(2 alpha) Gy' + Pi) / sqrt(N)
/// where Gy' carries the sign convention fixed by the ladder operators.
inline ComplexMatrix block_unitary(const SpinValue& spin, double alpha) {
    const int n = spin.dim();
    ComplexMatrix u = ComplexMatrix::Identity(n, n);
    const Complex c(std::cos(alpha), 0.0);
    const Complex s(0.0, -std::sin(alpha));
    for (int block = 0; block < spin.paired_blocks(); ++block) {
        const int a = 2 * block;
        u(a, a) = c;
        u(a + 1, a + 1) = c;
        u(a, a + 1) = s;
        u(a + 1, a) = s;
    }
    return u;
}

/// Closed-form two-time correlation of the block scheme. Even dimension:
/// cos(a1)cos(a2) + sin(a1)sin(a2). Odd dimension picks up the unpaired
/// sector: (2j [cos(a1)cos(a2) + sin(a1)sin(a2)] + sign/sqrt(2)) / (2j+1).
inline double gp_correlation_closed(const SpinValue& spin, double alpha1, double alpha2,
                                    int sign_for_pi = +1) {
    if (sign_for_pi != +1 && sign_for_pi != -1) {
        throw std::invalid_argument("gp_correlation_closed: sign must be +1 or -1");
    }
    const double paired = std::cos(alpha1) * std::cos(alpha2) + std::sin(alpha1) * std::sin(alpha2);
    if (!spin.integral()) {
        return paired;
    }
    const double two_j = static_cast<double>(spin.two_j);
    return (two_j * paired + sign_for_pi / std::sqrt(2.0)) / (two_j + 1.0);
}

/// Four-term LG sum K = C12 + C23 + C34 - C14 from the closed forms, with
/// the unpaired sector sign flipped to -1 for the (1,4) correlation.
inline double gp_lg_sum(const SpinValue& spin, const AngleSchedule& schedule) {
    const auto& a = schedule.alphas;
    return gp_correlation_closed(spin, a[0], a[1], +1) +
           gp_correlation_closed(spin, a[1], a[2], +1) +
           gp_correlation_closed(spin, a[2], a[3], +1) -
           gp_correlation_closed(spin, a[0], a[3], -1);
}

/// Sequential statistics of the spin-1 zero beam: |m=0> is evolved by
/// exp(-i theta1 Jy), measured with {P+ = P1 + P-1, P- = P0}, each branch is
/// evolved by exp(-i theta2 Jy) and measured again. Conditional
/// probabilities come out as p(+|+) = cos^2(theta2), p(-|+) = sin^2(theta2),
/// p(+|-) = sin^2(theta2), p(-|-) = cos^2(theta2), so the correlation
/// cos(2 theta2) is independent of theta1.
inline PairStatistics zero_beam_statistics(double theta1, double theta2, double lambda = 1.0) {
    const SpinValue one(2);
    const SpinOperators ops = spin_operators(one);

    ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
    rho0(1, 1) = 1.0;  // |m=0><m=0|
    const QuantumState beam{rho0};

    ComplexMatrix p_zero = ComplexMatrix::Zero(3, 3);
    p_zero(1, 1) = 1.0;
    const DichotomicObservable obs =
        DichotomicObservable::from_projectors(identity_matrix(3) - p_zero, p_zero);
    const TwoOutcomeMeasurement meas =
        lambda < 1.0 ? TwoOutcomeMeasurement(make_unsharp(obs, lambda))
                     : TwoOutcomeMeasurement(obs);

    const ComplexMatrix u1 = expm_i_hermitian(ops.jy, theta1);
    const ComplexMatrix u2 = expm_i_hermitian(ops.jy, theta2);
    return sequential_pair_statistics(beam, meas, u2, meas, u1);
}

/// Literal generalization of the zero-beam procedure to integral spin j:
/// evolve |m=0> of the full (2j+1)-dimensional space by exp(-i theta Jy) and
/// measure {I - P0, P0}. For j >= 2 the resulting correlation is neither of
/// cosine type nor independent of theta1; see the accompanying tests.
inline PairStatistics zero_beam_general_statistics(const SpinValue& spin, double theta1,
                                                   double theta2) {
    if (!spin.integral()) {
        throw std::invalid_argument("zero_beam_general_statistics: requires integral spin");
    }
    const int n = spin.dim();
    const int zero_index = spin.two_j / 2;  // m = j - k = 0
    const SpinOperators ops = spin_operators(spin);

    ComplexMatrix rho0 = ComplexMatrix::Zero(n, n);
    rho0(zero_index, zero_index) = 1.0;
    ComplexMatrix p_zero = ComplexMatrix::Zero(n, n);
    p_zero(zero_index, zero_index) = 1.0;
    const DichotomicObservable obs =
        DichotomicObservable::from_projectors(identity_matrix(n) - p_zero, p_zero);

    const ComplexMatrix u1 = expm_i_hermitian(ops.jy, theta1);
    const ComplexMatrix u2 = expm_i_hermitian(ops.jy, theta2);
    return sequential_pair_statistics(QuantumState{rho0}, obs, u2, obs, u1);
}

/// Treatment of the unpaired beam in the simulated scheme. Rabi drives the
/// zero beam as the two-level system of zero_beam_statistics; Static
/// measures the unpaired basis state as-is, which pins its contribution to
/// +1 and caps the LG sum below 2 sqrt(2) at finite integral spin.
enum class OddMode { Rabi, Static };

struct BeamOptions {
    OddMode odd_mode = OddMode::Rabi;
    /// Rotation rate of the zero beam per unit of schedule angle. The
    /// default 1/2 calibrates the beam so its two-time correlation equals
    /// cos(alpha2 - alpha1), matching the paired blocks; 1.0 gives the
    /// uncalibrated reading cos(2(alpha2 - alpha1)).
    double zero_beam_rate = 0.5;
};

/// Fully simulated two-time correlation of the block scheme at sharpness
/// lambda: the maximally mixed input is split into beams, every paired
/// block is measured sequentially as a qubit under block evolution, the
/// odd-dimension unpaired beam is handled per BeamOptions, and the beam
/// correlations are aggregated with weight 1/(2j+1) per basis state.
inline double gp_beam_simulated_correlation(const SpinValue& spin, double alpha1, double alpha2,
                                            double lambda = 1.0,
                                            const BeamOptions& options = {}) {
    if (!(lambda > 0.0) || lambda > 1.0) {
        throw std::invalid_argument("gp_beam_simulated_correlation: sharpness must lie in (0, 1]");
    }
    const int n = spin.dim();
    const double delta = alpha2 - alpha1;

    // Paired blocks: sigma_z measured twice on I/2. A schedule step of
    // delta alpha advances the block rotation by delta alpha / 2.
    const ComplexMatrix sigma_z = gamma_matrices(2).gz;
    const DichotomicObservable qubit_obs = DichotomicObservable::from_hermitian(sigma_z);
    const TwoOutcomeMeasurement qubit_meas =
        lambda < 1.0 ? TwoOutcomeMeasurement(make_unsharp(qubit_obs, lambda))
                     : TwoOutcomeMeasurement(qubit_obs);
    const SpinValue half(1);

    double weighted = 0.0;
    for (int block = 0; block < spin.paired_blocks(); ++block) {
        const PairStatistics stats = sequential_pair_statistics(
            maximally_mixed(2), qubit_meas, block_unitary(half, delta / 2.0), qubit_meas,
            block_unitary(half, alpha1 / 2.0));
        weighted += 2.0 * correlation_of(stats);
    }

    if (n % 2 == 1) {
        if (options.odd_mode == OddMode::Rabi) {
            const PairStatistics beam = zero_beam_statistics(
                options.zero_beam_rate * alpha1, options.zero_beam_rate * delta, lambda);
            weighted += correlation_of(beam);
        } else {
            // Unpaired basis state measured directly: a one-dimensional
            // sector whose sharp outcome is always +1.
            const ComplexMatrix one = ComplexMatrix::Identity(1, 1);
            const DichotomicObservable sector_obs =
                DichotomicObservable::from_projectors(one, ComplexMatrix::Zero(1, 1));
            const TwoOutcomeMeasurement sector_meas =
                lambda < 1.0 ? TwoOutcomeMeasurement(make_unsharp(sector_obs, lambda))
                             : TwoOutcomeMeasurement(sector_obs);
            const PairStatistics stats =
                sequential_pair_statistics(QuantumState{one}, sector_meas, one, sector_meas);
            weighted += correlation_of(stats);
        }
    }
    return weighted / static_cast<double>(n);
}

/// Four-term LG sum assembled from the beam simulation.
inline double gp_lg_sum_simulated(const SpinValue& spin, const AngleSchedule& schedule,
                                  double lambda = 1.0, const BeamOptions& options = {}) {
    const auto& a = schedule.alphas;
    return gp_beam_simulated_correlation(spin, a[0], a[1], lambda, options) +
           gp_beam_simulated_correlation(spin, a[1], a[2], lambda, options) +
           gp_beam_simulated_correlation(spin, a[2], a[3], lambda, options) -
           gp_beam_simulated_correlation(spin, a[0], a[3], lambda, options);
}

}  // namespace lgspin
