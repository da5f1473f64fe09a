#pragma once

#include "lgspin/quantum.hpp"

#include <cmath>

namespace lgspin {

/// Spin magnitude stored as 2j so half-integral spins stay exact.
/// Hilbert space dimension is N = 2j + 1.
struct SpinValue {
    int two_j;

    explicit SpinValue(int two_j_in) : two_j(two_j_in) {
        if (two_j < 1) {
            throw std::invalid_argument("SpinValue: 2j must be a positive integer");
        }
    }

    double j() const { return two_j / 2.0; }
    int dim() const { return two_j + 1; }
    bool integral() const { return two_j % 2 == 0; }  // odd N
    int paired_blocks() const { return dim() / 2; }
};

struct SpinOperators {
    ComplexMatrix jx, jy, jz;
};

/// Angular-momentum matrices in the basis |m = j>, |j-1>, ..., |-j>
/// (highest weight first), built from the ladder operators.
inline SpinOperators spin_operators(const SpinValue& spin) {
    const int n = spin.dim();
    const double j = spin.j();
    ComplexMatrix jz = ComplexMatrix::Zero(n, n);
    ComplexMatrix jplus = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double m = j - k;
        jz(k, k) = m;
        if (k > 0) {
            // <m+1| J+ |m> with |m+1> at row k-1
            jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    const ComplexMatrix jminus = jplus.adjoint();
    SpinOperators ops;
    ops.jx = (jplus + jminus) / 2.0;
    ops.jy = (jplus - jminus) / Complex(0.0, 2.0);
    ops.jz = jz;
    return ops;
}

/// The dichotomic parity operator sum_m (-1)^{j-m} |m><m|, diagonal
/// (+1, -1, +1, ...) in the highest-weight-first basis.
inline DichotomicObservable parity_observable(const SpinValue& spin) {
    const int n = spin.dim();
    ComplexMatrix p_plus = ComplexMatrix::Zero(n, n);
    ComplexMatrix p_minus = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        // j - m = k in this ordering
        (k % 2 == 0 ? p_plus : p_minus)(k, k) = 1.0;
    }
    return DichotomicObservable::from_projectors(std::move(p_plus), std::move(p_minus));
}

}  // namespace lgspin
