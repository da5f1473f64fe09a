#pragma once

#include "lgspin/matrix.hpp"
#include "lgspin/quantum.hpp"
#include "lgspin/rng.hpp"

#include <cmath>

namespace test_support {

using lgspin::Complex;
using lgspin::ComplexMatrix;

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline ComplexMatrix random_hermitian(lgspin::Rng& rng, int dim) {
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return (a + a.adjoint().eval()) / 2.0;
}

inline ComplexMatrix random_unitary(lgspin::Rng& rng, int dim) {
    return lgspin::expm_i_hermitian(random_hermitian(rng, dim), rng.uniform(0.0, 3.0));
}

/// Random traceless +-1 qubit observable n . sigma with n on the unit sphere.
inline lgspin::DichotomicObservable random_qubit_observable(lgspin::Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const ComplexMatrix q =
        r * std::cos(phi) * pauli_x() + r * std::sin(phi) * pauli_y() + z * pauli_z();
    return lgspin::DichotomicObservable::from_hermitian(q);
}

inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return lgspin::max_abs(a - b);
}

}  // namespace test_support
