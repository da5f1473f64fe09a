#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgspin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Tolerance hierarchy shared by every module: structural checks
/// (hermiticity, unitarity, trace normalization), algebraic identities,
/// and statistical / LP feasibility decisions.
namespace tol {
inline constexpr double structural = 1e-10;
inline constexpr double algebraic = 1e-12;
inline constexpr double statistical = 1e-9;
}  // namespace tol

/// Thrown when a computation cannot be completed to numerical spec
/// (eigensolver breakdown, simplex iteration cap, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline ComplexMatrix identity_matrix(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

inline double max_abs(const ComplexMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool is_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

inline bool is_square(const ComplexMatrix& a) {
    return a.rows() == a.cols();
}

inline bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::structural) {
    return is_square(a) && is_finite(a) && max_abs(a - a.adjoint()) <= tolerance;
}

inline bool is_unitary(const ComplexMatrix& a, double tolerance = tol::structural) {
    if (!is_square(a) || !is_finite(a)) return false;
    return max_abs(a.adjoint() * a - identity_matrix(a.rows())) <= tolerance;
}

inline bool is_projector(const ComplexMatrix& a, double tolerance = tol::structural) {
    return is_hermitian(a, tolerance) && max_abs(a * a - a) <= tolerance;
}

struct HermitianEig {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // columns match eigenvalues
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned in
/// descending order with eigenvector columns permuted to match, so that
/// H = V diag(w) V^dagger.
inline HermitianEig eig_hermitian(const ComplexMatrix& h,
                                  double tolerance = tol::structural) {
    if (!is_square(h)) {
        throw std::invalid_argument("eig_hermitian: matrix is not square");
    }
    if (!is_finite(h)) {
        throw std::invalid_argument("eig_hermitian: matrix has non-finite entries");
    }
    const double residual = max_abs(h - h.adjoint());
    if (residual > tolerance) {
        throw std::invalid_argument(
            "eig_hermitian: matrix is not Hermitian, max |H - H^dagger| = " +
            std::to_string(residual));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("eig_hermitian: eigensolver failed to converge");
    }
    const Eigen::Index n = h.rows();
    HermitianEig out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors.resize(n, n);
    // Eigen sorts ascending; flip to descending.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

/// exp(-i * s * H) for Hermitian H, via eigendecomposition. The result is
/// unitary by construction up to round-off.
inline ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double s) {
    const HermitianEig eig = eig_hermitian(h);
    const Eigen::Index n = h.rows();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::exp(Complex(0.0, -s * eig.eigenvalues[static_cast<std::size_t>(k)]));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace lgspin
