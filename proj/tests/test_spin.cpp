#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "lgspin/spin.hpp"

#include <cmath>

using namespace lgspin;
using test_support::distance;

TEST_CASE("SpinValue bookkeeping") {
    CHECK_THROWS_AS(SpinValue(0), std::invalid_argument);
    const SpinValue half(1);
    CHECK(half.dim() == 2);
    CHECK_FALSE(half.integral());
    CHECK(half.paired_blocks() == 1);
    const SpinValue one(2);
    CHECK(one.dim() == 3);
    CHECK(one.integral());
    CHECK(one.paired_blocks() == 1);
}

TEST_CASE("spin_operators: j = 1/2 gives the Pauli matrices over two") {
    const SpinOperators ops = spin_operators(SpinValue(1));
    CHECK(distance(ops.jx, test_support::pauli_x() / 2.0) < 1e-15);
    CHECK(distance(ops.jy, test_support::pauli_y() / 2.0) < 1e-15);
    CHECK(distance(ops.jz, test_support::pauli_z() / 2.0) < 1e-15);
}

TEST_CASE("spin_operators: j = 1 z-component and Jx spectrum") {
    const SpinOperators ops = spin_operators(SpinValue(2));
    ComplexMatrix jz(3, 3);
    jz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    CHECK(distance(ops.jz, jz) < 1e-15);

    const HermitianEig eig = eig_hermitian(ops.jx);
    CHECK(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(eig.eigenvalues[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(eig.eigenvalues[2] == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("spin_operators: commutator algebra [Jx, Jy] = i Jz") {
    for (int two_j = 1; two_j <= 20; ++two_j) {
        const SpinOperators ops = spin_operators(SpinValue(two_j));
        const ComplexMatrix comm = ops.jx * ops.jy - ops.jy * ops.jx;
        CHECK(distance(comm, Complex(0, 1) * ops.jz) < 1e-10);
    }
}

TEST_CASE("spin_operators: tr(Jx^2) = j(j+1)(2j+1)/3") {
    for (int two_j = 1; two_j <= 20; ++two_j) {
        const SpinValue spin(two_j);
        const SpinOperators ops = spin_operators(spin);
        const double j = spin.j();
        const double expected = j * (j + 1.0) * (2.0 * j + 1.0) / 3.0;
        CHECK((ops.jx * ops.jx).trace().real() == Catch::Approx(expected).margin(1e-10));
    }
}

TEST_CASE("parity_observable: diagonal patterns and projectors") {
    const auto half = parity_observable(SpinValue(1));
    ComplexMatrix expected_half(2, 2);
    expected_half << 1, 0, 0, -1;
    CHECK(distance(half.q, expected_half) < 1e-15);

    const auto one = parity_observable(SpinValue(2));
    ComplexMatrix expected_one(3, 3);
    expected_one << 1, 0, 0, 0, -1, 0, 0, 0, 1;
    CHECK(distance(one.q, expected_one) < 1e-15);

    CHECK(distance(one.q * one.q, identity_matrix(3)) < 1e-15);
    one.validate();
}

TEST_CASE("spin-1 rotation of |m=0> about y") {
    // exp(-i theta Jy)|0> = -sin(theta)/sqrt(2)|1> + cos(theta)|0>
    //                      + sin(theta)/sqrt(2)|-1>   (basis m = 1, 0, -1)
    const SpinOperators ops = spin_operators(SpinValue(2));
    for (double theta : {0.3, 1.0, 2.4}) {
        const ComplexMatrix u = expm_i_hermitian(ops.jy, theta);
        ComplexVector m0(3);
        m0 << 0, 1, 0;
        const ComplexVector rotated = u * m0;
        const double s = std::sin(theta) / std::sqrt(2.0);
        CHECK(std::abs(rotated(0) - Complex(-s, 0)) < 1e-12);
        CHECK(std::abs(rotated(1) - Complex(std::cos(theta), 0)) < 1e-12);
        CHECK(std::abs(rotated(2) - Complex(s, 0)) < 1e-12);
    }
}
