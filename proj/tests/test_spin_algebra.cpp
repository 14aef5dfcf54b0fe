#include <doctest.h>

#include <cmath>
#include <contsense/errors.hpp>
#include <contsense/spin_algebra.hpp>

using namespace contsense;

TEST_CASE("basis bookkeeping") {
    const SpinBasis b = build_basis(5);
    CHECK(b.dim == 6);
    CHECK(b.total_spin == doctest::Approx(2.5));
    CHECK(projection_of_index(b, 0) == doctest::Approx(2.5));
    CHECK(projection_of_index(b, 5) == doctest::Approx(-2.5));
    CHECK_THROWS_AS(build_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(projection_of_index(b, 6), std::invalid_argument);
}

TEST_CASE("ladder matrix elements, two qubits") {
    // j = 1: raising amplitudes are sqrt(2) on both steps.
    const SpinBasis b = build_basis(2);
    const Matrix jp = collective_operator(b, Axis::plus).mat;
    CHECK(std::abs(jp(0, 1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(jp(1, 2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(jp(1, 0)) == 0.0);
    // lowering is the exact adjoint, entry for entry
    const Matrix jm = collective_operator(b, Axis::minus).mat;
    CHECK((Matrix(jp.adjoint()) - jm).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("su(2) relations across sizes") {
    const Complex i1(0.0, 1.0);
    for (int n : {1, 2, 3, 7, 16, 33, 64}) {
        const SpinBasis b = build_basis(n);
        const Matrix jx = collective_operator(b, Axis::x).mat;
        const Matrix jy = collective_operator(b, Axis::y).mat;
        const Matrix jz = collective_operator(b, Axis::z).mat;
        CHECK((jx * jy - jy * jx - i1 * jz).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((jy * jz - jz * jy - i1 * jx).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((jz * jx - jx * jz - i1 * jy).cwiseAbs().maxCoeff() <= 1e-12);
        const double j = b.total_spin;
        const Matrix cas = jx * jx + jy * jy + jz * jz;
        CHECK((cas - j * (j + 1.0) * Matrix::Identity(b.dim, b.dim))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
    }
}

TEST_CASE("direction operator") {
    const SpinBasis b = build_basis(4);
    const Eigen::Vector3d ex(1.0, 0.0, 0.0);
    const Matrix diff =
        collective_operator(b, ex).mat - collective_operator(b, Axis::x).mat;
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(collective_operator(b, Eigen::Vector3d(1.0, 1.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("hermiticity detection") {
    const SpinBasis b = build_basis(2);
    CHECK(collective_operator(b, Axis::x).hermitian);
    CHECK(collective_operator(b, Axis::y).hermitian);
    CHECK_FALSE(collective_operator(b, Axis::plus).hermitian);
    CHECK(make_operator(b, Matrix::Identity(b.dim, b.dim)).hermitian);
    CHECK_THROWS_AS(make_operator(b, Matrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("moments of the maximally mixed state") {
    for (int n : {1, 4, 10}) {
        const SpinBasis b = build_basis(n);
        const Matrix mixed = Matrix::Identity(b.dim, b.dim) / double(b.dim);
        const double j = b.total_spin;
        for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
            const Moment m = moment(collective_operator(b, ax), mixed);
            CHECK(std::abs(m.mean) < 1e-13);
            CHECK(m.variance == doctest::Approx(j * (j + 1.0) / 3.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("moment validation") {
    const SpinBasis b = build_basis(2);
    const Matrix mixed = Matrix::Identity(3, 3) / 3.0;

    CHECK_THROWS_AS(moment(collective_operator(b, Axis::plus), mixed),
                    std::invalid_argument);

    Matrix bad_trace = 2.0 * mixed;
    CHECK_THROWS_AS(moment(collective_operator(b, Axis::z), bad_trace),
                    std::invalid_argument);

    Matrix not_hermitian = mixed;
    not_hermitian(0, 1) = Complex(0.1, 0.1);
    CHECK_THROWS_AS(moment(collective_operator(b, Axis::z), not_hermitian),
                    std::invalid_argument);

    Matrix negative = Matrix::Zero(3, 3);
    negative(0, 0) = 1.2;
    negative(1, 1) = -0.2;
    CHECK_THROWS_AS(moment(collective_operator(b, Axis::z), negative),
                    std::invalid_argument);

    // extremal projection: variance exactly zero, never negative
    Matrix top = Matrix::Zero(3, 3);
    top(0, 0) = 1.0;
    const Moment m = moment(collective_operator(b, Axis::z), top);
    CHECK(m.mean == doctest::Approx(1.0));
    CHECK(m.variance == 0.0);
}
