#include <doctest.h>

#include <contsense/liouvillian.hpp>
#include <contsense/models.hpp>

using namespace contsense;

namespace {

// Hermitian, positive, unit-trace probe state with full support.
Matrix probe_state(const SpinBasis& b) {
    Matrix m = Matrix::Zero(b.dim, b.dim);
    for (int i = 0; i < b.dim; ++i) {
        m(i, i) = 1.0 + i;
        if (i + 1 < b.dim) {
            m(i, i + 1) = Complex(0.1, 0.05 * (i + 1));
            m(i + 1, i) = std::conj(m(i, i + 1));
        }
    }
    const Matrix sq = m * m.adjoint();
    return sq / sq.trace().real();
}

}  // namespace

TEST_CASE("generator preserves trace and hermiticity") {
    for (double theta : {0.0, 0.3}) {
        const SensorModel m = high_temperature(5, 0.8);
        const Matrix rho = probe_state(m.basis);
        const Matrix d = lindblad_rhs(m, theta, rho);
        CHECK(std::abs(d.trace()) <= 1e-13);
        CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("matrix action agrees with the assembled superoperator") {
    const SensorModel m = dephasing_family(3, 0.7, 0.4);
    const Matrix rho = probe_state(m.basis);
    const double theta = 0.21;
    const Matrix direct = lindblad_rhs(m, theta, rho);
    const Matrix s = assemble_superoperator(m, theta);
    const Vector vec_rho = Eigen::Map<const Vector>(rho.data(), rho.size());
    const Vector vec_out = s * vec_rho;
    const Matrix via_super =
        Eigen::Map<const Matrix>(vec_out.data(), rho.rows(), rho.cols());
    CHECK((direct - via_super).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("superoperator allocation cap") {
    const SensorModel m = high_temperature(64, 1.0);  // 65^2 > 4096
    CHECK_THROWS_AS(assemble_superoperator(m, 0.0), std::invalid_argument);
}

TEST_CASE("stationary state closed forms") {
    SUBCASE("infinite temperature is maximally mixed") {
        const SensorModel m = high_temperature(6, 1.4);
        const Matrix rho = steady_state(m);
        const Matrix want = Matrix::Identity(7, 7) / 7.0;
        CHECK((rho - want).cwiseAbs().maxCoeff() <= 1e-14);
    }
    SUBCASE("even squeezer has a pure dark state") {
        const SensorModel m = spin_squeezer(4, 1.0, 1.3);
        const Matrix rho = steady_state(m);
        CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        const Matrix& l = m.jumps.front().op.mat;
        CHECK((l * rho * l.adjoint()).trace().real() <= 1e-24);
    }
    SUBCASE("one-qubit squeezer: inverse of L^dag L by hand") {
        const double r = 0.9, t = std::tanh(r);
        const SensorModel m = spin_squeezer(1, 1.0, r);
        const Matrix rho = steady_state(m);
        // L = J- - t J+ gives L^dag L = diag(1, t^2), so rho = diag(t^2, 1)/(1+t^2)
        CHECK(rho(0, 0).real() == doctest::Approx(t * t / (1.0 + t * t)).epsilon(1e-12));
        CHECK(rho(1, 1).real() == doctest::Approx(1.0 / (1.0 + t * t)).epsilon(1e-12));
        CHECK(std::abs(rho(0, 1)) <= 1e-14);
    }
    SUBCASE("generic null space agrees with the closed forms") {
        SensorModel m = spin_squeezer(3, 1.0, 0.8);
        const Matrix closed = steady_state(m);
        m.steady_form = SteadyStateForm::generic;
        const Matrix generic = steady_state(m);
        CHECK((closed - generic).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("degenerate stationary space is refused") {
    // no dissipation at all: every spectral projector of h0 is stationary
    SensorModel m;
    m.basis = build_basis(2);
    m.h0 = collective_operator(m.basis, Axis::z);
    m.generator = collective_operator(m.basis, Axis::z);
    m.steady_form = SteadyStateForm::generic;
    CHECK_THROWS_AS(steady_state(m), NumericError);
}

TEST_CASE("propagation relaxes towards the stationary state") {
    const SensorModel m = high_temperature(3, 1.0);
    Matrix rho0 = Matrix::Zero(4, 4);
    rho0(0, 0) = 1.0;
    const Matrix late = propagate(m, 0.0, rho0, 12.0, {1e-10});
    const Matrix want = steady_state(m);
    CHECK((late - want).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(std::abs(late.trace() - Complex(1.0, 0.0)) <= 1e-9);
}

TEST_CASE("propagation accuracy follows the requested tolerance") {
    const SensorModel m = dephasing_family(4, 1.0, -0.3);
    const Matrix rho0 = probe_state(m.basis);
    const Matrix ref = propagate(m, 0.1, rho0, 2.0, {1e-13});
    const Matrix loose = propagate(m, 0.1, rho0, 2.0, {1e-7});
    const double err = (loose - ref).cwiseAbs().maxCoeff();
    CHECK(err <= 5e-7);
    CHECK(err >= 1e-13);  // and the loose run really is looser than the reference
}

TEST_CASE("parameter validation") {
    SensorModel m = high_temperature(2, 1.0);
    CHECK_THROWS_AS(lindblad_rhs(m, 0.0, Matrix::Zero(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(propagate(m, 0.0, Matrix::Identity(3, 3) / 3.0, -1.0),
                    std::invalid_argument);
    m.jumps.front().rate = -0.5;
    CHECK_THROWS_AS(lindblad_rhs(m, 0.0, Matrix::Identity(3, 3) / 3.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(high_temperature(3, 0.0), std::invalid_argument);
}
