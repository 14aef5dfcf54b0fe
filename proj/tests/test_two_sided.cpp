#include <doctest.h>

#include <contsense/models.hpp>
#include <contsense/qfi.hpp>
#include <contsense/two_sided.hpp>

using namespace contsense;

TEST_CASE("zero coupling leaves the stationary state alone") {
    const SensorModel m = high_temperature(4, 1.1);
    const Matrix rho_ss = steady_state(m);
    const PseudoState direct = evolve_pseudo(m, 0.0, 3.0);
    const PseudoState embedded = evolve_embedded(m, 0.0, 3.0);
    CHECK((direct.mu - rho_ss).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((embedded.mu - rho_ss).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("direct and embedded routes agree") {
    // The auxiliary-qubit construction and the two-sided equation are
    // independent derivations; their states must match to solver accuracy.
    const double theta = 0.02, t_final = 0.8;
    auto check_pair = [&](const SensorModel& m) {
        const PseudoState a = evolve_pseudo(m, theta, t_final, {1e-11});
        const PseudoState b = evolve_embedded(m, theta, t_final, {1e-11});
        CHECK((a.mu - b.mu).cwiseAbs().maxCoeff() <= 1e-9);
    };
    check_pair(high_temperature(3, 1.0));
    check_pair(dephasing_family(2, 0.8, 0.5, Axis::y));
    check_pair(spin_squeezer(4, 1.0, 1.5));
    check_pair(single_qubit_loss(1.2));
}

TEST_CASE("adaptive and exponential backends agree") {
    const SensorModel m = spin_squeezer(2, 0.9, 1.0);
    TwoSidedOptions expm;
    expm.backend = EvolveBackend::exponential;
    for (double theta : {0.0, 0.05}) {
        const PseudoState a = evolve_pseudo(m, theta, 1.4, {1e-11});
        const PseudoState b = evolve_pseudo(m, theta, 1.4, expm);
        CHECK((a.mu - b.mu).cwiseAbs().maxCoeff() <= 1e-9);
        const PseudoState c = evolve_embedded(m, theta, 1.4, {1e-11});
        const PseudoState d = evolve_embedded(m, theta, 1.4, expm);
        CHECK((c.mu - d.mu).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("constant offsets of the coupling do not change anything") {
    // re-centering removes constants: same generator up to identity shifts
    SensorModel a = high_temperature(3, 1.0);
    SensorModel b = a;
    b.generator = make_operator(
        b.basis, b.generator.mat + 2.7 * Matrix::Identity(b.basis.dim, b.basis.dim));
    const PseudoState sa = evolve_pseudo(a, 0.04, 1.0, {1e-11});
    const PseudoState sb = evolve_pseudo(b, 0.04, 1.0, {1e-11});
    CHECK((sa.mu - sb.mu).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("fidelities are normalized and ordered") {
    const SensorModel m = high_temperature(4, 0.9);
    for (double theta : {0.0, 0.03, 0.08}) {
        const PseudoState st = evolve_embedded(m, theta, 1.2, {1e-11});
        const double fg = fidelity_global(st);
        const double fe = fidelity_env(st);
        CHECK(fe >= fg - 1e-12);       // discarding the environment can only help
        CHECK(fe <= 1.0 + 1e-9);
        if (theta == 0.0) {
            CHECK(fg == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(fe == doctest::Approx(1.0).epsilon(1e-9));
        } else {
            CHECK(fg < 1.0);
        }
    }
}

TEST_CASE("negative horizon is rejected") {
    const SensorModel m = high_temperature(2, 1.0);
    CHECK_THROWS_AS(evolve_pseudo(m, 0.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(evolve_embedded(m, 0.0, -0.1), std::invalid_argument);
}
