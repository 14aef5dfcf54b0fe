#include <doctest.h>

#include <cmath>
#include <contsense/qfi.hpp>

using namespace contsense;

namespace {

CorrelationModel expo(double variance, double rate) {
    CorrelationModel c;
    c.kind = CorrelatorKind::exponential;
    c.variance = variance;
    c.rate = rate;
    c.env_route = true;
    return c;
}

CorrelationModel sample_of(const CorrelationModel& src, double t_max, int points,
                           bool env_route) {
    Eigen::VectorXd t(points), v(points);
    for (int i = 0; i < points; ++i) {
        t(i) = t_max * i / (points - 1);
        v(i) = correlator_value(src, t(i));
    }
    return make_sampled_correlator(t, v, env_route);
}

// envelope recomputed in extended precision, away from float cancellation
double envelope_reference(double x) {
    const long double lx = x;
    const long double num = 2.0L * lx + 4.0L * std::expm1l(-lx) - std::expm1l(-2.0L * lx);
    return static_cast<double>(num / (lx * lx));
}

}  // namespace

TEST_CASE("closed forms at unit parameters") {
    const CorrelationModel c = expo(1.0, 1.0);
    const QfiEstimate g = qfi_global_from_correlator(c, 1.0);
    CHECK(g.method == QfiMethod::closed_form);
    CHECK(g.value == doctest::Approx(8.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(g.value == doctest::Approx(2.9430355293715387).epsilon(1e-12));

    const QfiEstimate e = qfi_env_from_correlator(c, 1.0);
    CHECK(e.kind == QfiKind::environmental);
    CHECK(e.value == doctest::Approx(1.3447299257966266).epsilon(1e-12));
    CHECK(dimensionless_envelope(1.0) == doctest::Approx(0.33618248144915664).epsilon(1e-14));
    CHECK(e.value <= g.value);
}

TEST_CASE("envelope is stable across its series seam") {
    for (double x : {1e-4, 3e-3, 0.0099999, 0.0100001, 0.02, 0.5, 5.0, 40.0}) {
        CHECK(dimensionless_envelope(x) ==
              doctest::Approx(envelope_reference(x)).epsilon(1e-11));
    }
    CHECK(dimensionless_envelope(0.0) == 0.0);
}

TEST_CASE("environmental information never exceeds the global value") {
    for (double x = 0.01; x < 40.0; x *= 1.37) {
        const CorrelationModel c = expo(1.0, x);  // t = 1, so rate * t = x
        const double glob = qfi_global_from_correlator(c, 1.0).value;
        const double env = qfi_env_from_correlator(c, 1.0).value;
        CHECK(env <= glob * (1.0 + 1e-12));
        CHECK(env >= 0.0);
    }
}

TEST_CASE("sampled quadrature reproduces the closed forms") {
    const CorrelationModel exact = expo(1.3, 0.8);
    const double t_final = 1.5;
    const CorrelationModel sam = sample_of(exact, 2.0 * t_final, 1501, true);
    CHECK(qfi_global_from_correlator(sam, t_final).value ==
          doctest::Approx(qfi_global_from_correlator(exact, t_final).value).epsilon(1e-8));
    const QfiEstimate env = qfi_env_from_correlator(sam, t_final);
    CHECK(env.method == QfiMethod::correlator);
    CHECK(env.value ==
          doctest::Approx(qfi_env_from_correlator(exact, t_final).value).epsilon(1e-8));
}

TEST_CASE("environmental quadrature needs the echo interval") {
    const CorrelationModel sam = sample_of(expo(1.0, 1.0), 1.2, 601, true);
    CHECK_NOTHROW(qfi_env_from_correlator(sam, 0.6));
    CHECK_THROWS_AS(qfi_env_from_correlator(sam, 1.0), std::invalid_argument);

    CorrelationModel plain = expo(1.0, 1.0);
    plain.env_route = false;
    CHECK_THROWS_AS(qfi_env_from_correlator(plain, 1.0), std::invalid_argument);
    CHECK_NOTHROW(qfi_global_from_correlator(plain, 1.0));
    CHECK_THROWS_AS(qfi_env_from_correlator(expo(1.0, 1.0), -0.5), std::invalid_argument);
}

TEST_CASE("finite differences match the correlator route") {
    const ModelSpec spec{FamilyTag::high_temperature, 2, 0.8, 0.0, 0.0, Axis::z};
    const SensorModel model = make_model(spec);
    const CorrelationModel corr = autocorrelator_analytic(spec);
    const double t_final = 1.0;

    FiniteDiffOptions opt;
    opt.tol = 1e-11;
    const QfiEstimate fd_g = qfi_finite_difference(model, t_final, QfiKind::global, opt);
    const QfiEstimate fd_e =
        qfi_finite_difference(model, t_final, QfiKind::environmental, opt);
    CHECK(fd_g.value ==
          doctest::Approx(qfi_global_from_correlator(corr, t_final).value).epsilon(1e-3));
    CHECK(fd_e.value ==
          doctest::Approx(qfi_env_from_correlator(corr, t_final).value).epsilon(1e-3));
    CHECK(fd_g.theta_step > 0.0);
    CHECK(fd_e.error_estimate > 0.0);
    CHECK(fd_e.value < fd_g.value);
}

TEST_CASE("both evolution routes give the same stencil result") {
    const SensorModel model =
        make_model({FamilyTag::dephasing_family, 2, 1.0, 0.4, 0.0, Axis::y});
    FiniteDiffOptions opt;
    opt.tol = 1e-12;
    opt.use_embedding = true;
    const double a = qfi_finite_difference(model, 0.9, QfiKind::environmental, opt).value;
    opt.use_embedding = false;
    const double b = qfi_finite_difference(model, 0.9, QfiKind::environmental, opt).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-4));
}

TEST_CASE("fidelities are even in the coupling sign") {
    const SensorModel model =
        make_model({FamilyTag::dephasing_family, 3, 1.0, 0.4, 0.0, Axis::x});
    TwoSidedOptions opt;
    opt.tol = 1e-11;
    const PseudoState plus = evolve_embedded(model, 0.03, 0.7, opt);
    const PseudoState minus = evolve_embedded(model, -0.03, 0.7, opt);
    CHECK(fidelity_global(plus) == doctest::Approx(fidelity_global(minus)).epsilon(1e-9));
    CHECK(fidelity_env(plus) == doctest::Approx(fidelity_env(minus)).epsilon(1e-9));
}

TEST_CASE("finite-difference error guards") {
    const SensorModel model = make_model({FamilyTag::high_temperature, 2, 1.0});
    CHECK_THROWS_AS(qfi_finite_difference(model, -1.0, QfiKind::global),
                    std::invalid_argument);
    CHECK(qfi_finite_difference(model, 0.0, QfiKind::global).value == 0.0);

    // a step so large the fidelity is fully decayed at the outer stencil points
    FiniteDiffOptions wild;
    wild.theta_step = 40.0;
    CHECK_THROWS_AS(qfi_finite_difference(model, 1.0, QfiKind::global, wild), NumericError);

    SensorModel flat = model;
    flat.generator = identity_operator(model.basis);
    CHECK_THROWS_AS(qfi_finite_difference(flat, 1.0, QfiKind::global), NumericError);
}

TEST_CASE("spectral route agrees with the closed forms") {
    const CorrelationModel c = expo(1.0, 1.0);
    const SpectrumModel s = lorentzian_spectrum(c);
    CHECK(qfi_from_spectrum(s, 1.0, QfiKind::global).value ==
          doctest::Approx(8.0 / std::exp(1.0)).epsilon(1e-6));
    CHECK(qfi_from_spectrum(s, 1.0, QfiKind::environmental).value ==
          doctest::Approx(1.3447299257966266).epsilon(1e-6));
    CHECK_THROWS_AS(qfi_from_spectrum(s, 0.0, QfiKind::global), std::invalid_argument);

    const SpectrumModel windowed = lorentzian_spectrum(sample_of(c, 16.0, 801, true));
    const QfiEstimate est = qfi_from_spectrum(windowed, 1.0, QfiKind::environmental);
    CHECK(est.value == doctest::Approx(1.3447299257966266).epsilon(5e-3));
    CHECK(est.error_estimate > 0.0);
}

TEST_CASE("sensitivity identities") {
    const CorrelationModel c = expo(0.7, 1.9);
    CHECK(sensitivity(c) == doctest::Approx(8.0 * 0.7 / 1.9).epsilon(1e-14));
    CHECK(sensitivity(lorentzian_spectrum(c)) == doctest::Approx(sensitivity(c)).epsilon(1e-14));
    CHECK(sensitivity(sample_of(c, 12.0 / 1.9, 901, false)) ==
          doctest::Approx(sensitivity(c)).epsilon(1e-4));
    CHECK_THROWS_AS(sensitivity(sample_of(c, 2.0 / 1.9, 301, false)), NumericError);
}

TEST_CASE("filter peak and information ceilings") {
    const FilterPeak peak = env_filter_peak();
    CHECK(peak.omega_t == doctest::Approx(2.33112).epsilon(2e-4));
    CHECK(peak.height == doctest::Approx(0.52506).epsilon(2e-4));
    CHECK(bound_loose(3, 2.0) == doctest::Approx(36.0));
    CHECK(bound_tight(3, 2.0) == doctest::Approx(0.5 * peak.height * 36.0).epsilon(1e-14));
    CHECK(bound_tight(3, 2.0) < bound_loose(3, 2.0));
}
