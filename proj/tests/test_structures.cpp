#include <doctest.h>

#include <cmath>
#include <contsense/models.hpp>
#include <contsense/structures.hpp>

using namespace contsense;

TEST_CASE("absorber pair is exactly dark") {
    for (int n : {2, 4, 8}) {
        const CascadedPair pair = build_absorber(n);
        const int d = pair.chain.dim;
        REQUIRE(pair.dark_state.size() == d * d);
        CHECK(std::abs(pair.dark_state.norm() - 1.0) < 1e-15);
        // the two emission channels cancel term by term, so the residuals
        // vanish in exact floating point, not merely to rounding
        CHECK((pair.jump_1 * pair.dark_state).norm() == 0.0);
        CHECK((pair.jump_2 * pair.dark_state).norm() == 0.0);
        CHECK(pair.interconnect.norm() == 0.0);

        // reduced state of either half is maximally mixed
        Matrix red = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int k = 0; k < d; ++k) {
                    red(i, j) += pair.dark_state(i * d + k) *
                                 std::conj(pair.dark_state(j * d + k));
                }
            }
        }
        CHECK((red - Matrix::Identity(d, d) / double(d)).cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK_THROWS_AS(build_absorber(0), std::invalid_argument);
}

TEST_CASE("no-click record of a dark sensor") {
    const SensorModel loss = single_qubit_loss(1.0);
    CHECK(no_click_probability(loss, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
    const double p = no_click_probability(loss, 0.1, 2.0);
    CHECK(p < 1.0);
    CHECK(p > 0.0);
    // shrinking the coupling restores certainty quadratically
    const double p_small = no_click_probability(loss, 0.01, 2.0);
    CHECK(1.0 - p_small == doctest::Approx((1.0 - p) / 100.0).epsilon(0.02));

    const SensorModel squeezer = spin_squeezer(2, 1.0, 1.0);
    CHECK(no_click_probability(squeezer, 0.0, 1.5) == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(no_click_probability(high_temperature(2, 1.0), 0.1, 1.0),
                    NumericError);  // stationary state is mixed, not dark
}

TEST_CASE("click statistics saturate the environmental information") {
    FiniteDiffOptions opt;
    opt.tol = 1e-11;

    const double cl = classical_fisher_binary(single_qubit_loss(1.0), 1.0, opt);
    CHECK(cl == doctest::Approx(0.2329727907163652).epsilon(1e-2));
    CHECK(cl == doctest::Approx(single_qubit_loss_qfi(1.0, 1.0)).epsilon(1e-2));

    const ModelSpec spec{FamilyTag::spin_squeezer, 2, 0.9, 0.0, 1.2, Axis::x};
    const double want =
        qfi_env_from_correlator(autocorrelator_analytic(spec), 1.1).value;
    CHECK(classical_fisher_binary(make_model(spec), 1.1, opt) ==
          doctest::Approx(want).epsilon(1e-2));
}
