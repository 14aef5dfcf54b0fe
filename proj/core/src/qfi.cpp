#include "contsense/qfi.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace contsense {

double fidelity_global(const PseudoState& state) {
    return std::abs(state.mu.trace());
}

double fidelity_env(const PseudoState& state) {
    const Matrix a = state.mu * state.mu.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("fidelity_env: eigensolver failed");
    }
    const auto& lam = es.eigenvalues();
    const double lam_max = std::max(lam.maxCoeff(), 0.0);
    const double cut = 1e-14 * lam_max;
    double sum = 0.0;
    for (int i = 0; i < lam.size(); ++i) {
        if (lam(i) > cut) sum += std::sqrt(lam(i));
    }
    return sum;
}

namespace {

// x + expm1(-x), the stable core of the global closed form; ~ x^2/2 small x.
double xpexpm1(double x) {
    if (x < 1e-3) {
        return x * x * (0.5 + x * (-1.0 / 6 + x * (1.0 / 24 - x / 120)));
    }
    return x + std::expm1(-x);
}

double auto_theta_step(double t_final, double variance) {
    return 1e-3 / (t_final * std::sqrt(variance));
}

}  // namespace

double dimensionless_envelope(double x) {
    if (x <= 0.0) return 0.0;
    if (x < 1e-2) {
        return x * (2.0 / 3 + x * (-0.5 + x * (7.0 / 30 - x / 12.0)));
    }
    const double u = std::expm1(-x);
    const double v = std::expm1(-2.0 * x);
    // 2x - (3 - 4e^-x + e^-2x) = 2x + 4u - v, then divide by x^2.
    return (2.0 * x + 4.0 * u - v) / (x * x);
}

QfiEstimate qfi_finite_difference(const SensorModel& model, double t_final, QfiKind kind,
                                  const FiniteDiffOptions& opt) {
    if (t_final < 0.0) {
        throw std::invalid_argument("qfi_finite_difference: t_final must be >= 0");
    }
    QfiEstimate out;
    out.kind = kind;
    out.method = QfiMethod::finite_difference;
    if (t_final == 0.0) return out;

    const Matrix rho_ss = steady_state(model);
    const double variance = moment(model.generator, rho_ss).variance;
    if (!(variance > 0.0)) {
        throw NumericError("qfi_finite_difference: coupling variance vanishes");
    }
    const double h = (opt.theta_step > 0.0) ? opt.theta_step
                                            : auto_theta_step(t_final, variance);
    out.theta_step = h;

    const std::array<double, 5> thetas{0.0, h, -h, 2.0 * h, -2.0 * h};
    std::array<double, 5> f{};
    TwoSidedOptions topt;
    topt.tol = opt.tol;
    topt.backend = opt.backend;
    num::parallel_for(5, opt.threads, [&](int i) {
        const PseudoState st = opt.use_embedding
                                   ? evolve_embedded(model, thetas[i], t_final, topt)
                                   : evolve_pseudo(model, thetas[i], t_final, topt);
        f[i] = (kind == QfiKind::global) ? fidelity_global(st) : fidelity_env(st);
    });

    const double h2 = h * h;
    const double d5 =
        (-f[3] + 16.0 * f[1] - 30.0 * f[0] + 16.0 * f[2] - f[4]) / (12.0 * h2);
    const double d3 = (f[1] - 2.0 * f[0] + f[2]) / h2;

    out.value = -4.0 * d5;
    const double richardson = 4.0 * std::abs(d5 - d3);
    const double noise_floor = 25.0 * opt.tol / h2;
    out.error_estimate = richardson + noise_floor;

    if (richardson > 0.05 * std::max(std::abs(out.value), 20.0 * noise_floor)) {
        throw NumericError(
            "qfi_finite_difference: 5-point vs 3-point stencils disagree beyond 5%");
    }
    if (out.value < -out.error_estimate) {
        throw NumericError("qfi_finite_difference: negative information beyond noise");
    }
    return out;
}

QfiEstimate qfi_global_from_correlator(const CorrelationModel& corr, double t_final) {
    if (t_final < 0.0) {
        throw std::invalid_argument("qfi_global_from_correlator: t_final must be >= 0");
    }
    QfiEstimate out;
    out.kind = QfiKind::global;
    if (corr.kind == CorrelatorKind::exponential) {
        out.method = QfiMethod::closed_form;
        const double g = corr.rate, c0 = 2.0 * corr.variance;
        // 4 int_0^T (T-u) C(u) du = 4 c0 (g T + expm1(-g T)) / g^2.
        out.value = 4.0 * c0 * xpexpm1(g * t_final) / (g * g);
        out.error_estimate = 1e-14 * std::abs(out.value);
        return out;
    }
    out.method = QfiMethod::correlator;
    const auto q = num::integrate_gk(
        [&](double u) { return (t_final - u) * correlator_value(corr, u); }, 0.0,
        t_final, 1e-11);
    out.value = 4.0 * q.value;
    out.error_estimate = 4.0 * q.error;
    return out;
}

QfiEstimate qfi_env_from_correlator(const CorrelationModel& corr, double t_final) {
    if (t_final < 0.0) {
        throw std::invalid_argument("qfi_env_from_correlator: t_final must be >= 0");
    }
    if (!corr.env_route) {
        throw std::invalid_argument(
            "qfi_env_from_correlator: correlator is not marked for the environmental route");
    }
    QfiEstimate out;
    out.kind = QfiKind::environmental;
    if (corr.kind == CorrelatorKind::exponential) {
        out.method = QfiMethod::closed_form;
        out.value = kEnvRoutePrefactor * corr.variance * t_final * t_final *
                    dimensionless_envelope(corr.rate * t_final);
        out.error_estimate = 1e-13 * std::abs(out.value);
        return out;
    }
    out.method = QfiMethod::correlator;
    if (corr.curve && corr.times(corr.times.size() - 1) < 2.0 * t_final - 1e-9) {
        throw std::invalid_argument(
            "qfi_env_from_correlator: sampled grid must reach 2 * t_final");
    }
    // One-sided double integral minus the echo term, both reduced to single
    // weighted integrals of C.
    const auto q1 = num::integrate_gk(
        [&](double u) { return (t_final - u) * correlator_value(corr, u); }, 0.0,
        t_final, 1e-11);
    const auto q2a = num::integrate_gk(
        [&](double u) { return 0.5 * u * correlator_value(corr, u); }, 0.0, t_final,
        1e-11);
    const auto q2b = num::integrate_gk(
        [&](double u) { return (t_final - 0.5 * u) * correlator_value(corr, u); },
        t_final, 2.0 * t_final, 1e-11);
    const double raw = 4.0 * q1.value - 4.0 * (q2a.value + q2b.value);
    out.value = 0.25 * kEnvRoutePrefactor * raw;
    out.error_estimate = kEnvRoutePrefactor * (q1.error + q2a.error + q2b.error);
    return out;
}

namespace {

double filter_value(double omega, double t_final, QfiKind kind) {
    const double half = 0.5 * omega * t_final;
    if (std::abs(omega) < 1e-12 / std::max(t_final, 1.0)) {
        // limits: f_G -> t^2/4, f_E -> 0
        return (kind == QfiKind::global) ? 0.25 * t_final * t_final : 0.0;
    }
    const double s2 = std::sin(half) * std::sin(half);
    const double base = s2 / (omega * omega);
    return (kind == QfiKind::global) ? base : base * s2;
}

}  // namespace

QfiEstimate qfi_from_spectrum(const SpectrumModel& spectrum, double t_final, QfiKind kind) {
    if (t_final <= 0.0) {
        throw std::invalid_argument("qfi_from_spectrum: t_final must be > 0");
    }
    QfiEstimate out;
    out.kind = kind;
    out.method = QfiMethod::spectrum;
    const double pi = std::numbers::pi;
    // Cosine transform of the time-domain weight: the global kernel maps to
    // 2 sin^2(wT/2)/w^2 and the environmental kernel (echo subtraction
    // included) to 4 sin^4(wT/2)/w^2, so the quartic filter carries twice
    // the weight of the quadratic one.
    const double scale =
        (kind == QfiKind::global) ? (8.0 / pi) : (16.0 / pi);
    auto integrand = [&](double w) {
        return spectrum_value(spectrum, w) * filter_value(w, t_final, kind);
    };
    if (spectrum.kind == SpectrumKind::lorentzian) {
        // Piecewise over filter lobes, then an analytic 1/w^4 tail estimate.
        const double lobe = 2.0 * pi / t_final;
        const double w_cut = std::max(40.0 * spectrum.rate, 40.0 * lobe);
        double value = 0.0, err = 0.0, w = 0.0;
        while (w < w_cut) {
            const double w_next = std::min(w + lobe, w_cut);
            const auto q = num::integrate_gk(integrand, w, w_next, 1e-12);
            value += q.value;
            err += q.error;
            w = w_next;
        }
        const double avg = (kind == QfiKind::global) ? 0.5 : 0.375;  // mean sin^2, sin^4
        const double tail = 2.0 * spectrum.c0 * spectrum.rate * avg / (3.0 * w_cut * w_cut * w_cut);
        out.value = scale * (value + tail);
        out.error_estimate = scale * (err + tail);
        return out;
    }
    if (!spectrum.curve) {
        throw std::invalid_argument("qfi_from_spectrum: sampled model has no interpolant");
    }
    const double w_max = spectrum.omegas(spectrum.omegas.size() - 1);
    const double lobe = 2.0 * pi / t_final;
    double value = 0.0, err = 0.0, w = 0.0;
    while (w < w_max) {
        const double w_next = std::min(w + lobe, w_max);
        const auto q = num::integrate_gk(integrand, w, w_next, 1e-11);
        value += q.value;
        err += q.error;
        w = w_next;
    }
    out.value = scale * value;
    out.error_estimate = scale * err + 1e-3 * std::abs(out.value);  // window bias
    return out;
}

double sensitivity(const CorrelationModel& corr) {
    if (corr.kind == CorrelatorKind::exponential) {
        return 8.0 * corr.variance / corr.rate;
    }
    const double t_max = corr.times(corr.times.size() - 1);
    if (std::abs(correlator_value(corr, t_max)) >
        1e-3 * std::abs(correlator_value(corr, 0.0))) {
        throw NumericError("sensitivity: correlator tail has not decayed on its grid");
    }
    const auto q = num::integrate_gk([&](double u) { return correlator_value(corr, u); },
                                     0.0, t_max, 1e-11);
    return 4.0 * q.value;
}

double sensitivity(const SpectrumModel& spectrum) {
    return 2.0 * spectrum_value(spectrum, 0.0);
}

FilterPeak env_filter_peak() {
    // max over y of sin^4(y)/y^2; omega t = 2 y.
    static const FilterPeak peak = [] {
        const auto ext = num::golden_section_max(
            [](double y) {
                const double s = std::sin(y);
                return s * s * s * s / (y * y);
            },
            0.5, std::numbers::pi - 0.5, 1e-12);
        return FilterPeak{2.0 * ext.x, ext.value};
    }();
    return peak;
}

double bound_loose(int n_qubits, double t_final) {
    const double nt = n_qubits * t_final;
    return nt * nt;
}

double bound_tight(int n_qubits, double t_final) {
    return 0.5 * env_filter_peak().height * bound_loose(n_qubits, t_final);
}

}  // namespace contsense
