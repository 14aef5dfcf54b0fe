#include "contsense/correlators.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "contsense/two_sided.hpp"
#include "lindblad_detail.hpp"

namespace contsense {

namespace detail {

// Uniform-grid cubic interpolant over [t0, t0 + (n-1) dt].
class SampledCurve {
public:
    SampledCurve(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
        if (xs.size() != ys.size() || xs.size() < 4) {
            throw std::invalid_argument("sampled curve: need >= 4 matching points");
        }
        const double dt = xs(1) - xs(0);
        if (dt <= 0.0) throw std::invalid_argument("sampled curve: grid must ascend");
        for (int i = 2; i < xs.size(); ++i) {
            if (std::abs((xs(i) - xs(i - 1)) - dt) > 1e-9 * std::max(dt, 1.0)) {
                throw std::invalid_argument("sampled curve: grid must be uniform");
            }
        }
        lo_ = xs(0);
        hi_ = xs(xs.size() - 1);
        std::vector<double> y(ys.data(), ys.data() + ys.size());
        // One-sided endpoint slopes keep the boundary cells at full cubic
        // accuracy; the spline's own estimate there is only second order.
        const auto n = y.size();
        double dl, dr;
        if (n >= 5) {
            dl = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) /
                 (12.0 * dt);
            dr = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] +
                  3.0 * y[n - 5]) /
                 (12.0 * dt);
        } else {
            dl = (-11.0 * y[0] + 18.0 * y[1] - 9.0 * y[2] + 2.0 * y[3]) / (6.0 * dt);
            dr = (11.0 * y[3] - 18.0 * y[2] + 9.0 * y[1] - 2.0 * y[0]) / (6.0 * dt);
        }
        spline_.emplace(y.begin(), y.end(), lo_, dt, dl, dr);
    }

    double operator()(double x) const {
        if (x < lo_ - 1e-12 || x > hi_ + 1e-12) {
            throw std::invalid_argument("sampled curve: evaluation outside grid span");
        }
        return (*spline_)(std::clamp(x, lo_, hi_));
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_ = 0.0, hi_ = 0.0;
    std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

}  // namespace detail

double correlator_value(const CorrelationModel& corr, double t) {
    if (t < 0.0) throw std::invalid_argument("correlator_value: t must be >= 0");
    if (corr.kind == CorrelatorKind::exponential) {
        return 2.0 * corr.variance * std::exp(-corr.rate * t);
    }
    if (!corr.curve) {
        throw std::invalid_argument("correlator_value: sampled model has no interpolant");
    }
    return (*corr.curve)(t);
}

CorrelationModel make_sampled_correlator(Eigen::VectorXd times, Eigen::VectorXd values,
                                         bool env_route, std::string label) {
    if (times.size() == 0 || std::abs(times(0)) > 1e-12) {
        throw std::invalid_argument("make_sampled_correlator: grid must start at 0");
    }
    CorrelationModel corr;
    corr.kind = CorrelatorKind::sampled;
    corr.variance = 0.5 * values(0);
    corr.rate = 0.0;
    corr.curve = std::make_shared<const detail::SampledCurve>(times, values);
    corr.times = std::move(times);
    corr.values = std::move(values);
    corr.env_route = env_route;
    corr.label = std::move(label);
    return corr;
}

CorrelationModel autocorrelator_numeric(const SensorModel& model,
                                        const Eigen::VectorXd& times, double tol) {
    if (times.size() < 4) {
        throw std::invalid_argument("autocorrelator_numeric: need at least 4 grid points");
    }
    const Matrix rho_ss = steady_state(model);
    const Matrix& z = model.generator.mat;
    const double mean = (rho_ss * z).trace().real();
    const Matrix zc = z - mean * Matrix::Identity(z.rows(), z.cols());

    // d B = L[B] with B(0) = Zc rho + rho Zc; C(t) = tr(Zc B(t)).
    Matrix b = zc * rho_ss + rho_ss * zc;
    const auto c = detail::compile(model, 0.0);
    num::IntegrateOptions iopt;
    iopt.tol = tol;
    Eigen::VectorXd vals(times.size());
    std::vector<double> grid(times.data(), times.data() + times.size());
    num::integrate_observe(
        [&c](double, const Matrix& x, Matrix& out) { c.apply(x, out); }, b, 0.0, grid,
        [&](std::size_t i, const Matrix& x) { vals(static_cast<int>(i)) = (zc * x).trace().real(); },
        iopt);

    CorrelationModel corr = make_sampled_correlator(times, std::move(vals),
                                                    model.env_correlator_route,
                                                    model.label + "_numeric");
    return corr;
}

namespace {

// x-variance of the even-size squeezer dark state via the amplitude
// recursion on one parity class: c_{m+2} = tanh(r) c_m B(m+1)/B(m+2) with
// B(m) = sqrt(j(j+1) - m(m-1)).  O(n), no operator matrices, so the
// analytic route stays cheap at sizes where a dense solve would not be.
double squeezer_dark_variance(int n_qubits, double r) {
    const double j = 0.5 * n_qubits;
    const double t = std::tanh(r);
    const auto bb = [&](double m) { return std::sqrt(j * (j + 1.0) - m * (m - 1.0)); };
    const int len = n_qubits / 2 + 1;  // support on m = -j, -j+2, ..., j
    std::vector<double> c(len);
    c[0] = 1.0;
    for (int i = 1; i < len; ++i) {
        const double m = -j + 2.0 * i;
        c[i] = t * c[i - 1] * bb(m - 1.0) / bb(m);
    }
    double norm2 = 0.0, diag = 0.0, cross = 0.0;
    for (int i = 0; i < len; ++i) {
        const double m = -j + 2.0 * i;
        norm2 += c[i] * c[i];
        diag += c[i] * c[i] * (bb(m) * bb(m) + bb(m + 1.0) * bb(m + 1.0));
        if (i + 1 < len) cross += c[i + 1] * c[i] * bb(m + 1.0) * bb(m + 2.0);
    }
    // <Jx> vanishes across parity classes; 4 Jx^2 = J+^2 + J-^2 + {J+, J-}
    return (diag + 2.0 * cross) / (4.0 * norm2);
}

}  // namespace

CorrelationModel autocorrelator_analytic(const ModelSpec& spec) {
    CorrelationModel corr;
    corr.kind = CorrelatorKind::exponential;
    corr.env_route = true;
    const double j = 0.5 * spec.n_qubits;
    switch (spec.tag) {
        case FamilyTag::high_temperature:
        case FamilyTag::dephasing_family: {
            const double eta = (spec.tag == FamilyTag::high_temperature) ? 0.0 : spec.eta;
            corr.variance = j * (j + 1.0) / 3.0;  // maximally mixed state
            switch (spec.axis) {
                case Axis::x: corr.rate = spec.gamma * (1.0 - eta); break;
                case Axis::y: corr.rate = spec.gamma * (1.0 + eta); break;
                case Axis::z: corr.rate = 2.0 * spec.gamma; break;
                default:
                    throw std::invalid_argument("autocorrelator_analytic: axis must be x, y or z");
            }
            corr.label = "relaxation_eigenoperator";
            break;
        }
        case FamilyTag::spin_squeezer: {
            if (spec.axis != Axis::x) {
                throw std::invalid_argument(
                    "autocorrelator_analytic: squeezer form is for the x coupling");
            }
            if (spec.n_qubits % 2 == 0) {
                corr.variance = squeezer_dark_variance(spec.n_qubits, spec.r);
            } else {
                const SensorModel m = make_model(spec);
                corr.variance = moment(m.generator, steady_state(m)).variance;
            }
            const double t = std::tanh(spec.r);
            corr.rate = spec.gamma * (1.0 + t * t);
            corr.label = "squeezer_asymptotic";
            break;
        }
        case FamilyTag::single_qubit_loss:
            corr.variance = 0.25;
            corr.rate = 0.5 * spec.gamma;
            corr.label = "single_qubit_loss";
            break;
    }
    return corr;
}

double spectrum_value(const SpectrumModel& spec, double omega) {
    if (spec.kind == SpectrumKind::lorentzian) {
        return 2.0 * spec.c0 * spec.rate / (spec.rate * spec.rate + omega * omega);
    }
    if (!spec.curve) {
        throw std::invalid_argument("spectrum_value: sampled model has no interpolant");
    }
    return (*spec.curve)(omega);
}

SpectrumModel lorentzian_spectrum(const CorrelationModel& corr) {
    SpectrumModel s;
    if (corr.kind == CorrelatorKind::exponential) {
        s.kind = SpectrumKind::lorentzian;
        s.c0 = 2.0 * corr.variance;
        s.rate = corr.rate;
        return s;
    }
    // Windowed cosine transform of the grid data.  The window makes the
    // result approximate, which `truncated` advertises.
    const double t_max = corr.times(corr.times.size() - 1);
    if (std::abs(correlator_value(corr, t_max)) > 1e-3 * std::abs(correlator_value(corr, 0.0))) {
        throw NumericError("lorentzian_spectrum: correlator has not decayed on its grid");
    }
    // Cover the spectral weight: ~50 half widths, never under-resolving the grid.
    double t_e = t_max;
    for (int i = 0; i < corr.times.size(); ++i) {
        if (std::abs(corr.values(i)) < std::abs(corr.values(0)) / std::numbers::e) {
            t_e = std::max(corr.times(i), corr.times(1));
            break;
        }
    }
    const int n = 1201;
    const double w_max = std::max(50.0 / t_e, 20.0 * std::numbers::pi / t_max);
    s.kind = SpectrumKind::sampled;
    s.c0 = correlator_value(corr, 0.0);
    s.truncated = true;
    s.omegas.resize(n);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const double w = -w_max + 2.0 * w_max * i / (n - 1);
        const auto q = num::integrate_gk(
            [&](double t) { return correlator_value(corr, t) * std::cos(w * t); }, 0.0,
            t_max, 1e-10);
        s.omegas(i) = w;
        s.values(i) = 2.0 * q.value;
    }
    s.curve = std::make_shared<const detail::SampledCurve>(s.omegas, s.values);
    return s;
}

}  // namespace contsense
