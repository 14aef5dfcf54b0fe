#include "contsense/optimize.hpp"

#include <cmath>

namespace contsense {

EnvelopePeak maximize_dimensionless_envelope() {
    const auto ext = num::golden_section_max(dimensionless_envelope, 0.1, 10.0, 1e-10);
    return EnvelopePeak{ext.x, ext.value};
}

namespace {

double env_qfi_at(const ModelSpec& family, double gamma, double t_final,
                  const OptimizeOptions& opt, double* error_out) {
    ModelSpec spec = family;
    spec.gamma = gamma;
    QfiEstimate est;
    switch (opt.route) {
        case Route::closed_form:
            est = qfi_env_from_correlator(autocorrelator_analytic(spec), t_final);
            break;
        case Route::correlator: {
            const SensorModel model = make_model(spec);
            const int n = std::max(opt.grid_points, 16);
            Eigen::VectorXd times(n + 1);
            for (int i = 0; i <= n; ++i) times(i) = 2.0 * t_final * i / n;
            est = qfi_env_from_correlator(autocorrelator_numeric(model, times, opt.tol),
                                          t_final);
            break;
        }
        case Route::finite_difference: {
            FiniteDiffOptions fopt;
            fopt.tol = opt.tol;
            fopt.theta_step = opt.theta_step;
            fopt.threads = opt.threads;
            fopt.use_embedding = opt.use_embedding;
            est = qfi_finite_difference(make_model(spec), t_final,
                                        QfiKind::environmental, fopt);
            break;
        }
        case Route::spectrum:
            est = qfi_from_spectrum(lorentzian_spectrum(autocorrelator_analytic(spec)),
                                    t_final, QfiKind::environmental);
            break;
    }
    if (error_out) *error_out = est.error_estimate;
    return est.value;
}

}  // namespace

OptimumRow optimize_gamma(const ModelSpec& family, double t_final,
                          const OptimizeOptions& opt) {
    if (t_final <= 0.0) {
        throw std::invalid_argument("optimize_gamma: t_final must be > 0");
    }
    if (!(opt.bracket_hi > opt.bracket_lo) || opt.bracket_lo <= 0.0) {
        throw std::invalid_argument("optimize_gamma: bad gamma*t bracket");
    }
    if (opt.coarse_points < 4) {
        throw std::invalid_argument("optimize_gamma: need at least 4 coarse points");
    }

    const double lo = std::log(opt.bracket_lo), hi = std::log(opt.bracket_hi);
    auto value_at_logx = [&](double lx) {
        return env_qfi_at(family, std::exp(lx) / t_final, t_final, opt, nullptr);
    };

    // Coarse scan in log(gamma*t); the interior maximum must look unimodal
    // up to route noise before we trust a local refinement.
    const int np = opt.coarse_points;
    std::vector<double> lx(np), val(np);
    for (int i = 0; i < np; ++i) {
        lx[i] = lo + (hi - lo) * i / (np - 1);
        val[i] = value_at_logx(lx[i]);
    }
    int k = 0;
    for (int i = 1; i < np; ++i) {
        if (val[i] > val[k]) k = i;
    }
    if (k == 0 || k == np - 1) {
        throw NumericError("optimize_gamma: optimum sits on the bracket edge");
    }
    const double vmax = std::abs(val[k]);
    const double jitter =
        vmax * ((opt.route == Route::closed_form || opt.route == Route::spectrum)
                    ? 1e-9
                    : 1e-4);
    for (int i = 1; i < np; ++i) {
        const bool rising = i <= k;
        if (rising && val[i] < val[i - 1] - jitter) {
            throw NumericError("optimize_gamma: coarse scan is not unimodal");
        }
        if (!rising && val[i] > val[i - 1] + jitter) {
            throw NumericError("optimize_gamma: coarse scan is not unimodal");
        }
    }

    const auto ext =
        num::golden_section_max(value_at_logx, lx[k - 1], lx[k + 1], opt.rel_tol);

    OptimumRow row;
    row.n_qubits = family.n_qubits;
    row.t_final = t_final;
    row.gamma_opt = std::exp(ext.x) / t_final;
    row.route = opt.route;
    row.qfi_opt = env_qfi_at(family, row.gamma_opt, t_final, opt, &row.error_estimate);
    return row;
}

ScalingFit scaling_sweep(const ModelSpec& family, const std::vector<int>& n_list,
                         double t_final, const OptimizeOptions& opt) {
    if (n_list.size() < 2) {
        throw std::invalid_argument("scaling_sweep: need at least two sizes to fit");
    }
    ScalingFit fit;
    fit.rows.resize(n_list.size());
    num::parallel_for(static_cast<int>(n_list.size()), opt.threads, [&](int i) {
        ModelSpec spec = family;
        spec.n_qubits = n_list[i];
        if (spec.tag == FamilyTag::spin_squeezer && spec.r < 0.0) {
            spec.r = std::log(8.0 * spec.n_qubits);
        }
        OptimizeOptions inner = opt;
        inner.threads = 1;  // outer loop owns the workers
        fit.rows[i] = optimize_gamma(spec, t_final, inner);
    });

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double qxx = 0, qxy = 0;
    const int n = static_cast<int>(fit.rows.size());
    for (const auto& row : fit.rows) {
        const double x = std::log(static_cast<double>(row.n_qubits));
        const double y = std::log(row.qfi_opt);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        const double j = 0.5 * row.n_qubits;
        const double u = j * (j + 1.0) * t_final * t_final;
        qxx += u * u;
        qxy += u * row.qfi_opt;
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.coefficient = qxy / qxx;
    return fit;
}

}  // namespace contsense
