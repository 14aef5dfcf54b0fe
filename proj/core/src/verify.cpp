#include "contsense/verify.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace contsense {

namespace {

using Clock = std::chrono::steady_clock;

struct BoundEntry {
    int n_qubits;
    double t_final;
    double value;
    std::string label;
};

struct Context {
    VerifyOptions opts;
    std::vector<BoundEntry> env_values;  // every environmental estimate produced

    void record(int n, double t, double value, std::string label) {
        env_values.push_back({n, t, value, std::move(label)});
    }
};

std::string fmt(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// ---------------------------------------------------------------- criterionable

CriterionResult c01_su2_algebra(Context&) {
    CriterionResult r{1, "su2_algebra"};
    double worst_comm = 0.0, worst_casimir = 0.0, worst_ladder = 0.0, worst_var = 0.0;
    for (int n = 1; n <= 64; ++n) {
        const SpinBasis b = build_basis(n);
        const Matrix jx = collective_operator(b, Axis::x).mat;
        const Matrix jy = collective_operator(b, Axis::y).mat;
        const Matrix jz = collective_operator(b, Axis::z).mat;
        const Matrix jp = collective_operator(b, Axis::plus).mat;
        const Matrix jm = collective_operator(b, Axis::minus).mat;
        const Complex i1(0.0, 1.0);
        worst_comm = std::max(worst_comm,
                              (jx * jy - jy * jx - i1 * jz).cwiseAbs().maxCoeff());
        worst_comm = std::max(worst_comm,
                              (jy * jz - jz * jy - i1 * jx).cwiseAbs().maxCoeff());
        worst_comm = std::max(worst_comm,
                              (jz * jx - jx * jz - i1 * jy).cwiseAbs().maxCoeff());
        const double j = b.total_spin;
        const Matrix cas = jx * jx + jy * jy + jz * jz -
                           j * (j + 1.0) * Matrix::Identity(b.dim, b.dim);
        worst_casimir = std::max(worst_casimir, cas.cwiseAbs().maxCoeff());
        worst_ladder =
            std::max(worst_ladder, (Matrix(jp.adjoint()) - jm).cwiseAbs().maxCoeff());
        if (n == 1 || n == 8 || n == 64) {
            const Matrix mixed = Matrix::Identity(b.dim, b.dim) / double(b.dim);
            const double var = moment(collective_operator(b, Axis::z), mixed).variance;
            worst_var = std::max(worst_var, std::abs(var - j * (j + 1.0) / 3.0));
        }
    }
    r.passed = worst_comm <= 1e-12 && worst_casimir <= 1e-12 && worst_ladder == 0.0 &&
               worst_var <= 1e-10;
    r.details = "n=1..64: max |[Ji,Jj]-i e_ijk Jk| = " + fmt(worst_comm, 3) +
                ", max Casimir dev = " + fmt(worst_casimir, 3) +
                ", ladder adjointness = " + fmt(worst_ladder, 3) +
                ", mixed-state variance dev = " + fmt(worst_var, 3) + " (tol 1e-12)";
    return r;
}

CriterionResult c02_stationary_states(Context&) {
    CriterionResult r{2, "stationary_states"};
    double worst_mixed = 0.0;
    for (int n : {2, 5, 10, 16}) {
        SensorModel m = high_temperature(n, 1.3);
        const Matrix closed = steady_state(m);
        m.steady_form = SteadyStateForm::generic;
        const Matrix nullsp = steady_state(m);
        worst_mixed = std::max(worst_mixed, (closed - nullsp).cwiseAbs().maxCoeff());
    }
    double worst_dark = 0.0;
    for (int n : {2, 4, 8, 16}) {
        const SensorModel m = spin_squeezer(n, 1.0, 1.2);
        const Matrix rho = steady_state(m);
        const Matrix& l = m.jumps.front().op.mat;
        // purity, then the jump residual measured on the state vector itself;
        // sqrt of the quadratic form tr(L rho L^dag) would bottom out near
        // sqrt(machine epsilon) and could never reach 1e-12
        worst_dark = std::max(worst_dark,
                              std::abs((rho * rho).trace().real() - 1.0));
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        const Vector psi = es.eigenvectors().col(rho.rows() - 1);
        worst_dark = std::max(worst_dark, (l * psi).norm() / l.norm());
    }
    double worst_odd = 0.0;
    for (int n : {3, 7, 15}) {
        const SensorModel m = spin_squeezer(n, 1.0, 1.0);
        const Matrix rho = steady_state(m);
        worst_odd = std::max(worst_odd, lindblad_rhs(m, 0.0, rho).cwiseAbs().maxCoeff());
    }
    r.passed = worst_mixed <= 1e-10 && worst_dark <= 1e-12 && worst_odd <= 1e-10;
    r.details = "null-space vs maximally mixed dev = " + fmt(worst_mixed, 3) +
                "; dark purity/kernel residual = " + fmt(worst_dark, 3) +
                "; odd-size inverse-form residual = " + fmt(worst_odd, 3);
    return r;
}

CriterionResult c03_correlator_closed_forms(Context&) {
    CriterionResult r{3, "correlator_closed_forms"};
    double worst = 0.0;
    std::string worst_at = "none";
    auto compare = [&](const ModelSpec& spec) {
        const SensorModel model = make_model(spec);
        const double gamma = spec.gamma;
        Eigen::VectorXd times(21);
        for (int i = 0; i < 21; ++i) times(i) = 5.0 / gamma * i / 20.0;
        const CorrelationModel num = autocorrelator_numeric(model, times, 1e-10);
        const CorrelationModel ana = autocorrelator_analytic(spec);
        for (int i = 0; i < 21; ++i) {
            const double want = correlator_value(ana, times(i));
            const double got = num.values(i);
            const double dev = std::abs(got - want) / std::abs(want);
            if (dev > worst) {
                worst = dev;
                worst_at = model.label + " t=" + fmt(times(i), 3);
            }
        }
    };
    for (int n : {2, 6, 10}) {
        for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
            compare({FamilyTag::high_temperature, n, 1.0, 0.0, 0.0, ax});
        }
    }
    for (double eta : {0.0, -0.5, 0.9}) {
        for (Axis ax : {Axis::x, Axis::y, Axis::z}) {
            compare({FamilyTag::dephasing_family, 4, 1.0, eta, 0.0, ax});
        }
    }
    compare({FamilyTag::spin_squeezer, 2, 0.8, 0.0, 1.1, Axis::x});
    compare({FamilyTag::single_qubit_loss, 1, 1.0, 0.0, 0.0, Axis::x});
    r.passed = worst <= 1e-6;
    r.details = "max relative deviation over t in [0, 5/gamma] = " + fmt(worst, 3) +
                " (worst: " + worst_at + ", tol 1e-6)";
    return r;
}

CriterionResult c04_env_prefactor(Context& ctx) {
    CriterionResult r{4, "env_prefactor_adjudication"};
    // High-temperature family: the closed form has a single undetermined
    // overall constant; measure it against the physical-embedding oracle.
    struct Cfg {
        int n;
        double gamma;
    };
    const double t_final = 1.0;
    std::vector<double> ratios;
    double worst_route = 0.0;
    std::vector<Cfg> grid;
    for (int n : {2, 4, 6}) {
        for (double gt : {0.5, 0.945, 2.0}) grid.push_back({n, gt / t_final});
    }
    for (const Cfg cfg : grid) {
        const SensorModel model = high_temperature(cfg.n, cfg.gamma);
        const double variance = 0.5 * cfg.n * (0.5 * cfg.n + 1.0) / 3.0;
        FiniteDiffOptions fopt;
        fopt.tol = 1e-10;
        fopt.theta_step = 0.02 / (t_final * std::sqrt(variance));
        fopt.threads = ctx.opts.threads;
        const QfiEstimate brute =
            qfi_finite_difference(model, t_final, QfiKind::environmental, fopt);
        const double envelope = variance * t_final * t_final *
                                dimensionless_envelope(2.0 * cfg.gamma * t_final);
        ratios.push_back(brute.value / envelope);
        const QfiEstimate closed = qfi_env_from_correlator(
            autocorrelator_analytic({FamilyTag::high_temperature, cfg.n, cfg.gamma}),
            t_final);
        worst_route = std::max(worst_route, rel_diff(brute.value, closed.value));
        ctx.record(cfg.n, t_final, brute.value,
                   "thermal brute n=" + std::to_string(cfg.n));
        ctx.record(cfg.n, t_final, closed.value,
                   "thermal closed n=" + std::to_string(cfg.n));
    }
    double k_hat = 0.0;
    for (double v : ratios) k_hat += v;
    k_hat /= ratios.size();
    double spread = 0.0;
    for (double v : ratios) spread = std::max(spread, std::abs(v - k_hat));

    // Squeezer cross-route: numeric correlator (quadrature) vs the same oracle.
    struct SCfg {
        int n;
        double r_sq, gamma;
    };
    double worst_sq = 0.0;
    for (const SCfg cfg :
         {SCfg{2, 1.0, 0.4}, SCfg{2, 2.0, 0.945}, SCfg{4, std::log(32.0), 0.473}}) {
        const SensorModel model = spin_squeezer(cfg.n, cfg.gamma, cfg.r_sq);
        const double variance = moment(model.generator, steady_state(model)).variance;
        FiniteDiffOptions fopt;
        fopt.tol = 1e-10;
        fopt.theta_step = 0.02 / (t_final * std::sqrt(variance));
        fopt.threads = ctx.opts.threads;
        const QfiEstimate brute =
            qfi_finite_difference(model, t_final, QfiKind::environmental, fopt);
        Eigen::VectorXd times(481);
        for (int i = 0; i < 481; ++i) times(i) = 2.0 * t_final * i / 480.0;
        const QfiEstimate viaCorr = qfi_env_from_correlator(
            autocorrelator_numeric(model, times, 1e-10), t_final);
        worst_sq = std::max(worst_sq, rel_diff(brute.value, viaCorr.value));
        ctx.record(cfg.n, t_final, brute.value,
                   "squeezer brute n=" + std::to_string(cfg.n) + " r=" + fmt(cfg.r_sq, 3));
    }

    const double dev4 = std::abs(k_hat - kEnvRoutePrefactor) / kEnvRoutePrefactor;
    const double dev1 = std::abs(k_hat - 1.0);
    r.passed = dev4 <= 5e-3 && spread <= 5e-3 * k_hat && worst_route <= 5e-3 &&
               worst_sq <= 5e-3 && dev4 * 10.0 < dev1;
    r.details = "measured prefactor = " + fmt(k_hat, 7) + " (spread " + fmt(spread, 2) +
                "); candidate 4 deviation " + fmt(dev4, 2) + ", candidate 1 deviation " +
                fmt(dev1, 3) + "; closed-route mismatch " + fmt(worst_route, 2) +
                ", squeezer quadrature-route mismatch " + fmt(worst_sq, 2) +
                " (tol 0.5%)";
    return r;
}

CriterionResult c05_coupling_optimum(Context&) {
    CriterionResult r{5, "coupling_optimum"};
    const EnvelopePeak peak = maximize_dimensionless_envelope();
    // The quoted optimum varies between 1.89/T and 1.92/T; the window below
    // brackets both, and the refined value is pinned separately.
    const bool peak_ok = peak.x >= 1.85 && peak.x <= 1.95 &&
                         std::abs(peak.x - 1.8926) <= 2e-3 &&
                         std::abs(peak.value - 0.381) <= 1e-3;

    // rate_multiplier * gamma_opt * t must land on the envelope peak.
    struct Cfg {
        ModelSpec spec;
        double mult;
        double t_final;
    };
    std::vector<Cfg> cfgs = {
        {{FamilyTag::high_temperature, 6, 1.0, 0.0, 0.0, Axis::z}, 2.0, 1.0},
        {{FamilyTag::high_temperature, 6, 1.0, 0.0, 0.0, Axis::x}, 1.0, 2.0},
        {{FamilyTag::dephasing_family, 4, 1.0, 0.5, 0.0, Axis::y}, 1.5, 0.7},
        {{FamilyTag::spin_squeezer, 4, 1.0, 0.0, 2.0, Axis::x},
         1.0 + std::tanh(2.0) * std::tanh(2.0), 1.0},
        {{FamilyTag::single_qubit_loss, 1, 1.0, 0.0, 0.0, Axis::x}, 0.5, 1.5},
    };
    double worst = 0.0;
    for (const auto& cfg : cfgs) {
        const OptimumRow row = optimize_gamma(cfg.spec, cfg.t_final, {});
        const double x_star = cfg.mult * row.gamma_opt * cfg.t_final;
        worst = std::max(worst, std::abs(x_star - peak.x) / peak.x);
    }
    r.passed = peak_ok && worst <= 1e-3;
    r.details = "envelope peak x* = " + fmt(peak.x, 6) + ", g* = " + fmt(peak.value, 6) +
                "; max |scaled gamma_opt t - x*|/x* over 5 families = " + fmt(worst, 2) +
                " (tol 1e-3)";
    return r;
}

CriterionResult c06_heisenberg_scaling(Context& ctx) {
    CriterionResult r{6, "heisenberg_scaling"};
    const std::vector<int> big = {64, 128, 256, 512, 1024};
    const double t_final = 1.0;

    OptimizeOptions copt;  // closed-form route defaults
    const ScalingFit thermal = scaling_sweep(
        {FamilyTag::high_temperature, 2, 1.0, 0.0, 0.0, Axis::z}, big, t_final, copt);
    const ScalingFit squeezer = scaling_sweep(
        {FamilyTag::spin_squeezer, 2, 1.0, 0.0, -1.0, Axis::x}, big, t_final, copt);
    const double ratio = squeezer.coefficient / thermal.coefficient;

    // Brute-force dots on the squeezer curve at desk size.
    // The dots sit near gamma* ~ 0.95 (rate multiplier -> 2 at strong
    // squeezing); a narrow bracket and a loose gamma tolerance keep the
    // stencil-evolution count small, since the value is quadratically flat
    // at the optimum and only needs 10%.
    OptimizeOptions dopt;
    dopt.route = Route::finite_difference;
    dopt.bracket_lo = 0.3;
    dopt.bracket_hi = 2.0;
    dopt.coarse_points = 5;
    dopt.rel_tol = 0.04;
    dopt.tol = 2e-8;
    dopt.threads = ctx.opts.threads;
    double worst_dot = 0.0;
    std::string dots;
    for (int n : {4, 8, 12}) {
        const double r_sq = std::log(8.0 * n);
        OptimizeOptions d = dopt;
        const SensorModel probe = spin_squeezer(n, 1.0, r_sq);
        const double variance = moment(probe.generator, steady_state(probe)).variance;
        d.theta_step = 0.05 / (t_final * std::sqrt(variance));
        const OptimumRow dot = optimize_gamma(
            {FamilyTag::spin_squeezer, n, 1.0, 0.0, r_sq, Axis::x}, t_final, d);
        const OptimumRow curve = optimize_gamma(
            {FamilyTag::spin_squeezer, n, 1.0, 0.0, r_sq, Axis::x}, t_final, {});
        const double dev = rel_diff(dot.qfi_opt, curve.qfi_opt);
        worst_dot = std::max(worst_dot, dev);
        dots += " n=" + std::to_string(n) + ": " + fmt(dot.qfi_opt, 5) + " vs " +
                fmt(curve.qfi_opt, 5) + " (" + fmt(100.0 * dev, 2) + "%)";
        ctx.record(n, t_final, dot.qfi_opt, "squeezer dot n=" + std::to_string(n));
        ctx.record(n, t_final, curve.qfi_opt, "squeezer curve n=" + std::to_string(n));
    }
    for (const auto& row : thermal.rows) {
        ctx.record(row.n_qubits, t_final, row.qfi_opt, "thermal sweep");
    }
    for (const auto& row : squeezer.rows) {
        ctx.record(row.n_qubits, t_final, row.qfi_opt, "squeezer sweep");
    }

    const bool slopes_ok = thermal.exponent >= 1.95 && thermal.exponent <= 2.0 &&
                           squeezer.exponent >= 1.95 && squeezer.exponent <= 2.0;
    r.passed = slopes_ok && worst_dot <= 0.10 && std::abs(ratio - 1.5) <= 0.015;
    r.details = "slopes: thermal " + fmt(thermal.exponent, 5) + ", squeezer " +
                fmt(squeezer.exponent, 5) + " (need [1.95, 2]); j(j+1) coefficients " +
                fmt(thermal.coefficient, 5) + " / " + fmt(squeezer.coefficient, 5) +
                ", ratio " + fmt(ratio, 4) + " (variance ratio 3/2, not 3/4); dots:" +
                dots + " (tol 10%)";
    return r;
}

CriterionResult c07_information_ceilings(Context& ctx) {
    CriterionResult r{7, "information_ceilings"};
    int loose_bad = 0, tight_bad = 0;
    double worst_loose = 0.0, worst_tight = 0.0;
    std::string tight_examples;
    for (const auto& e : ctx.env_values) {
        const double loose = bound_loose(e.n_qubits, e.t_final);
        const double tight = bound_tight(e.n_qubits, e.t_final);
        worst_loose = std::max(worst_loose, e.value / loose);
        worst_tight = std::max(worst_tight, e.value / tight);
        if (e.value > loose * (1.0 + 1e-9)) ++loose_bad;
        if (e.value > tight * (1.0 + 1e-3)) {
            ++tight_bad;
            if (tight_bad <= 3) {
                tight_examples += " [" + e.label + ": " + fmt(e.value, 5) + " > " +
                                  fmt(tight, 5) + "]";
            }
        }
    }
    r.passed = loose_bad == 0 && tight_bad == 0;
    r.details = std::to_string(ctx.env_values.size()) +
                " environmental values; coherent ceiling n^2 t^2: max ratio " +
                fmt(worst_loose, 4) + ", violations " + std::to_string(loose_bad) +
                "; filter ceiling 0.2625 n^2 t^2: max ratio " + fmt(worst_tight, 4) +
                ", violations " + std::to_string(tight_bad) + tight_examples +
                (tight_bad ? "; quoted filter constant is half the provable envelope"
                             " (2 * peak = 0.525), strongly squeezed states exceed it"
                           : "");
    return r;
}

CriterionResult c08_split_array_pathology(Context&) {
    CriterionResult r{8, "split_array_pathology"};
    const double gamma = 1.0, t_final = 1.0;
    // Fixed-budget identity: n qubits at gamma/n give 4 n^2 / gamma exactly.
    double worst_sens = 0.0;
    for (int n : {1, 3, 10, 100}) {
        const double direct = independent_array_sensitivity(n, gamma);
        ModelSpec spec{FamilyTag::single_qubit_loss, 1, gamma / n, 0.0, 0.0, Axis::x};
        const double via_corr = n * sensitivity(autocorrelator_analytic(spec));
        worst_sens = std::max(worst_sens, rel_diff(direct, via_corr));
        worst_sens = std::max(worst_sens,
                              rel_diff(direct, 4.0 * n * n / gamma));
    }
    // Per-qubit information must fall with n even though the total grows.
    const std::vector<int> sizes = {1, 2, 5, 10, 20, 50, 100};
    bool per_qubit_falls = true, total_grows = true;
    double prev_pq = 1e300, prev_tot = -1.0;
    for (int n : sizes) {
        const double total = independent_array_qfi(n, gamma, t_final);
        const double pq = total / n;
        if (pq >= prev_pq) per_qubit_falls = false;
        if (total <= prev_tot) total_grows = false;
        prev_pq = pq;
        prev_tot = total;
    }
    const double pq100 = independent_array_qfi(100, gamma, t_final) / 100.0;
    const double limit = gamma * t_final * t_final * t_final / (3.0 * 100.0);
    const double dev100 = rel_diff(pq100, limit);
    r.passed = worst_sens <= 1e-12 && per_qubit_falls && total_grows && dev100 <= 0.05;
    r.details = "sensitivity identity dev = " + fmt(worst_sens, 2) +
                "; per-qubit value falls with n (total still grows towards"
                " gamma t^3 / 3); at n=100 per-qubit vs gamma t^3/(3n): " +
                fmt(100.0 * dev100, 3) + "% (tol 5%)";
    return r;
}

CriterionResult c09_spectral_filter_route(Context&) {
    CriterionResult r{9, "spectral_filter_route"};
    const FilterPeak peak = env_filter_peak();
    const bool peak_ok =
        std::abs(peak.omega_t - 2.332) <= 1e-2 && std::abs(peak.height - 0.525) <= 1e-3;

    struct Cfg {
        double gamma, t_final;
    };
    double worst = 0.0;
    for (const Cfg cfg : {Cfg{1.0, 1.0}, Cfg{0.5, 2.0}, Cfg{2.0, 0.7}}) {
        const ModelSpec spec{FamilyTag::high_temperature, 4, cfg.gamma, 0.0, 0.0,
                             Axis::z};
        const CorrelationModel corr = autocorrelator_analytic(spec);
        const SpectrumModel sp = lorentzian_spectrum(corr);
        const double g_spec = qfi_from_spectrum(sp, cfg.t_final, QfiKind::global).value;
        const double g_time = qfi_global_from_correlator(corr, cfg.t_final).value;
        const double e_spec =
            qfi_from_spectrum(sp, cfg.t_final, QfiKind::environmental).value;
        const double e_time = qfi_env_from_correlator(corr, cfg.t_final).value;
        worst = std::max({worst, rel_diff(g_spec, g_time), rel_diff(e_spec, e_time)});
    }
    r.passed = peak_ok && worst <= 1e-4;
    r.details = "filter peak at omega t = " + fmt(peak.omega_t, 6) + ", height " +
                fmt(peak.height, 6) + "; spectral vs time-domain information, max"
                " relative deviation = " + fmt(worst, 2) + " (tol 1e-4)";
    return r;
}

CriterionResult c10_cascade_absorber(Context&) {
    CriterionResult r{10, "cascade_absorber"};
    double worst = 0.0;
    for (int n : {1, 2, 3, 4, 8, 16, 32}) {
        const CascadedPair pair = build_absorber(n);  // throws above 1e-12
        worst = std::max({worst, (pair.jump_1 * pair.dark_state).norm(),
                          (pair.jump_2 * pair.dark_state).norm(),
                          (pair.interconnect * pair.dark_state).norm()});
    }
    // A single-channel coupling of the same shape cannot keep the pair dark.
    const CascadedPair p2 = build_absorber(2);
    const SpinBasis b2 = build_basis(2);
    const Matrix jp = collective_operator(b2, Axis::plus).mat;
    const Matrix jm = collective_operator(b2, Axis::minus).mat;
    const Complex i1(0.0, 1.0);
    Matrix naive = -0.5 * i1 * Eigen::kroneckerProduct(jm, jp).eval();
    naive += 0.5 * i1 * Eigen::kroneckerProduct(jp, jm).eval();
    const double naive_resid = (naive * p2.dark_state).norm();
    r.passed = worst <= 1e-12 && naive_resid > 0.5;
    r.details = "pair residuals (jumps + interconnect) max = " + fmt(worst, 3) +
                " for n up to 32 (tol 1e-12); one-channel variant residual = " +
                fmt(naive_resid, 3) + ", confirming the channelwise layout";
    return r;
}

CriterionResult c11_click_statistics(Context& ctx) {
    CriterionResult r{11, "click_statistics_optimality"};
    struct Cfg {
        SensorModel model;
        double t_final;
        std::string label;
    };
    const double x_peak = maximize_dimensionless_envelope().x;
    const double t32 = std::tanh(std::log(32.0));
    // Three (gamma, r, t_final) settings per even size, plus the lossy qubit.
    std::vector<Cfg> cfgs;
    cfgs.push_back({spin_squeezer(2, 0.6, 1.0), 1.0, "squeezer n=2 a"});
    cfgs.push_back({spin_squeezer(2, 1.2, 0.7), 0.8, "squeezer n=2 b"});
    cfgs.push_back({spin_squeezer(2, 0.4, 1.5), 1.4, "squeezer n=2 c"});
    cfgs.push_back({spin_squeezer(4, x_peak / (1.0 + t32 * t32), std::log(32.0)), 1.0,
                    "squeezer n=4 at optimum"});
    cfgs.push_back({spin_squeezer(4, 0.8, 1.2), 0.7, "squeezer n=4 b"});
    cfgs.push_back({spin_squeezer(4, 0.5, 2.0), 1.2, "squeezer n=4 c"});
    cfgs.push_back({spin_squeezer(6, 0.5, 1.5), 0.8, "squeezer n=6 a"});
    cfgs.push_back({spin_squeezer(6, 0.9, 1.0), 1.0, "squeezer n=6 b"});
    cfgs.push_back({spin_squeezer(6, 0.35, std::log(48.0)), 1.1, "squeezer n=6 c"});
    cfgs.push_back({single_qubit_loss(1.0), 1.0, "lossy qubit"});
    double worst = 0.0;
    for (const auto& cfg : cfgs) {
        const double variance =
            moment(cfg.model.generator, steady_state(cfg.model)).variance;
        FiniteDiffOptions fopt;
        fopt.tol = 1e-10;
        fopt.theta_step = 0.02 / (cfg.t_final * std::sqrt(variance));
        fopt.threads = ctx.opts.threads;
        const double classical = classical_fisher_binary(cfg.model, cfg.t_final, fopt);
        const QfiEstimate quantum =
            qfi_finite_difference(cfg.model, cfg.t_final, QfiKind::environmental, fopt);
        worst = std::max(worst, rel_diff(classical, quantum.value));
        ctx.record(cfg.model.basis.n_qubits, cfg.t_final, quantum.value, cfg.label);
    }
    r.passed = worst <= 0.01;
    r.details = "binary click test vs environmental information over " +
                std::to_string(cfgs.size()) + " dark-state configs: max relative"
                " gap = " + fmt(worst, 2) + " (tol 1%)";
    return r;
}

CriterionResult c12_lossy_qubit_closed_form(Context& ctx) {
    CriterionResult r{12, "lossy_qubit_closed_form"};
    struct Cfg {
        double gamma, t_final;
    };
    double worst = 0.0;
    for (const Cfg cfg :
         {Cfg{0.5, 1.0}, Cfg{1.0, 1.0}, Cfg{2.0, 1.0}, Cfg{1.0, 0.5}, Cfg{1.0, 2.0}}) {
        const SensorModel model = single_qubit_loss(cfg.gamma);
        FiniteDiffOptions fopt;
        fopt.tol = 1e-12;
        fopt.theta_step = 0.04 / cfg.t_final;  // variance is exactly 1/4
        fopt.threads = ctx.opts.threads;
        const QfiEstimate brute =
            qfi_finite_difference(model, cfg.t_final, QfiKind::environmental, fopt);
        const double closed = single_qubit_loss_qfi(cfg.gamma, cfg.t_final);
        worst = std::max(worst, rel_diff(brute.value, closed));
        ctx.record(1, cfg.t_final, brute.value,
                   "lossy qubit gamma=" + fmt(cfg.gamma, 3));
    }
    // Small-rate behavior: the information is linear in gamma (slope 1 in
    // log-log), approaching gamma t^3 / 3.
    const double q1 = single_qubit_loss_qfi(1e-4, 1.0);
    const double q2 = single_qubit_loss_qfi(2e-4, 1.0);
    const double expo = std::log(q2 / q1) / std::log(2.0);
    const double sens_dev = rel_diff(
        sensitivity(autocorrelator_analytic({FamilyTag::single_qubit_loss, 1, 0.7})),
        4.0 / 0.7);
    r.passed = worst <= 1e-4 && std::abs(expo - 1.0) <= 1e-2 && sens_dev <= 1e-12;
    r.details = "embedding vs closed form, max relative deviation = " + fmt(worst, 2) +
                " (tol 1e-4); small-rate exponent = " + fmt(expo, 4) +
                " (linear, value -> gamma t^3/3); sensitivity 4/gamma dev = " +
                fmt(sens_dev, 2);
    return r;
}

}  // namespace

VerifyReport run_acceptance(const VerifyOptions& opt) {
    Context ctx;
    ctx.opts = opt;
    using Fn = CriterionResult (*)(Context&);
    struct Entry {
        Fn fn;
        int id;
        const char* name;
        double budget_s;  // 0 = no runtime requirement
    };
    // The ceiling check (7) runs last: it audits every environmental value
    // the other criteria produced.
    const Entry order[] = {
        {c01_su2_algebra, 1, "su2_algebra", 10.0},
        {c02_stationary_states, 2, "stationary_states", 0.0},
        {c03_correlator_closed_forms, 3, "correlator_closed_forms", 0.0},
        {c04_env_prefactor, 4, "env_prefactor_adjudication", 300.0},
        {c05_coupling_optimum, 5, "coupling_optimum", 0.0},
        {c06_heisenberg_scaling, 6, "heisenberg_scaling", 600.0},
        {c08_split_array_pathology, 8, "split_array_pathology", 0.0},
        {c09_spectral_filter_route, 9, "spectral_filter_route", 0.0},
        {c10_cascade_absorber, 10, "cascade_absorber", 0.0},
        {c11_click_statistics, 11, "click_statistics_optimality", 120.0},
        {c12_lossy_qubit_closed_form, 12, "lossy_qubit_closed_form", 0.0},
        {c07_information_ceilings, 7, "information_ceilings", 0.0},
    };
    VerifyReport report;
    for (const Entry& entry : order) {
        const auto t0 = Clock::now();
        CriterionResult res;
        try {
            res = entry.fn(ctx);
        } catch (const std::exception& e) {
            // A thrown criterion is a failed criterion, never a crashed suite.
            res.passed = false;
            res.details = std::string("exception: ") + e.what();
        }
        res.id = entry.id;
        res.name = entry.name;
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (entry.budget_s > 0.0 && res.seconds > entry.budget_s) {
            res.passed = false;
            res.details += "; runtime " + fmt(res.seconds, 3) + " s exceeds the " +
                           fmt(entry.budget_s, 3) + " s budget";
        }
        if (opt.on_result) opt.on_result(res);
        report.criteria.push_back(std::move(res));
    }
    std::sort(report.criteria.begin(), report.criteria.end(),
              [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
    report.all_passed = std::all_of(report.criteria.begin(), report.criteria.end(),
                                    [](const CriterionResult& c) { return c.passed; });
    return report;
}

}  // namespace contsense
