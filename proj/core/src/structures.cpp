#include "contsense/structures.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>

namespace contsense {

namespace {

// (i/2) (A^dag (x) B - A (x) B^dag): interconnect of one cascade channel
// with source operator A and receiver operator B.
Matrix channel_hamiltonian(const Matrix& a, const Matrix& b) {
    const Complex i1(0.0, 1.0);
    Matrix h = 0.5 * i1 * Eigen::kroneckerProduct(a.adjoint(), b).eval();
    h -= 0.5 * i1 * Eigen::kroneckerProduct(a, b.adjoint()).eval();
    return h;
}

}  // namespace

CascadedPair build_absorber(int n_qubits) {
    CascadedPair pair;
    pair.chain = build_basis(n_qubits);
    const int d = pair.chain.dim;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix jp = collective_operator(pair.chain, Axis::plus).mat;
    const Matrix jm = collective_operator(pair.chain, Axis::minus).mat;

    pair.jump_1 = Eigen::kroneckerProduct(jp, id).eval() -
                  Eigen::kroneckerProduct(id, jm).eval();
    pair.jump_2 = Eigen::kroneckerProduct(jm, id).eval() -
                  Eigen::kroneckerProduct(id, jp).eval();
    pair.interconnect = channel_hamiltonian(jp, -jm) + channel_hamiltonian(jm, -jp);

    pair.dark_state = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int n = 0; n < d; ++n) pair.dark_state(n * d + n) = amp;

    const double r1 = (pair.jump_1 * pair.dark_state).norm();
    const double r2 = (pair.jump_2 * pair.dark_state).norm();
    const double rh = (pair.interconnect * pair.dark_state).norm();
    // Reduced state of either chain must be maximally mixed.
    double rho_dev = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex red(0.0, 0.0);
            for (int n = 0; n < d; ++n) {
                red += pair.dark_state(i * d + n) * std::conj(pair.dark_state(j * d + n));
            }
            const double want = (i == j) ? 1.0 / d : 0.0;
            rho_dev = std::max(rho_dev, std::abs(red - Complex(want, 0.0)));
        }
    }
    if (r1 > 1e-12 || r2 > 1e-12 || rh > 1e-12 || rho_dev > 1e-12) {
        throw NumericError("build_absorber: pair state fails a stationarity residual");
    }
    return pair;
}

namespace {

Vector pure_stationary_vector(const SensorModel& model) {
    const Matrix rho = steady_state(model);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.info() != Eigen::Success) {
        throw NumericError("no_click_probability: eigensolver failed on the state");
    }
    const int last = static_cast<int>(es.eigenvalues().size()) - 1;
    if (es.eigenvalues()(last) < 1.0 - 1e-8) {
        throw NumericError(
            "no_click_probability: stationary state is mixed, no dark vector");
    }
    return es.eigenvectors().col(last);
}

}  // namespace

double no_click_probability(const SensorModel& model, double theta, double t_final,
                            double tol) {
    if (t_final < 0.0) {
        throw std::invalid_argument("no_click_probability: t_final must be >= 0");
    }
    Vector psi = pure_stationary_vector(model);
    if (t_final == 0.0) return 1.0;

    const int d = model.basis.dim;
    Matrix h_eff = model.h0.mat + theta * model.generator.mat;
    Matrix damping = Matrix::Zero(d, d);
    for (const auto& j : model.jumps) {
        damping += 0.5 * j.rate * (j.op.mat.adjoint() * j.op.mat);
    }
    const Complex i1(0.0, 1.0);
    const Matrix gen = -i1 * h_eff - damping;

    num::IntegrateOptions iopt;
    iopt.tol = tol;
    num::integrate_adaptive(
        [&gen](double, const Vector& x, Vector& out) { out.noalias() = gen * x; }, psi,
        0.0, t_final, iopt);
    return psi.squaredNorm();
}

double classical_fisher_binary(const SensorModel& model, double t_final,
                               const FiniteDiffOptions& opt) {
    if (t_final <= 0.0) {
        throw std::invalid_argument("classical_fisher_binary: t_final must be > 0");
    }
    const double variance = moment(model.generator, steady_state(model)).variance;
    if (!(variance > 0.0)) {
        throw NumericError("classical_fisher_binary: coupling variance vanishes");
    }
    const double h = (opt.theta_step > 0.0)
                         ? opt.theta_step
                         : 1e-3 / (t_final * std::sqrt(variance));

    const std::array<double, 5> thetas{0.0, h, -h, 2.0 * h, -2.0 * h};
    std::array<double, 5> p{};
    num::parallel_for(5, opt.threads, [&](int i) {
        p[i] = no_click_probability(model, thetas[i], t_final, opt.tol);
    });
    if (std::abs(p[0] - 1.0) > 1e-6) {
        throw NumericError(
            "classical_fisher_binary: no-click probability at theta = 0 is not 1");
    }
    const double h2 = h * h;
    const double d5 =
        (-p[3] + 16.0 * p[1] - 30.0 * p[0] + 16.0 * p[2] - p[4]) / (12.0 * h2);
    const double d3 = (p[1] - 2.0 * p[0] + p[2]) / h2;
    const double value = -2.0 * d5;  // p(theta) = 1 + C2 theta^2, I = -4 C2
    const double richardson = 2.0 * std::abs(d5 - d3);
    const double noise_floor = 15.0 * opt.tol / h2;
    if (richardson > 0.05 * std::max(std::abs(value), 20.0 * noise_floor)) {
        throw NumericError("classical_fisher_binary: stencils disagree beyond 5%");
    }
    return value;
}

}  // namespace contsense
