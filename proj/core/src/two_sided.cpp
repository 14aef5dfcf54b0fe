#include "contsense/two_sided.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "lindblad_detail.hpp"

namespace contsense {

namespace {

// Coupling operator with its stationary mean subtracted.  The shift only
// rephases mu globally, leaving |tr mu| and tr(mu mu^dag) untouched, but it
// keeps the integrated phase small and the finite differences well scaled.
Matrix centered_coupling(const SensorModel& model, const Matrix& rho_ss) {
    const Matrix& z = model.generator.mat;
    const double mean = (rho_ss * z).trace().real();
    return z - mean * Matrix::Identity(z.rows(), z.cols());
}

Matrix exponential_step(const Matrix& h_left, const Matrix& h_right,
                        const std::vector<JumpTerm>& jumps, const Matrix& x0,
                        double t_final) {
    const int d = static_cast<int>(x0.rows());
    const Matrix g = detail::superoperator_matrix(h_left, h_right, jumps, 4096);
    const Matrix w = (t_final * g).exp();
    Vector v = Eigen::Map<const Vector>(x0.data(), d * d);
    v = w * v;
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

}  // namespace

PseudoState evolve_pseudo(const SensorModel& model, double theta, double t_final,
                          const TwoSidedOptions& opt) {
    if (t_final < 0.0) {
        throw std::invalid_argument("evolve_pseudo: t_final must be nonnegative");
    }
    const Matrix rho_ss = steady_state(model);
    const Matrix zc = centered_coupling(model, rho_ss);
    const Matrix h_right = model.h0.mat + theta * zc;

    Matrix mu = rho_ss;
    if (t_final > 0.0) {
        if (opt.backend == EvolveBackend::exponential) {
            mu = exponential_step(model.h0.mat, h_right, model.jumps, mu, t_final);
        } else {
            const auto c = detail::compile(model.h0.mat, h_right, model.jumps);
            num::IntegrateOptions iopt;
            iopt.tol = opt.tol;
            num::integrate_adaptive(
                [&c](double, const Matrix& x, Matrix& out) { c.apply(x, out); }, mu,
                0.0, t_final, iopt);
        }
    }
    return PseudoState{model.basis, std::move(mu), theta, t_final};
}

PseudoState evolve_embedded(const SensorModel& model, double theta, double t_final,
                            const TwoSidedOptions& opt) {
    if (t_final < 0.0) {
        throw std::invalid_argument("evolve_embedded: t_final must be nonnegative");
    }
    const int d = model.basis.dim;
    const Matrix rho_ss = steady_state(model);
    const Matrix zc = centered_coupling(model, rho_ss);

    // Auxiliary qubit is the fast index: joint row a*2 + b.
    const Matrix id2 = Matrix::Identity(2, 2);
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;

    const Matrix h_joint = Eigen::kroneckerProduct(model.h0.mat, id2).eval() +
                           theta * Eigen::kroneckerProduct(zc, p1).eval();
    std::vector<JumpTerm> jumps_joint;
    jumps_joint.reserve(model.jumps.size());
    SpinBasis joint_basis{model.basis.n_qubits, model.basis.total_spin, 2 * d};
    for (const auto& j : model.jumps) {
        Matrix lj = Eigen::kroneckerProduct(j.op.mat, id2).eval();
        jumps_joint.push_back({Operator{joint_basis, std::move(lj), false}, j.rate});
    }
    Matrix rho = Eigen::kroneckerProduct(rho_ss, plus).eval();

    if (t_final > 0.0) {
        if (opt.backend == EvolveBackend::exponential) {
            rho = exponential_step(h_joint, h_joint, jumps_joint, rho, t_final);
        } else {
            const auto c = detail::compile(h_joint, h_joint, jumps_joint);
            num::IntegrateOptions iopt;
            iopt.tol = opt.tol;
            num::integrate_adaptive(
                [&c](double, const Matrix& x, Matrix& out) { c.apply(x, out); }, rho,
                0.0, t_final, iopt);
        }
    }

    // mu_ij = 2 <i, aux=0| rho |j, aux=1>.
    Matrix mu(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            mu(i, j) = 2.0 * rho(2 * i, 2 * j + 1);
        }
    }
    return PseudoState{model.basis, std::move(mu), theta, t_final};
}

}  // namespace contsense
