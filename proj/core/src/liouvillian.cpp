#include "contsense/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

#include "lindblad_detail.hpp"

namespace contsense {

namespace detail {

Matrix superoperator_matrix(const Matrix& h_left, const Matrix& h_right,
                            const std::vector<JumpTerm>& jumps, int max_dim_sq) {
    const int d = static_cast<int>(h_left.rows());
    if (d * d > max_dim_sq) {
        throw std::invalid_argument("superoperator: dim^2 exceeds the allocation cap");
    }
    const Complex i1(0.0, 1.0);
    const Matrix id = Matrix::Identity(d, d);

    Matrix s = -i1 * Eigen::kroneckerProduct(id, h_left).eval();
    s += i1 * Eigen::kroneckerProduct(h_right.transpose(), id).eval();
    for (const auto& j : jumps) {
        if (j.rate == 0.0) continue;
        const Matrix& l = j.op.mat;
        const Matrix ldl = l.adjoint() * l;
        s += j.rate * Eigen::kroneckerProduct(l.conjugate(), l).eval();
        s -= 0.5 * j.rate * Eigen::kroneckerProduct(id, ldl).eval();
        s -= 0.5 * j.rate * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
    }
    return s;
}

double rate_scale(const SensorModel& model) {
    double s = 0.0;
    for (const auto& j : model.jumps) {
        s += j.rate * j.op.mat.cwiseAbs().maxCoeff() * j.op.mat.cwiseAbs().maxCoeff();
    }
    return std::max(1.0, s);
}

}  // namespace detail

Matrix lindblad_rhs(const SensorModel& model, double theta, const Matrix& rho) {
    if (rho.rows() != model.basis.dim || rho.cols() != model.basis.dim) {
        throw std::invalid_argument("lindblad_rhs: state shape does not match model basis");
    }
    const auto c = detail::compile(model, theta);
    Matrix out(rho.rows(), rho.cols());
    c.apply(rho, out);
    return out;
}

Matrix assemble_superoperator(const SensorModel& model, double theta, int max_dim_sq) {
    Matrix h = model.h0.mat;
    if (theta != 0.0) h += theta * model.generator.mat;
    return detail::superoperator_matrix(h, h, model.jumps, max_dim_sq);
}

namespace {

// Null vector of the single jump operator; fails when the kernel is not one
// dimensional.
Vector jump_kernel_vector(const SensorModel& model) {
    if (model.jumps.size() != 1) {
        throw std::invalid_argument("steady_state: dark-state form needs exactly one jump");
    }
    const Matrix& l = model.jumps.front().op.mat;
    Eigen::BDCSVD<Matrix> svd(l, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int d = static_cast<int>(sv.size());
    const double smax = sv(0);
    if (sv(d - 1) > 1e-10 * smax) {
        throw NumericError("steady_state: jump operator has no kernel");
    }
    if (d >= 2 && sv(d - 2) <= 1e-6 * smax) {
        throw NumericError("steady_state: jump-operator kernel is degenerate");
    }
    return svd.matrixV().col(d - 1);
}

Matrix generic_nullspace_state(const SensorModel& model) {
    const int d = model.basis.dim;
    if (d * d > 1089) {
        throw std::invalid_argument(
            "steady_state: generic null-space solve capped at dim^2 <= 1089");
    }
    const Matrix s = assemble_superoperator(model, 0.0);
    Eigen::ComplexEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) {
        throw NumericError("steady_state: eigensolver failed on the generator");
    }
    const auto& ev = es.eigenvalues();
    int i_min = 0, i_second = -1;
    for (int i = 1; i < ev.size(); ++i) {
        if (std::abs(ev(i)) < std::abs(ev(i_min))) {
            i_second = i_min;
            i_min = i;
        } else if (i_second < 0 || std::abs(ev(i)) < std::abs(ev(i_second))) {
            i_second = i;
        }
    }
    const double scale = detail::rate_scale(model);
    if (std::abs(ev(i_min)) > 1e-8 * scale) {
        throw NumericError("steady_state: no eigenvalue of the generator is close to zero");
    }
    if (i_second >= 0 && std::abs(ev(i_second)) < 1e-10 * scale) {
        throw NumericError("steady_state: stationary space is degenerate");
    }
    Matrix rho = Eigen::Map<const Matrix>(es.eigenvectors().col(i_min).data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12) {
        throw NumericError("steady_state: null vector is traceless, not a state");
    }
    return rho / tr;
}

}  // namespace

Matrix steady_state(const SensorModel& model) {
    const int d = model.basis.dim;
    Matrix rho;
    switch (model.steady_form) {
        case SteadyStateForm::maximally_mixed:
            rho = Matrix::Identity(d, d) / static_cast<double>(d);
            break;
        case SteadyStateForm::dark_state: {
            const Vector psi = jump_kernel_vector(model);
            rho = psi * psi.adjoint();
            break;
        }
        case SteadyStateForm::weighted_inverse: {
            if (model.jumps.size() != 1) {
                throw std::invalid_argument(
                    "steady_state: weighted-inverse form needs exactly one jump");
            }
            const Matrix& l = model.jumps.front().op.mat;
            const Matrix m = l.adjoint() * l;
            Eigen::FullPivLU<Matrix> lu(m);
            if (!lu.isInvertible()) {
                throw NumericError("steady_state: L^dag L is singular, no weighted inverse");
            }
            rho = lu.inverse();
            rho = 0.5 * (rho + rho.adjoint()).eval();
            rho /= rho.trace().real();
            break;
        }
        case SteadyStateForm::generic:
            rho = generic_nullspace_state(model);
            break;
    }
    const double resid = lindblad_rhs(model, 0.0, rho).cwiseAbs().maxCoeff();
    if (resid > 1e-10 * detail::rate_scale(model)) {
        throw NumericError("steady_state: stationarity residual exceeds 1e-10");
    }
    return rho;
}

Matrix propagate(const SensorModel& model, double theta, const Matrix& rho0,
                 double t_final, const PropagateOptions& opt) {
    if (rho0.rows() != model.basis.dim || rho0.cols() != model.basis.dim) {
        throw std::invalid_argument("propagate: state shape does not match model basis");
    }
    if (t_final < 0.0) {
        throw std::invalid_argument("propagate: t_final must be nonnegative");
    }
    const auto c = detail::compile(model, theta);
    Matrix rho = rho0;
    num::IntegrateOptions iopt;
    iopt.tol = opt.tol;
    num::integrate_adaptive(
        [&c](double, const Matrix& x, Matrix& out) { c.apply(x, out); }, rho, 0.0,
        t_final, iopt);

    const double slack = 10.0 * opt.tol;
    if (std::abs(rho.trace() - rho0.trace()) > slack * std::max(1.0, std::abs(rho0.trace()))) {
        throw NumericError("propagate: trace drifted beyond 10 * tol");
    }
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > slack * scale) {
        throw NumericError("propagate: hermiticity lost beyond 10 * tol");
    }
    return rho;
}

}  // namespace contsense
