#include "contsense/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "contsense/errors.hpp"

namespace contsense {

SpinBasis build_basis(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("build_basis: n_qubits must be >= 1");
    }
    return SpinBasis{n_qubits, 0.5 * n_qubits, n_qubits + 1};
}

double projection_of_index(const SpinBasis& basis, int index) {
    if (index < 0 || index >= basis.dim) {
        throw std::invalid_argument("projection_of_index: index out of range");
    }
    return basis.total_spin - index;
}

namespace {

Matrix ladder_plus(const SpinBasis& b) {
    Matrix jp = Matrix::Zero(b.dim, b.dim);
    const double j = b.total_spin;
    for (int i = 1; i < b.dim; ++i) {
        const double m = j - i;  // raising maps |j,m> up to |j,m+1>
        jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    return jp;
}

bool detect_hermitian(const Matrix& a) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

Operator make_operator(const SpinBasis& basis, Matrix mat) {
    if (mat.rows() != basis.dim || mat.cols() != basis.dim) {
        throw std::invalid_argument("make_operator: matrix shape does not match basis dimension");
    }
    Operator op{basis, std::move(mat), false};
    op.hermitian = detect_hermitian(op.mat);
    return op;
}

Operator collective_operator(const SpinBasis& basis, Axis axis) {
    const Complex i1(0.0, 1.0);
    const Matrix jp = ladder_plus(basis);
    const Matrix jm = jp.adjoint();
    switch (axis) {
        case Axis::plus:
            return Operator{basis, jp, false};
        case Axis::minus:
            return Operator{basis, jm, false};
        case Axis::x:
            return Operator{basis, 0.5 * (jp + jm), true};
        case Axis::y:
            return Operator{basis, -0.5 * i1 * (jp - jm), true};
        case Axis::z: {
            Matrix jz = Matrix::Zero(basis.dim, basis.dim);
            for (int k = 0; k < basis.dim; ++k) {
                jz(k, k) = basis.total_spin - k;
            }
            return Operator{basis, jz, true};
        }
    }
    throw std::invalid_argument("collective_operator: unknown axis");
}

Operator collective_operator(const SpinBasis& basis, const Eigen::Vector3d& direction) {
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("collective_operator: direction must be a unit vector");
    }
    Matrix m = direction.x() * collective_operator(basis, Axis::x).mat +
               direction.y() * collective_operator(basis, Axis::y).mat +
               direction.z() * collective_operator(basis, Axis::z).mat;
    return Operator{basis, std::move(m), true};
}

Operator identity_operator(const SpinBasis& basis) {
    return Operator{basis, Matrix::Identity(basis.dim, basis.dim), true};
}

Moment moment(const Operator& op, const Matrix& state) {
    const int d = op.basis.dim;
    if (state.rows() != d || state.cols() != d) {
        throw std::invalid_argument("moment: state shape does not match operator basis");
    }
    if (!op.hermitian) {
        throw std::invalid_argument("moment: observable must be Hermitian");
    }
    const double state_scale = std::max(1.0, state.cwiseAbs().maxCoeff());
    if ((state - state.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * state_scale) {
        throw std::invalid_argument("moment: state is not Hermitian");
    }
    if (std::abs(state.trace() - Complex(1.0, 0.0)) > 1e-8) {
        throw std::invalid_argument("moment: state trace differs from 1 beyond 1e-8");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (state + state.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double lam_max = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, lam_max)) {
        throw std::invalid_argument("moment: state has a negative eigenvalue beyond 1e-10");
    }

    const Matrix prod = state * op.mat;
    const double mean = prod.trace().real();
    const double second = (prod * op.mat).trace().real();
    double var = second - mean * mean;
    if (var < -1e-10 * std::max(1.0, second)) {
        throw NumericError("moment: variance came out negative beyond tolerance");
    }
    return Moment{mean, std::max(var, 0.0)};
}

}  // namespace contsense
