#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace contsense {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Symmetric (maximal-spin) sector of n qubits: total spin j = n/2 and
// dimension n + 1.  Basis states are |j, m> with m descending from +j down
// to -j, so row/column 0 is the maximal-projection state.
struct SpinBasis {
    int n_qubits = 0;
    double total_spin = 0.0;
    int dim = 0;
};

SpinBasis build_basis(int n_qubits);

// Magnetic quantum number of basis index i (m = j - i).
double projection_of_index(const SpinBasis& basis, int index);

enum class Axis { x, y, z, plus, minus };

// Dense operator tagged with its basis.  `hermitian` is set when the matrix
// is Hermitian to within 1e-12 of its largest entry.
struct Operator {
    SpinBasis basis;
    Matrix mat;
    bool hermitian = false;
};

// Wraps a matrix after shape validation and detects hermiticity.
Operator make_operator(const SpinBasis& basis, Matrix mat);

// Collective spin component.  The raising operator carries matrix elements
// sqrt(j(j+1) - m(m+1)) one step above the diagonal; the lowering operator
// is its exact adjoint, and x/y are the standard combinations, so
// [Jx, Jy] = i Jz holds to rounding.
Operator collective_operator(const SpinBasis& basis, Axis axis);

// n . J for a unit vector n (|n| must be 1 within 1e-12).
Operator collective_operator(const SpinBasis& basis, const Eigen::Vector3d& direction);

Operator identity_operator(const SpinBasis& basis);

struct Moment {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance of a Hermitian observable in a density matrix.
// The state must be Hermitian, unit trace within 1e-8, and positive
// semidefinite within 1e-10; the returned variance is clamped at zero and a
// value below -1e-10 is treated as an accuracy failure.
Moment moment(const Operator& op, const Matrix& state);

}  // namespace contsense
