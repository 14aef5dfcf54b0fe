#pragma once

// Internal helpers shared by the propagation translation units.  Not installed.

#include <vector>

#include "contsense/liouvillian.hpp"

namespace contsense::detail {

// Master-equation data with L^dag L cached, for tight propagation loops.
// Supports distinct left/right Hamiltonians so the same kernel also serves
// the two-sided equation d mu = -i h_left mu + i mu h_right + dissipators.
struct CompiledLindblad {
    Matrix h_left;
    Matrix h_right;
    struct Channel {
        Matrix l;
        Matrix ldl;  // rate * L^dag L
        double rate;
    };
    std::vector<Channel> channels;

    void apply(const Matrix& x, Matrix& out) const {
        const Complex i1(0.0, 1.0);
        out.noalias() = -i1 * (h_left * x);
        out.noalias() += i1 * (x * h_right);
        for (const auto& ch : channels) {
            out.noalias() += ch.rate * (ch.l * x * ch.l.adjoint());
            out.noalias() -= 0.5 * (ch.ldl * x);
            out.noalias() -= 0.5 * (x * ch.ldl);
        }
    }
};

inline CompiledLindblad compile(const Matrix& h_left, const Matrix& h_right,
                                const std::vector<JumpTerm>& jumps) {
    CompiledLindblad c;
    c.h_left = h_left;
    c.h_right = h_right;
    for (const auto& j : jumps) {
        if (j.rate < 0.0) {
            throw std::invalid_argument("jump rate must be nonnegative");
        }
        if (j.rate == 0.0) continue;
        Matrix ldl = j.rate * (j.op.mat.adjoint() * j.op.mat);
        c.channels.push_back({j.op.mat, std::move(ldl), j.rate});
    }
    return c;
}

inline CompiledLindblad compile(const SensorModel& model, double theta) {
    Matrix h = model.h0.mat;
    if (theta != 0.0) h += theta * model.generator.mat;
    return compile(h, h, model.jumps);
}

// Superoperator of d x = -i (h_left x - x h_right) + sum rate D[L] x in the
// column-stacking convention vec(A X B) = (B^T kron A) vec(X).
Matrix superoperator_matrix(const Matrix& h_left, const Matrix& h_right,
                            const std::vector<JumpTerm>& jumps, int max_dim_sq);

// Typical magnitude of the dissipative part, used to scale residual checks.
double rate_scale(const SensorModel& model);

}  // namespace contsense::detail
