#pragma once

#include "contsense/qfi.hpp"

namespace contsense {

// Source chain A cascaded into a receiver chain B over the two collective
// emission channels.  Both joint collapse operators and the interconnect
// Hamiltonian annihilate the maximally entangled pair state, which is
// therefore stationary: the receiver absorbs everything the source emits.
struct CascadedPair {
    SpinBasis chain;     // each half; the joint space has dimension chain.dim^2
    Matrix interconnect; // cascade Hamiltonian, assembled channel by channel
    Matrix jump_1;       // J+ (x) I - I (x) J-
    Matrix jump_2;       // J- (x) I - I (x) J+
    Vector dark_state;   // sum_n |n,n> / sqrt(dim)
};

// Construction is verified on the spot: residuals of both jumps, of the
// interconnect, and of the reduced-state identity must all sit below 1e-12.
CascadedPair build_absorber(int n_qubits);

// Probability that continuous photodetection records no click up to t_final,
// for a model whose stationary state is pure (dark).  Computed from the
// non-Hermitian no-jump propagator acting on that state.
double no_click_probability(const SensorModel& model, double theta, double t_final,
                            double tol = 1e-10);

// Fisher information of the binary click / no-click variable at theta = 0,
// from the curvature of no_click_probability: -4 * (quadratic coefficient).
// Uses the same 5-point stencil and step rule as the quantum estimate.
double classical_fisher_binary(const SensorModel& model, double t_final,
                               const FiniteDiffOptions& opt = {});

}  // namespace contsense
