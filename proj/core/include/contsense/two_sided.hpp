#pragma once

#include "contsense/liouvillian.hpp"

namespace contsense {

// Result of propagating the generalized (two-sided) state mu whose trace
// norm encodes parameter distinguishability.  mu(0) is the stationary state;
// the coupling operator is re-centered so its stationary mean vanishes.
struct PseudoState {
    SpinBasis basis;
    Matrix mu;
    double theta = 0.0;
    double t_final = 0.0;
};

enum class EvolveBackend {
    adaptive_rk,   // step-controlled Dormand-Prince on the state
    exponential,   // dense exponential of the assembled generator
};

struct TwoSidedOptions {
    double tol = 1e-10;
    EvolveBackend backend = EvolveBackend::adaptive_rk;
};

// Direct route: d mu = -i h0 mu + i mu (h0 + theta Zc) + dissipators, with
// Zc the re-centered coupling.  |tr mu| and tr(mu mu^dag) are what the
// information functionals consume.
PseudoState evolve_pseudo(const SensorModel& model, double theta, double t_final,
                          const TwoSidedOptions& opt = {});

// Physical route: one auxiliary qubit is attached, the coupling acts only
// when the auxiliary is in |1>, jumps act as L (x) I, and the pair starts in
// steady_state (x) |+><+|.  The off-diagonal auxiliary block, times two,
// satisfies the same two-sided equation, so both routes must agree; keeping
// them separate is the point, as each validates the other.
PseudoState evolve_embedded(const SensorModel& model, double theta, double t_final,
                            const TwoSidedOptions& opt = {});

}  // namespace contsense
