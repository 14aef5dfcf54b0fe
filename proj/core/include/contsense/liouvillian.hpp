#pragma once

#include <string>
#include <vector>

#include "contsense/numerics.hpp"
#include "contsense/spin_algebra.hpp"

namespace contsense {

struct JumpTerm {
    Operator op;
    double rate = 0.0;  // nonnegative prefactor of the dissipator
};

// How the stationary state is obtained.  The closed forms are cheap and
// exact for the families that ship with the library; `generic` falls back
// to the null space of the assembled generator.
enum class SteadyStateForm {
    maximally_mixed,   // identity / dim
    dark_state,        // normalized kernel vector of the single jump operator
    weighted_inverse,  // state proportional to inverse of (L^dag L)
    generic,
};

// Open collective-spin sensor.  The coherent part is h0 + theta * generator;
// each jump contributes rate * (L x L^dag - {L^dag L, x}/2).
struct SensorModel {
    SpinBasis basis;
    Operator h0;
    Operator generator;
    std::vector<JumpTerm> jumps;
    SteadyStateForm steady_form = SteadyStateForm::generic;
    bool env_correlator_route = false;  // two-time-correlator formulas apply
    std::string label;
};

// Right-hand side of the master equation, evaluated with matrix products;
// cost is O(dim^3) and the dim^2 x dim^2 generator is never formed.
Matrix lindblad_rhs(const SensorModel& model, double theta, const Matrix& rho);

// Column-stacked matrix of the same map, built from vec(A X B) = (B^T (x) A).
// Refuses to allocate above max_dim_sq rows.
Matrix assemble_superoperator(const SensorModel& model, double theta,
                              int max_dim_sq = 4096);

// Stationary state per model.steady_form.  Postcondition (checked): the
// master-equation residual at theta = 0 is below 1e-10 on the scale of the
// jump rates, and for `generic` the null space is one dimensional.
Matrix steady_state(const SensorModel& model);

struct PropagateOptions {
    double tol = 1e-10;
};

// Evolves rho0 for time t_final at frozen theta.  Trace and hermiticity are
// verified to 10 * tol afterwards.
Matrix propagate(const SensorModel& model, double theta, const Matrix& rho0,
                 double t_final, const PropagateOptions& opt = {});

}  // namespace contsense
