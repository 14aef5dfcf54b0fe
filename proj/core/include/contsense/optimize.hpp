#pragma once

#include <vector>

#include "contsense/qfi.hpp"

namespace contsense {

struct EnvelopePeak {
    double x = 0.0;      // argmax, about 1.89
    double value = 0.0;  // peak height, about 0.381
};
EnvelopePeak maximize_dimensionless_envelope();

enum class Route { closed_form, correlator, finite_difference, spectrum };

struct OptimizeOptions {
    Route route = Route::closed_form;
    // Bracket and coarse scan in gamma * t units; the scan must be unimodal
    // before golden-section refinement kicks in.
    double bracket_lo = 0.01;
    double bracket_hi = 50.0;
    int coarse_points = 50;
    double rel_tol = 1e-4;    // relative accuracy of gamma_opt
    double tol = 1e-10;       // propagation accuracy for numeric routes
    double theta_step = 0.0;  // finite-difference override (0 = auto)
    int threads = 1;
    int grid_points = 400;    // correlator-route time resolution per t_final
    // finite-difference stencil states: physical embedding or the direct
    // equation (cheaper, same answer; the routes are cross-checked in tests)
    bool use_embedding = true;
};

struct OptimumRow {
    int n_qubits = 0;
    double t_final = 0.0;
    double gamma_opt = 0.0;
    double qfi_opt = 0.0;
    Route route = Route::closed_form;
    double error_estimate = 0.0;
};

// Maximizes the environmental information over the coupling rate at fixed
// interrogation time.  Throws NumericError when the coarse scan is not
// unimodal or the optimum sits on the bracket edge.
OptimumRow optimize_gamma(const ModelSpec& family, double t_final,
                          const OptimizeOptions& opt = {});

struct ScalingFit {
    std::vector<OptimumRow> rows;
    double exponent = 0.0;     // least-squares slope of log qfi_opt vs log n
    double coefficient = 0.0;  // through-origin fit of qfi_opt vs j(j+1) t^2
};

// optimize_gamma across qubit numbers, plus scaling fits.  For the squeezer
// family a negative `family.r` means "track the size": r = ln(8 n).
ScalingFit scaling_sweep(const ModelSpec& family, const std::vector<int>& n_list,
                         double t_final, const OptimizeOptions& opt = {});

}  // namespace contsense
