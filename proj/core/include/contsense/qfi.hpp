#pragma once

#include "contsense/correlators.hpp"
#include "contsense/two_sided.hpp"

namespace contsense {

enum class QfiKind { global, environmental };
enum class QfiMethod { finite_difference, correlator, spectrum, closed_form };

struct QfiEstimate {
    double value = 0.0;
    QfiKind kind = QfiKind::global;
    QfiMethod method = QfiMethod::finite_difference;
    double theta_step = 0.0;      // finite-difference step actually used
    double error_estimate = 0.0;  // absolute, from Richardson or quadrature
};

// |tr mu|: overlap-type fidelity whose curvature in theta gives the
// information available from system plus environment together.
double fidelity_global(const PseudoState& state);

// tr sqrt(mu mu^dag): trace norm of mu, the environment-only counterpart.
// Always >= fidelity_global; eigenvalues below 1e-14 of the largest are
// treated as zero before the square root.
double fidelity_env(const PseudoState& state);

struct FiniteDiffOptions {
    double theta_step = 0.0;  // 0: 1e-3 / (t sqrt(variance))
    double tol = 1e-10;       // propagation accuracy
    int threads = 1;          // the 5 stencil evolutions are independent
    EvolveBackend backend = EvolveBackend::adaptive_rk;
    // Reference route for the stencil states; `embedded` is the physical
    // construction and the default oracle, `pseudo` the direct equation.
    bool use_embedding = true;
};

// Information from the second derivative of the chosen fidelity at theta = 0:
// value = -4 F''(0), via the symmetric 5-point stencil
// (-F(2h) + 16F(h) - 30F(0) + 16F(-h) - F(-2h)) / (12 h^2).
// The error estimate combines the 5-vs-3-point Richardson difference with
// the propagation noise floor; disagreement beyond 5 percent of the value
// raises NumericError instead of returning garbage.
QfiEstimate qfi_finite_difference(const SensorModel& model, double t_final, QfiKind kind,
                                  const FiniteDiffOptions& opt = {});

// Overall scale of the environmental correlator expression.  Two readings of
// the source formulas differ by a factor of 4; the acceptance suite pins the
// value against the finite-difference oracle, and this constant records the
// outcome.
inline constexpr double kEnvRoutePrefactor = 4.0;

// Dimensionless envelope of the environmental closed form,
// g(x) = 2/x - (3 - 4 e^-x + e^-2x)/x^2 with x = rate * t_final, so that
// value = kEnvRoutePrefactor * variance * t^2 * g.  Grows as (2/3) x,
// saturates at 2/x, peaks near x = 1.89.
double dimensionless_envelope(double x);

// Correlator routes.  Exponential models use closed forms (stable for small
// rate * t); sampled models are integrated by quadrature, which for the
// environmental kind needs the grid to reach 2 * t_final.
QfiEstimate qfi_global_from_correlator(const CorrelationModel& corr, double t_final);
QfiEstimate qfi_env_from_correlator(const CorrelationModel& corr, double t_final);

// Spectral route: overlap of S[w] with the filter sin^2(w t/2)/w^2 (global)
// or sin^4(w t/2)/w^2 (environmental).
QfiEstimate qfi_from_spectrum(const SpectrumModel& spectrum, double t_final, QfiKind kind);

// Long-time information rate: twice the zero-frequency spectrum.  The
// correlator overload integrates 4 * int_0^inf C and refuses non-decayed
// sampled grids.
double sensitivity(const CorrelationModel& corr);
double sensitivity(const SpectrumModel& spectrum);

// Information ceilings for n qubits after time t: the bare coherent bound
// n^2 t^2, and the filter-limited bound 0.5 * fmax * n^2 t^2 with fmax the
// numerically located maximum of the dimensionless environmental filter
// (about 0.525).
double bound_loose(int n_qubits, double t_final);
double bound_tight(int n_qubits, double t_final);

// Peak of the environmental filter: position w* t about 2.331 and the
// dimensionless height 4 max_w f_E / t^2.
struct FilterPeak {
    double omega_t = 0.0;
    double height = 0.0;
};
FilterPeak env_filter_peak();

}  // namespace contsense
