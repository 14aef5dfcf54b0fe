#pragma once

#include <memory>
#include <string>

#include "contsense/models.hpp"

namespace contsense {

namespace detail {
class SampledCurve;  // cubic interpolant, defined out of line
}

enum class CorrelatorKind { exponential, sampled };

// Stationary two-time symmetrized autocorrelator of the (re-centered)
// coupling operator.  Normalization: C(0) = 2 * variance.
struct CorrelationModel {
    CorrelatorKind kind = CorrelatorKind::exponential;
    double variance = 0.0;
    double rate = 0.0;        // exponential decay rate (exponential kind)
    Eigen::VectorXd times;    // uniform grid starting at 0 (sampled kind)
    Eigen::VectorXd values;
    bool env_route = false;   // environmental-information formulas apply
    std::string label;
    std::shared_ptr<const detail::SampledCurve> curve;  // sampled interpolant
};

// C(t); uses the closed form or the attached interpolant.  Sampled models
// are only defined on their grid span.
double correlator_value(const CorrelationModel& corr, double t);

// Builds a sampled correlator from grid data (uniform spacing required) and
// attaches the interpolant.
CorrelationModel make_sampled_correlator(Eigen::VectorXd times, Eigen::VectorXd values,
                                         bool env_route, std::string label = "sampled");

// Evolves the symmetrized product state Zc rho_ss + rho_ss Zc and reads the
// correlator off the uniform grid `times` (ascending from 0).
CorrelationModel autocorrelator_numeric(const SensorModel& model,
                                        const Eigen::VectorXd& times,
                                        double tol = 1e-10);

// Closed-form exponential correlator of a model family.  Exact for the
// high-temperature and anisotropic families (the collective components are
// relaxation eigenoperators) and for the two-qubit squeezer; for larger
// squeezers the quoted rate gamma*(1 + tanh(r)^2) is the strong-squeezing
// asymptote of the relevant relaxation mode.
CorrelationModel autocorrelator_analytic(const ModelSpec& spec);

enum class SpectrumKind { lorentzian, sampled };

// Symmetrized noise spectrum S[w] = int C(t) exp(iwt) dt over the whole line.
struct SpectrumModel {
    SpectrumKind kind = SpectrumKind::lorentzian;
    double c0 = 0.0;    // C(0)
    double rate = 0.0;  // Lorentzian half width: S[w] = 2 c0 rate/(rate^2+w^2)
    Eigen::VectorXd omegas;  // sampled symmetric grid
    Eigen::VectorXd values;
    bool truncated = false;  // numeric transform of a windowed correlator
    std::shared_ptr<const detail::SampledCurve> curve;
};

double spectrum_value(const SpectrumModel& spec, double omega);

// Exponential correlators transform exactly; sampled ones go through a
// windowed cosine transform and come back flagged `truncated`.
SpectrumModel lorentzian_spectrum(const CorrelationModel& corr);

}  // namespace contsense
