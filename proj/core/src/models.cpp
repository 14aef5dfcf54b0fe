#include "contsense/models.hpp"

#include <cmath>

namespace contsense {

namespace {

SensorModel base_model(int n_qubits, Axis axis, const char* label) {
    SensorModel m;
    m.basis = build_basis(n_qubits);
    m.h0 = make_operator(m.basis, Matrix::Zero(m.basis.dim, m.basis.dim));
    m.generator = collective_operator(m.basis, axis);
    m.label = label;
    return m;
}

}  // namespace

SensorModel high_temperature(int n_qubits, double gamma, Axis axis) {
    if (gamma <= 0.0) throw std::invalid_argument("high_temperature: gamma must be > 0");
    SensorModel m = base_model(n_qubits, axis, "high_temperature");
    m.jumps.push_back({collective_operator(m.basis, Axis::plus), gamma});
    m.jumps.push_back({collective_operator(m.basis, Axis::minus), gamma});
    m.steady_form = SteadyStateForm::maximally_mixed;
    m.env_correlator_route = true;
    return m;
}

SensorModel high_temperature_hermitian(int n_qubits, double gamma, Axis axis) {
    if (gamma <= 0.0) {
        throw std::invalid_argument("high_temperature_hermitian: gamma must be > 0");
    }
    SensorModel m = base_model(n_qubits, axis, "high_temperature_hermitian");
    m.jumps.push_back({collective_operator(m.basis, Axis::x), 2.0 * gamma});
    m.jumps.push_back({collective_operator(m.basis, Axis::y), 2.0 * gamma});
    m.steady_form = SteadyStateForm::maximally_mixed;
    m.env_correlator_route = true;
    return m;
}

SensorModel dephasing_family(int n_qubits, double gamma, double eta, Axis axis) {
    if (gamma <= 0.0) throw std::invalid_argument("dephasing_family: gamma must be > 0");
    if (std::abs(eta) >= 1.0) {
        throw std::invalid_argument("dephasing_family: need |eta| < 1 for positive rates");
    }
    SensorModel m = base_model(n_qubits, axis, "dephasing_family");
    m.jumps.push_back({collective_operator(m.basis, Axis::x), 2.0 * gamma * (1.0 + eta)});
    m.jumps.push_back({collective_operator(m.basis, Axis::y), 2.0 * gamma * (1.0 - eta)});
    m.steady_form = SteadyStateForm::maximally_mixed;
    m.env_correlator_route = true;
    return m;
}

SensorModel spin_squeezer(int n_qubits, double gamma, double r, Axis axis) {
    if (gamma <= 0.0) throw std::invalid_argument("spin_squeezer: gamma must be > 0");
    if (r < 0.0) throw std::invalid_argument("spin_squeezer: r must be >= 0");
    SensorModel m = base_model(n_qubits, axis, "spin_squeezer");
    const Matrix jm = collective_operator(m.basis, Axis::minus).mat;
    const Matrix jp = collective_operator(m.basis, Axis::plus).mat;
    m.jumps.push_back({make_operator(m.basis, jm - std::tanh(r) * jp), gamma});
    m.steady_form = (n_qubits % 2 == 0) ? SteadyStateForm::dark_state
                                        : SteadyStateForm::weighted_inverse;
    m.env_correlator_route = true;
    return m;
}

SensorModel single_qubit_loss(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("single_qubit_loss: gamma must be > 0");
    SensorModel m = base_model(1, Axis::x, "single_qubit_loss");
    m.jumps.push_back({collective_operator(m.basis, Axis::minus), gamma});
    m.steady_form = SteadyStateForm::dark_state;
    m.env_correlator_route = true;
    return m;
}

SensorModel make_model(const ModelSpec& spec) {
    switch (spec.tag) {
        case FamilyTag::high_temperature:
            return high_temperature(spec.n_qubits, spec.gamma, spec.axis);
        case FamilyTag::dephasing_family:
            return dephasing_family(spec.n_qubits, spec.gamma, spec.eta, spec.axis);
        case FamilyTag::spin_squeezer:
            return spin_squeezer(spec.n_qubits, spec.gamma, spec.r, spec.axis);
        case FamilyTag::single_qubit_loss:
            return single_qubit_loss(spec.gamma);
    }
    throw std::invalid_argument("make_model: unknown family tag");
}

double single_qubit_loss_qfi(double gamma, double t) {
    if (gamma <= 0.0) throw std::invalid_argument("single_qubit_loss_qfi: gamma must be > 0");
    if (t < 0.0) throw std::invalid_argument("single_qubit_loss_qfi: t must be >= 0");
    // 4t/gamma + 16 exp(-gamma t/2)/gamma^2 - 4 exp(-gamma t)/gamma^2 - 12/gamma^2,
    // written with expm1 so the gamma*t -> 0 limit (gamma t^3 / 3) stays accurate.
    const double u = std::expm1(-0.5 * gamma * t);  // e^{-gt/2} - 1
    const double v = std::expm1(-gamma * t);        // e^{-gt}   - 1
    return (4.0 * t * gamma + 16.0 * u - 4.0 * v) / (gamma * gamma);
}

double independent_array_qfi(int n_qubits, double gamma, double t) {
    if (n_qubits < 1) throw std::invalid_argument("independent_array_qfi: n_qubits >= 1");
    return n_qubits * single_qubit_loss_qfi(gamma / n_qubits, t);
}

double independent_array_sensitivity(int n_qubits, double gamma) {
    if (n_qubits < 1 || gamma <= 0.0) {
        throw std::invalid_argument("independent_array_sensitivity: bad parameters");
    }
    // Each qubit contributes 4 / (gamma / n); n of them add up.
    return 4.0 * n_qubits * n_qubits / gamma;
}

}  // namespace contsense
