#pragma once

#include "contsense/liouvillian.hpp"

namespace contsense {

enum class FamilyTag { high_temperature, dephasing_family, spin_squeezer, single_qubit_loss };

// Parameter pack describing one member of a model family; the optimizer and
// the command line tool rebuild models from this.
struct ModelSpec {
    FamilyTag tag = FamilyTag::high_temperature;
    int n_qubits = 2;
    double gamma = 1.0;
    double eta = 0.0;   // dephasing anisotropy, |eta| < 1
    double r = 1.0;     // squeezing strength, r >= 0
    Axis axis = Axis::z;
};

SensorModel make_model(const ModelSpec& spec);

// Infinite-temperature collective bath: D[J+] and D[J-], both at rate gamma.
// Stationary state is maximally mixed; collective components relax as single
// exponentials (rate 2*gamma along z, gamma along x and y).
SensorModel high_temperature(int n_qubits, double gamma, Axis axis = Axis::z);

// Same map written with Hermitian jumps: D[Jx] and D[Jy] at rate 2*gamma.
SensorModel high_temperature_hermitian(int n_qubits, double gamma, Axis axis = Axis::z);

// Anisotropic unital family: D[Jx] at 2*gamma*(1+eta), D[Jy] at 2*gamma*(1-eta).
// Relaxation rates: gamma*(1-eta) along x, gamma*(1+eta) along y, 2*gamma
// along z; eta = 0 recovers the Hermitian high-temperature form.
SensorModel dephasing_family(int n_qubits, double gamma, double eta, Axis axis = Axis::z);

// Squeezed-reservoir model: single jump J- - tanh(r) J+ at rate gamma.  Even
// qubit numbers have a pure dark stationary state whose x variance grows
// towards j(j+1)/2; odd numbers have a mixed stationary state proportional
// to the inverse of L^dag L.
SensorModel spin_squeezer(int n_qubits, double gamma, double r, Axis axis = Axis::x);

// One qubit with decay D[sigma-] at rate gamma, sensing along x with the
// spin-1/2 component (sigma_x / 2).
SensorModel single_qubit_loss(double gamma);

// Environmental information of the single lossy qubit after time t,
// in closed form.  Grows as gamma t^3 / 3 for small gamma t and as
// 4 t / gamma for large gamma t.
double single_qubit_loss_qfi(double gamma, double t);

// n independent lossy qubits sharing a fixed total decoherence budget:
// each qubit decays at gamma / n and the information adds.
double independent_array_qfi(int n_qubits, double gamma, double t);

// Long-time information rate of the same array, 4 n^2 / gamma.
double independent_array_sensitivity(int n_qubits, double gamma);

}  // namespace contsense
