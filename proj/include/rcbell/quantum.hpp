#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rcbell/box.hpp"

namespace rcbell {
namespace quantum {

using Complex = std::complex<double>;

/// Pure n-qubit state; the constructor enforces unit norm within 1e-12.
struct StateVector {
    int qubits;
    std::vector<Complex> amps;
    StateVector(int n, std::vector<Complex> amplitudes);
};

/// 2x2 Hermitian involution (eigenvalues +1/-1); construction verifies
/// Hermiticity and O^2 = I within 1e-12. Matrix layout row-major.
struct Observable {
    std::array<Complex, 4> m;
    explicit Observable(std::array<Complex, 4> matrix);
};

StateVector ghz(int n);
StateVector phi_plus();

Observable pauli(char axis);                 // 'x', 'y' or 'z'
Observable planar_observable(double theta);  // cos(theta) sigma_z + sin(theta) sigma_x

/// One observable per party per input.
struct MeasurementSettings {
    std::vector<std::vector<Observable>> per_party;
};

/// <psi| O_1 x ... x O_n |psi>; throws if the imaginary part exceeds 1e-12.
double correlator_quantum(const StateVector& state, const std::vector<Observable>& per_party);

/// Float-kind box with P(a|x) = <psi| prod_i (I + (-1)^{a_i} O^{x_i}_i)/2 |psi>.
/// Outcome 0 corresponds to the +1 eigenvalue.
FloatBox box_from_state(const StateVector& state, const MeasurementSettings& settings);

/// Settings behind the three shipped experiments.
MeasurementSettings mermin_settings(int n);    // input 0 -> sigma_y, 1 -> sigma_x
MeasurementSettings chained_settings(int m);   // planar angles pi*x/m and pi*(2y+1)/(2m)
MeasurementSettings rcbl_settings();           // A,B: z/x; C: (z-x)/sqrt2, (z+x)/sqrt2

/// Chain expression on the shared singlet-like state at the preset angles:
/// direct table evaluation next to the closed form 2m sin^2(pi/4m).
struct ChainedQuantum {
    double direct;
    double closed_form;
};
ChainedQuantum chained_quantum_value(int m);

/// Named preset boxes: "mermin" (n parties), "chained" (m inputs), "rcbl".
FloatBox preset_box(const std::string& name, int n = 3, int m = 2);

}  // namespace quantum
}  // namespace rcbell
