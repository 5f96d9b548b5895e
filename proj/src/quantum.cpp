#include "rcbell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rcbell/functionals.hpp"

namespace rcbell {
namespace quantum {

namespace {

constexpr double kTol = 1e-12;

void apply_single_qubit(std::vector<Complex>& amps, int qubits, int target,
                        const std::array<Complex, 4>& m) {
    // Qubit 0 owns the most significant bit of the amplitude index.
    const std::size_t stride = std::size_t{1} << (qubits - 1 - target);
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride)
        for (std::size_t k = 0; k < stride; ++k) {
            const std::size_t i0 = base + k, i1 = base + k + stride;
            const Complex a0 = amps[i0], a1 = amps[i1];
            amps[i0] = m[0] * a0 + m[1] * a1;
            amps[i1] = m[2] * a0 + m[3] * a1;
        }
}

Complex inner(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

}  // namespace

StateVector::StateVector(int n, std::vector<Complex> amplitudes) : qubits(n), amps(std::move(amplitudes)) {
    if (n < 1 || amps.size() != (std::size_t{1} << n))
        throw std::invalid_argument("state: amplitude count must be 2^n");
    double norm2 = 0.0;
    for (const Complex& a : amps) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kTol) throw std::invalid_argument("state: not normalized");
}

Observable::Observable(std::array<Complex, 4> matrix) : m(matrix) {
    if (std::abs(m[0].imag()) > kTol || std::abs(m[3].imag()) > kTol ||
        std::abs(m[1] - std::conj(m[2])) > kTol)
        throw std::invalid_argument("observable: not Hermitian");
    // O^2 = I.
    const Complex sq00 = m[0] * m[0] + m[1] * m[2];
    const Complex sq01 = m[0] * m[1] + m[1] * m[3];
    const Complex sq11 = m[2] * m[1] + m[3] * m[3];
    if (std::abs(sq00 - 1.0) > kTol || std::abs(sq01) > kTol || std::abs(sq11 - 1.0) > kTol)
        throw std::invalid_argument("observable: eigenvalues must be +1/-1");
}

StateVector ghz(int n) {
    if (n < 1) throw std::invalid_argument("ghz: n >= 1");
    std::vector<Complex> amps(std::size_t{1} << n, Complex(0.0, 0.0));
    const double w = 1.0 / std::sqrt(2.0);
    amps.front() = w;
    amps.back() = w;
    return StateVector(n, std::move(amps));
}

StateVector phi_plus() { return ghz(2); }

Observable pauli(char axis) {
    switch (axis) {
        case 'x':
            return Observable({Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
        case 'y':
            return Observable({Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)});
        case 'z':
            return Observable({Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)});
        default:
            throw std::invalid_argument("pauli: axis must be x, y or z");
    }
}

Observable planar_observable(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return Observable({Complex(c, 0), Complex(s, 0), Complex(s, 0), Complex(-c, 0)});
}

double correlator_quantum(const StateVector& state, const std::vector<Observable>& per_party) {
    if (static_cast<int>(per_party.size()) != state.qubits)
        throw std::invalid_argument("correlator: one observable per qubit required");
    std::vector<Complex> v = state.amps;
    for (int q = 0; q < state.qubits; ++q) apply_single_qubit(v, state.qubits, q, per_party[q].m);
    const Complex e = inner(state.amps, v);
    if (std::abs(e.imag()) > kTol) throw std::logic_error("correlator: non-negligible imaginary part");
    return e.real();
}

FloatBox box_from_state(const StateVector& state, const MeasurementSettings& settings) {
    const int n = state.qubits;
    if (static_cast<int>(settings.per_party.size()) != n)
        throw std::invalid_argument("box_from_state: settings do not cover every party");
    std::vector<int> inputs(n);
    for (int i = 0; i < n; ++i) {
        if (settings.per_party[i].empty()) throw std::invalid_argument("box_from_state: empty settings");
        inputs[i] = static_cast<int>(settings.per_party[i].size());
    }
    const Scenario scen(inputs, std::vector<int>(n, 2));
    FloatBox box(scen);
    const std::size_t nx = scen.input_count(), na = scen.output_count();
    for (std::size_t xi = 0; xi < nx; ++xi) {
        const Tuple x = scen.input_tuple(xi);
        for (std::size_t ai = 0; ai < na; ++ai) {
            const Tuple a = scen.output_tuple(ai);
            std::vector<Complex> v = state.amps;
            for (int q = 0; q < n; ++q) {
                const auto& o = settings.per_party[q][x[q]].m;
                const double sign = a[q] == 0 ? 1.0 : -1.0;
                const std::array<Complex, 4> proj = {(1.0 + sign * o[0]) / 2.0, sign * o[1] / 2.0,
                                                     sign * o[2] / 2.0, (1.0 + sign * o[3]) / 2.0};
                apply_single_qubit(v, n, q, proj);
            }
            const Complex p = inner(state.amps, v);
            if (std::abs(p.imag()) > kTol) throw std::logic_error("box_from_state: imaginary probability");
            box.at(xi, ai) = p.real() < 0.0 && p.real() > -kTol ? 0.0 : p.real();
        }
    }
    return box;
}

MeasurementSettings mermin_settings(int n) {
    if (n < 1) throw std::invalid_argument("mermin settings: n >= 1");
    MeasurementSettings s;
    s.per_party.assign(n, {pauli('y'), pauli('x')});
    return s;
}

MeasurementSettings chained_settings(int m) {
    if (m < 2) throw std::invalid_argument("chained settings: m >= 2");
    MeasurementSettings s;
    std::vector<Observable> alice, bob;
    for (int x = 0; x < m; ++x) alice.push_back(planar_observable(std::numbers::pi * x / m));
    for (int y = 0; y < m; ++y) bob.push_back(planar_observable(std::numbers::pi * (2 * y + 1) / (2 * m)));
    s.per_party = {alice, bob};
    return s;
}

MeasurementSettings rcbl_settings() {
    const double inv = 1.0 / std::sqrt(2.0);
    const Observable c1({Complex(inv, 0), Complex(-inv, 0), Complex(-inv, 0), Complex(-inv, 0)});
    const Observable c2({Complex(inv, 0), Complex(inv, 0), Complex(inv, 0), Complex(-inv, 0)});
    MeasurementSettings s;
    s.per_party = {{pauli('z'), pauli('x')}, {pauli('z'), pauli('x')}, {c1, c2}};
    return s;
}

ChainedQuantum chained_quantum_value(int m) {
    const FloatBox box = box_from_state(phi_plus(), chained_settings(m));
    const double direct = evaluate(chained(m), box);
    const double closed = 2.0 * m * std::pow(std::sin(std::numbers::pi / (4.0 * m)), 2);
    return {direct, closed};
}

FloatBox preset_box(const std::string& name, int n, int m) {
    if (name == "mermin") return box_from_state(ghz(n), mermin_settings(n));
    if (name == "chained") return box_from_state(phi_plus(), chained_settings(m));
    if (name == "rcbl") return box_from_state(ghz(3), rcbl_settings());
    throw std::invalid_argument("unknown quantum preset: " + name);
}

}  // namespace quantum
}  // namespace rcbell
