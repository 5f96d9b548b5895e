#include <doctest.h>

#include <cmath>
#include <random>

#include "rcbell/constraints.hpp"
#include "rcbell/functionals.hpp"
#include "rcbell/quantum.hpp"

using namespace rcbell;
using namespace rcbell::quantum;

namespace {

using Matrix = std::vector<std::vector<Complex>>;

Matrix to_matrix(const Observable& o) {
    return {{o.m[0], o.m[1]}, {o.m[2], o.m[3]}};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    Matrix out(ar * br, std::vector<Complex>(ac * bc));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

std::vector<Complex> apply_matrix(const Matrix& m, const std::vector<Complex>& v) {
    std::vector<Complex> out(m.size(), Complex(0, 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Brute-force expectation through the dense Kronecker product.
double dense_expectation(const StateVector& state, const std::vector<Observable>& obs) {
    Matrix m = to_matrix(obs[0]);
    for (std::size_t q = 1; q < obs.size(); ++q) m = kron(m, to_matrix(obs[q]));
    const auto v = apply_matrix(m, state.amps);
    Complex e(0, 0);
    for (std::size_t i = 0; i < v.size(); ++i) e += std::conj(state.amps[i]) * v[i];
    REQUIRE(std::abs(e.imag()) < 1e-12);
    return e.real();
}

}  // namespace

TEST_CASE("states and observables: construction invariants") {
    const StateVector g3 = ghz(3);
    CHECK(g3.amps[0] == Complex(1.0 / std::sqrt(2.0), 0));
    CHECK(g3.amps[7] == Complex(1.0 / std::sqrt(2.0), 0));
    for (int i = 1; i < 7; ++i) CHECK(g3.amps[i] == Complex(0, 0));

    const Observable z = planar_observable(0.0);
    CHECK(z.m == pauli('z').m);
    CHECK_THROWS_AS(Observable({Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(2, 0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StateVector(1, {Complex(1, 0), Complex(1, 0)}), std::invalid_argument);
}

TEST_CASE("correlators on ghz states match the dense oracle") {
    const StateVector g3 = ghz(3);
    const auto X = pauli('x'), Y = pauli('y'), Z = pauli('z');
    CHECK(correlator_quantum(g3, {X, X, X}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(correlator_quantum(g3, {Z, Z, Z}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(correlator_quantum(g3, {X, Y, Y}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(correlator_quantum(phi_plus(), {Z, Z}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(correlator_quantum(phi_plus(), {Y, Y}) == doctest::Approx(-1.0).epsilon(1e-12));

    std::mt19937 rng(59);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Observable> obs{planar_observable(angle(rng)), planar_observable(angle(rng)),
                                    planar_observable(angle(rng))};
        CHECK(correlator_quantum(g3, obs) ==
              doctest::Approx(dense_expectation(g3, obs)).epsilon(1e-12));
    }
}

TEST_CASE("kronecker products associate") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_matrix = [&] {
        Matrix m(2, std::vector<Complex>(2));
        for (auto& row : m)
            for (auto& v : row) v = Complex(u(rng), u(rng));
        return m;
    };
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = random_matrix(), b = random_matrix(), c = random_matrix();
        std::vector<Complex> psi(8);
        for (auto& v : psi) v = Complex(u(rng), u(rng));
        const auto lhs = apply_matrix(kron(kron(a, b), c), psi);
        const auto rhs = apply_matrix(kron(a, kron(b, c)), psi);
        for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
    }
}

TEST_CASE("boxes from states: mermin settings satisfy the constraint set") {
    for (int n : {3, 5}) {
        const FloatBox box = box_from_state(ghz(n), mermin_settings(n));
        CHECK(box.validate().passes);
        CHECK(mermin_satisfied(box, 1e-9));
        CHECK(check(box, ConstraintRegime::full_ns(), 1e-9).passes);
    }
}

TEST_CASE("boxes from states: projector route matches the observable route") {
    const FloatBox box = box_from_state(ghz(3), mermin_settings(3));
    const auto settings = mermin_settings(3);
    const Scenario& scen = box.scenario();
    for (std::size_t xi = 0; xi < scen.input_count(); ++xi) {
        const Tuple x = scen.input_tuple(xi);
        std::vector<Observable> obs;
        for (int q = 0; q < 3; ++q) obs.push_back(settings.per_party[q][x[q]]);
        CHECK(box.correlator(x) ==
              doctest::Approx(correlator_quantum(ghz(3), obs)).epsilon(1e-9));
    }
}

TEST_CASE("chained quantum value matches the closed form") {
    for (int m : {2, 3, 4, 8}) {
        const auto [direct, closed] = chained_quantum_value(m);
        CHECK(direct == doctest::Approx(closed).epsilon(1e-9));
    }
    const auto v2 = chained_quantum_value(2);
    CHECK(v2.closed_form == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    const auto v4 = chained_quantum_value(4);
    CHECK(v4.closed_form == doctest::Approx(8.0 * std::pow(std::sin(3.14159265358979323846 / 16), 2))
                                .epsilon(1e-12));
    // Decreasing toward the algebraic minimum.
    double prev = 10.0;
    for (int m = 2; m <= 64; m *= 2) {
        const double v = chained_quantum_value(m).closed_form;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("rcbl preset: quantum violation value and vanishing svetlichny") {
    const FloatBox box = preset_box("rcbl");
    CHECK(box.validate().passes);
    CHECK(check(box, ConstraintRegime::full_ns(), 1e-9).passes);
    CHECK(evaluate(rcbl_functional(), box) ==
          doctest::Approx(2.0 * (1.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-9));
    CHECK(evaluate(svetlichny(), box) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("unknown preset is rejected") {
    CHECK_THROWS_AS(preset_box("bogus"), std::invalid_argument);
}
