#include "rcbell/functionals.hpp"

#include <cmath>
#include <numbers>

namespace rcbell {

BellFunctional operator+(const BellFunctional& a, const BellFunctional& b) {
    if (a.scenario != b.scenario) throw std::invalid_argument("functional sum: scenario mismatch");
    BellFunctional out(a.scenario, a.name.empty() ? b.name : a.name + "+" + b.name);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
    out.requires_full_ns = a.requires_full_ns || b.requires_full_ns;
    return out;
}

void add_correlator(BellFunctional& f, const std::vector<std::pair<int, int>>& targets, const Rational& weight,
                    const std::map<int, int>& spectator_inputs) {
    const Scenario& scen = f.scenario;
    const int n = scen.parties();
    std::vector<int> target_input(n, -1);
    std::vector<bool> is_target(n, false);
    for (const auto& [party, input] : targets) {
        if (party < 0 || party >= n) throw std::out_of_range("correlator term: party out of range");
        if (is_target[party]) throw std::invalid_argument("correlator term: duplicate party");
        if (scen.outputs_of(party) != 2)
            throw std::domain_error("correlator term: target party must be binary-output");
        if (input < 0 || input >= scen.inputs_of(party))
            throw std::out_of_range("correlator term: input out of range");
        is_target[party] = true;
        target_input[party] = input;
    }
    Tuple x(n, 0);
    for (int p = 0; p < n; ++p) {
        if (is_target[p]) {
            x[p] = target_input[p];
        } else if (auto it = spectator_inputs.find(p); it != spectator_inputs.end()) {
            if (it->second < 0 || it->second >= scen.inputs_of(p))
                throw std::out_of_range("correlator term: spectator input out of range");
            x[p] = it->second;
        }
    }
    const std::size_t xi = scen.input_index(x);
    const std::size_t na = scen.output_count();
    for (std::size_t ai = 0; ai < na; ++ai) {
        const Tuple a = scen.output_tuple(ai);
        int parity = 0;
        for (const auto& [party, input] : targets) parity ^= (a[party] & 1);
        f.coeffs[xi * na + ai] += parity ? -weight : weight;
    }
}

BellFunctional chsh(const Scenario& scenario, int party_a, int party_b) {
    BellFunctional f(scenario, "chsh");
    if (scenario.inputs_of(party_a) < 2 || scenario.inputs_of(party_b) < 2)
        throw std::domain_error("chsh: pair must have two inputs");
    for (int xa = 0; xa < 2; ++xa)
        for (int xb = 0; xb < 2; ++xb) {
            const Rational w = (xa == 1 && xb == 1) ? Rational(-1) : Rational(1);
            add_correlator(f, {{party_a, xa}, {party_b, xb}}, w);
        }
    f.bounds["classical"] = 2;
    f.bounds["polytope"] = 4;
    f.approx_bounds["quantum"] = 2.0 * std::sqrt(2.0);
    return f;
}

BellFunctional chsh_monogamy_sum() {
    const Scenario scen = Scenario::uniform(3, 2, 2);
    BellFunctional f = chsh(scen, 0, 1) + chsh(scen, 1, 2);
    f.name = "chsh-sum";
    f.bounds["polytope"] = 4;     // full no-signaling
    f.bounds["line-rc"] = 8;      // contiguous-run regime
    return f;
}

BellFunctional chained(int m) {
    if (m < 2) throw std::invalid_argument("chained: m must be >= 2");
    const Scenario scen = Scenario::uniform(2, m, 2);
    BellFunctional f(scen, "chained");
    const std::size_t na = scen.output_count();
    auto add_parity_term = [&](int x, int y, int parity) {
        const std::size_t xi = scen.input_index({x, y});
        for (std::size_t ai = 0; ai < na; ++ai) {
            const Tuple a = scen.output_tuple(ai);
            if (((a[0] ^ a[1]) & 1) == parity) f.coeffs[xi * na + ai] += 1;
        }
    };
    for (int y = 0; y < m; ++y) add_parity_term(y, y, 1);
    for (int y = 0; y + 1 < m; ++y) add_parity_term(y + 1, y, 1);
    add_parity_term(0, m - 1, 0);
    f.bounds["classical"] = 1;
    f.bounds["polytope"] = 0;
    f.approx_bounds["quantum"] = 2.0 * m * std::pow(std::sin(std::numbers::pi / (4.0 * m)), 2);
    return f;
}

BellFunctional svetlichny() {
    const Scenario scen = Scenario::uniform(3, 2, 2);
    BellFunctional f(scen, "svetlichny");
    // Signs over (x, y, z), inputs 0-based.
    const int sign[2][2][2] = {{{+1, +1}, {+1, -1}}, {{+1, -1}, {-1, -1}}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                add_correlator(f, {{0, x}, {1, y}, {2, z}}, Rational(sign[x][y][z]));
    f.bounds["classical-bilocal"] = 4;
    f.bounds["algebraic"] = 8;
    return f;
}

BellFunctional rcbl_functional() {
    const Scenario scen = Scenario::uniform(3, 2, 2);
    BellFunctional f(scen, "rcbl");
    add_correlator(f, {{0, 0}, {1, 0}}, 2);                 // 2<A0B0>, z pinned 0
    add_correlator(f, {{0, 0}, {2, 0}}, 1, {{1, 0}});       // <A0C0> at y=0
    add_correlator(f, {{0, 0}, {2, 0}}, 1, {{1, 1}});       // <A0C0> at y=1
    add_correlator(f, {{1, 0}, {2, 1}}, 2);                 // 2<B0C1>, x pinned 0
    add_correlator(f, {{0, 1}, {1, 1}, {2, 0}}, -2);        // -2<A1B1C0>
    add_correlator(f, {{0, 1}, {1, 1}, {2, 1}}, 2);         // +2<A1B1C1>
    f.bounds["rcbl"] = 6;
    f.approx_bounds["quantum"] = 2.0 * (1.0 + 2.0 * std::sqrt(2.0));
    return f;
}

BellFunctional hidden_influence() {
    const Scenario scen = Scenario::uniform(4, 2, 2);
    BellFunctional f(scen, "hidden-influence");
    const int A = 0, B = 1, C = 2, D = 3;
    using T = std::vector<std::pair<int, int>>;
    const std::vector<std::pair<T, int>> terms = {
        {T{{A, 0}}, -3},         {T{{B, 0}}, -1},          {T{{B, 1}}, -1},
        {T{{C, 0}}, -1},         {T{{D, 0}}, -3},          {T{{A, 1}, {B, 0}}, -1},
        {T{{A, 1}, {B, 1}}, -1}, {T{{A, 0}, {C, 0}}, +1},  {T{{A, 1}, {C, 0}}, +2},
        {T{{A, 0}, {D, 0}}, +1}, {T{{B, 0}, {D, 1}}, +1},  {T{{B, 1}, {D, 1}}, -1},
        {T{{C, 0}, {D, 0}}, -1}, {T{{C, 1}, {D, 1}}, -2},  {T{{A, 0}, {B, 0}, {D, 0}}, +1},
        {T{{A, 0}, {B, 0}, {D, 1}}, +1}, {T{{A, 0}, {B, 1}, {D, 0}}, +1},
        {T{{A, 0}, {B, 1}, {D, 1}}, -1}, {T{{A, 1}, {B, 0}, {D, 0}}, -1},
        {T{{A, 1}, {B, 1}, {D, 0}}, -1}, {T{{A, 0}, {C, 0}, {D, 0}}, +1},
        {T{{A, 1}, {C, 0}, {D, 0}}, +2}, {T{{A, 0}, {C, 1}, {D, 1}}, -2},
    };
    for (const auto& [targets, w] : terms) add_correlator(f, targets, Rational(w));
    f.bounds["conditional-local"] = 7;
    f.approx_bounds["quantum"] = 7.2;
    f.requires_full_ns = true;
    return f;
}

CorrelatorConstraintSet mermin_constraints(int n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("mermin: n must be odd and >= 3");
    CorrelatorConstraintSet cs;
    cs.parties = n;
    Tuple x(n, 0);
    const std::vector<int> radices(n, 2);
    do {
        int weight = 0;
        for (int b : x) weight += b;
        if (weight % 2 == 0) continue;
        const int k = (n - weight) / 2;
        cs.required.emplace_back(x, (k % 2 == 0) ? +1 : -1);
    } while (next_tuple(x, radices));
    return cs;
}

std::optional<BellFunctional> functional_by_name(const std::string& name, int m) {
    if (name == "chsh") return chsh(Scenario::uniform(2, 2, 2), 0, 1);
    if (name == "chsh-sum") return chsh_monogamy_sum();
    if (name == "chained") return chained(m);
    if (name == "svetlichny") return svetlichny();
    if (name == "rcbl") return rcbl_functional();
    if (name == "hidden-influence") return hidden_influence();
    return std::nullopt;
}

std::vector<std::string> functional_names() {
    return {"chsh", "chsh-sum", "chained", "svetlichny", "rcbl", "hidden-influence"};
}

}  // namespace rcbell
