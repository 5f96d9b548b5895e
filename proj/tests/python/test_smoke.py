"""Smoke tests for the python module: headline values across every subsystem."""

import json
import math
import sys

import rcbell


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    # Constructions and inequality evaluation.
    pr = rcbell.pr_box()
    assert pr.validate()
    assert rcbell.evaluate("chsh", pr) == "4"

    mono = rcbell.monogamy_box()
    assert rcbell.evaluate("chsh-sum", mono) == "8"
    assert rcbell.check(mono, "rc-line", order=[0, 1, 2])["passes"]
    ns = rcbell.check(mono, "ns")
    assert not ns["passes"] and ns["violations"]

    # JSON round trip is bit exact for rationals.
    reloaded = rcbell.box_from_json(mono.to_json())
    assert reloaded.to_json() == mono.to_json()

    # Attack constructions.
    attack = rcbell.mermin_attack_box(3, [1, 1, 1])
    assert attack.p([0, 0, 0], [1, 1, 1]) == "1"
    qkd = rcbell.qkd_attack_box(2)
    assert qkd.validate()

    # Exact polytope optimization.
    value, witness = rcbell.lp_maximize("chsh-sum", "ns")
    assert value == "4" and witness.validate()
    rcbl = rcbell.rcbl_maximize("rcbl")
    assert rcbl["value"] == "6"

    # Quantum presets.
    direct, closed = rcbell.chained_quantum_value(2)
    assert approx(direct, closed) and approx(closed, 2.0 - math.sqrt(2.0))
    qbox = rcbell.quantum_box("rcbl")
    assert approx(rcbell.evaluate_float("rcbl", qbox), 2.0 * (1.0 + 2.0 * math.sqrt(2.0)))
    assert rcbell.mermin_satisfied(rcbell.quantum_box("mermin", n=3))

    # Geometry.
    a = rcbell.SpacetimeEvent(0.0, [0.0])
    b = rcbell.SpacetimeEvent(0.0, [1.0])
    c = rcbell.SpacetimeEvent(0.0, [2.0])
    assert rcbell.is_spacelike(a, b)
    assert rcbell.classify_three_party_1p1(a, b, c, u=2.0) == "rc"
    assert approx(rcbell.phi_alpha(0.5), 2.0 * math.pi / 3.0)

    # Audit.
    assert rcbell.ratio_identity_holds(mono)
    post = rcbell.input_posterior(mono, 1, {0: 0, 2: 1}, {0: 0, 2: 0})
    assert post == ["1", "0"]

    print("python smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
