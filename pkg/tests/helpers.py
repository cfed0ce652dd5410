"""Shared test utilities: random circuits and equivalence-preserving rewrites."""
from __future__ import annotations

import cmath
import math
import random

from ddpath.circuit import Circuit, Gate

SINGLE_KINDS = ["x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "sxdg", "p", "ry", "rz"]
TWO_KINDS = ["cx", "cz", "cp", "swap"]
PARAM_KINDS = {"p", "ry", "rz", "cp"}


def random_unitary_2x2(rng: random.Random) -> tuple[complex, complex, complex, complex]:
    a, b, g, d = (rng.uniform(0, 2 * math.pi) for _ in range(4))
    ca, sa = math.cos(a / 2), math.sin(a / 2)
    u00 = cmath.exp(1j * (d - b / 2 - g / 2)) * ca
    u01 = -cmath.exp(1j * (d - b / 2 + g / 2)) * sa
    u10 = cmath.exp(1j * (d + b / 2 - g / 2)) * sa
    u11 = cmath.exp(1j * (d + b / 2 + g / 2)) * ca
    return (u00, u01, u10, u11)


def random_gate(rng: random.Random, n: int, allow_u: bool = True,
                allow_controls: bool = True) -> Gate:
    roll = rng.random()
    if allow_u and roll < 0.08:
        q = rng.randrange(n)
        spare = [i for i in range(n) if i != q]
        n_ctl = rng.randint(0, min(2, len(spare))) if allow_controls else 0
        controls = tuple(rng.sample(spare, n_ctl))
        return Gate("u", (q,), controls, matrix=random_unitary_2x2(rng))
    if n >= 2 and roll < 0.45:
        kind = rng.choice(TWO_KINDS)
        a, b = rng.sample(range(n), 2)
        if kind == "swap":
            return Gate("swap", (a, b))
        par = rng.uniform(-math.pi, math.pi) if kind in PARAM_KINDS else None
        return Gate(kind, (b,), (a,), par)
    kind = rng.choice(SINGLE_KINDS)
    q = rng.randrange(n)
    par = rng.uniform(-math.pi, math.pi) if kind in PARAM_KINDS else None
    return Gate(kind, (q,), parameter=par)


def random_circuit(rng: random.Random, n: int, depth: int, allow_u: bool = True,
                   allow_controls: bool = True) -> Circuit:
    gates = tuple(random_gate(rng, n, allow_u, allow_controls) for _ in range(depth))
    return Circuit(n, gates)


def equivalent_rewrite(rng: random.Random, c: Circuit) -> Circuit:
    """A gate list that computes exactly the same state (no phase change)."""
    gates = list(c.gates)
    choice = rng.randrange(4)
    if choice == 0:
        # splice in a canceling pair
        g = random_gate(rng, c.num_qubits, allow_u=True)
        at = rng.randint(0, len(gates))
        gates[at:at] = [g, g.inverse()]
    elif choice == 1 and len(gates) >= 2:
        # swap two adjacent gates acting on disjoint qubits, if any
        order = list(range(len(gates) - 1))
        rng.shuffle(order)
        for i in order:
            if not set(gates[i].qubits) & set(gates[i + 1].qubits):
                gates[i], gates[i + 1] = gates[i + 1], gates[i]
                break
    elif choice == 2:
        # exact single-gate identities: swap -> 3 cx, cz -> cp(pi), s -> t t
        for i, g in enumerate(gates):
            if g.kind == "swap":
                a, b = g.targets
                gates[i:i + 1] = [Gate("cx", (b,), (a,)), Gate("cx", (a,), (b,)),
                                 Gate("cx", (b,), (a,))]
                break
            if g.kind == "cz":
                gates[i] = Gate("cp", g.targets, g.controls, math.pi)
                break
            if g.kind == "s" and not g.controls:
                gates[i:i + 1] = [Gate("t", g.targets), Gate("t", g.targets)]
                break
    else:
        # append u . u^-1 on a random qubit
        g = Gate("u", (rng.randrange(c.num_qubits),), matrix=random_unitary_2x2(rng))
        gates += [g, g.inverse()]
    return Circuit(c.num_qubits, tuple(gates))
