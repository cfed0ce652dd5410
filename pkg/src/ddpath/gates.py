"""Gate alphabet and 2x2 base matrices.

Matrices are row-major 4-tuples (m00, m01, m10, m11).  Two-qubit kinds other
than swap are a single-qubit base matrix plus one control qubit; multi-qubit
behaviour (control handling, identity extension) lives in the consumers.
"""
from __future__ import annotations

import cmath
import math

from .errors import UnsupportedGateError

Mat2 = tuple[complex, complex, complex, complex]

_S2 = 1.0 / math.sqrt(2.0)

# gates that are their own inverse
SELF_INVERSE = frozenset({"x", "y", "z", "h", "cx", "cz", "swap"})
# kind pairs swapped under inversion
INVERSE_PAIRS = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t", "sx": "sxdg", "sxdg": "sx"}
# kinds whose inverse negates the angle
PARAMETERIZED = frozenset({"p", "ry", "rz", "cp"})

SINGLE_QUBIT_KINDS = frozenset(
    {"x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "sxdg", "p", "ry", "rz", "u"}
)
TWO_QUBIT_KINDS = frozenset({"cx", "cz", "cp", "swap"})
ALL_KINDS = SINGLE_QUBIT_KINDS | TWO_QUBIT_KINDS

# controlled kinds and the single-qubit kind they apply on the target
CONTROLLED_BASE = {"cx": "x", "cz": "z", "cp": "p"}

_FIXED: dict[str, Mat2] = {
    "x": (0, 1, 1, 0),
    "y": (0, -1j, 1j, 0),
    "z": (1, 0, 0, -1),
    "h": (_S2, _S2, _S2, -_S2),
    "s": (1, 0, 0, 1j),
    "sdg": (1, 0, 0, -1j),
    "t": (1, 0, 0, cmath.exp(0.25j * math.pi)),
    "tdg": (1, 0, 0, cmath.exp(-0.25j * math.pi)),
    "sx": (0.5 + 0.5j, 0.5 - 0.5j, 0.5 - 0.5j, 0.5 + 0.5j),
    "sxdg": (0.5 - 0.5j, 0.5 + 0.5j, 0.5 + 0.5j, 0.5 - 0.5j),
}


def base_matrix(kind: str, parameter: float | None = None, matrix: Mat2 | None = None) -> Mat2:
    """2x2 matrix applied on the target qubit (control handling is separate)."""
    kind = CONTROLLED_BASE.get(kind, kind)
    if kind in _FIXED:
        return _FIXED[kind]
    if kind == "p":
        return (1, 0, 0, cmath.exp(1j * parameter))
    if kind == "ry":
        c, s = math.cos(parameter / 2), math.sin(parameter / 2)
        return (c, -s, s, c)
    if kind == "rz":
        return (cmath.exp(-0.5j * parameter), 0, 0, cmath.exp(0.5j * parameter))
    if kind == "u":
        if matrix is None:
            raise UnsupportedGateError("gate kind 'u' requires an explicit matrix")
        return matrix
    raise UnsupportedGateError(f"unknown gate kind {kind!r}")


def dagger(matrix: Mat2) -> Mat2:
    m00, m01, m10, m11 = matrix
    return (m00.conjugate(), m10.conjugate(), m01.conjugate(), m11.conjugate())
