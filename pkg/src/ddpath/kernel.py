"""Edge-weighted decision diagram kernel for quantum states and operators.

A vector diagram splits a 2^n amplitude vector in two per level (two successor
edges per node); an operator diagram splits a 2^n x 2^n matrix into quadrants
(four successors ordered 00, 01, 10, 11 by row/column bit of that level's
qubit).  Common factors are pulled out into complex edge weights, weights are
interned in a bucketed value table, and nodes are hash-consed in unique
tables, so any two construction orders of the same quantity end at the same
root edge.  Qubit k lives at level k; level n-1 is the root / most
significant bit of a basis string.

A ``Kernel`` instance is single-writer: serialize all operations against one
instance externally.  Distinct instances are fully independent and edges are
not transferable between them.
"""
from __future__ import annotations

import math
import os
from typing import Iterable, NamedTuple

import numpy as np

from . import gates as _gates
from .errors import InvalidArgumentError

EPS = 1e-12          # weight identification tolerance inside the value table
_INV_EPS = 1.0 / EPS
# magnitudes this close count as tied during normalization, so the choice of
# norm successor is stable under interning-level noise
_MAG_TOL = 4 * EPS

DEFAULT_TABLE_BITS = 18
TABLE_BITS_ENV = "DDPATH_TABLE_BITS"


class Node:
    __slots__ = ("level", "edges", "uid", "ref")

    def __init__(self, level: int, edges: tuple, uid: int):
        self.level = level
        self.edges = edges
        self.uid = uid
        self.ref = 0

    def __repr__(self):  # pragma: no cover - debugging aid
        kind = "v" if len(self.edges) == 2 else "m"
        return f"<{kind}node L{self.level} #{self.uid}>"


class Edge(NamedTuple):
    """Weighted reference into the DAG; ``node is None`` marks the terminal.

    A weight of exactly 0 with a ``None`` node is the zero stub; a nonzero
    weight with a ``None`` node is a terminal value (below level 0).
    """

    w: complex
    node: Node | None

    @property
    def is_zero(self) -> bool:
        return self.node is None and self.w == 0

    @property
    def num_qubits(self) -> int:
        return 0 if self.node is None else self.node.level + 1


class _Cache:
    """Lossy fixed-size memo table: overwrite on collision."""

    __slots__ = ("slots", "mask")

    def __init__(self, bits: int):
        self.mask = (1 << bits) - 1
        self.slots: list = [None] * (1 << bits)

    def get(self, key):
        entry = self.slots[hash(key) & self.mask]
        if entry is not None and entry[0] == key:
            return entry[1]
        return None

    def put(self, key, value):
        self.slots[hash(key) & self.mask] = (key, value)

    def clear(self):
        self.slots = [None] * (self.mask + 1)


class Kernel:
    """One unique table / compute table / value table instance."""

    def __init__(self, table_bits: int | None = None, use_compute_table: bool = True):
        if table_bits is None:
            table_bits = int(os.environ.get(TABLE_BITS_ENV, DEFAULT_TABLE_BITS))
        if not 4 <= table_bits <= 28:
            raise InvalidArgumentError(f"table_bits must be in [4, 28], got {table_bits}")
        self._values: dict[tuple[int, int], complex] = {}
        self.ZERO = 0j
        self.ONE = 1 + 0j
        self._values[(0, 0)] = self.ZERO
        self._values[(round(_INV_EPS), 0)] = self.ONE
        self.zero_edge = Edge(self.ZERO, None)
        self.one_terminal = Edge(self.ONE, None)
        self._vec_unique: dict = {}
        self._mat_unique: dict = {}
        self._uid = 0
        self.use_compute_table = use_compute_table
        self._ct_mv = _Cache(table_bits)
        self._ct_mm = _Cache(table_bits)
        self._ct_add_v = _Cache(table_bits)
        self._ct_add_m = _Cache(table_bits)
        # canonical identity chain, level -> node (shortcut in multiplication)
        self._ident_nodes: dict[int, Node] = {}
        self._ident_edges: list[Edge] = []

    # ------------------------------------------------------------------
    # value interning

    def intern(self, w: complex) -> complex:
        """Canonical representative for ``w``; values within EPS collapse."""
        re = w.real
        im = w.imag
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvalidArgumentError(f"non-finite edge weight {w!r}")
        kr = round(re * _INV_EPS)
        ki = round(im * _INV_EPS)
        table = self._values
        v = table.get((kr, ki))
        if v is not None:
            return v
        for dr in (-1, 0, 1):
            for di in (-1, 0, 1):
                if dr == 0 and di == 0:
                    continue
                v = table.get((kr + dr, ki + di))
                if v is not None and abs(v.real - re) <= EPS and abs(v.imag - im) <= EPS:
                    table[(kr, ki)] = v
                    return v
        v = complex(re, im)
        table[(kr, ki)] = v
        return v

    def _scale(self, e: Edge, w: complex) -> Edge:
        """``w`` times edge ``e``; ``w`` must already be interned."""
        if w == 0 or e.node is None and e.w == 0:
            return self.zero_edge
        nw = self.intern(e.w * w)
        if nw == 0:
            return self.zero_edge
        return Edge(nw, e.node)

    # ------------------------------------------------------------------
    # node construction (normalization + hash consing)

    def _vnode(self, level: int, e0: Edge, e1: Edge) -> Edge:
        a0 = abs(e0.w)
        a1 = abs(e1.w)
        if a1 - a0 > _MAG_TOL:
            norm = e1.w
            n0 = self._scale_succ(e0, norm)
            n1 = Edge(self.ONE, e1.node)
        elif a0 > 0.0:
            norm = e0.w
            n0 = Edge(self.ONE, e0.node)
            n1 = self._scale_succ(e1, norm)
        else:
            return self.zero_edge
        key = (level, n0.w, n0.node, n1.w, n1.node)
        node = self._vec_unique.get(key)
        if node is None:
            self._uid += 1
            node = Node(level, (n0, n1), self._uid)
            self._vec_unique[key] = node
        return Edge(norm, node)

    def _mnode(self, level: int, e0: Edge, e1: Edge, e2: Edge, e3: Edge) -> Edge:
        edges = (e0, e1, e2, e3)
        mags = (abs(e0.w), abs(e1.w), abs(e2.w), abs(e3.w))
        mx = max(mags)
        if mx == 0.0:
            return self.zero_edge
        best = 0
        for i in (0, 1, 2, 3):
            if mags[i] > 0.0 and mags[i] >= mx - _MAG_TOL:
                best = i
                break
        norm = edges[best].w
        out = tuple(
            Edge(self.ONE, e.node) if i == best else self._scale_succ(e, norm)
            for i, e in enumerate(edges)
        )
        key = (level, out[0].w, out[0].node, out[1].w, out[1].node,
               out[2].w, out[2].node, out[3].w, out[3].node)
        node = self._mat_unique.get(key)
        if node is None:
            self._uid += 1
            node = Node(level, out, self._uid)
            self._mat_unique[key] = node
        return Edge(norm, node)

    def _scale_succ(self, e: Edge, norm: complex) -> Edge:
        if e.node is None and e.w == 0:
            return self.zero_edge
        w = self.intern(e.w / norm)
        if w == 0:
            return self.zero_edge
        return Edge(w, e.node)

    # ------------------------------------------------------------------
    # constructors

    def make_zero_state(self, n: int) -> Edge:
        if n < 1:
            raise InvalidArgumentError(f"qubit count must be >= 1, got {n}")
        e = self.one_terminal
        for level in range(n):
            e = self._vnode(level, e, self.zero_edge)
        return e

    def make_basis_state(self, bits: str) -> Edge:
        """Computational basis state from a most-significant-first bit string."""
        if not bits or any(c not in "01" for c in bits):
            raise InvalidArgumentError(f"invalid basis string {bits!r}")
        e = self.one_terminal
        for level in range(len(bits)):
            bit = bits[len(bits) - 1 - level]
            if bit == "0":
                e = self._vnode(level, e, self.zero_edge)
            else:
                e = self._vnode(level, self.zero_edge, e)
        return e

    def identity(self, n: int) -> Edge:
        """Identity operator diagram over ``n`` qubits (n nodes)."""
        if n < 1:
            raise InvalidArgumentError(f"qubit count must be >= 1, got {n}")
        while len(self._ident_edges) < n:
            level = len(self._ident_edges)
            below = self._ident_edges[-1] if self._ident_edges else self.one_terminal
            e = self._mnode(level, below, self.zero_edge, self.zero_edge, below)
            self._ident_edges.append(e)
            self._ident_nodes[level] = e.node
        return self._ident_edges[n - 1]

    def _terminal(self, value: complex) -> Edge:
        w = self.intern(value)
        return self.zero_edge if w == 0 else Edge(w, None)

    def make_gate(self, gate, n: int) -> Edge:
        """Operator diagram of ``gate`` extended to ``n`` qubits.

        ``gate`` needs fields kind / parameter / controls / targets (and
        matrix for kind "u").  Positive controls only.
        """
        targets = tuple(gate.targets)
        controls = tuple(gate.controls)
        used = targets + controls
        if len(set(used)) != len(used):
            raise InvalidArgumentError(f"duplicate qubit in gate {gate.kind}: {used}")
        for q in used:
            if not 0 <= q < n:
                raise InvalidArgumentError(f"qubit {q} out of range for {n} qubits")
        if gate.kind == "swap":
            if controls:
                raise InvalidArgumentError("controls on swap are not supported")
            a, b = targets
            x = _gates.base_matrix("x")
            cx1 = self._controlled_single(x, b, (a,), n)
            cx2 = self._controlled_single(x, a, (b,), n)
            return self.multiply_mm(cx1, self.multiply_mm(cx2, cx1))
        if len(targets) != 1:
            raise InvalidArgumentError(f"gate {gate.kind} expects one target, got {targets}")
        mat = _gates.base_matrix(gate.kind, gate.parameter, getattr(gate, "matrix", None))
        return self._controlled_single(mat, targets[0], controls, n)

    def _controlled_single(self, mat, target: int, controls: tuple, n: int) -> Edge:
        cset = frozenset(controls)
        em = [self._terminal(mat[0]), self._terminal(mat[1]),
              self._terminal(mat[2]), self._terminal(mat[3])]
        zero = self.zero_edge
        for level in range(target):
            if level in cset:
                # inactive control branch acts as the identity on lower levels,
                # which only the diagonal entry blocks pick up
                ident = self.identity(level) if level > 0 else self.one_terminal
                em[0] = self._mnode(level, ident, zero, zero, em[0])
                em[1] = self._mnode(level, zero, zero, zero, em[1])
                em[2] = self._mnode(level, zero, zero, zero, em[2])
                em[3] = self._mnode(level, ident, zero, zero, em[3])
            else:
                for i in range(4):
                    em[i] = self._mnode(level, em[i], zero, zero, em[i])
        e = self._mnode(target, em[0], em[1], em[2], em[3])
        for level in range(target + 1, n):
            if level in cset:
                ident = self.identity(level)
                e = self._mnode(level, ident, zero, zero, e)
            else:
                e = self._mnode(level, e, zero, zero, e)
        return e

    # ------------------------------------------------------------------
    # arithmetic

    def add(self, a: Edge, b: Edge) -> Edge:
        """Element-wise sum of two diagrams of the same kind and level."""
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.node is None or b.node is None:
            raise InvalidArgumentError("add needs two non-terminal edges")
        na, nb = len(a.node.edges), len(b.node.edges)
        if na != nb:
            raise InvalidArgumentError("cannot add a vector and a matrix diagram")
        if a.node.level != b.node.level:
            raise InvalidArgumentError(
                f"level mismatch in add: {a.node.level} vs {b.node.level}")
        cache = self._ct_add_v if na == 2 else self._ct_add_m
        return self._add(a, b, a.node.level, cache, na)

    def _add(self, a: Edge, b: Edge, level: int, cache: _Cache, nsucc: int) -> Edge:
        if a.node is None and a.w == 0:
            return b
        if b.node is None and b.w == 0:
            return a
        if level < 0:
            return self._terminal(a.w + b.w)
        if a.node.uid > b.node.uid:
            a, b = b, a
        ratio = self.intern(b.w / a.w)
        if ratio == 0:
            return a
        key = (a.node, b.node, ratio)
        memo = self.use_compute_table
        r = cache.get(key) if memo else None
        if r is None:
            an = a.node
            bn = b.node
            lo = level - 1
            parts = []
            for i in range(nsucc):
                eb = bn.edges[i]
                parts.append(self._add(an.edges[i], self._scale(eb, ratio), lo, cache, nsucc))
            if nsucc == 2:
                r = self._vnode(level, parts[0], parts[1])
            else:
                r = self._mnode(level, parts[0], parts[1], parts[2], parts[3])
            if memo:
                cache.put(key, r)
        return self._scale(r, a.w)

    def multiply_mv(self, m: Edge, v: Edge) -> Edge:
        """Matrix-vector product; both over the same qubit count."""
        if m.is_zero or v.is_zero:
            return self.zero_edge
        if m.node is None or len(m.node.edges) != 4:
            raise InvalidArgumentError("left operand must be a matrix diagram")
        if v.node is None or len(v.node.edges) != 2:
            raise InvalidArgumentError("right operand must be a vector diagram")
        if m.node.level != v.node.level:
            raise InvalidArgumentError(
                f"level mismatch in multiply: {m.node.level} vs {v.node.level}")
        return self._mul_mv(m, v, m.node.level)

    def _mul_mv(self, m: Edge, v: Edge, level: int) -> Edge:
        if (m.node is None and m.w == 0) or (v.node is None and v.w == 0):
            return self.zero_edge
        w = self.intern(m.w * v.w)
        if w == 0:
            return self.zero_edge
        if level < 0:
            return Edge(w, None)
        mn = m.node
        vn = v.node
        if mn is self._ident_nodes.get(level):
            return Edge(w, vn)
        key = (mn, vn)
        memo = self.use_compute_table
        r = self._ct_mv.get(key) if memo else None
        if r is None:
            me = mn.edges
            ve = vn.edges
            lo = level - 1
            addc = self._ct_add_v
            r0 = self._add(self._mul_mv(me[0], ve[0], lo),
                           self._mul_mv(me[1], ve[1], lo), lo, addc, 2)
            r1 = self._add(self._mul_mv(me[2], ve[0], lo),
                           self._mul_mv(me[3], ve[1], lo), lo, addc, 2)
            r = self._vnode(level, r0, r1)
            if memo:
                self._ct_mv.put(key, r)
        return self._scale(r, w)

    def multiply_mm(self, a: Edge, b: Edge) -> Edge:
        """Matrix-matrix product ``a @ b``; both over the same qubit count."""
        if a.is_zero or b.is_zero:
            return self.zero_edge
        for e in (a, b):
            if e.node is None or len(e.node.edges) != 4:
                raise InvalidArgumentError("multiply_mm needs two matrix diagrams")
        if a.node.level != b.node.level:
            raise InvalidArgumentError(
                f"level mismatch in multiply: {a.node.level} vs {b.node.level}")
        return self._mul_mm(a, b, a.node.level)

    def _mul_mm(self, a: Edge, b: Edge, level: int) -> Edge:
        if (a.node is None and a.w == 0) or (b.node is None and b.w == 0):
            return self.zero_edge
        w = self.intern(a.w * b.w)
        if w == 0:
            return self.zero_edge
        if level < 0:
            return Edge(w, None)
        an = a.node
        bn = b.node
        ident = self._ident_nodes.get(level)
        if an is ident:
            return Edge(w, bn)
        if bn is ident:
            return Edge(w, an)
        key = (an, bn)
        memo = self.use_compute_table
        r = self._ct_mm.get(key) if memo else None
        if r is None:
            ae = an.edges
            be = bn.edges
            lo = level - 1
            addc = self._ct_add_m
            parts = []
            for row in (0, 2):
                for col in (0, 1):
                    parts.append(self._add(
                        self._mul_mm(ae[row], be[col], lo),
                        self._mul_mm(ae[row + 1], be[col + 2], lo),
                        lo, addc, 4))
            r = self._mnode(level, parts[0], parts[1], parts[2], parts[3])
            if memo:
                self._ct_mm.put(key, r)
        return self._scale(r, w)

    def conjugate_transpose(self, m: Edge) -> Edge:
        if m.is_zero:
            return self.zero_edge
        if m.node is None or len(m.node.edges) != 4:
            raise InvalidArgumentError("conjugate_transpose needs a matrix diagram")
        return self._ct_edge(m, {})

    def _ct_edge(self, e: Edge, memo: dict) -> Edge:
        if e.node is None:
            return self.zero_edge if e.w == 0 else self._terminal(e.w.conjugate())
        r = memo.get(e.node)
        if r is None:
            s = e.node.edges
            r = self._mnode(e.node.level,
                            self._ct_edge(s[0], memo),
                            self._ct_edge(s[2], memo),
                            self._ct_edge(s[1], memo),
                            self._ct_edge(s[3], memo))
            memo[e.node] = r
        return self._scale(r, self.intern(e.w.conjugate()))

    # ------------------------------------------------------------------
    # queries

    def amplitude(self, v: Edge, bits: str) -> complex:
        """Amplitude of the basis state ``bits`` (most significant bit first)."""
        if v.node is None:
            if v.w == 0:
                return 0j
            raise InvalidArgumentError("terminal edge has no amplitudes")
        n = v.node.level + 1
        if len(bits) != n or any(c not in "01" for c in bits):
            raise InvalidArgumentError(
                f"basis string {bits!r} does not address {n} qubits")
        if len(v.node.edges) != 2:
            raise InvalidArgumentError("amplitude extraction needs a vector diagram")
        w = v.w
        node = v.node
        for c in bits:
            e = node.edges[1 if c == "1" else 0]
            w *= e.w
            if w == 0:
                return 0j
            node = e.node
        return complex(w)

    def node_count(self, e: Edge) -> int:
        """Distinct non-terminal nodes reachable from ``e``."""
        if e.node is None:
            return 0
        seen = set()
        stack = [e.node]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            for s in node.edges:
                if s.node is not None and s.node not in seen:
                    stack.append(s.node)
        return len(seen)

    def inner_product(self, a: Edge, b: Edge) -> complex:
        """Hermitian inner product <a|b> of two vector diagrams."""
        if a.is_zero or b.is_zero:
            return 0j
        for e in (a, b):
            if e.node is None or len(e.node.edges) != 2:
                raise InvalidArgumentError("inner_product needs two vector diagrams")
        if a.node.level != b.node.level:
            raise InvalidArgumentError(
                f"level mismatch in inner_product: {a.node.level} vs {b.node.level}")
        memo: dict = {}

        def rec(ea: Edge, eb: Edge, level: int) -> complex:
            if (ea.node is None and ea.w == 0) or (eb.node is None and eb.w == 0):
                return 0j
            if level < 0:
                return ea.w.conjugate() * eb.w
            key = (ea.node, eb.node)
            s = memo.get(key)
            if s is None:
                s = sum(rec(ea.node.edges[i], eb.node.edges[i], level - 1) for i in (0, 1))
                memo[key] = s
            return ea.w.conjugate() * eb.w * s

        return rec(a, b, a.node.level)

    def signature(self, e: Edge):
        """Kernel-independent structural fingerprint (for cross-instance equality)."""
        memo: dict = {}

        def node_sig(node):
            s = memo.get(node)
            if s is None:
                s = (node.level, tuple(edge_sig(x) for x in node.edges))
                memo[node] = s
            return s

        def edge_sig(x: Edge):
            return (x.w.real, x.w.imag, None if x.node is None else node_sig(x.node))

        return edge_sig(e)

    # ------------------------------------------------------------------
    # dense reconstruction (n must stay small; intended for checks and export)

    def to_vector(self, e: Edge, n: int | None = None) -> np.ndarray:
        if e.node is None:
            if e.w == 0:
                if n is None:
                    raise InvalidArgumentError("zero edge needs an explicit qubit count")
                return np.zeros(1 << n, dtype=complex)
            return np.array([e.w], dtype=complex)
        memo: dict = {}

        def sub(edge: Edge, size: int) -> np.ndarray:
            if edge.node is None:
                if edge.w == 0:
                    return np.zeros(size, dtype=complex)
                return np.array([edge.w], dtype=complex)
            return edge.w * arr(edge.node)

        def arr(node) -> np.ndarray:
            a = memo.get(node)
            if a is None:
                half = 1 << node.level
                a = np.concatenate([sub(node.edges[0], half), sub(node.edges[1], half)])
                memo[node] = a
            return a

        return e.w * arr(e.node)

    def to_matrix(self, e: Edge, n: int | None = None) -> np.ndarray:
        if e.node is None:
            if e.w == 0:
                if n is None:
                    raise InvalidArgumentError("zero edge needs an explicit qubit count")
                dim = 1 << n
                return np.zeros((dim, dim), dtype=complex)
            return np.array([[e.w]], dtype=complex)
        memo: dict = {}

        def sub(edge: Edge, size: int) -> np.ndarray:
            if edge.node is None:
                if edge.w == 0:
                    return np.zeros((size, size), dtype=complex)
                return np.array([[edge.w]], dtype=complex)
            return edge.w * arr(edge.node)

        def arr(node) -> np.ndarray:
            a = memo.get(node)
            if a is None:
                half = 1 << node.level
                s = node.edges
                a = np.block([[sub(s[0], half), sub(s[1], half)],
                              [sub(s[2], half), sub(s[3], half)]])
                memo[node] = a
            return a

        return e.w * arr(e.node)

    # ------------------------------------------------------------------
    # memory management

    def inc_ref(self, e: Edge) -> None:
        if e.node is not None:
            e.node.ref += 1

    def dec_ref(self, e: Edge) -> None:
        if e.node is not None and e.node.ref > 0:
            e.node.ref -= 1

    @property
    def unique_size(self) -> int:
        return len(self._vec_unique) + len(self._mat_unique)

    def gc(self, roots: Iterable[Edge] = ()) -> int:
        """Sweep nodes unreachable from ``roots`` and externally ref'd nodes.

        Compute tables are invalidated wholesale; the value table is kept so
        interning stays stable across collections.
        """
        marked: set = set()
        stack = [e.node for e in roots if e.node is not None]
        for table in (self._vec_unique, self._mat_unique):
            for node in table.values():
                if node.ref > 0:
                    stack.append(node)
        while stack:
            node = stack.pop()
            if node in marked:
                continue
            marked.add(node)
            for s in node.edges:
                if s.node is not None and s.node not in marked:
                    stack.append(s.node)
        removed = 0
        for name in ("_vec_unique", "_mat_unique"):
            table = getattr(self, name)
            kept = {k: v for k, v in table.items() if v in marked}
            removed += len(table) - len(kept)
            setattr(self, name, kept)
        self._ct_mv.clear()
        self._ct_mm.clear()
        self._ct_add_v.clear()
        self._ct_add_m.clear()
        self._ident_nodes = {
            lvl: node for lvl, node in self._ident_nodes.items() if node in marked
        }
        keep = 0
        for e in self._ident_edges:
            if e.node in marked:
                keep += 1
            else:
                break
        del self._ident_edges[keep:]
        return removed

    # ------------------------------------------------------------------
    # export

    def to_dot(self, e: Edge) -> str:
        """Graphviz rendering of a diagram; layout is best-effort only."""
        lines = ["digraph dd {", "  rankdir=TB;", '  root [shape=point, label=""];']
        if e.node is None:
            lines.append('  t [shape=box, label="1"];')
            if e.w == 0:
                lines.append("  z0 [shape=point, style=filled];")
                lines.append("  root -> z0;")
            else:
                lines.append(f'  root -> t [label="{_fmt_weight(e.w)}"];')
            lines.append("}")
            return "\n".join(lines)
        order: list = []
        seen = set()

        def visit(node):
            if node in seen:
                return
            seen.add(node)
            order.append(node)
            for s in node.edges:
                if s.node is not None:
                    visit(s.node)

        visit(e.node)
        names = {node: f"n{i}" for i, node in enumerate(order)}
        lines.append('  t [shape=box, label="1"];')
        lines.append(f'  root -> n0 [label="{_fmt_weight(e.w)}"];')
        stub = 0
        for node in order:
            lines.append(f'  {names[node]} [shape=circle, label="{node.level}"];')
            for i, s in enumerate(node.edges):
                if s.node is None and s.w == 0:
                    lines.append(f"  z{stub} [shape=point, style=filled];")
                    lines.append(f'  {names[node]} -> z{stub} [label="{i}"];')
                    stub += 1
                elif s.node is None:
                    lines.append(
                        f'  {names[node]} -> t [label="{i}: {_fmt_weight(s.w)}"];')
                else:
                    lines.append(
                        f'  {names[node]} -> {names[s.node]} [label="{i}: {_fmt_weight(s.w)}"];')
        lines.append("}")
        return "\n".join(lines)


def _fmt_weight(w: complex) -> str:
    if w.imag == 0:
        return f"{w.real:.4g}"
    if w.real == 0:
        return f"{w.imag:.4g}i"
    sign = "+" if w.imag > 0 else "-"
    return f"{w.real:.4g}{sign}{abs(w.imag):.4g}i"


def root_equal(a: Edge, b: Edge) -> bool:
    """Same-kernel identity check: same node object and equal interned weight."""
    return a.node is b.node and a.w == b.w
