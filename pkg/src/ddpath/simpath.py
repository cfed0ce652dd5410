"""Simulation paths: representation, validation, strategies, and execution.

A path over a circuit with ``G`` gates is a list of exactly ``G`` unordered
index pairs.  Index 0 is the initial state, 1..G are the gates in application
order, and task ``k`` produces index ``G + k``.  A pair may be multiplied
when the two operands cover adjacent runs of the original sequence; as a
relaxation, a gap between them is tolerated when every skipped gate acts on
qubits disjoint from the combined support of both operands (such gates
commute past the product, so any placement is equivalent).
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .circuit import Circuit, concat_inverse, decomposition_cost
from .errors import (
    InternalError,
    InvalidArgumentError,
    PathValidationError,
    UnsupportedGateError,
)
from .kernel import Edge, Kernel

FIDELITY_TOLERANCE = 1e-9
STRATEGIES = ("sequential", "alternating", "heuristic")


@dataclass(frozen=True)
class SimulationPath:
    gate_count: int
    tasks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "tasks", tuple((int(a), int(b)) for a, b in self.tasks))

    def to_json(self) -> dict:
        return {"gate_count": self.gate_count, "path": [list(t) for t in self.tasks]}

    @classmethod
    def from_json(cls, data: dict) -> "SimulationPath":
        return cls(int(data["gate_count"]), tuple(tuple(p) for p in data["path"]))


def load_path(path: str) -> SimulationPath:
    with open(path, "r", encoding="utf-8") as fh:
        return SimulationPath.from_json(json.load(fh))


def save_path(p: SimulationPath, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(p.to_json(), fh)


# ----------------------------------------------------------------------
# strategies

def sequential_path(gate_count: int) -> SimulationPath:
    """Pure matrix-vector chain: the state absorbs one gate per task."""
    if gate_count < 1:
        raise InvalidArgumentError(f"need at least one gate, got {gate_count}")
    tasks = [(0, 1)]
    for k in range(2, gate_count + 1):
        tasks.append((k, gate_count + k - 1))
    return SimulationPath(gate_count, tuple(tasks))


def _woven_path(count_g: int, count_gp: int, budgets: list[int]) -> SimulationPath:
    """Grow a matrix product outward from between the two circuit halves.

    ``budgets[i]`` is how many primed-side gates to attach after taking the
    i-th gate from the end of the first half; both sides clamp on exhaustion,
    and the last task multiplies the assembled matrix with the state.
    """
    total = count_g + count_gp
    next_result = total + 1
    tasks: list[tuple[int, int]] = [(count_g, count_g + 1)]
    result = next_result
    next_result += 1
    gpos = count_g - 1
    ppos = count_g + 2
    owed = budgets[0] - 1
    bi = 1
    while gpos >= 1 or ppos <= total:
        if owed > 0 and ppos <= total:
            tasks.append((result, ppos))
            ppos += 1
            owed -= 1
        elif gpos >= 1:
            tasks.append((gpos, result))
            gpos -= 1
            owed = budgets[bi] if bi < len(budgets) else 0
            bi += 1
        else:
            tasks.append((result, ppos))
            ppos += 1
            owed = 0
        result = next_result
        next_result += 1
    tasks.append((0, result))
    return SimulationPath(total, tuple(tasks))


def alternating_path(gate_count_g: int, gate_count_g_prime: int) -> SimulationPath:
    """Start between the halves and alternate sides one gate at a time."""
    if gate_count_g < 1 or gate_count_g_prime < 1:
        raise InvalidArgumentError("both halves need at least one gate")
    return _woven_path(gate_count_g, gate_count_g_prime, [1] * gate_count_g)


def heuristic_path(g: Circuit, g_prime: Circuit, costs: dict[str, int] | None = None) -> SimulationPath:
    """Follow each first-half gate with its decomposition-cost worth of
    second-half gates, so compiled counterparts cancel as they are consumed."""
    if g.num_qubits != g_prime.num_qubits:
        raise InvalidArgumentError(
            f"qubit count mismatch: {g.num_qubits} vs {g_prime.num_qubits}")
    if len(g.gates) < 1 or len(g_prime.gates) < 1:
        raise InvalidArgumentError("both circuits need at least one gate")
    if costs is None:
        costs = {kind: decomposition_cost(kind) for kind in {x.kind for x in g.gates}}
    budgets = []
    for gate in reversed(g.gates):
        try:
            budgets.append(costs[gate.kind])
        except KeyError:
            raise UnsupportedGateError(f"no decomposition cost for kind {gate.kind!r}")
    return _woven_path(len(g.gates), len(g_prime.gates), budgets)


def make_path(strategy: str, g: Circuit, g_prime: Circuit | None = None) -> SimulationPath:
    if strategy == "sequential":
        count = len(g.gates) + (len(g_prime.gates) if g_prime is not None else 0)
        return sequential_path(count)
    if g_prime is None:
        raise InvalidArgumentError(f"strategy {strategy!r} needs a second circuit")
    if strategy == "alternating":
        return alternating_path(len(g.gates), len(g_prime.gates))
    if strategy == "heuristic":
        return heuristic_path(g, g_prime)
    raise InvalidArgumentError(f"unknown strategy {strategy!r}")


# ----------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidatedTask:
    index: int                 # 1-based task number
    left: int                  # operand applied later (the left factor)
    right: int
    result: int
    matrix_vector: bool        # right operand carries the state


@dataclass(frozen=True)
class PathValidation:
    tasks: tuple[ValidatedTask, ...]
    intervals: dict[int, tuple[int, int]]   # operand index -> covered hull


class _Operand:
    __slots__ = ("positions", "has_state")

    def __init__(self, positions: frozenset, has_state: bool):
        self.positions = positions
        self.has_state = has_state


def _order_conflict(left: _Operand, right: _Operand, supports) -> tuple | None:
    """First pair of positions the orientation would reorder although they
    act on shared qubits; None when the product is order-safe.

    The computed product puts every left position above every right one.
    A right position r above a left position l (r > l) is only harmless
    when the two act on disjoint qubits.
    """
    lmin = min(left.positions)
    rmax = max(right.positions)
    if rmax < lmin:
        return None
    for r in right.positions:
        if r <= lmin or r == 0:
            continue
        sr = supports[r - 1]
        for l in left.positions:
            if l < r and sr & supports[l - 1]:
                return (l, r, sorted(sr & supports[l - 1]))
    return None


def validate(path: SimulationPath, circuit: Circuit) -> PathValidation:
    """Check usage and ordering rules and fix each task's operand orientation."""
    count = len(circuit.gates)
    if path.gate_count != count:
        raise PathValidationError(
            f"path covers {path.gate_count} gates but circuit has {count}")
    if len(path.tasks) != count:
        raise PathValidationError(
            f"expected exactly {count} tasks, got {len(path.tasks)}")
    supports = [frozenset(g.qubits) for g in circuit.gates]
    operands: dict[int, _Operand] = {0: _Operand(frozenset([0]), True)}
    for k in range(1, count + 1):
        operands[k] = _Operand(frozenset([k]), False)
    live = set(operands)
    consumed: set[int] = set()
    intervals = {i: (min(op.positions), max(op.positions)) for i, op in operands.items()}
    out: list[ValidatedTask] = []
    for ti, (a, b) in enumerate(path.tasks, start=1):
        if a == b:
            raise PathValidationError(f"pair ({a}, {b}) repeats one index", ti)
        for idx in (a, b):
            if idx in consumed:
                raise PathValidationError(f"index {idx} already consumed", ti)
            if idx not in live:
                raise PathValidationError(f"index {idx} is not available", ti)
        oa, ob = operands[a], operands[b]
        has_state = oa.has_state or ob.has_state
        if has_state:
            # the state side must stay the right factor
            left, right = (b, a) if oa.has_state else (a, b)
            orientations = [(left, right)]
        elif max(oa.positions) > max(ob.positions):
            orientations = [(a, b), (b, a)]
        else:
            orientations = [(b, a), (a, b)]
        chosen = None
        conflict = None
        for left, right in orientations:
            conflict = _order_conflict(operands[left], operands[right], supports)
            if conflict is None:
                chosen = (left, right)
                break
        if chosen is None:
            l, r, shared = conflict
            raise PathValidationError(
                f"pair ({a}, {b}) would reorder gate {r} above gate {l} "
                f"although they share qubit(s) {shared}", ti)
        pos = oa.positions | ob.positions
        result = count + ti
        operands[result] = _Operand(pos, has_state)
        intervals[result] = (min(pos), max(pos))
        live.discard(a)
        live.discard(b)
        consumed.update((a, b))
        live.add(result)
        out.append(ValidatedTask(ti, chosen[0], chosen[1], result, has_state))
    final = 2 * count
    if live != {final}:
        raise PathValidationError(f"path does not reduce to one result: {sorted(live)}")
    if operands[final].positions != frozenset(range(count + 1)):
        raise PathValidationError("final result does not cover the whole sequence")
    return PathValidation(tuple(out), intervals)


# ----------------------------------------------------------------------
# execution

@dataclass
class RunStats:
    task_count: int
    result_nodes: list[int]
    peak_nodes: int
    final_nodes: int
    elapsed_ns: int

    def to_json(self) -> dict:
        return {
            "task_count": self.task_count,
            "tasks": [
                {"task_index": i + 1, "result_nodes": c}
                for i, c in enumerate(self.result_nodes)
            ],
            "peak_nodes": self.peak_nodes,
            "final_nodes": self.final_nodes,
            "elapsed_ns": self.elapsed_ns,
        }


_GC_FLOOR = 1 << 16


def execute(circuit: Circuit, path: SimulationPath | None = None,
            kernel: Kernel | None = None, initial: Edge | None = None,
            observer=None) -> tuple[Edge, RunStats]:
    """Run every task of ``path`` on the kernel and collect node-count stats.

    Intermediate results are dereferenced as soon as they are consumed;
    the returned final edge holds one reference owned by the caller.
    ``observer(task_index, result_edge)`` is called after every task.
    """
    if path is None:
        path = sequential_path(len(circuit.gates))
    info = validate(path, circuit)
    if kernel is None:
        kernel = Kernel()
    n = circuit.num_qubits
    t0 = time.perf_counter_ns()
    if initial is None:
        initial = kernel.make_zero_state(n)
    if initial.num_qubits != n:
        raise InvalidArgumentError(
            f"initial state has {initial.num_qubits} qubits, circuit has {n}")
    kernel.inc_ref(initial)
    env: dict[int, Edge] = {0: initial}
    peak = kernel.node_count(initial)
    gc_threshold = _GC_FLOOR

    def fetch(idx: int) -> Edge:
        nonlocal peak
        e = env.pop(idx, None)
        if e is None:
            e = kernel.make_gate(circuit.gates[idx - 1], n)
            kernel.inc_ref(e)
            size = kernel.node_count(e)
            if size > peak:
                peak = size
        return e

    counts: list[int] = []
    for vt in info.tasks:
        left = fetch(vt.left)
        right = fetch(vt.right)
        if vt.matrix_vector:
            if left.node is None or len(left.node.edges) != 4 \
                    or right.node is None or len(right.node.edges) != 2:
                raise InternalError(
                    f"task {vt.index}: operands do not form a matrix-vector product")
            result = kernel.multiply_mv(left, right)
        else:
            if left.node is None or right.node is None \
                    or len(left.node.edges) != 4 or len(right.node.edges) != 4:
                raise InternalError(
                    f"task {vt.index}: operands do not form a matrix-matrix product")
            result = kernel.multiply_mm(left, right)
        kernel.inc_ref(result)
        kernel.dec_ref(left)
        kernel.dec_ref(right)
        env[vt.result] = result
        size = kernel.node_count(result)
        counts.append(size)
        if size > peak:
            peak = size
        if observer is not None:
            observer(vt.index, result)
        if kernel.unique_size > gc_threshold:
            kernel.gc(env.values())
            gc_threshold = max(4 * kernel.unique_size, _GC_FLOOR)
    final = env[2 * len(circuit.gates)]
    elapsed = time.perf_counter_ns() - t0
    stats = RunStats(
        task_count=len(info.tasks),
        result_nodes=counts,
        peak_nodes=peak,
        final_nodes=counts[-1] if counts else kernel.node_count(final),
        elapsed_ns=elapsed,
    )
    return final, stats


# ----------------------------------------------------------------------
# equivalence checking

@dataclass
class VerificationResult:
    verdict: str
    fidelity: float
    stats: RunStats
    combined: Circuit
    path: SimulationPath
    final: Edge


def verify_equivalence(g: Circuit, g_prime: Circuit, strategy: str = "alternating",
                       kernel: Kernel | None = None, initial: Edge | None = None,
                       path: SimulationPath | None = None) -> VerificationResult:
    """Simulate g followed by the inverse of g_prime and test that the
    initial state maps to itself up to global phase."""
    combined = concat_inverse(g, g_prime)
    if kernel is None:
        kernel = Kernel()
    if initial is None:
        initial = kernel.make_zero_state(combined.num_qubits)
    if not combined.gates:
        stats = RunStats(0, [], kernel.node_count(initial),
                         kernel.node_count(initial), 0)
        empty = SimulationPath(0, ())
        return VerificationResult("consistent", 1.0, stats, combined, empty, initial)
    if path is None:
        if not g.gates or not g_prime.gates:
            # two-sided strategies need both halves; the chain always applies
            path = sequential_path(len(combined.gates))
        else:
            path = make_path(strategy, g, g_prime)
    kernel.inc_ref(initial)
    final, stats = execute(combined, path, kernel, initial)
    fidelity = abs(kernel.inner_product(initial, final))
    kernel.dec_ref(initial)
    verdict = "consistent" if fidelity >= 1.0 - FIDELITY_TOLERANCE else "inconsistent"
    return VerificationResult(verdict, fidelity, stats, combined, path, final)
