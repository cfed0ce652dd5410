"""Command-line entry point: simulate, verify, export-tn, bench, dot.

Exit codes: 0 success, 1 inconsistent verdict, 2 input or validation error,
3 internal error.  Reports are JSON on stdout; errors are JSON on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import qasm, simpath, tnbridge
from .circuit import Circuit, GENERATORS, concat_inverse, ghz, qft, transpile
from .errors import (
    DdpathError,
    InternalError,
    InvalidArgumentError,
    PathValidationError,
    QasmError,
)
from .kernel import Edge, Kernel

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def parse_circuit_source(source: str) -> Circuit:
    """A generator spec like ``ghz:5``, ``transpile(qft:4)``, or a QASM file path."""
    source = source.strip()
    if source.startswith("transpile(") and source.endswith(")"):
        return transpile(parse_circuit_source(source[len("transpile("):-1]))
    if ":" in source and not source.lower().endswith(".qasm"):
        name, _, arg = source.partition(":")
        gen = GENERATORS.get(name)
        if gen is None:
            raise InvalidArgumentError(
                f"unknown generator {name!r}; known: {sorted(GENERATORS)}")
        try:
            n = int(arg)
        except ValueError:
            raise InvalidArgumentError(f"bad qubit count {arg!r} in {source!r}")
        return gen(n)
    try:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read circuit source {source!r}: {exc}")
    return qasm.parse(text)


def _initial_edge(spec: str, kernel: Kernel, n: int) -> Edge:
    if spec == "zeros":
        return kernel.make_zero_state(n)
    if spec == "ghz":
        edge, _ = simpath.execute(ghz(n), kernel=kernel)
        return edge
    if set(spec) <= {"0", "1"}:
        if len(spec) != n:
            raise InvalidArgumentError(
                f"initial bitstring {spec!r} does not address {n} qubits")
        return kernel.make_basis_state(spec)
    raise InvalidArgumentError(f"bad initial state spec {spec!r}")


def _resolve_path(spec: str, circuit: Circuit) -> simpath.SimulationPath:
    if spec == "sequential":
        return simpath.sequential_path(len(circuit.gates))
    if spec.startswith("file:"):
        path = simpath.load_path(spec[len("file:"):])
        simpath.validate(path, circuit)
        return path
    raise InvalidArgumentError(f"bad path spec {spec!r}; use sequential or file:<p>")


def _circuit_meta(source: str, c: Circuit) -> dict:
    return {"source": source, "qubits": c.num_qubits, "gates": len(c.gates)}


def cmd_simulate(args) -> int:
    circuit = parse_circuit_source(args.circuit)
    if not circuit.gates:
        raise InvalidArgumentError("cannot simulate an empty circuit")
    kernel = Kernel()
    initial = _initial_edge(args.initial, kernel, circuit.num_qubits)
    path = _resolve_path(args.path, circuit)
    final, stats = simpath.execute(circuit, path, kernel, initial)
    report = {
        "command": "simulate",
        "argv": args.argv,
        "circuit": _circuit_meta(args.circuit, circuit),
        "strategy": args.path,
        "stats": stats.to_json(),
    }
    if args.amplitudes:
        amps = {}
        for bits in args.amplitudes.split(","):
            bits = bits.strip()
            a = kernel.amplitude(final, bits)
            amps[bits] = [a.real, a.imag]
        report["amplitudes"] = amps
    if args.stats_out:
        with open(args.stats_out, "w", encoding="utf-8") as fh:
            json.dump(stats.to_json(), fh, indent=2)
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_circuit_source(args.circuit)
    gp = parse_circuit_source(args.circuit_prime)
    if g.num_qubits != gp.num_qubits:
        raise InvalidArgumentError(
            f"qubit count mismatch: {g.num_qubits} vs {gp.num_qubits}")
    kernel = Kernel()
    initial = _initial_edge(args.initial, kernel, g.num_qubits)
    strategy = args.strategy
    path = None
    if strategy.startswith("plan:"):
        plan = tnbridge.load_plan(strategy[len("plan:"):])
        path = tnbridge.import_path(plan, concat_inverse(g, gp))
        strategy_name = strategy
    elif strategy in simpath.STRATEGIES:
        strategy_name = strategy
    else:
        raise InvalidArgumentError(
            f"unknown strategy {strategy!r}; use one of {simpath.STRATEGIES} or plan:<p>")
    result = simpath.verify_equivalence(g, gp, strategy, kernel, initial, path)
    report = {
        "command": "verify",
        "argv": args.argv,
        "circuit": _circuit_meta(args.circuit, g),
        "circuit_prime": _circuit_meta(args.circuit_prime, gp),
        "strategy": strategy_name,
        "combined_gates": len(result.combined.gates),
        "verdict": result.verdict,
        "fidelity": result.fidelity,
        "stats": result.stats.to_json(),
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK if result.verdict == "consistent" else EXIT_INCONSISTENT


def cmd_export_tn(args) -> int:
    circuit = parse_circuit_source(args.circuit)
    tn = tnbridge.export_tensor_network(circuit)
    text = json.dumps(tn.to_json(), indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_dot(args) -> int:
    circuit = parse_circuit_source(args.circuit)
    if not circuit.gates:
        raise InvalidArgumentError("cannot simulate an empty circuit")
    kernel = Kernel()
    path = _resolve_path(args.path, circuit)
    final, _ = simpath.execute(circuit, path, kernel)
    text = kernel.to_dot(final)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# ----------------------------------------------------------------------
# bench

def _parse_suite(spec: str) -> tuple[str, list[int], list[str]]:
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise InvalidArgumentError(
            f"bad suite spec {spec!r}; use family:lo..hi[:strategy,...]")
    family, span = parts[0], parts[1]
    strategies = parts[2].split(",") if len(parts) == 3 else ["sequential"]
    strategies = [s.strip().strip("{}") for s in strategies]
    if ".." in span:
        lo, _, hi = span.partition("..")
        ns = list(range(int(lo), int(hi) + 1))
    else:
        ns = [int(span)]
    return family, ns, strategies


def _bench_row(family: str, n: int, strategy: str) -> tuple[int, simpath.RunStats]:
    kernel = Kernel()
    if family == "qft-verify":
        g = qft(n)
        combined = concat_inverse(g, g)
        initial = _initial_edge("ghz", kernel, n)
        path = simpath.make_path(strategy, g, g)
        _, stats = simpath.execute(combined, path, kernel, initial)
        return len(combined.gates), stats
    gen = GENERATORS.get(family)
    if gen is None:
        raise InvalidArgumentError(f"unknown bench family {family!r}")
    circuit = gen(n)
    if strategy == "sequential":
        path = simpath.sequential_path(len(circuit.gates))
    elif strategy == "greedy":
        tn = tnbridge.export_tensor_network(circuit)
        path = tnbridge.import_path(tnbridge.greedy_plan(tn), circuit)
    else:
        raise InvalidArgumentError(
            f"strategy {strategy!r} does not apply to family {family!r}")
    _, stats = simpath.execute(circuit, path, kernel)
    return len(circuit.gates), stats


def cmd_bench(args) -> int:
    rows = ["benchmark,n,gates,strategy,peak_nodes,final_nodes,elapsed_ns"]
    for spec in args.suite:
        family, ns, strategies = _parse_suite(spec)
        for n in ns:
            for strategy in strategies:
                gates, stats = _bench_row(family, n, strategy)
                rows.append(f"{family},{n},{gates},{strategy},"
                            f"{stats.peak_nodes},{stats.final_nodes},{stats.elapsed_ns}")
    text = "\n".join(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddpath",
        description="Decision-diagram circuit simulator with pluggable simulation paths")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="simulate a circuit and report statistics")
    p.add_argument("circuit", help="generator spec (ghz:5), transpile(...), or QASM path")
    p.add_argument("--path", default="sequential", help="sequential or file:<path.json>")
    p.add_argument("--amplitudes", default="", help="comma separated basis strings")
    p.add_argument("--stats-out", default="", help="write run statistics JSON here")
    p.add_argument("--initial", default="zeros", help="zeros, ghz, or a basis bitstring")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check two circuits for equivalence")
    p.add_argument("circuit")
    p.add_argument("circuit_prime")
    p.add_argument("--strategy", default="alternating",
                   help="sequential, alternating, heuristic, or plan:<path.json>")
    p.add_argument("--initial", default="zeros", help="zeros, ghz, or a basis bitstring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-tn", help="write the tensor-network form of a circuit")
    p.add_argument("circuit")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_export_tn)

    p = sub.add_parser("bench", help="run benchmark sweeps and emit CSV")
    p.add_argument("suite", nargs="+",
                   help="family:lo..hi[:strategy,...], e.g. ghz:4..64:sequential")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dot", help="export the final-state diagram as graphviz")
    p.add_argument("circuit")
    p.add_argument("--path", default="sequential")
    p.add_argument("--out", default="")
    p.set_defaults(func=cmd_dot)
    return parser


def _error_payload(kind: str, exc: Exception) -> dict:
    payload = {"error": kind, "message": str(exc)}
    if isinstance(exc, PathValidationError) and exc.task_index is not None:
        payload["task_index"] = exc.task_index
    if isinstance(exc, QasmError) and exc.line is not None:
        payload["line"] = exc.line
    return payload


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except InternalError as exc:
        print(json.dumps(_error_payload("internal", exc)), file=sys.stderr)
        return EXIT_INTERNAL
    except DdpathError as exc:
        print(json.dumps(_error_payload(type(exc).__name__, exc)), file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - last resort
        print(json.dumps(_error_payload("unexpected", exc)), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
