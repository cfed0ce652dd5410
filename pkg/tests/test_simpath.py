import json
import random

import pytest

from ddpath import (
    Kernel,
    alternating_path,
    concat_inverse,
    execute,
    ghz,
    heuristic_path,
    qft,
    root_equal,
    sequential_path,
    transpile,
    validate,
    verify_equivalence,
)
from ddpath import oracle
from ddpath.circuit import Circuit, Gate, h
from ddpath.errors import InvalidArgumentError, PathValidationError
from ddpath.simpath import SimulationPath, load_path, make_path, save_path

from helpers import random_circuit

TREE_PATH_7 = ((0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11), (12, 13))
CHAIN_PATH_7 = ((0, 1), (2, 8), (3, 9), (4, 10), (5, 11), (6, 12), (7, 13))


class TestSequentialPath:
    def test_seven_gates_is_state_chain(self):
        assert sequential_path(7).tasks == CHAIN_PATH_7

    def test_single_gate(self):
        assert sequential_path(1).tasks == ((0, 1),)

    def test_zero_gates_rejected(self):
        with pytest.raises(InvalidArgumentError):
            sequential_path(0)

    def test_every_task_is_matrix_vector(self):
        c = qft(3)
        info = validate(sequential_path(7), c)
        assert all(t.matrix_vector for t in info.tasks)


class TestValidate:
    def test_tree_path_is_valid(self):
        info = validate(SimulationPath(7, TREE_PATH_7), qft(3))
        assert [t.matrix_vector for t in info.tasks] == [
            True, False, False, False, True, False, True]
        assert info.intervals[14] == (0, 7)

    def test_plan_style_chain_is_valid(self):
        info = validate(SimulationPath(7, CHAIN_PATH_7), qft(3))
        assert all(t.matrix_vector for t in info.tasks)

    def test_skipping_noncommuting_gate_rejected(self):
        bad = SimulationPath(7, ((0, 2), (1, 8), (3, 9), (4, 10), (5, 11),
                                 (6, 12), (7, 13)))
        with pytest.raises(PathValidationError) as exc:
            validate(bad, qft(3))
        assert exc.value.task_index is not None

    def test_reused_index_rejected(self):
        bad = SimulationPath(2, ((0, 1), (0, 2)))
        c = Circuit(2, (h(0), h(1)))
        with pytest.raises(PathValidationError) as exc:
            validate(bad, c)
        assert "already consumed" in str(exc.value)

    def test_wrong_task_count_rejected(self):
        with pytest.raises(PathValidationError):
            validate(SimulationPath(2, ((0, 1),)), Circuit(2, (h(0), h(1))))

    def test_unknown_index_rejected(self):
        with pytest.raises(PathValidationError):
            validate(SimulationPath(2, ((0, 9), (1, 2))), Circuit(2, (h(0), h(1))))

    def test_repeated_index_in_pair_rejected(self):
        with pytest.raises(PathValidationError):
            validate(SimulationPath(2, ((1, 1), (0, 2))), Circuit(2, (h(0), h(1))))

    def test_disjoint_support_skip_accepted(self):
        # pairing two one-qubit gates across an unrelated one commutes freely
        c = Circuit(3, (h(0), h(1), h(2)))
        info = validate(SimulationPath(3, ((1, 3), (2, 4), (0, 5))), c)
        assert info.intervals[4] == (1, 3)

    def test_shared_qubit_skip_rejected(self):
        c = Circuit(1, (h(0), h(0), h(0)))
        with pytest.raises(PathValidationError):
            validate(SimulationPath(3, ((1, 3), (2, 4), (0, 5))), c)


class TestAlternatingPath:
    def test_small_structure(self):
        assert alternating_path(2, 2).tasks == ((2, 3), (1, 5), (6, 4), (0, 7))

    def test_task_count(self):
        p = alternating_path(7, 21)
        assert len(p.tasks) == 28

    def test_all_matrix_until_final(self):
        g = qft(3)
        combined = concat_inverse(g, g)
        info = validate(alternating_path(7, 7), combined)
        flags = [t.matrix_vector for t in info.tasks]
        assert flags == [False] * 13 + [True]

    def test_zero_counts_rejected(self):
        with pytest.raises(InvalidArgumentError):
            alternating_path(0, 3)

    def test_identity_intermediates_stay_small(self):
        n = 6
        g = qft(n)
        combined = concat_inverse(g, g)
        k = Kernel()
        gate_sizes = [k.node_count(k.make_gate(gt, n)) for gt in combined.gates]
        final, stats = execute(combined, alternating_path(len(g.gates), len(g.gates)), k)
        assert root_equal(final, k.make_zero_state(n))
        assert stats.peak_nodes <= max(gate_sizes)


class TestHeuristicPath:
    def test_unit_costs_match_alternating(self):
        g = qft(3)
        costs = {kind: 1 for kind in {x.kind for x in g.gates}}
        assert heuristic_path(g, g, costs).tasks == alternating_path(7, 7).tasks

    def test_consumption_schedule_follows_costs(self):
        g = qft(3)
        gp = transpile(g)
        p = heuristic_path(g, gp)
        ng = len(g.gates)
        schedule = []
        for a, b in p.tasks[:-1]:
            if 1 <= a <= ng or 1 <= b <= ng:
                schedule.append(0)
            else:
                schedule[-1] += 1
        # first entry also counts the primed gate consumed by the opening pair
        schedule[0] += 1
        assert schedule == [3, 1, 5, 1, 5, 5, 1]

    def test_matches_sequential_final_state(self):
        g = qft(3)
        gp = transpile(g)
        combined = concat_inverse(g, gp)
        k = Kernel()
        f_heur, _ = execute(combined, heuristic_path(g, gp), k)
        f_seq, _ = execute(combined, sequential_path(len(combined.gates)), k)
        assert root_equal(f_heur, f_seq)

    def test_missing_cost_rejected(self):
        from ddpath.errors import UnsupportedGateError
        c = Circuit(1, (Gate("u", (0,), matrix=(1, 0, 0, 1)),))
        with pytest.raises(UnsupportedGateError):
            heuristic_path(c, c)
        with pytest.raises(UnsupportedGateError):
            heuristic_path(qft(2), qft(2), costs={"h": 1})


class TestExecute:
    def test_cross_path_final_roots_agree(self):
        c = qft(3)
        k = Kernel()
        f_seq, _ = execute(c, sequential_path(7), k)
        f_tree, _ = execute(c, SimulationPath(7, TREE_PATH_7), k)
        f_chain, _ = execute(c, SimulationPath(7, CHAIN_PATH_7), k)
        assert root_equal(f_seq, f_tree) and root_equal(f_seq, f_chain)

    def test_ghz_final_node_count(self):
        k = Kernel()
        final, stats = execute(ghz(3), kernel=k)
        assert stats.final_nodes == 5 and k.node_count(final) == 5

    def test_entangled_qft_final_node_count(self):
        from ddpath import entangled_qft
        k = Kernel()
        _, stats = execute(entangled_qft(3), kernel=k)
        assert stats.final_nodes == 7

    def test_task_count_matches_gates(self):
        rng = random.Random(21)
        c = random_circuit(rng, 4, 17)
        _, stats = execute(c)
        assert stats.task_count == 17 and len(stats.result_nodes) == 17
        assert stats.peak_nodes >= stats.final_nodes

    def test_path_independence_amplitudes(self):
        rng = random.Random(33)
        for _ in range(5):
            c = random_circuit(rng, 4, 12)
            k = Kernel()
            f_seq, _ = execute(c, kernel=k)
            tree = _balanced_tree_path(len(c.gates))
            f_tree, _ = execute(c, tree, k)
            dev = oracle.compare_states(k.to_vector(f_seq), k.to_vector(f_tree))
            assert dev < 1e-9

    def test_initial_state_qubit_mismatch(self):
        k = Kernel()
        with pytest.raises(InvalidArgumentError):
            execute(ghz(3), kernel=k, initial=k.make_zero_state(2))

    def test_observer_sees_every_task(self):
        seen = []
        execute(ghz(4), observer=lambda i, e: seen.append(i))
        assert seen == [1, 2, 3, 4]

    def test_stats_json_schema(self):
        _, stats = execute(ghz(3))
        data = stats.to_json()
        assert set(data) == {"task_count", "tasks", "peak_nodes", "final_nodes",
                             "elapsed_ns"}
        assert data["tasks"][0] == {"task_index": 1,
                                    "result_nodes": stats.result_nodes[0]}


def _balanced_tree_path(count):
    """Pair up neighbours repeatedly until one result remains."""
    level = list(range(count + 1))
    nxt = count + 1
    tasks = []
    while len(level) > 1:
        merged = []
        for i in range(0, len(level) - 1, 2):
            tasks.append((level[i], level[i + 1]))
            merged.append(nxt)
            nxt += 1
        if len(level) % 2:
            merged.append(level[-1])
        level = merged
    return SimulationPath(count, tuple(tasks))


class TestSeparation:
    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_sequential_exponential_alternating_linear(self, n):
        g = qft(n)
        combined = concat_inverse(g, g)
        k = Kernel()
        initial, _ = execute(ghz(n), kernel=k)
        k.inc_ref(initial)
        _, seq = execute(combined, sequential_path(len(combined.gates)), k, initial)
        _, alt = execute(combined, alternating_path(len(g.gates), len(g.gates)), k, initial)
        assert seq.peak_nodes >= 2 ** n - 1
        assert alt.peak_nodes <= 8 * n


class TestVerifyEquivalence:
    def test_identical_circuits_consistent(self):
        res = verify_equivalence(qft(4), qft(4), "alternating")
        assert res.verdict == "consistent"
        assert res.fidelity == pytest.approx(1.0, abs=1e-12)

    def test_transpiled_consistent_under_all_strategies(self):
        g = qft(4)
        gp = transpile(g)
        for strategy in ("sequential", "alternating", "heuristic"):
            res = verify_equivalence(g, gp, strategy)
            assert res.verdict == "consistent", strategy

    def test_perturbed_angle_inconsistent(self):
        # perturb the last phase gate: its inverse is applied first, to the
        # fully superposed state, so a 1e-3 angle error must be visible
        g = qft(4)
        gates = list(transpile(g).gates)
        at = max(i for i, gt in enumerate(gates) if gt.kind == "p")
        gt = gates[at]
        gates[at] = Gate("p", gt.targets, gt.controls, gt.parameter + 1e-3)
        gp = Circuit(g.num_qubits, tuple(gates))
        for strategy in ("sequential", "alternating", "heuristic"):
            res = verify_equivalence(g, gp, strategy)
            assert res.verdict == "inconsistent", strategy
            assert res.fidelity < 1 - 1e-9

    def test_x_vs_empty_inconsistent(self):
        gx = Circuit(1, (Gate("x", (0,)),))
        res = verify_equivalence(gx, Circuit(1), "alternating")
        assert res.verdict == "inconsistent"

    def test_both_empty_consistent(self):
        res = verify_equivalence(Circuit(2), Circuit(2))
        assert res.verdict == "consistent" and res.fidelity == 1.0
        assert res.stats.task_count == 0


class TestPathFiles:
    def test_round_trip(self, tmp_path):
        p = sequential_path(5)
        f = tmp_path / "path.json"
        save_path(p, str(f))
        again = load_path(str(f))
        assert again == p
        data = json.loads(f.read_text())
        assert set(data) == {"gate_count", "path"}

    def test_make_path_dispatch(self):
        g = qft(3)
        assert make_path("sequential", g, g).tasks == sequential_path(14).tasks
        assert make_path("alternating", g, g).tasks == alternating_path(7, 7).tasks
        with pytest.raises(InvalidArgumentError):
            make_path("nope", g, g)
