import numpy as np
import pytest

from conftest import adder_inputs, exhaustive_pairs

from ntcdepth.adders import gen_cla
from ntcdepth.circuits import Circuit, depth, gate, validate_ntc
from ntcdepth.experiments import auto_mesh
from ntcdepth.lbt import and_tree, parity_tree
from ntcdepth.mesh import mesh
from ntcdepth.router import (
    Placement,
    decompose_ccnot,
    embed_wires,
    expand_swaps,
    identity_placement,
    place,
    route,
)
from ntcdepth.simulate import (
    all_basis_states,
    assert_equivalent,
    ccnot_matrix,
    simulate_unitary,
)


class TestPlace:
    def test_line_identity(self):
        m = mesh(1, [4])
        p = place(Circuit(4), m, "identity_snake")
        assert p.qubit_to_node == (0, 1, 2, 3)

    def test_2x2_snake(self):
        m = mesh(2, [2, 2])
        p = place(Circuit(4), m, "identity_snake")
        assert [m.coord(p.node_of(q)) for q in range(4)] == [
            (0, 0), (0, 1), (1, 1), (1, 0),
        ]

    def test_mesh_too_small(self):
        with pytest.raises(ValueError, match="cannot hold"):
            place(Circuit(5), mesh(1, [4]), "identity_snake")

    def test_bisection_beats_snake_on_cla4_2d(self):
        c, _ = gen_cla(4)
        d = decompose_ccnot(c)
        m = auto_mesh(2, d.num_qubits)
        swaps = {}
        for strat in ("identity_snake", "interaction_bisection"):
            routed = route(d, m, place(d, m, strat), "swap")
            swaps[strat] = routed.swap_count
        assert swaps["interaction_bisection"] <= swaps["identity_snake"]

    def test_placement_injective_enforced(self):
        with pytest.raises(ValueError, match="injective"):
            Placement(mesh(1, [3]), (0, 0))


class TestDecompose:
    def test_single_ccnot_block(self):
        c = Circuit(3, (gate("CCNOT", 0, 1, 2),))
        d = decompose_ccnot(c)
        assert len(d.gates) == 15
        kinds = [g.kind for g in d.gates]
        assert kinds.count("CNOT") == 6
        assert kinds.count("T") + kinds.count("Tdg") == 7
        assert kinds.count("H") == 2
        dev = np.abs(simulate_unitary(d) - ccnot_matrix()).max()
        assert dev <= 1e-10

    def test_ccnot_free_unchanged(self):
        c = parity_tree(6)
        assert decompose_ccnot(c) == c

    def test_and_tree2_truth_table_preserved(self):
        d = decompose_ccnot(and_tree(2))
        u = simulate_unitary(d)
        for idx in range(8):
            col = np.zeros(8)
            col[idx] = 1
            out = u @ col
            j = int(np.argmax(np.abs(out)))
            assert abs(abs(out[j]) - 1) < 1e-10
            a, b = idx & 1, (idx >> 1) & 1
            assert j == idx ^ ((a & b) << 2)

    def test_embedded_operands(self):
        c = Circuit(6, (gate("CCNOT", 5, 1, 3),))
        d = decompose_ccnot(c)
        touched = {q for g in d.gates for q in g.qubits}
        assert touched == {5, 1, 3}


class TestRouteSwapMode:
    def test_hand_traced_line_example(self):
        line = mesh(1, [3])
        c = Circuit(3, (gate("CNOT", 0, 2),))
        r = route(c, line, place(c, line, "identity_snake"), "swap")
        assert [(g.kind, g.qubits) for g in r.circuit.gates] == [
            ("SWAP", (0, 1)),
            ("CNOT", (1, 2)),
        ]
        assert r.final_permutation == (1, 0, 2)
        assert r.swap_count == 1

    def test_adjacent_gate_untouched(self):
        line = mesh(1, [3])
        c = Circuit(3, (gate("CNOT", 0, 1),))
        r = route(c, line, place(c, line, "identity_snake"), "swap")
        assert r.swap_count == 0
        assert [(g.kind, g.qubits) for g in r.circuit.gates] == [("CNOT", (0, 1))]
        assert r.final_permutation == (0, 1, 2)

    def test_ccnot_rejected_without_flag(self):
        line = mesh(1, [3])
        c = Circuit(3, (gate("CCNOT", 0, 1, 2),))
        with pytest.raises(ValueError, match="decompose"):
            route(c, line, place(c, line, "identity_snake"), "swap")


class TestRouteChainMode:
    def test_distance_two_is_eq1_cascade(self):
        line = mesh(1, [3])
        c = Circuit(3, (gate("CNOT", 0, 2),))
        r = route(c, line, place(c, line, "identity_snake"), "cnot_chain")
        assert [(g.kind, g.qubits) for g in r.circuit.gates] == [
            ("CNOT", (0, 1)),
            ("CNOT", (1, 2)),
            ("CNOT", (0, 1)),
            ("CNOT", (1, 2)),
        ]
        assert r.final_permutation == (0, 1, 2)
        assert r.swap_count == 0

    @pytest.mark.parametrize("dims", [(5,), (2, 3)])
    def test_long_chain_equals_direct(self, dims):
        m = mesh(len(dims), list(dims))
        n = m.node_count
        c = Circuit(n, (gate("CNOT", 0, n - 1),))
        pl = identity_placement(m, n)
        r = route(c, m, pl, "cnot_chain")
        v = assert_equivalent(c, r.circuit, r.final_permutation)
        assert v.equivalent, v.detail
        # unitary-exact too
        assert np.abs(simulate_unitary(c) - simulate_unitary(r.circuit)).max() <= 1e-10

    def test_long_swap_gate_chained(self):
        line = mesh(1, [4])
        c = Circuit(4, (gate("SWAP", 0, 3),))
        pl = identity_placement(line, 4)
        r = route(c, line, pl, "cnot_chain")
        assert all(g.kind == "CNOT" for g in r.circuit.gates)
        v = assert_equivalent(c, r.circuit, r.final_permutation)
        assert v.equivalent, v.detail


class TestRoutedAdders:
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("mode", ["swap", "cnot_chain"])
    def test_bookkeeping_equivalence_exhaustive(self, n, k, mode):
        # CCNOT-preserving verification route: exhaustive over adder inputs
        c, lay = gen_cla(n)
        m = auto_mesh(k, c.num_qubits)
        pl = place(c, m, "identity_snake")
        r = route(c, m, pl, mode, allow_ccnot=True)
        a, b = exhaustive_pairs(n)
        narrow = adder_inputs(lay, a, b)
        states = np.zeros((len(a), m.node_count), dtype=np.uint8)
        states[:, [pl.node_of(q) for q in range(c.num_qubits)]] = narrow
        v = assert_equivalent(
            embed_wires(c, pl), r.circuit, r.final_permutation, states=states
        )
        assert v.equivalent, v.detail

    def test_literal_unitary_check_cla1(self):
        # the fully decomposed and routed artifact, compared as a matrix
        c, _ = gen_cla(1)
        d = decompose_ccnot(c)
        m = auto_mesh(1, d.num_qubits)
        pl = place(d, m, "identity_snake")
        for mode in ("swap", "cnot_chain"):
            r = route(d, m, pl, mode)
            assert validate_ntc(r.circuit, m, identity_placement(m, m.node_count)) == []
            v = assert_equivalent(embed_wires(d, pl), r.circuit, r.final_permutation)
            assert v.equivalent, v.detail

    @pytest.mark.parametrize("k", [1, 2])
    @pytest.mark.parametrize("mode", ["swap", "cnot_chain"])
    def test_literal_unitary_check_and_tree2(self, k, mode):
        d = decompose_ccnot(and_tree(2))
        m = auto_mesh(k, d.num_qubits + 1)  # force one spare node
        pl = place(d, m, "identity_snake")
        r = route(d, m, pl, mode)
        assert validate_ntc(r.circuit, m, identity_placement(m, m.node_count)) == []
        v = assert_equivalent(embed_wires(d, pl), r.circuit, r.final_permutation)
        assert v.equivalent, v.detail

    def test_swap_and_chain_extensionally_equal(self):
        c, _ = gen_cla(2)
        m = auto_mesh(1, c.num_qubits)
        pl = place(c, m, "identity_snake")
        r_swap = route(c, m, pl, "swap", allow_ccnot=True)
        r_chain = route(c, m, pl, "cnot_chain", allow_ccnot=True)
        # chain mode never permutes, so the swap-mode permutation relates them
        assert r_chain.final_permutation == tuple(range(m.node_count))
        v = assert_equivalent(
            r_chain.circuit, r_swap.circuit, r_swap.final_permutation
        )
        assert v.equivalent, v.detail

    def test_routed_parity_ntc_valid_and_equivalent(self):
        c = parity_tree(9)
        m = auto_mesh(2, c.num_qubits)
        pl = place(c, m, "identity_snake")
        r = route(c, m, pl, "swap")
        assert validate_ntc(r.circuit, m, identity_placement(m, m.node_count)) == []
        v = assert_equivalent(embed_wires(c, pl), r.circuit, r.final_permutation)
        assert v.equivalent, v.detail

    def test_final_permutation_is_bijection(self):
        c, _ = gen_cla(3)
        d = decompose_ccnot(c)
        m = auto_mesh(2, d.num_qubits)
        r = route(d, m, place(d, m, "identity_snake"), "swap")
        assert sorted(r.final_permutation) == list(range(m.node_count))


class TestExpandSwaps:
    def test_three_cnots_per_swap(self):
        c = Circuit(2, (gate("SWAP", 0, 1),))
        e = expand_swaps(c)
        assert [g.kind for g in e.gates] == ["CNOT", "CNOT", "CNOT"]
        v = assert_equivalent(c, e)
        assert v.equivalent

    def test_depth_accounting(self):
        c = Circuit(2, (gate("SWAP", 0, 1),))
        assert depth(c) == 1 and depth(expand_swaps(c)) == 3
