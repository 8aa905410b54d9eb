import numpy as np
import pytest

from ntcdepth.adders import AdderLayout
from ntcdepth.circuits import Circuit
from ntcdepth.simulate import set_value, simulate_classical_batch, value_on


def adder_inputs(layout: AdderLayout, a, b, carry=None) -> np.ndarray:
    """Basis states for an adder: a/b registers loaded, scratch at zero."""
    a = np.atleast_1d(np.asarray(a, dtype=np.uint64))
    b = np.atleast_1d(np.asarray(b, dtype=np.uint64))
    states = np.zeros((len(a), layout.num_qubits), dtype=np.uint8)
    set_value(states, layout.a_qubits, a)
    set_value(states, layout.b_qubits, b)
    if carry is not None:
        if layout.carry_in is None:
            raise ValueError("layout has no carry-in qubit")
        set_value(states, (layout.carry_in,), np.asarray(carry, dtype=np.uint64))
    return states


def exhaustive_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All 4^n (a, b) operand pairs."""
    idx = np.arange(4**n, dtype=np.uint64)
    return idx % (1 << n), idx >> np.uint64(n)


def check_adder(circuit: Circuit, layout: AdderLayout, a, b, carry=None,
                expect_clean_ancillae=False, expect_inputs_restored=False):
    """Independent oracle: Python integer addition, bit for bit."""
    states = adder_inputs(layout, a, b, carry)
    out = simulate_classical_batch(circuit, states)
    a = np.atleast_1d(np.asarray(a, dtype=np.uint64))
    b = np.atleast_1d(np.asarray(b, dtype=np.uint64))
    c = np.zeros_like(a) if carry is None else np.atleast_1d(np.asarray(carry, dtype=np.uint64))
    got = value_on(out, layout.sum_qubits) + (value_on(out, (layout.carry_out,)) << np.uint64(layout.n))
    want = a + b + c
    np.testing.assert_array_equal(got, want)
    if expect_clean_ancillae:
        assert not out[:, list(layout.ancillae)].any(), "ancillae not restored to 0"
    if expect_inputs_restored:
        np.testing.assert_array_equal(value_on(out, layout.a_qubits), a)
        np.testing.assert_array_equal(value_on(out, layout.b_qubits), b)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
