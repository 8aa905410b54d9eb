"""Verification engines: bit-level reversible simulation and dense unitaries.

The classical simulator covers {X, CNOT, CCNOT, SWAP} and is vectorized over
batches of basis states (the hot path for exhaustive truth-table checks).
The unitary simulator covers the full gate set up to 12 qubits and exists to
verify gate decompositions exactly; tolerance is 1e-10 elementwise, no
global-phase allowance needed because the decompositions used here are exact.

Bit conventions: a basis state is a uint8 vector indexed by qubit; qubit 0 is
the least significant bit of the integer encoding and the first character of
the string form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import classical_run
from .circuits import CLASSICAL_KINDS, Circuit

ATOL = 1e-10
_T_PHASE = np.exp(1j * np.pi / 4)

_MAT_1Q = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "T": np.array([[1, 0], [0, _T_PHASE]], dtype=complex),
    "Tdg": np.array([[1, 0], [0, np.conj(_T_PHASE)]], dtype=complex),
}


def _permutation_gate(arity: int, mapping: dict[int, int]) -> np.ndarray:
    m = np.zeros((2**arity, 2**arity), dtype=complex)
    for col in range(2**arity):
        m[mapping.get(col, col), col] = 1.0
    return m


# Local index convention: gate operand j is bit j of the local basis index.
_MAT_MULTI = {
    "CNOT": _permutation_gate(2, {1: 3, 3: 1}),
    "SWAP": _permutation_gate(2, {1: 2, 2: 1}),
    "CCNOT": _permutation_gate(3, {3: 7, 7: 3}),
}


# -- bit-vector helpers -------------------------------------------------------


def bits_from_string(text: str) -> np.ndarray:
    if not set(text) <= {"0", "1"}:
        raise ValueError(f"bit string may contain only 0/1, got {text!r}")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def bits_to_string(bits: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in np.asarray(bits).tolist())


def all_basis_states(width: int) -> np.ndarray:
    """All 2^width basis states as a (2^width, width) uint8 array."""
    idx = np.arange(2**width, dtype=np.uint64)
    return ((idx[:, None] >> np.arange(width, dtype=np.uint64)) & 1).astype(np.uint8)


def random_basis_states(width: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2, size=(count, width), dtype=np.uint8)


def value_on(state: np.ndarray, qubits) -> np.ndarray:
    """Integer held by ``qubits`` (first = LSB); works on a state or a batch."""
    state = np.asarray(state)
    weights = (1 << np.arange(len(qubits), dtype=np.uint64)).astype(np.uint64)
    cols = state[..., list(qubits)].astype(np.uint64)
    return cols @ weights


def set_value(state: np.ndarray, qubits, value) -> None:
    """Write ``value`` into ``qubits`` (first = LSB), in place; batched if
    ``value`` is an array."""
    value = np.asarray(value, dtype=np.uint64)
    for j, q in enumerate(qubits):
        state[..., q] = ((value >> np.uint64(j)) & np.uint64(1)).astype(np.uint8)


# -- classical simulation -----------------------------------------------------


def _require_classical(circuit: Circuit) -> None:
    for i, g in enumerate(circuit.gates):
        if g.kind not in CLASSICAL_KINDS:
            raise ValueError(
                f"non-classical gate {g.kind} at index {i}; "
                "classical simulation covers X/CNOT/CCNOT/SWAP only"
            )


def simulate_classical_batch(circuit: Circuit, states: np.ndarray) -> np.ndarray:
    """Apply the circuit to a (batch, num_qubits) uint8 array of basis states."""
    _require_classical(circuit)
    states = np.asarray(states, dtype=np.uint8)
    if states.ndim != 2 or states.shape[1] != circuit.num_qubits:
        raise ValueError(
            f"states must be (batch, {circuit.num_qubits}), got {states.shape}"
        )
    out = np.ascontiguousarray(states.copy())
    classical_run(circuit.packed(), out)
    return out


def simulate_classical(circuit: Circuit, input_bits) -> np.ndarray:
    """Run one basis state through the circuit (gate order, standard
    reversible semantics). Rejects H/T/Tdg with the offending gate index."""
    if isinstance(input_bits, str):
        input_bits = bits_from_string(input_bits)
    bits = np.asarray(input_bits, dtype=np.uint8)
    if bits.shape != (circuit.num_qubits,):
        raise ValueError(
            f"input has {bits.shape} bits, circuit has {circuit.num_qubits} qubits"
        )
    return simulate_classical_batch(circuit, bits[None, :])[0]


# -- dense unitary simulation -------------------------------------------------

MAX_UNITARY_QUBITS = 12


def _apply_gate(u: np.ndarray, mat: np.ndarray, qubits: tuple[int, ...], n: int):
    """Left-multiply the embedded gate onto u, in the qubit-0-is-LSB basis."""
    arity = len(qubits)
    dim = u.shape[0]
    t = u.reshape([2] * n + [dim])
    # Row axis of qubit q is n-1-q; local bit j of the gate is operand j.
    axes = [n - 1 - qubits[j] for j in reversed(range(arity))]
    rest = [ax for ax in range(n) if ax not in axes] + [n]
    t = np.transpose(t, axes + rest)
    t = mat @ t.reshape(2**arity, -1)
    t = t.reshape([2] * arity + [2] * (n - arity) + [dim])
    t = np.transpose(t, np.argsort(axes + rest))
    return t.reshape(dim, dim)


def simulate_unitary(circuit: Circuit) -> np.ndarray:
    """Dense 2^n x 2^n unitary of the circuit (n <= 12)."""
    n = circuit.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ValueError(f"{n} qubits exceeds the {MAX_UNITARY_QUBITS}-qubit limit")
    u = np.eye(2**n, dtype=complex)
    for g in circuit.gates:
        mat = _MAT_1Q.get(g.kind)
        if mat is None:
            mat = _MAT_MULTI[g.kind]
        u = _apply_gate(u, mat, g.qubits, n)
    return u


def unitarity_defect(u: np.ndarray) -> float:
    """max |U†U - I|; <= 1e-10 for every simulate_unitary result."""
    d = u.shape[0]
    return float(np.abs(u.conj().T @ u - np.eye(d)).max())


def ccnot_matrix() -> np.ndarray:
    """The 8x8 CCNOT permutation matrix (controls = qubits 0,1; target 2)."""
    return _MAT_MULTI["CCNOT"].copy()


def wire_permutation_matrix(perm, width: int) -> np.ndarray:
    """Operator P with P|x> = |y>, y[perm[w]] = x[w]."""
    dim = 2**width
    m = np.zeros((dim, dim), dtype=complex)
    src = np.arange(dim, dtype=np.uint64)
    dst = np.zeros(dim, dtype=np.uint64)
    for w, p in enumerate(perm):
        dst |= ((src >> np.uint64(w)) & np.uint64(1)) << np.uint64(p)
    m[dst, src] = 1.0
    return m


# -- equivalence --------------------------------------------------------------

EXHAUSTIVE_WIDTH = 16
SAMPLE_COUNT = 10_000
UNITARY_WIDTH = 10


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    counterexample: np.ndarray | None
    detail: str

    def __bool__(self) -> bool:
        return self.equivalent


def assert_equivalent(
    c1: Circuit,
    c2: Circuit,
    up_to_permutation=None,
    seed: int = 2024,
    states: np.ndarray | None = None,
) -> EquivalenceVerdict:
    """Extensional equivalence of two circuits of the same width.

    ``up_to_permutation`` maps wires of c1 to wires of c2: the check is
    c2_out[perm[w]] == c1_out[w]. Classical circuits are checked on all
    inputs up to width 16 and on 10^4 seeded samples beyond, unless an
    explicit ``states`` batch restricts the input space (e.g. the reachable
    inputs of an adder whose scratch wires start at 0); circuits with H/T
    gates are compared as dense unitaries (width <= 10).
    """
    if c1.num_qubits != c2.num_qubits:
        raise ValueError(
            f"width mismatch: {c1.num_qubits} vs {c2.num_qubits} qubits"
        )
    width = c1.num_qubits
    perm = tuple(up_to_permutation) if up_to_permutation is not None else tuple(range(width))
    if sorted(perm) != list(range(width)):
        raise ValueError("up_to_permutation is not a permutation of the wires")

    if c1.is_classical() and c2.is_classical():
        if states is not None:
            states = np.asarray(states, dtype=np.uint8)
            how = f"caller-supplied batch of {states.shape[0]} inputs"
        elif width <= EXHAUSTIVE_WIDTH:
            states = all_basis_states(width)
            how = f"exhaustive over {states.shape[0]} inputs"
        else:
            states = random_basis_states(width, SAMPLE_COUNT, seed)
            how = f"{states.shape[0]} seeded random inputs"
        out1 = simulate_classical_batch(c1, states)
        out2 = simulate_classical_batch(c2, states)
        out2_aligned = out2[:, list(perm)]
        mismatches = np.nonzero((out1 != out2_aligned).any(axis=1))[0]
        if len(mismatches):
            bad = int(mismatches[0])
            return EquivalenceVerdict(
                False,
                states[bad].copy(),
                f"counterexample input {bits_to_string(states[bad])} ({how})",
            )
        return EquivalenceVerdict(True, None, how)

    if width > UNITARY_WIDTH:
        raise ValueError(
            f"non-classical equivalence supported up to {UNITARY_WIDTH} qubits"
        )
    u1 = simulate_unitary(c1)
    u2 = simulate_unitary(c2)
    p = wire_permutation_matrix(perm, width)
    defect = float(np.abs(u2 - p @ u1).max())
    if defect > ATOL:
        return EquivalenceVerdict(
            False, None, f"unitary mismatch, max deviation {defect:.3e}"
        )
    return EquivalenceVerdict(True, None, f"unitary match within {ATOL}")
