"""Hot inner kernels: numba-jitted by default, pure NumPy/Python fallback.

Set ``NTCDEPTH_NO_NUMBA=1`` to force the fallback path. Both paths are
exercised by the test suite and compared by ``benchmarks/bench_kernels.py``.

Circuits are packed as an int32 array of shape (G, 4): columns are
[gate code, operand0, operand1, operand2], unused operand slots are -1.
Gate codes match ntcdepth.circuits.GATE_CODES.
"""
from __future__ import annotations

import os

import numpy as np

# Gate codes, duplicated from circuits.py to keep this module import-light.
_X, _H, _T, _TDG, _CNOT, _CCNOT, _SWAP = 0, 1, 2, 3, 4, 5, 6

USE_NUMBA = os.environ.get("NTCDEPTH_NO_NUMBA", "0").lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


def _asap_layers_jit(packed, num_qubits):
    n_gates = packed.shape[0]
    last = np.zeros(num_qubits, dtype=np.int32)
    layers = np.empty(n_gates, dtype=np.int32)
    for g in range(n_gates):
        m = np.int32(0)
        for j in range(1, 4):
            q = packed[g, j]
            if q >= 0 and last[q] > m:
                m = last[q]
        layer = m + 1
        layers[g] = layer
        for j in range(1, 4):
            q = packed[g, j]
            if q >= 0:
                last[q] = layer
    return layers


def _asap_layers_numpy(packed, num_qubits):
    # Dependent scan; plain Python over lists beats NumPy scalar indexing here.
    last = [0] * num_qubits
    rows = packed.tolist()
    layers = np.empty(len(rows), dtype=np.int32)
    for g, (_, a, b, c) in enumerate(rows):
        m = last[a]
        if b >= 0 and last[b] > m:
            m = last[b]
        if c >= 0 and last[c] > m:
            m = last[c]
        m += 1
        layers[g] = m
        last[a] = m
        if b >= 0:
            last[b] = m
        if c >= 0:
            last[c] = m
    return layers


def _classical_run_jit(packed, states):
    n_gates = packed.shape[0]
    n_states = states.shape[0]
    for g in range(n_gates):
        k = packed[g, 0]
        a = packed[g, 1]
        b = packed[g, 2]
        c = packed[g, 3]
        if k == _X:
            for i in range(n_states):
                states[i, a] ^= 1
        elif k == _CNOT:
            for i in range(n_states):
                states[i, b] ^= states[i, a]
        elif k == _CCNOT:
            for i in range(n_states):
                states[i, c] ^= states[i, a] & states[i, b]
        elif k == _SWAP:
            for i in range(n_states):
                t = states[i, a]
                states[i, a] = states[i, b]
                states[i, b] = t


def _classical_run_numpy(packed, states):
    for k, a, b, c in packed.tolist():
        if k == _X:
            states[:, a] ^= 1
        elif k == _CNOT:
            states[:, b] ^= states[:, a]
        elif k == _CCNOT:
            states[:, c] ^= states[:, a] & states[:, b]
        elif k == _SWAP:
            states[:, [a, b]] = states[:, [b, a]]


if USE_NUMBA:
    _asap_layers_accel = njit(cache=True)(_asap_layers_jit)
    _classical_run_accel = njit(cache=True)(_classical_run_jit)
else:
    _asap_layers_accel = _asap_layers_numpy
    _classical_run_accel = _classical_run_numpy


def asap_layers(packed: np.ndarray, num_qubits: int) -> np.ndarray:
    """1-based ASAP layer index per gate of a packed circuit."""
    if packed.shape[0] == 0:
        return np.empty(0, dtype=np.int32)
    return _asap_layers_accel(packed, num_qubits)


def classical_run(packed: np.ndarray, states: np.ndarray) -> None:
    """Run a classical-reversible packed circuit over a (batch, qubits) uint8
    array of basis states, in place. Caller must reject non-classical gates."""
    if packed.shape[0] == 0 or states.shape[0] == 0:
        return
    _classical_run_accel(packed, states)
