"""The numba-jitted kernels and the pure fallback must agree exactly."""
import os
import subprocess
import sys

import numpy as np

from ntcdepth import _accel
from ntcdepth.circuits import CircuitBuilder


def random_packed(rng, width=8, n_gates=200):
    b = CircuitBuilder(width)
    for _ in range(n_gates):
        kind = str(rng.choice(["X", "CNOT", "CCNOT", "SWAP"]))
        arity = {"X": 1, "CNOT": 2, "SWAP": 2, "CCNOT": 3}[kind]
        b.add(kind, *map(int, rng.choice(width, size=arity, replace=False)))
    return b.freeze().packed()


def test_asap_paths_agree(rng):
    for _ in range(5):
        packed = random_packed(rng)
        jit = _accel._asap_layers_accel(packed, 8)
        ref = _accel._asap_layers_numpy(packed, 8)
        np.testing.assert_array_equal(np.asarray(jit), ref)


def test_classical_run_paths_agree(rng):
    for _ in range(5):
        packed = random_packed(rng)
        states = rng.integers(0, 2, size=(64, 8), dtype=np.uint8)
        s1 = np.ascontiguousarray(states.copy())
        s2 = states.copy()
        _accel._classical_run_accel(packed, s1)
        _accel._classical_run_numpy(packed, s2)
        np.testing.assert_array_equal(s1, s2)


def test_env_flag_selects_fallback():
    code = (
        "from ntcdepth import _accel; "
        "assert not _accel.USE_NUMBA; "
        "assert _accel._asap_layers_accel is _accel._asap_layers_numpy"
    )
    env = dict(os.environ, NTCDEPTH_NO_NUMBA="1")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)


def test_numba_enabled_by_default():
    env = {k: v for k, v in os.environ.items() if k != "NTCDEPTH_NO_NUMBA"}
    code = "from ntcdepth import _accel; assert _accel.USE_NUMBA"
    subprocess.run([sys.executable, "-c", code], check=True, env=env)


def test_empty_inputs():
    packed = np.empty((0, 4), dtype=np.int32)
    assert _accel.asap_layers(packed, 3).shape == (0,)
    states = np.zeros((2, 3), dtype=np.uint8)
    _accel.classical_run(packed, states)
    assert not states.any()
