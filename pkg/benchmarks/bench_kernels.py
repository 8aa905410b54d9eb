"""Benchmark the jitted kernels against the pure-NumPy fallback.

Run: python benchmarks/bench_kernels.py
(The fallback is what you get package-wide with NTCDEPTH_NO_NUMBA=1.)
"""
import time

import numpy as np

from ntcdepth._accel import (
    USE_NUMBA,
    _asap_layers_numpy,
    _classical_run_numpy,
)
from ntcdepth.adders import gen_cla
from ntcdepth.simulate import all_basis_states

if USE_NUMBA:
    from ntcdepth._accel import _asap_layers_accel, _classical_run_accel
else:
    print("NTCDEPTH_NO_NUMBA is set; only the fallback path is available.\n")
    _asap_layers_accel = _asap_layers_numpy
    _classical_run_accel = _classical_run_numpy


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_asap():
    print("ASAP layering (one pass over the gate list)")
    for n in (16, 32, 64):
        circuit, _ = gen_cla(n)
        packed = circuit.packed()
        q = circuit.num_qubits
        _asap_layers_accel(packed, q)  # warm the JIT
        t_jit = timeit(lambda: _asap_layers_accel(packed, q))
        t_np = timeit(lambda: _asap_layers_numpy(packed, q))
        print(
            f"  cla n={n:3d} ({len(circuit.gates):7d} gates): "
            f"numba {t_jit * 1e3:8.2f} ms   numpy {t_np * 1e3:8.2f} ms   "
            f"speedup {t_np / t_jit:5.1f}x"
        )


def bench_classical_run():
    print("Reversible simulation (gates x basis-state batch)")
    for n, batch in ((6, 4096), (12, 4096)):
        circuit, _ = gen_cla(n)
        packed = circuit.packed()
        states = np.zeros((batch, circuit.num_qubits), dtype=np.uint8)
        states[:, :12] = all_basis_states(12)[:batch, :12]

        def run(kernel):
            def inner():
                work = np.ascontiguousarray(states.copy())
                kernel(packed, work)

            return inner

        run(_classical_run_accel)()  # warm the JIT
        t_jit = timeit(run(_classical_run_accel))
        t_np = timeit(run(_classical_run_numpy))
        print(
            f"  cla n={n:3d} x {batch} states ({len(circuit.gates):5d} gates): "
            f"numba {t_jit * 1e3:8.2f} ms   numpy {t_np * 1e3:8.2f} ms   "
            f"speedup {t_np / t_jit:5.1f}x"
        )


def main():
    print(f"numba path enabled: {USE_NUMBA}\n")
    bench_asap()
    print()
    bench_classical_run()


if __name__ == "__main__":
    main()
