"""Gate-level circuit representation, ASAP layering, and NTC validity checks.

Depth is the number of layers of concurrently executable gates: a gate sits
in the earliest layer after every earlier gate that shares one of its qubits
(ASAP). All gate kinds cost one time unit. Circuits are immutable after
construction and every operation here is a pure function.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._accel import asap_layers

GATE_ARITY = {"X": 1, "H": 1, "T": 1, "Tdg": 1, "CNOT": 2, "SWAP": 2, "CCNOT": 3}
GATE_CODES = {"X": 0, "H": 1, "T": 2, "Tdg": 3, "CNOT": 4, "CCNOT": 5, "SWAP": 6}
# Gates with classical reversible semantics on basis states.
CLASSICAL_KINDS = frozenset({"X", "CNOT", "CCNOT", "SWAP"})

FILE_FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Gate:
    """One named operation on 1-3 distinct qubits.

    Conventions: CNOT lists control first; CCNOT lists its two controls
    first; SWAP order is irrelevant but preserved.
    """

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        arity = GATE_ARITY.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qs = tuple(self.qubits)
        object.__setattr__(self, "qubits", qs)
        if len(qs) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubits, got {len(qs)}")
        if len(set(qs)) != len(qs):
            raise ValueError(f"duplicate qubit in {self.kind}{qs}")
        if any(q < 0 for q in qs):
            raise ValueError(f"negative qubit index in {self.kind}{qs}")


def gate(kind: str, *qubits: int) -> Gate:
    return Gate(kind, tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed number of qubits."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    _packed: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be >= 0")
        for i, g in enumerate(self.gates):
            for q in g.qubits:
                if q >= self.num_qubits:
                    raise ValueError(
                        f"gate {i} ({g.kind}{g.qubits}) out of range for "
                        f"{self.num_qubits} qubits"
                    )

    def packed(self) -> np.ndarray:
        """Gates as an int32 (G, 4) array [code, q0, q1, q2], -1 padding."""
        if self._packed is None:
            arr = np.full((len(self.gates), 4), -1, dtype=np.int32)
            for i, g in enumerate(self.gates):
                arr[i, 0] = GATE_CODES[g.kind]
                arr[i, 1 : 1 + len(g.qubits)] = g.qubits
            object.__setattr__(self, "_packed", arr)
        return self._packed

    def is_classical(self) -> bool:
        return all(g.kind in CLASSICAL_KINDS for g in self.gates)

    def __len__(self) -> int:
        return len(self.gates)


class CircuitBuilder:
    """Mutable gate accumulator; ``freeze`` yields an immutable Circuit."""

    def __init__(self, num_qubits: int):
        if num_qubits < 0:
            raise ValueError("num_qubits must be >= 0")
        self.num_qubits = num_qubits
        self._gates: list[Gate] = []

    def add(self, kind: str, *qubits: int) -> None:
        g = Gate(kind, tuple(qubits))
        for q in qubits:
            if q >= self.num_qubits:
                raise ValueError(f"qubit {q} out of range ({self.num_qubits})")
        self._gates.append(g)

    def extend(self, gates) -> None:
        for g in gates:
            self.add(g.kind, *g.qubits)

    def __len__(self) -> int:
        return len(self._gates)

    def freeze(self) -> Circuit:
        # Gates were validated on add; pack lazily later.
        c = Circuit.__new__(Circuit)
        object.__setattr__(c, "num_qubits", self.num_qubits)
        object.__setattr__(c, "gates", tuple(self._gates))
        object.__setattr__(c, "_packed", None)
        return c


@dataclass(frozen=True)
class Schedule:
    """ASAP layering: ``layers[t]`` holds the indices of the gates that run
    in layer t; depth equals the layer count."""

    layers: tuple[tuple[int, ...], ...]
    depth: int


def append_gate(circuit: Circuit, g: Gate) -> Circuit:
    """Pure append; validates the gate against the circuit width."""
    for q in g.qubits:
        if q >= circuit.num_qubits:
            raise ValueError(f"qubit {q} out of range ({circuit.num_qubits})")
    return Circuit(circuit.num_qubits, circuit.gates + (g,))


def gate_layers(circuit: Circuit) -> np.ndarray:
    """1-based ASAP layer index of every gate."""
    return asap_layers(circuit.packed(), circuit.num_qubits)


def depth(circuit: Circuit) -> int:
    """Number of ASAP layers (0 for an empty circuit)."""
    layers = gate_layers(circuit)
    return int(layers.max()) if len(layers) else 0


def asap_schedule(circuit: Circuit) -> Schedule:
    layers = gate_layers(circuit)
    d = int(layers.max()) if len(layers) else 0
    buckets: list[list[int]] = [[] for _ in range(d)]
    for i, layer in enumerate(layers.tolist()):
        buckets[layer - 1].append(i)
    return Schedule(tuple(tuple(b) for b in buckets), d)


def validate_ntc(circuit: Circuit, mesh, placement) -> list[str]:
    """Violations of the nearest-neighbor, <=2-qubit execution model.

    ``placement`` must expose ``node_of(q) -> node index`` for every qubit
    the circuit touches; ``mesh`` must expose ``adjacent(u, v)``. Returns an
    empty list iff the circuit is NTC-executable under the placement.
    """
    violations = []
    for i, g in enumerate(circuit.gates):
        if len(g.qubits) == 3:
            violations.append(f"gate {i} {g.kind}{g.qubits}: arity 3 forbidden on NTC")
            continue
        if len(g.qubits) == 2:
            try:
                u = placement.node_of(g.qubits[0])
                v = placement.node_of(g.qubits[1])
            except KeyError as exc:
                raise ValueError(f"placement missing qubit {exc.args[0]}") from None
            if not mesh.adjacent(u, v):
                d = mesh.distance(u, v)
                violations.append(
                    f"gate {i} {g.kind}{g.qubits}: operands at mesh distance {d}"
                )
    return violations


# -- serialization ----------------------------------------------------------
#
# Schema (exact field names, gates in program order):
# { "version": 1, "num_qubits": N,
#   "gates": [ {"kind": "CNOT", "qubits": [0, 1]}, ... ] }


def circuit_to_dict(circuit: Circuit) -> dict:
    return {
        "version": FILE_FORMAT_VERSION,
        "num_qubits": circuit.num_qubits,
        "gates": [{"kind": g.kind, "qubits": list(g.qubits)} for g in circuit.gates],
    }


def circuit_from_dict(data: dict) -> Circuit:
    if data.get("version") != FILE_FORMAT_VERSION:
        raise ValueError(f"unsupported circuit file version {data.get('version')!r}")
    b = CircuitBuilder(int(data["num_qubits"]))
    for g in data["gates"]:
        b.add(g["kind"], *g["qubits"])
    return b.freeze()


def dumps_circuit(circuit: Circuit) -> str:
    return json.dumps(circuit_to_dict(circuit), separators=(",", ":")) + "\n"


def loads_circuit(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


def save_circuit(circuit: Circuit, path: str | Path) -> None:
    Path(path).write_text(dumps_circuit(circuit))


def load_circuit(path: str | Path) -> Circuit:
    return loads_circuit(Path(path).read_text())
