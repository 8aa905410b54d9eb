"""Scaling harness: AC depth vs routed kD NTC depth across operand widths.

Each record compares two depths for one operand width n:

* ``depth_ac``: ASAP depth of the full generated adder on the unrestricted
  AC model (all-to-all interactions, CCNOT granularity). For the
  carry-lookahead adder this grows like log n.
* ``depth_ntc``: depth of the routed scaling object on the auto-sized kD
  mesh. For adder=cla the routed object is the top carry's worst-case
  product term - the n-leaf AND tree that dominates the adder's depth once
  interactions are nearest-neighbor only. Routing the full lookahead adder
  is neither feasible (its private-copy construction is ~n^3/3 qubits) nor
  what the depth bound is about: every sum-bit circuit is such a tree, they
  run in disjoint regions, and the deepest one sets the NTC depth. For
  adder=ripple the full adder is routed (it is linear-size and index-local).

The mesh is the smallest kD mesh with near-equal extents (within 1) holding
the routed object's qubits. The expected scaling is depth_ntc ~ n^(1/k)
against depth_ac ~ log n; ``fit_exponent`` measures log-log slopes.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .adders import gen_cla, gen_ripple
from .circuits import Circuit, depth
from .lbt import balanced_tree, emit_circuit
from .mesh import (
    Embedding,
    EmbeddingMetrics,
    MeshGraph,
    dilation_lower_bound,
    guest_diameter,
    measure_metrics,
    path_guest,
    tree_guest,
)
from .router import RoutedCircuit, decompose_ccnot, expand_swaps, place, route

ADDER_KINDS = ("cla", "ripple")

CSV_HEADER = [
    "n",
    "k",
    "dims",
    "adder",
    "placement",
    "mode",
    "depth_ac",
    "depth_ntc",
    "swap_count",
    "qubits_total",
    "dilation_bound",
    "seed",
]


@dataclass(frozen=True)
class MetricsRecord:
    n: int
    k: int
    dims: tuple[int, ...]
    adder: str
    placement: str
    mode: str
    depth_ac: int
    depth_ntc: int
    swap_count: int
    qubits_total: int
    dilation_bound: Fraction
    seed: int


@dataclass(frozen=True)
class ScalingDetail:
    """Per-record artifacts needed by the consistency checks."""

    record: MetricsRecord
    embedding: Embedding
    embedding_metrics: EmbeddingMetrics
    guest_diam: int
    routed: RoutedCircuit


@dataclass(frozen=True)
class FitResult:
    field: str
    slope: float
    intercept: float
    r_squared: float


def auto_mesh(k: int, count: int) -> MeshGraph:
    """Smallest kD mesh with extents within 1 of each other holding
    ``count`` nodes."""
    if k < 1 or count < 1:
        raise ValueError("k and count must be >= 1")
    base = 1
    while (base + 1) ** k <= count:
        base += 1
    dims = [base] * k
    d = 0
    while math.prod(dims) < count:
        dims[d] += 1
        d += 1
    return MeshGraph(tuple(dims))


def _scaling_object(n: int, adder: str):
    """Circuit to route plus the guest graph whose embedding is measured."""
    if adder == "cla":
        if n < 2:
            raise ValueError("cla scaling needs n >= 2")
        tree = balanced_tree(n, "and")
        circuit = emit_circuit(tree)
        guest = tree_guest(tree)
        # tree node -> qubit holding its value (distinct by construction)
        node_qubit = {nid: node.output_qubit for nid, node in tree.nodes.items()}
        return circuit, guest, node_qubit
    circuit, _ = gen_ripple(n)
    guest = path_guest(circuit.num_qubits)
    return circuit, guest, {q: q for q in range(circuit.num_qubits)}


def run_scaling_detailed(
    k: int,
    n_list,
    adder: str = "cla",
    placement: str = "identity_snake",
    mode: str = "swap",
    seed: int = 0,
    swap_cost: int = 1,
) -> list[ScalingDetail]:
    if adder not in ADDER_KINDS:
        raise ValueError(f"unknown adder {adder!r}; pick from {ADDER_KINDS}")
    if swap_cost not in (1, 3):
        raise ValueError("swap_cost must be 1 or 3")
    details = []
    for n in n_list:
        full_adder, _ = gen_cla(n) if adder == "cla" else gen_ripple(n)
        depth_ac = depth(full_adder)

        circuit, guest, node_qubit = _scaling_object(n, adder)
        decomposed = decompose_ccnot(circuit)
        host = auto_mesh(k, decomposed.num_qubits)
        placed = place(decomposed, host, placement)
        routed = route(decomposed, host, placed, mode)
        ntc_circuit = routed.circuit if swap_cost == 1 else expand_swaps(routed.circuit)
        depth_ntc = depth(ntc_circuit)

        node_map = {nid: placed.node_of(q) for nid, q in node_qubit.items()}
        embedding = Embedding(guest, host, node_map)
        metrics = measure_metrics(embedding)
        record = MetricsRecord(
            n=n,
            k=k,
            dims=host.dims,
            adder=adder,
            placement=placement,
            mode=mode,
            depth_ac=depth_ac,
            depth_ntc=depth_ntc,
            swap_count=routed.swap_count,
            qubits_total=decomposed.num_qubits,
            dilation_bound=dilation_lower_bound(guest, host),
            seed=seed,
        )
        details.append(
            ScalingDetail(record, embedding, metrics, guest_diameter(guest), routed)
        )
    return details


def run_scaling(
    k: int,
    n_list,
    adder: str = "cla",
    placement: str = "identity_snake",
    mode: str = "swap",
    seed: int = 0,
    swap_cost: int = 1,
) -> list[MetricsRecord]:
    """One MetricsRecord per n: generate, decompose, place, route, schedule.
    Deterministic given its arguments."""
    return [
        d.record
        for d in run_scaling_detailed(k, n_list, adder, placement, mode, seed, swap_cost)
    ]


def check_invariants(details: list[ScalingDetail]) -> list[str]:
    """Violations of the per-record consistency requirements (empty = good):
    depth_ntc >= depth_ac, non-negative counts, depth_ntc >= the
    spread-over-guest-diameter bound, and measured dilation >= the
    diameter-ratio bound whenever the image spans the host."""
    problems = []
    for d in details:
        r = d.record
        tag = f"n={r.n} k={r.k}"
        if r.depth_ntc < r.depth_ac:
            problems.append(f"{tag}: depth_ntc {r.depth_ntc} < depth_ac {r.depth_ac}")
        if min(r.depth_ac, r.depth_ntc, r.swap_count, r.qubits_total) < 0:
            problems.append(f"{tag}: negative count")
        lower = math.ceil(Fraction(d.embedding_metrics.spread, d.guest_diam))
        if r.depth_ntc < lower:
            problems.append(
                f"{tag}: depth_ntc {r.depth_ntc} below spread bound {lower}"
            )
        if d.embedding_metrics.spread == d.embedding.host.diameter:
            if d.embedding_metrics.dilation < r.dilation_bound:
                problems.append(
                    f"{tag}: dilation {d.embedding_metrics.dilation} below "
                    f"diameter-ratio bound {r.dilation_bound}"
                )
    return problems


def fit_exponent(records: list[MetricsRecord], field: str) -> FitResult:
    """Least-squares fit of log2(field) against log2(n)."""
    if len(records) < 3:
        raise ValueError("need at least 3 records to fit")
    keys = {(r.k, r.adder, r.placement, r.mode) for r in records}
    if len(keys) != 1:
        raise ValueError(f"records mix configurations: {sorted(keys)}")
    ns = [r.n for r in records]
    if len(set(ns)) != len(ns):
        raise ValueError("records must have distinct n")
    values = [getattr(r, field) for r in records]
    if any(v <= 0 for v in values):
        raise ValueError(f"{field} values must be positive for a log-log fit")
    x = np.log2(np.asarray(ns, dtype=float))
    y = np.log2(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else 1.0 - float((resid**2).sum()) / ss_tot
    return FitResult(field, float(slope), float(intercept), r2)


# -- reporting ------------------------------------------------------------------


def _record_row(r: MetricsRecord) -> list[str]:
    return [
        str(r.n),
        str(r.k),
        "x".join(str(d) for d in r.dims),
        r.adder,
        r.placement,
        r.mode,
        str(r.depth_ac),
        str(r.depth_ntc),
        str(r.swap_count),
        str(r.qubits_total),
        str(r.dilation_bound),
        str(r.seed),
    ]


def write_records_csv(records: list[MetricsRecord], path: str | Path) -> None:
    """Fixed-header CSV, rows sorted by (k, n) so concurrency in record
    production can never change the bytes."""
    rows = sorted(records, key=lambda r: (r.k, r.n))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow(_record_row(r))


def parse_records_csv(path: str | Path) -> list[MetricsRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        out = []
        for row in reader:
            out.append(
                MetricsRecord(
                    n=int(row[0]),
                    k=int(row[1]),
                    dims=tuple(int(d) for d in row[2].split("x")),
                    adder=row[3],
                    placement=row[4],
                    mode=row[5],
                    depth_ac=int(row[6]),
                    depth_ntc=int(row[7]),
                    swap_count=int(row[8]),
                    qubits_total=int(row[9]),
                    dilation_bound=Fraction(row[10]),
                    seed=int(row[11]),
                )
            )
    return out


def report(
    records: list[MetricsRecord],
    fits: dict[str, FitResult],
    out_dir: str | Path,
) -> tuple[Path, Path]:
    """Write records.csv and summary.json under out_dir; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "records.csv"
    write_records_csv(records, csv_path)
    summary = {
        "records": len(records),
        "fits": {
            name: {
                "field": f.field,
                "slope": f.slope,
                "intercept": f.intercept,
                "r_squared": f.r_squared,
            }
            for name, f in sorted(fits.items())
        },
    }
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return csv_path, summary_path
