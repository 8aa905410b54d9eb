"""Compile AC circuits to kD NTC circuits: placement, Toffoli decomposition,
and long-distance gate realization.

The routed circuit is emitted over mesh-site wires: wire i is the mesh node
with row-major index i, and the initial placement pins each logical qubit to
its starting wire. Routing leaves moved data in place (no return swaps); the
accumulated movement is reported as ``final_permutation``, where entry w is
the wire on which the value that started on wire w ends up. Routed circuits
therefore satisfy

    simulate(routed)(x)[perm[w]] == simulate(original embedded on wires)(x)[w]

for every classical input x.

Two long-distance modes: ``swap`` walks the first operand along the
dimension-ordered shortest path until adjacent (one SWAP per hop);
``cnot_chain`` realizes a distance-m CNOT as the 4(m-1)-gate cascade of
nearest-neighbor CNOTs (the two-sweep generalization of the distance-2
identity CNOT(A,C) = CNOT(A,B) CNOT(B,C) CNOT(A,B) CNOT(B,C)), leaving all
intermediate qubits restored and nothing permuted.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuits import Circuit, CircuitBuilder, gate_layers
from .mesh import MeshGraph, snake_order

PLACEMENT_STRATEGIES = ("identity_snake", "interaction_bisection")
ROUTING_MODES = ("swap", "cnot_chain")


@dataclass(frozen=True)
class Placement:
    """Injective map from logical qubits to mesh nodes (row-major indices)."""

    mesh: MeshGraph
    qubit_to_node: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "qubit_to_node", tuple(self.qubit_to_node))
        seen = set()
        for q, v in enumerate(self.qubit_to_node):
            if not 0 <= v < self.mesh.node_count:
                raise ValueError(f"qubit {q} placed outside mesh (node {v})")
            if v in seen:
                raise ValueError(f"placement not injective at node {v}")
            seen.add(v)

    @property
    def num_qubits(self) -> int:
        return len(self.qubit_to_node)

    def node_of(self, q: int) -> int:
        if not 0 <= q < len(self.qubit_to_node):
            raise KeyError(q)
        return self.qubit_to_node[q]

    def coord_of(self, q: int) -> tuple[int, ...]:
        return self.mesh.coord(self.node_of(q))


def identity_placement(mesh: MeshGraph, num_qubits: int) -> Placement:
    """Qubit i at node i; the placement validate_ntc sees for routed output."""
    return Placement(mesh, tuple(range(num_qubits)))


# -- placement strategies ------------------------------------------------------


def _interaction_weights(circuit: Circuit) -> dict[tuple[int, int], int]:
    w: dict[tuple[int, int], int] = {}
    for g in circuit.gates:
        qs = g.qubits
        for i in range(len(qs)):
            for j in range(i + 1, len(qs)):
                key = (min(qs[i], qs[j]), max(qs[i], qs[j]))
                w[key] = w.get(key, 0) + 1
    return w


def _refine_split(
    left: list[int], right: list[int], weights: dict[tuple[int, int], int]
) -> tuple[list[int], list[int]]:
    """Greedy Kernighan-Lin style refinement: swap the best pair across the
    cut while it strictly reduces the cut weight. Deterministic."""

    def w(u, v):
        return weights.get((min(u, v), max(u, v)), 0)

    side = {q: 0 for q in left} | {q: 1 for q in right}
    max_rounds = 2 * (len(left) + len(right))
    for _ in range(max_rounds):
        # D[q] = external - internal connectivity.
        d = dict.fromkeys(side, 0)
        for (u, v), wt in weights.items():
            if u in side and v in side:
                if side[u] == side[v]:
                    d[u] -= wt
                    d[v] -= wt
                else:
                    d[u] += wt
                    d[v] += wt
        best_gain, best_pair = 0, None
        for u in left:
            for v in right:
                gain = d[u] + d[v] - 2 * w(u, v)
                if gain > best_gain:
                    best_gain, best_pair = gain, (u, v)
        if best_pair is None:
            break
        u, v = best_pair
        left[left.index(u)] = v
        right[right.index(v)] = u
        side[u], side[v] = 1, 0
    return left, right


def _bisection_assign(
    qubits: list[int],
    origin: tuple[int, ...],
    extents: tuple[int, ...],
    mesh: MeshGraph,
    weights: dict[tuple[int, int], int],
    out: dict[int, int],
) -> None:
    from math import prod

    if not qubits:
        return
    if len(qubits) == 1:
        out[qubits[0]] = mesh.index(origin)
        return
    d = max(range(len(extents)), key=lambda i: (extents[i], -i))
    e1 = (extents[d] + 1) // 2
    e2 = extents[d] - e1
    cap1 = prod(extents[:d] + (e1,) + extents[d + 1 :])
    cap2 = prod(extents[:d] + (e2,) + extents[d + 1 :])
    s1 = min(cap1, max(len(qubits) - cap2, (len(qubits) + 1) // 2))
    left, right = _refine_split(qubits[:s1], qubits[s1:], weights)
    _bisection_assign(left, origin, extents[:d] + (e1,) + extents[d + 1 :], mesh, weights, out)
    _bisection_assign(
        right,
        origin[:d] + (origin[d] + e1,) + origin[d + 1 :],
        extents[:d] + (e2,) + extents[d + 1 :],
        mesh,
        weights,
        out,
    )


def place(circuit: Circuit, mesh: MeshGraph, strategy: str) -> Placement:
    """identity_snake pins qubit i to the i-th node of the boustrophedon
    walk; interaction_bisection recursively splits the qubits to minimize
    gate traffic across each mesh bisection."""
    if strategy not in PLACEMENT_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick from {PLACEMENT_STRATEGIES}")
    n = circuit.num_qubits
    if mesh.node_count < n:
        raise ValueError(f"mesh of {mesh.node_count} nodes cannot hold {n} qubits")
    if strategy == "identity_snake":
        return Placement(mesh, tuple(snake_order(mesh)[:n]))
    weights = _interaction_weights(circuit)
    assignment: dict[int, int] = {}
    _bisection_assign(list(range(n)), (0,) * mesh.k, mesh.dims, mesh, weights, assignment)
    return Placement(mesh, tuple(assignment[q] for q in range(n)))


# -- Toffoli decomposition -----------------------------------------------------

# Standard fault-tolerant CCNOT network over {H, T, Tdg, CNOT}: 6 CNOTs,
# 7 T/Tdg, 2 H on the same three qubits. Verified against the 8x8 CCNOT
# permutation matrix to 1e-10 by the test suite.
_CCNOT_NETWORK = (
    ("H", (2,)),
    ("CNOT", (1, 2)),
    ("Tdg", (2,)),
    ("CNOT", (0, 2)),
    ("T", (2,)),
    ("CNOT", (1, 2)),
    ("Tdg", (2,)),
    ("CNOT", (0, 2)),
    ("T", (1,)),
    ("T", (2,)),
    ("H", (2,)),
    ("CNOT", (0, 1)),
    ("T", (0,)),
    ("Tdg", (1,)),
    ("CNOT", (0, 1)),
)


def decompose_ccnot(circuit: Circuit) -> Circuit:
    """Replace every CCNOT by the standard 15-gate H/T/CNOT network on the
    same three qubits; all other gates pass through unchanged."""
    b = CircuitBuilder(circuit.num_qubits)
    for g in circuit.gates:
        if g.kind != "CCNOT":
            b.add(g.kind, *g.qubits)
            continue
        c1, c2, t = g.qubits
        qmap = (c1, c2, t)
        for kind, operands in _CCNOT_NETWORK:
            b.add(kind, *(qmap[i] for i in operands))
    return b.freeze()


def expand_swaps(circuit: Circuit) -> Circuit:
    """SWAP -> 3 CNOTs; used for the cost-3 depth accounting of SWAPs."""
    b = CircuitBuilder(circuit.num_qubits)
    for g in circuit.gates:
        if g.kind == "SWAP":
            u, v = g.qubits
            b.add("CNOT", u, v)
            b.add("CNOT", v, u)
            b.add("CNOT", u, v)
        else:
            b.add(g.kind, *g.qubits)
    return b.freeze()


# -- routing -------------------------------------------------------------------


@dataclass(frozen=True)
class RoutedCircuit:
    circuit: Circuit  # over mesh-site wires, NTC-valid under identity placement
    mesh: MeshGraph
    initial_placement: Placement
    final_permutation: tuple[int, ...]
    swap_count: int


def embed_wires(circuit: Circuit, placement: Placement) -> Circuit:
    """Relabel logical qubits onto their initial mesh-site wires, widening
    the circuit to the full mesh. Routed/unrouted equivalence checks compare
    against this form."""
    b = CircuitBuilder(placement.mesh.node_count)
    for g in circuit.gates:
        b.add(g.kind, *(placement.node_of(q) for q in g.qubits))
    return b.freeze()


def _step_toward(mesh: MeshGraph, u: int, v: int) -> int:
    """Next node one hop from u toward v, resolving dimension 0 first."""
    cu, cv = list(mesh.coord(u)), mesh.coord(v)
    for d in range(mesh.k):
        if cu[d] < cv[d]:
            cu[d] += 1
            return mesh.index(tuple(cu))
        if cu[d] > cv[d]:
            cu[d] -= 1
            return mesh.index(tuple(cu))
    raise ValueError("nodes coincide")


def _dim_ordered_path(mesh: MeshGraph, u: int, v: int) -> list[int]:
    path = [u]
    while path[-1] != v:
        path.append(_step_toward(mesh, path[-1], v))
    return path


def _emit_chain_cnot(b: CircuitBuilder, path: list[int]) -> None:
    """Nearest-neighbor CNOT cascade equal to CNOT(path[0], path[-1])."""
    hops = [(path[i], path[i + 1]) for i in range(len(path) - 1)]
    for x, y in hops:
        b.add("CNOT", x, y)
    for x, y in reversed(hops[:-1]):
        b.add("CNOT", x, y)
    for x, y in hops[1:]:
        b.add("CNOT", x, y)
    for x, y in reversed(hops[1:-1]):
        b.add("CNOT", x, y)


def route(
    circuit: Circuit,
    mesh: MeshGraph,
    placement: Placement,
    mode: str = "swap",
    allow_ccnot: bool = False,
) -> RoutedCircuit:
    """Make every multi-qubit gate nearest-neighbor.

    Gates are processed in ASAP-layer order (ascending index within a
    layer). CCNOTs must be decomposed beforehand; NTC admits nothing wider
    than two qubits.

    ``allow_ccnot=True`` is a verification back door: CCNOTs pass through at
    their operands' current wires with no adjacency requirement, keeping the
    output classically simulable so the routing bookkeeping (inserted swaps
    plus final_permutation) can be checked exhaustively. Such output is not
    NTC-valid and is only meant for equivalence tests.
    """
    if mode not in ROUTING_MODES:
        raise ValueError(f"unknown mode {mode!r}; pick from {ROUTING_MODES}")
    if placement.mesh != mesh:
        raise ValueError("placement was built for a different mesh")
    if placement.num_qubits < circuit.num_qubits:
        raise ValueError("placement does not cover all circuit qubits")
    if not allow_ccnot:
        for i, g in enumerate(circuit.gates):
            if g.kind == "CCNOT":
                raise ValueError(
                    f"gate {i} is CCNOT; run decompose_ccnot before routing"
                )

    n_nodes = mesh.node_count
    b = CircuitBuilder(n_nodes)
    pos_of = list(range(n_nodes))  # wire -> node currently holding its value
    val_at = list(range(n_nodes))  # node -> wire whose value it holds
    swap_count = 0

    layers = gate_layers(circuit)
    order = sorted(range(len(circuit.gates)), key=lambda i: layers[i])

    def routing_swap(u: int, v: int) -> None:
        nonlocal swap_count
        b.add("SWAP", u, v)
        swap_count += 1
        wu, wv = val_at[u], val_at[v]
        val_at[u], val_at[v] = wv, wu
        pos_of[wu], pos_of[wv] = v, u

    for gi in order:
        g = circuit.gates[gi]
        wires = tuple(placement.node_of(q) for q in g.qubits)
        if len(wires) == 1:
            b.add(g.kind, pos_of[wires[0]])
            continue
        if len(wires) == 3:  # verification mode only
            b.add(g.kind, *(pos_of[w] for w in wires))
            continue
        u, v = pos_of[wires[0]], pos_of[wires[1]]
        if mode == "swap":
            while mesh.distance(u, v) > 1:
                nxt = _step_toward(mesh, u, v)
                routing_swap(u, nxt)
                u = nxt
            b.add(g.kind, u, v)
        else:
            if mesh.adjacent(u, v):
                b.add(g.kind, u, v)
            elif g.kind == "CNOT":
                _emit_chain_cnot(b, _dim_ordered_path(mesh, u, v))
            else:  # long-distance SWAP: three chained CNOTs
                path_uv = _dim_ordered_path(mesh, u, v)
                _emit_chain_cnot(b, path_uv)
                _emit_chain_cnot(b, path_uv[::-1])
                _emit_chain_cnot(b, path_uv)

    return RoutedCircuit(
        circuit=b.freeze(),
        mesh=mesh,
        initial_placement=placement,
        final_permutation=tuple(pos_of),
        swap_count=swap_count,
    )
