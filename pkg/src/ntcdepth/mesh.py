"""kD mesh host graphs, tree embeddings, and embedding quality metrics.

A mesh node is addressed either by coordinate tuple or by its row-major
index; distances are Manhattan (exact for meshes). Dilation is the maximum
host distance between images of adjacent guest nodes; the classical lower
bound for it is diameter(host) / diameter(guest), kept as an exact rational.
Spread (max pairwise host distance among image nodes) is reported alongside
because the diameter-ratio bound is tight exactly when the image spans the
host.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .lbt import LogDepthBinaryTree, LbtNode, tree_edges, validate_tree


@dataclass(frozen=True)
class MeshGraph:
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ValueError("mesh needs at least one dimension")
        if any(d < 1 for d in self.dims):
            raise ValueError(f"mesh extents must be >= 1, got {self.dims}")

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def node_count(self) -> int:
        return prod(self.dims)

    @property
    def diameter(self) -> int:
        return sum(d - 1 for d in self.dims)

    def index(self, coord: tuple[int, ...]) -> int:
        idx = 0
        for c, d in zip(coord, self.dims):
            if not 0 <= c < d:
                raise ValueError(f"coordinate {coord} outside mesh {self.dims}")
            idx = idx * d + c
        return idx

    def coord(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.node_count:
            raise ValueError(f"node index {idx} outside mesh of {self.node_count}")
        out = []
        for d in reversed(self.dims):
            out.append(idx % d)
            idx //= d
        return tuple(reversed(out))

    def distance(self, u: int, v: int) -> int:
        return sum(abs(a - b) for a, b in zip(self.coord(u), self.coord(v)))

    def adjacent(self, u: int, v: int) -> bool:
        return self.distance(u, v) == 1

    def neighbors(self, u: int) -> list[int]:
        cu = self.coord(u)
        out = []
        for d in range(self.k):
            for step in (-1, 1):
                c = cu[d] + step
                if 0 <= c < self.dims[d]:
                    out.append(self.index(cu[:d] + (c,) + cu[d + 1 :]))
        return sorted(out)


def mesh(k: int, dims) -> MeshGraph:
    dims = tuple(dims)
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(dims) != k:
        raise ValueError(f"expected {k} extents, got {len(dims)}")
    return MeshGraph(dims)


def snake_order(m: MeshGraph) -> list[int]:
    """Boustrophedon node ordering; consecutive nodes are mesh-adjacent."""

    def rec(dims: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(dims) == 1:
            return [(i,) for i in range(dims[0])]
        inner = rec(dims[1:])
        out = []
        for i in range(dims[0]):
            block = inner if i % 2 == 0 else inner[::-1]
            out.extend((i,) + c for c in block)
        return out

    return [m.index(c) for c in rec(m.dims)]


# -- generic guest graphs ------------------------------------------------------


@dataclass(frozen=True)
class GuestGraph:
    """Undirected graph to be embedded; nodes are arbitrary hashable labels."""

    nodes: tuple
    edges: tuple[tuple, ...]

    def __post_init__(self):
        node_set = set(self.nodes)
        if len(node_set) != len(self.nodes):
            raise ValueError("duplicate guest nodes")
        for u, v in self.edges:
            if u not in node_set or v not in node_set:
                raise ValueError(f"edge ({u}, {v}) references unknown node")


def tree_guest(tree: LogDepthBinaryTree) -> GuestGraph:
    validate_tree(tree)
    return GuestGraph(tuple(sorted(tree.nodes)), tuple(tree_edges(tree)))


def path_guest(n: int) -> GuestGraph:
    return GuestGraph(tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)))


def mesh_guest(m: MeshGraph) -> GuestGraph:
    nodes = tuple(range(m.node_count))
    edges = tuple(
        (u, v) for u in nodes for v in m.neighbors(u) if u < v
    )
    return GuestGraph(nodes, edges)


def guest_diameter(guest: GuestGraph) -> int:
    """Exact diameter by all-pairs BFS; raises on a disconnected graph."""
    adj: dict = {u: [] for u in guest.nodes}
    for u, v in guest.edges:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for start in guest.nodes:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if len(dist) != len(guest.nodes):
            raise ValueError("guest graph is disconnected")
        best = max(best, max(dist.values()))
    return best


def bfs_mesh_diameter(m: MeshGraph) -> int:
    """BFS oracle for the mesh diameter; must agree with the closed form."""
    return guest_diameter(mesh_guest(m))


def dilation_lower_bound(guest: GuestGraph, host: MeshGraph) -> Fraction:
    """diameter(host) / diameter(guest), exact."""
    dg = guest_diameter(guest)
    if dg == 0:
        raise ValueError("guest diameter is zero; bound undefined")
    return Fraction(host.diameter, dg)


# -- embeddings ---------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    guest: GuestGraph
    host: MeshGraph
    node_map: dict  # guest node -> host node index
    allow_overlap: bool = False  # load > 1 representable but never produced here

    def __post_init__(self):
        missing = [u for u in self.guest.nodes if u not in self.node_map]
        if missing:
            raise ValueError(f"embedding misses guest nodes {missing}")
        images = [self.node_map[u] for u in self.guest.nodes]
        for v in images:
            if not 0 <= v < self.host.node_count:
                raise ValueError(f"image node {v} outside host")
        if not self.allow_overlap and len(set(images)) != len(images):
            raise ValueError("embedding is not injective (load > 1 not permitted)")


@dataclass(frozen=True)
class EmbeddingMetrics:
    dilation: int
    expansion: Fraction
    load: int
    spread: int


def measure_metrics(e: Embedding) -> EmbeddingMetrics:
    """Dilation over guest edges, expansion ratio, max load, and spread.

    A guest without edges reports dilation 1 (nothing can stretch)."""
    images = [e.node_map[u] for u in e.guest.nodes]
    dilation = 1
    for u, v in e.guest.edges:
        dilation = max(dilation, e.host.distance(e.node_map[u], e.node_map[v]))
    load = 1
    counts: dict[int, int] = {}
    for v in images:
        counts[v] = counts.get(v, 0) + 1
        load = max(load, counts[v])
    spread = 0
    coords = [e.host.coord(v) for v in images]
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            d = sum(abs(a - b) for a, b in zip(coords[i], coords[j]))
            spread = max(spread, d)
    return EmbeddingMetrics(
        dilation=dilation,
        expansion=Fraction(e.host.node_count, len(e.guest.nodes)),
        load=load,
        spread=spread,
    )


def _inorder(tree: LogDepthBinaryTree) -> list[int]:
    out: list[int] = []

    def visit(nid: int):
        node = tree.nodes[nid]
        if len(node.children) == 2:
            visit(node.children[0])
            out.append(nid)
            visit(node.children[1])
        elif len(node.children) == 1:
            visit(node.children[0])
            out.append(nid)
        else:
            out.append(nid)

    visit(tree.root)
    return out


def _subtree_size(tree: LogDepthBinaryTree, nid: int) -> int:
    node = tree.nodes[nid]
    return 1 + sum(_subtree_size(tree, c) for c in node.children)


def _bisect_place(seq: list[int], origin: tuple, extents: tuple, m: MeshGraph, out: dict):
    if not seq:
        return
    if len(seq) == 1:
        out[seq[0]] = m.index(origin)
        return
    d = max(range(len(extents)), key=lambda i: (extents[i], -i))
    e1 = (extents[d] + 1) // 2
    e2 = extents[d] - e1
    cap1 = prod(extents[:d] + (e1,) + extents[d + 1 :])
    s1 = min(len(seq), cap1)
    _bisect_place(seq[:s1], origin, extents[:d] + (e1,) + extents[d + 1 :], m, out)
    _bisect_place(
        seq[s1:],
        origin[:d] + (origin[d] + e1,) + origin[d + 1 :],
        extents[:d] + (e2,) + extents[d + 1 :],
        m,
        out,
    )


STRATEGIES = ("inorder_line", "recursive_bisection")


def embed_tree(tree: LogDepthBinaryTree, host: MeshGraph, strategy: str) -> Embedding:
    """Injective tree embedding.

    inorder_line walks the host in snake order and lays the tree down in
    in-order sequence. recursive_bisection splits the in-order sequence in
    step with a recursive box bisection of the host (longest dimension
    first, ties to the lowest index), sending the larger root subtree into
    the larger sub-box; on balanced trees this is the H-tree-like layout.
    """
    validate_tree(tree)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick from {STRATEGIES}")
    n = len(tree.nodes)
    if host.node_count < n:
        raise ValueError(f"host has {host.node_count} nodes, tree needs {n}")
    seq = _inorder(tree)
    node_map: dict[int, int] = {}
    if strategy == "inorder_line":
        order = snake_order(host)
        for i, nid in enumerate(seq):
            node_map[nid] = order[i]
    else:
        root_children = tree.nodes[tree.root].children
        if len(root_children) == 2:
            left, right = (_subtree_size(tree, c) for c in root_children)
            if left < right:
                seq = seq[::-1]
        _bisect_place(seq, (0,) * host.k, host.dims, host, node_map)
    return Embedding(tree_guest(tree), host, node_map)


def optimal_dilation(guest: GuestGraph, host: MeshGraph) -> int:
    """Brute-force optimal dilation over every injective map. Exponential;
    intended for guests of <= 7 nodes on hosts of <= 8 nodes."""
    if len(guest.nodes) > host.node_count:
        raise ValueError("host too small")
    hosts = range(host.node_count)
    best = None
    for images in itertools.permutations(hosts, len(guest.nodes)):
        mapping = dict(zip(guest.nodes, images))
        dil = 1
        for u, v in guest.edges:
            dil = max(dil, host.distance(mapping[u], mapping[v]))
            if best is not None and dil >= best:
                break
        if best is None or dil < best:
            best = dil
            if best == 1:
                return 1
    return best if best is not None else 1


# -- the hard-coded 6-node line embedding --------------------------------------
#
# Six-node LBT: root 1 with children (2, 5); 5 has the single child 4; 4 has
# children (3, 6). On the line in order [1, 2, 5, 4, 3, 6] every tree edge
# maps to a line edge except (1,5) -> path (1,2)&(2,5) and (4,6) -> path
# (4,3)&(3,6), so the measured dilation is exactly 2.


def fig_six_node_tree() -> LogDepthBinaryTree:
    nodes = {
        1: LbtNode(1, "and", (2, 5), 0),
        2: LbtNode(2, "leaf", (), 1),
        5: LbtNode(5, "and", (4,), 4),
        4: LbtNode(4, "and", (3, 6), 3),
        3: LbtNode(3, "leaf", (), 2),
        6: LbtNode(6, "leaf", (), 5),
    }
    return LogDepthBinaryTree(nodes, 1, 3)


FIG_SIX_NODE_LINE_ORDER = (1, 2, 5, 4, 3, 6)


def fig_six_node_embedding() -> Embedding:
    tree = fig_six_node_tree()
    host = MeshGraph((6,))
    node_map = {label: pos for pos, label in enumerate(FIG_SIX_NODE_LINE_ORDER)}
    return Embedding(tree_guest(tree), host, node_map)
