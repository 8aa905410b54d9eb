"""Log-depth binary trees and the primitive circuits built from them.

An LBT is a rooted tree with one or two children per internal node. Leaves
carry input qubits; internal nodes carry a gate kind (and, or, xor) and the
qubit that holds their result. The generators here produce the standard
O(log n) fanout, PARITY, AND and OR circuits:

* fanout: CNOT doubling, one source copied onto n-1 zeroed ancillae.
* parity: XOR tree computed in place on the inputs; the result accumulates
  rightward and ends on qubit n-1 (inputs are consumed, not restored).
* and: CCNOT tree, one zeroed ancilla per internal node (n-1 total), result
  on qubit n (the root's ancilla).
* or: De Morgan around the AND tree - X on every input, the CCNOT tree, X on
  the output, X restoring the inputs; adds constant depth 2.

Leaf-to-qubit assignment is left-to-right ascending; internal-node ancillae
are appended after the inputs in BFS order (root first).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path

from .circuits import Circuit, CircuitBuilder

LEAF = "leaf"
NODE_KINDS = frozenset({LEAF, "and", "or", "xor"})


@dataclass(frozen=True, slots=True)
class LbtNode:
    id: int
    kind: str
    children: tuple[int, ...]
    output_qubit: int

    def __post_init__(self):
        if self.kind not in NODE_KINDS:
            raise ValueError(f"unknown node kind {self.kind!r}")
        object.__setattr__(self, "children", tuple(self.children))
        if self.kind == LEAF and self.children:
            raise ValueError("leaf nodes take no children")
        if self.kind != LEAF and not 1 <= len(self.children) <= 2:
            raise ValueError("internal nodes take 1 or 2 children")


@dataclass(frozen=True)
class LogDepthBinaryTree:
    nodes: dict[int, LbtNode]
    root: int
    leaf_count: int


def validate_tree(tree: LogDepthBinaryTree) -> None:
    """Raise on dangling child references, cycles, multiple roots, or a
    disconnected node set."""
    if tree.root not in tree.nodes:
        raise ValueError(f"root {tree.root} not among nodes")
    seen: set[int] = set()
    stack = [tree.root]
    while stack:
        nid = stack.pop()
        if nid in seen:
            raise ValueError(f"node {nid} reached twice (cycle or shared child)")
        seen.add(nid)
        node = tree.nodes.get(nid)
        if node is None:
            raise ValueError(f"dangling child reference {nid}")
        stack.extend(node.children)
    if seen != set(tree.nodes):
        raise ValueError("tree is not connected: unreachable nodes present")
    leaves = sum(1 for n in tree.nodes.values() if n.kind == LEAF)
    if leaves != tree.leaf_count:
        raise ValueError(f"leaf_count {tree.leaf_count} != actual {leaves}")


def tree_depth(tree: LogDepthBinaryTree) -> int:
    """Number of nodes on the longest root-to-leaf path."""
    depth = 0
    stack = [(tree.root, 1)]
    while stack:
        nid, d = stack.pop()
        node = tree.nodes[nid]
        if not node.children:
            depth = max(depth, d)
        for c in node.children:
            stack.append((c, d + 1))
    return depth


def tree_edges(tree: LogDepthBinaryTree) -> list[tuple[int, int]]:
    """Parent-child edges, parents first, for graph-embedding consumers."""
    return [
        (nid, c)
        for nid in sorted(tree.nodes)
        for c in tree.nodes[nid].children
    ]


# -- balanced construction ---------------------------------------------------


def balanced_tree(n_leaves: int, kind: str) -> LogDepthBinaryTree:
    """Balanced n-leaf tree of one internal gate kind.

    Splitting ceil/floor keeps the edge depth at exactly ceil(log2 n), so the
    node depth is ceil(log2 n) + 1. XOR nodes reuse their right child's qubit
    (in-place accumulation); AND/OR nodes get ancillae n, n+1, ... in BFS
    order.
    """
    if n_leaves < 1:
        raise ValueError("need at least one leaf")
    if kind not in ("and", "or", "xor"):
        raise ValueError(f"internal kind must be and/or/xor, not {kind!r}")

    # children_spans[i] = (lo, hi) leaf range of structural node i, root at 0,
    # ids assigned in BFS order so ancilla numbering follows the spec rule.
    spans = [(0, n_leaves)]
    children: list[tuple[int, ...]] = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        lo, hi = spans[i]
        if hi - lo == 1:
            continue
        mid = lo + (hi - lo + 1) // 2
        ids = []
        for span in ((lo, mid), (mid, hi)):
            spans.append(span)
            children.append(())
            ids.append(len(spans) - 1)
            queue.append(ids[-1])
        children[i] = tuple(ids)

    nodes: dict[int, LbtNode] = {}
    next_ancilla = n_leaves
    # Ancillae in BFS order = structural id order among internal nodes.
    ancilla_of: dict[int, int] = {}
    for i, (lo, hi) in enumerate(spans):
        if hi - lo > 1 and kind != "xor":
            ancilla_of[i] = next_ancilla
            next_ancilla += 1

    def output_qubit(i: int) -> int:
        lo, hi = spans[i]
        if hi - lo == 1:
            return lo
        if kind == "xor":
            return output_qubit(children[i][1])
        return ancilla_of[i]

    for i, (lo, hi) in enumerate(spans):
        node_kind = LEAF if hi - lo == 1 else kind
        nodes[i] = LbtNode(i, node_kind, children[i], output_qubit(i))
    return LogDepthBinaryTree(nodes, 0, n_leaves)


# -- tree -> circuit ---------------------------------------------------------


def emit_circuit(tree: LogDepthBinaryTree) -> Circuit:
    """Emit the gate network of a tree, children before parents (post-order).

    XOR nodes accumulate with CNOT into their output qubit; AND nodes emit
    one CCNOT into a fresh ancilla; OR nodes emit the De Morgan X-conjugated
    CCNOT. For pure AND/XOR trees the ASAP depth at CCNOT granularity equals
    the tree depth minus one (OR nodes add their X layers on top).
    """
    validate_tree(tree)
    num_qubits = 1 + max(n.output_qubit for n in tree.nodes.values())
    b = CircuitBuilder(num_qubits)

    def emit(nid: int) -> int:
        node = tree.nodes[nid]
        if node.kind == LEAF:
            return node.output_qubit
        outs = [emit(c) for c in node.children]
        target = node.output_qubit
        if len(outs) == 1:
            if outs[0] != target:
                b.add("CNOT", outs[0], target)
            return target
        left, right = outs
        if node.kind == "xor":
            if target == right:
                b.add("CNOT", left, target)
            elif target == left:
                b.add("CNOT", right, target)
            else:
                b.add("CNOT", left, target)
                b.add("CNOT", right, target)
        elif node.kind == "and":
            b.add("CCNOT", left, right, target)
        else:  # or
            b.add("X", left)
            b.add("X", right)
            b.add("CCNOT", left, right, target)
            b.add("X", target)
            b.add("X", left)
            b.add("X", right)
        return target

    emit(tree.root)
    return b.freeze()


# -- generators --------------------------------------------------------------


def fanout_onto(builder: CircuitBuilder, source: int, targets: list[int]) -> None:
    """CNOT-double the basis value at ``source`` onto zeroed ``targets``."""
    holders = [source]
    remaining = deque(targets)
    while remaining:
        fresh = []
        for h in holders:
            if not remaining:
                break
            t = remaining.popleft()
            builder.add("CNOT", h, t)
            fresh.append(t)
        holders.extend(fresh)


def fanout_tree(n_copies: int) -> Circuit:
    """Copy the source qubit 0 onto ancillae 1..n_copies-1 (the source itself
    is copy 1). Depth is exactly ceil(log2 n_copies)."""
    if n_copies < 1:
        raise ValueError("n_copies must be >= 1")
    b = CircuitBuilder(n_copies)
    fanout_onto(b, 0, list(range(1, n_copies)))
    return b.freeze()


def parity_tree(n: int) -> Circuit:
    """XOR of qubits 0..n-1 computed in place; result ends on qubit n-1.

    Matches the pairwise-combining PARITY network: partial results land on
    the odd-indexed qubits first, then cascade rightward. Inputs other than
    the output hold intermediate parities afterwards.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Circuit(1)
    return emit_circuit(balanced_tree(n, "xor"))


def parity_output_qubit(n: int) -> int:
    return n - 1


def and_tree(n: int, with_swap: bool = False) -> Circuit:
    """Conjunction of qubits 0..n-1 over n-1 zeroed ancillae.

    Default form emits bare CCNOTs; the result sits on qubit n (the root's
    ancilla). ``with_swap=True`` adds the SWAP that stores each node's result
    back on its right input qubit, so the result ends on qubit n-1 instead.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    tree = balanced_tree(n, "and")
    if not with_swap:
        return emit_circuit(tree)

    b = CircuitBuilder(2 * n - 1)

    def emit(nid: int) -> int:
        node = tree.nodes[nid]
        if node.kind == LEAF:
            return node.output_qubit
        left = emit(node.children[0])
        right = emit(node.children[1])
        anc = node.output_qubit
        b.add("CCNOT", left, right, anc)
        b.add("SWAP", anc, right)
        return right

    emit(tree.root)
    return b.freeze()


def and_output_qubit(n: int, with_swap: bool = False) -> int:
    return n - 1 if with_swap else n


def or_tree(n: int) -> Circuit:
    """Disjunction of qubits 0..n-1; result on qubit n, inputs restored."""
    if n < 2:
        raise ValueError("n must be >= 2")
    inner = emit_circuit(balanced_tree(n, "and"))
    b = CircuitBuilder(inner.num_qubits)
    for q in range(n):
        b.add("X", q)
    b.extend(inner.gates)
    b.add("X", n)
    for q in range(n):
        b.add("X", q)
    return b.freeze()


def or_output_qubit(n: int) -> int:
    return n


# -- serialization -----------------------------------------------------------
#
# Schema: { "nodes": [ {"id", "kind", "children", "output_qubit"}, ... ],
#           "root": id }


def tree_to_dict(tree: LogDepthBinaryTree) -> dict:
    return {
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                "children": list(n.children),
                "output_qubit": n.output_qubit,
            }
            for _, n in sorted(tree.nodes.items())
        ],
        "root": tree.root,
    }


def tree_from_dict(data: dict) -> LogDepthBinaryTree:
    nodes = {
        int(d["id"]): LbtNode(
            int(d["id"]), d["kind"], tuple(d["children"]), int(d["output_qubit"])
        )
        for d in data["nodes"]
    }
    leaf_count = sum(1 for n in nodes.values() if n.kind == LEAF)
    tree = LogDepthBinaryTree(nodes, int(data["root"]), leaf_count)
    validate_tree(tree)
    return tree


def save_tree(tree: LogDepthBinaryTree, path: str | Path) -> None:
    Path(path).write_text(json.dumps(tree_to_dict(tree), separators=(",", ":")) + "\n")


def load_tree(path: str | Path) -> LogDepthBinaryTree:
    return tree_from_dict(json.loads(Path(path).read_text()))
