"""Out-of-place adder generators and Bennett-style ancilla uncomputation.

Both generators compute sum = (a + b) mod 2^n onto fresh sum qubits and the
overflow bit onto a dedicated carry-out qubit, leaving a and b readable. The
carry-lookahead construction is the fanout-plus-compute shape: propagate and
generate bits first, a fanout stage that gives every product term of every
carry its own private copies of the p/g values it consumes, then one AND tree
per product term and one OR tree per carry, all runnable concurrently. This
is deliberately space-hungry (one copy per consuming term); its payoff is
O(log n) depth. The ripple generator is the linear-depth baseline, laid out
so every gate touches an index window of at most 4 qubits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .circuits import Circuit, CircuitBuilder
from .lbt import fanout_onto


@dataclass(frozen=True)
class AdderLayout:
    """Qubit roles of a generated adder.

    ``ancillae`` covers every scratch qubit (p/g homes, fanout copies, tree
    and OR-stage ancillae, ripple carries); ``fanout_region`` is the subset
    holding fanned-out copies. ``compute_gates`` is the length of the
    compute-and-fanout prefix of the gate list; everything after it only
    copies results out, which is what uncomputation must not mirror.
    """

    n: int
    num_qubits: int
    a_qubits: tuple[int, ...]
    b_qubits: tuple[int, ...]
    sum_qubits: tuple[int, ...]
    carry_out: int
    ancillae: tuple[int, ...]
    fanout_region: tuple[int, ...]
    carry_in: int | None
    compute_gates: int

    def __post_init__(self):
        groups = [
            self.a_qubits,
            self.b_qubits,
            self.sum_qubits,
            (self.carry_out,),
            self.ancillae,
            () if self.carry_in is None else (self.carry_in,),
        ]
        flat = [q for grp in groups for q in grp]
        if len(set(flat)) != len(flat):
            raise ValueError("layout qubit groups overlap")
        if not set(self.fanout_region) <= set(self.ancillae):
            raise ValueError("fanout_region must be a subset of ancillae")


def _emit_balanced_and(b: CircuitBuilder, leaves: list[int], alloc) -> int:
    """CCNOT tree computing the conjunction of ``leaves``; ancillae drawn
    from ``alloc()`` in BFS order. Returns the qubit holding the result."""
    if len(leaves) == 1:
        return leaves[0]
    # BFS over leaf spans so ancilla numbering is root-first.
    spans = [(0, len(leaves))]
    children: dict[int, tuple[int, int]] = {}
    anc: dict[int, int] = {0: alloc()}
    head = 0
    while head < len(spans):
        lo, hi = spans[head]
        if hi - lo > 1:
            mid = lo + (hi - lo + 1) // 2
            left, right = len(spans), len(spans) + 1
            spans.append((lo, mid))
            spans.append((mid, hi))
            children[head] = (left, right)
            for c in (left, right):
                clo, chi = spans[c]
                if chi - clo > 1:
                    anc[c] = alloc()
        head += 1

    def emit(i: int) -> int:
        lo, hi = spans[i]
        if hi - lo == 1:
            return leaves[lo]
        left, right = children[i]
        out = anc[i]
        b.add("CCNOT", emit(left), emit(right), out)
        return out

    return emit(0)


def _cla_terms(n: int, has_carry_in: bool) -> list[list[list[tuple]]]:
    """terms[i] for carry c_{i+1}: each term is a list of literal tokens
    ("p", j), ("g", j) or ("c0",), product-of-literals order p-descending."""
    all_terms = []
    for i in range(n):
        terms = []
        for t in range(i + 1):
            term = [("p", i - s) for s in range(t)]
            term.append(("g", i - t))
            terms.append(term)
        if has_carry_in:
            term = [("p", i - s) for s in range(i + 1)]
            term.append(("c0",))
            terms.append(term)
        all_terms.append(terms)
    return all_terms


def gen_cla(n: int, carry_in: bool = False) -> tuple[Circuit, AdderLayout]:
    """Carry-lookahead adder: c_{i+1} = g_i + p_i g_{i-1} + ... as one AND
    tree per product term and one OR tree per carry, over private fanned-out
    copies. ASAP depth is O(log n); qubit count grows ~n^3/3 (every literal
    occurrence gets its own copy)."""
    if n < 1:
        raise ValueError("n must be >= 1")

    a = list(range(n))
    b_reg = list(range(n, 2 * n))
    cursor = 2 * n
    c0 = None
    if carry_in:
        c0 = cursor
        cursor += 1
    p_home = list(range(cursor, cursor + n))
    cursor += n
    g_home = list(range(cursor, cursor + n))
    cursor += n

    terms_by_carry = _cla_terms(n, carry_in)

    # Allocate copy qubits per literal occurrence, then tree/OR ancillae.
    copy_qubit: dict[tuple[int, int, int], int] = {}
    copies_of: dict[tuple, list[int]] = {}
    term_anc: dict[tuple[int, int], list[int]] = {}
    or_anc: dict[int, list[int]] = {}
    for i, terms in enumerate(terms_by_carry):
        for t, literals in enumerate(terms):
            for s, tok in enumerate(literals):
                copy_qubit[(i, t, s)] = cursor
                copies_of.setdefault(tok, []).append(cursor)
                cursor += 1
            term_anc[(i, t)] = list(range(cursor, cursor + max(0, len(literals) - 1)))
            cursor += max(0, len(literals) - 1)
        or_anc[i] = list(range(cursor, cursor + max(0, len(terms) - 1)))
        cursor += max(0, len(terms) - 1)

    sums = list(range(cursor, cursor + n))
    cursor += n
    carry_out = cursor
    cursor += 1

    builder = CircuitBuilder(cursor)

    # Phase A: propagate/generate, fanout, per-term AND trees, per-carry ORs.
    for i in range(n):
        builder.add("CNOT", a[i], p_home[i])
        builder.add("CNOT", b_reg[i], p_home[i])
        builder.add("CCNOT", a[i], b_reg[i], g_home[i])

    for i in range(n):
        targets = copies_of.get(("p", i), [])
        if targets:
            fanout_onto(builder, p_home[i], targets)
    for i in range(n):
        targets = copies_of.get(("g", i), [])
        if targets:
            fanout_onto(builder, g_home[i], targets)
    if carry_in:
        targets = copies_of.get(("c0",), [])
        if targets:
            fanout_onto(builder, c0, targets)

    carry_root: dict[int, int] = {}
    for i, terms in enumerate(terms_by_carry):
        term_out = []
        for t, literals in enumerate(terms):
            leaves = [copy_qubit[(i, t, s)] for s in range(len(literals))]
            anc_iter = iter(term_anc[(i, t)])
            term_out.append(_emit_balanced_and(builder, leaves, lambda: next(anc_iter)))
        if len(term_out) == 1:
            carry_root[i + 1] = term_out[0]
        else:
            for q in term_out:
                builder.add("X", q)
            anc_iter = iter(or_anc[i])
            root = _emit_balanced_and(builder, term_out, lambda: next(anc_iter))
            builder.add("X", root)
            for q in term_out:
                builder.add("X", q)
            carry_root[i + 1] = root

    compute_gates = len(builder)

    # Phase B: copy results out; s_i = a_i xor b_i xor c_i.
    for i in range(n):
        builder.add("CNOT", a[i], sums[i])
        builder.add("CNOT", b_reg[i], sums[i])
        if i == 0:
            if carry_in:
                builder.add("CNOT", c0, sums[0])
        else:
            builder.add("CNOT", carry_root[i], sums[i])
    builder.add("CNOT", carry_root[n], carry_out)

    fanout_region = tuple(sorted(copy_qubit.values()))
    ancillae = tuple(
        sorted(
            p_home
            + g_home
            + list(copy_qubit.values())
            + [q for lst in term_anc.values() for q in lst]
            + [q for lst in or_anc.values() for q in lst]
        )
    )
    layout = AdderLayout(
        n=n,
        num_qubits=cursor,
        a_qubits=tuple(a),
        b_qubits=tuple(b_reg),
        sum_qubits=tuple(sums),
        carry_out=carry_out,
        ancillae=ancillae,
        fanout_region=fanout_region,
        carry_in=c0,
        compute_gates=compute_gates,
    )
    return builder.freeze(), layout


def gen_ripple(n: int, carry_in: bool = False) -> tuple[Circuit, AdderLayout]:
    """Majority-chain ripple adder: c_{i+1} = maj(a_i, b_i, c_i) via three
    CCNOTs per bit, carries on dedicated qubits. Interleaved layout
    [c_i, a_i, b_i, s_i | c_{i+1} ...] keeps every gate inside an index
    window of 4, so it routes with O(1) overhead on a line. Depth is Θ(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = [4 * i for i in range(n + 1)]
    a = [4 * i + 1 for i in range(n)]
    b_reg = [4 * i + 2 for i in range(n)]
    sums = [4 * i + 3 for i in range(n)]
    carry_out = 4 * n + 1
    num_qubits = 4 * n + 2

    builder = CircuitBuilder(num_qubits)
    for i in range(n):
        builder.add("CCNOT", a[i], b_reg[i], c[i + 1])
        builder.add("CCNOT", a[i], c[i], c[i + 1])
        builder.add("CCNOT", b_reg[i], c[i], c[i + 1])
    compute_gates = len(builder)
    for i in range(n):
        builder.add("CNOT", a[i], sums[i])
        builder.add("CNOT", b_reg[i], sums[i])
        builder.add("CNOT", c[i], sums[i])
    builder.add("CNOT", c[n], carry_out)

    ancillae = tuple(c[1:]) if carry_in else tuple(c)
    layout = AdderLayout(
        n=n,
        num_qubits=num_qubits,
        a_qubits=tuple(a),
        b_qubits=tuple(b_reg),
        sum_qubits=tuple(sums),
        carry_out=carry_out,
        ancillae=ancillae,
        fanout_region=(),
        carry_in=c[0] if carry_in else None,
        compute_gates=compute_gates,
    )
    return builder.freeze(), layout


def uncompute_ancillae(circuit: Circuit, layout: AdderLayout) -> Circuit:
    """Append the mirror of the compute-and-fanout prefix (all gates in this
    gate set are self-inverse), returning every ancilla and fanout copy to 0
    while the copied-out sums and carry survive. At most doubles the depth."""
    if layout.num_qubits != circuit.num_qubits:
        raise ValueError("layout inconsistent with circuit: qubit count differs")
    if layout.compute_gates > len(circuit.gates):
        raise ValueError("layout inconsistent with circuit: compute prefix too long")
    if not layout.ancillae:
        return circuit
    b = CircuitBuilder(circuit.num_qubits)
    b.extend(circuit.gates)
    b.extend(reversed(circuit.gates[: layout.compute_gates]))
    return b.freeze()


# -- layout sidecar file ------------------------------------------------------
#
# Schema: { "a": [...], "b": [...], "sum": [...], "carry_out": i,
#           "ancillae": [...] }


def layout_to_dict(layout: AdderLayout) -> dict:
    return {
        "a": list(layout.a_qubits),
        "b": list(layout.b_qubits),
        "sum": list(layout.sum_qubits),
        "carry_out": layout.carry_out,
        "ancillae": list(layout.ancillae),
    }


def save_layout(layout: AdderLayout, path: str | Path) -> None:
    Path(path).write_text(json.dumps(layout_to_dict(layout), separators=(",", ":")) + "\n")
