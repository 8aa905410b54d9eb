"""ntcdepth: circuit generation, kD mesh routing, and depth-scaling analysis
for nearest-neighbor quantum architectures."""

from .adders import AdderLayout, gen_cla, gen_ripple, uncompute_ancillae
from .circuits import (
    Circuit,
    CircuitBuilder,
    Gate,
    Schedule,
    append_gate,
    asap_schedule,
    depth,
    gate,
    load_circuit,
    save_circuit,
    validate_ntc,
)
from .experiments import (
    MetricsRecord,
    fit_exponent,
    parse_records_csv,
    report,
    run_scaling,
    run_scaling_detailed,
)
from .lbt import (
    LbtNode,
    LogDepthBinaryTree,
    and_tree,
    balanced_tree,
    emit_circuit,
    fanout_tree,
    load_tree,
    or_tree,
    parity_tree,
    save_tree,
    tree_depth,
)
from .mesh import (
    Embedding,
    EmbeddingMetrics,
    GuestGraph,
    MeshGraph,
    dilation_lower_bound,
    embed_tree,
    measure_metrics,
    mesh,
    optimal_dilation,
)
from .router import (
    Placement,
    RoutedCircuit,
    decompose_ccnot,
    embed_wires,
    expand_swaps,
    place,
    route,
)
from .simulate import (
    EquivalenceVerdict,
    assert_equivalent,
    simulate_classical,
    simulate_classical_batch,
    simulate_unitary,
)

__version__ = "0.1.0"

__all__ = [
    "AdderLayout",
    "Circuit",
    "CircuitBuilder",
    "Embedding",
    "EmbeddingMetrics",
    "EquivalenceVerdict",
    "Gate",
    "GuestGraph",
    "LbtNode",
    "LogDepthBinaryTree",
    "MeshGraph",
    "MetricsRecord",
    "Placement",
    "RoutedCircuit",
    "Schedule",
    "and_tree",
    "append_gate",
    "asap_schedule",
    "assert_equivalent",
    "balanced_tree",
    "decompose_ccnot",
    "depth",
    "dilation_lower_bound",
    "embed_tree",
    "embed_wires",
    "emit_circuit",
    "expand_swaps",
    "fanout_tree",
    "fit_exponent",
    "gate",
    "gen_cla",
    "gen_ripple",
    "load_circuit",
    "load_tree",
    "measure_metrics",
    "mesh",
    "optimal_dilation",
    "or_tree",
    "parity_tree",
    "parse_records_csv",
    "place",
    "report",
    "route",
    "run_scaling",
    "run_scaling_detailed",
    "save_circuit",
    "save_tree",
    "simulate_classical",
    "simulate_classical_batch",
    "simulate_unitary",
    "tree_depth",
    "uncompute_ancillae",
    "validate_ntc",
]
