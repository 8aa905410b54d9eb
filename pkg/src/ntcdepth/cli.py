"""Command-line front end: gen / embed / route / sim / scale."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import adders, experiments, lbt, router, simulate
from .circuits import depth, load_circuit, save_circuit
from .mesh import STRATEGIES, dilation_lower_bound, embed_tree, measure_metrics, mesh

_PLACEMENTS = {
    "snake": "identity_snake",
    "identity_snake": "identity_snake",
    "bisection": "interaction_bisection",
    "interaction_bisection": "interaction_bisection",
}
_MODES = {"swap": "swap", "chain": "cnot_chain", "cnot_chain": "cnot_chain"}


def _cmd_gen(args) -> int:
    gen = adders.gen_cla if args.adder == "cla" else adders.gen_ripple
    circuit, layout = gen(args.n, carry_in=args.carry_in)
    out = Path(args.out)
    save_circuit(circuit, out)
    sidecar = out.with_name(out.stem + ".layout.json")
    adders.save_layout(layout, sidecar)
    print(
        json.dumps(
            {
                "adder": args.adder,
                "n": args.n,
                "qubits": circuit.num_qubits,
                "gates": len(circuit.gates),
                "depth": depth(circuit),
                "circuit": str(out),
                "layout": str(sidecar),
            }
        )
    )
    return 0


def _cmd_embed(args) -> int:
    tree = lbt.load_tree(args.guest)
    host = mesh(args.k, [int(d) for d in args.dims.split(",")])
    embedding = embed_tree(tree, host, args.strategy)
    metrics = measure_metrics(embedding)
    if args.out:
        Path(args.out).write_text(
            json.dumps(
                {
                    "dims": list(host.dims),
                    "strategy": args.strategy,
                    "node_map": sorted(
                        [int(u), int(v)] for u, v in embedding.node_map.items()
                    ),
                },
                separators=(",", ":"),
            )
            + "\n"
        )
    print(
        json.dumps(
            {
                "dilation": metrics.dilation,
                "expansion": str(metrics.expansion),
                "load": metrics.load,
                "spread": metrics.spread,
                "dilation_lower_bound": str(
                    dilation_lower_bound(embedding.guest, host)
                ),
            }
        )
    )
    return 0


def _cmd_route(args) -> int:
    circuit = load_circuit(args.circuit)
    host = mesh(args.k, [int(d) for d in args.dims.split(",")])
    decomposed = router.decompose_ccnot(circuit)
    placement = router.place(decomposed, host, _PLACEMENTS[args.placement])
    routed = router.route(decomposed, host, placement, _MODES[args.mode])
    measured = routed.circuit if args.swap_cost == 1 else router.expand_swaps(routed.circuit)
    save_circuit(routed.circuit, args.out)
    print(
        json.dumps(
            {
                "swap_count": routed.swap_count,
                "depth_before": depth(circuit),
                "depth_after": depth(measured),
                "permutation": list(routed.final_permutation),
            }
        )
    )
    return 0


def _cmd_sim(args) -> int:
    if args.unitary:
        u1 = simulate.simulate_unitary(load_circuit(args.unitary))
        u2 = simulate.simulate_unitary(load_circuit(args.check_against))
        deviation = float(np.abs(u1 - u2).max())
        print(
            json.dumps(
                {"equivalent": deviation <= simulate.ATOL, "max_deviation": deviation}
            )
        )
        return 0 if deviation <= simulate.ATOL else 1
    circuit = load_circuit(args.circuit)
    out = simulate.simulate_classical(circuit, args.input)
    print(simulate.bits_to_string(out))
    return 0


def _cmd_scale(args) -> int:
    n_list = [int(n) for n in args.n.split(",")]
    details = experiments.run_scaling_detailed(
        k=args.k,
        n_list=n_list,
        adder=args.adder,
        placement=_PLACEMENTS[args.placement],
        mode=_MODES[args.mode],
        seed=args.seed,
        swap_cost=args.swap_cost,
    )
    records = [d.record for d in details]
    fits = {}
    if len(records) >= 3:
        fits["depth_ntc"] = experiments.fit_exponent(records, "depth_ntc")
        fits["depth_ac"] = experiments.fit_exponent(records, "depth_ac")
    csv_path, summary_path = experiments.report(records, fits, args.out)
    problems = experiments.check_invariants(details)
    print(
        json.dumps(
            {
                "records": len(records),
                "csv": str(csv_path),
                "summary": str(summary_path),
                "fits": {k: round(f.slope, 4) for k, f in fits.items()},
                "violations": problems,
            }
        )
    )
    return 2 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ntcdepth",
        description="Adder/tree circuit generation, kD mesh routing, and "
        "AC-vs-NTC depth scaling experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an adder circuit plus layout sidecar")
    p.add_argument("--adder", choices=("cla", "ripple"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--carry-in", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("embed", help="embed a tree file into a kD mesh")
    p.add_argument("--guest", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dims", required=True, help="comma-separated extents")
    p.add_argument("--strategy", choices=STRATEGIES, default="inorder_line")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("route", help="compile a circuit to nearest-neighbor form")
    p.add_argument("--circuit", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dims", required=True, help="comma-separated extents")
    p.add_argument("--placement", choices=sorted(_PLACEMENTS), default="snake")
    p.add_argument("--mode", choices=sorted(_MODES), default="swap")
    p.add_argument("--swap-cost", type=int, choices=(1, 3), default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("sim", help="simulate a circuit file")
    p.add_argument("--circuit")
    p.add_argument("--input", help="bit string, character i = qubit i")
    p.add_argument("--unitary", help="circuit file for unitary comparison")
    p.add_argument("--check-against", help="reference circuit file")
    p.set_defaults(func=_cmd_sim)

    p = sub.add_parser("scale", help="run the depth-scaling experiment")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", required=True, help="comma-separated operand widths")
    p.add_argument("--adder", choices=experiments.ADDER_KINDS, default="cla")
    p.add_argument("--placement", choices=sorted(_PLACEMENTS), default="snake")
    p.add_argument("--mode", choices=sorted(_MODES), default="swap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--swap-cost", type=int, choices=(1, 3), default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_scale)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sim":
        if args.unitary and not args.check_against:
            print("sim --unitary requires --check-against", file=sys.stderr)
            return 2
        if not args.unitary and (not args.circuit or args.input is None):
            print("sim requires --circuit and --input", file=sys.stderr)
            return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
