"""Command-line entry point: ``desctour {solve,kernelize,verify,gen,bench}``.

Exit codes are shared by all commands: 0 for YES / success, 1 for NO /
rejected certificate, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import generator
from .digraph import GraphError, Instance, delete_arcs, is_tournament, non_eulerian_components, strong_components
from .fileformat import (
    ParseError,
    format_certificate,
    format_instance,
    parse_certificate,
    read_instance,
    write_text,
)
from .kernel import DecidedNo, Kernel, KernelOutcome, kernelize, size_bound
from .solver import solve

SCHEMA = 1
EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2

BENCH_HEADER = [
    "instance_id",
    "n",
    "k",
    "kernel_n",
    "bound",
    "decided_no",
    "eulerian_removed",
    "wide_blocks",
    "forced_deletions",
    "reversals",
    "far_arcs",
    "readded",
    "decision",
    "solve_seconds",
    "nodes_explored",
]


class InputError(Exception):
    pass


def _load(path: str, k: int | None, tournament: bool) -> Instance:
    try:
        inst = read_instance(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    except (ParseError, GraphError) as exc:
        raise InputError(f"{path}: {exc}") from None
    if k is not None:
        if k < 0:
            raise InputError("--k must be nonnegative")
        inst = Instance(inst.graph, k)
    if tournament and not is_tournament(inst.graph):
        raise InputError(f"{path}: digraph is not a tournament")
    return inst


def _arcs_json(arcs) -> list[list[int]]:
    return [[u, v] for u, v in sorted(arcs)]


def _kernel_json(outcome: KernelOutcome, original: Instance) -> dict:
    info: dict = {
        "original_n": original.graph.n,
        "original_k": original.budget,
        "bound": size_bound(original.budget),
    }
    if isinstance(outcome, DecidedNo):
        info.update(status="decided_no", reason=outcome.reason)
        return info
    kinst = outcome.instance
    info.update(
        status="kernel",
        n=kinst.graph.n,
        m=len(kinst.graph.arcs),
        k=kinst.budget,
        arcs=_arcs_json(kinst.graph.arcs),
        labels=list(outcome.labels),
        rules=outcome.trace.summary(),
        budget_log=list(outcome.trace.budget_log),
    )
    return info


def _kernel_lines(outcome: KernelOutcome, original: Instance) -> list[str]:
    bound = size_bound(original.budget)
    if isinstance(outcome, DecidedNo):
        return [f"kernel: decided NO ({outcome.reason})", f"bound: {bound}"]
    kinst = outcome.instance
    rules = ", ".join(f"{name}={count}" for name, count in outcome.trace.summary().items())
    return [
        f"kernel: {kinst.graph.n} vertices, budget {kinst.budget} (bound {bound})",
        f"rules: {rules}",
    ]


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def cmd_solve(args) -> int:
    inst = _load(args.instance, args.k, tournament=True)
    res = solve(inst, optimize=args.optimize, parallel=args.parallel)
    if args.json:
        _emit(
            {
                "schema": SCHEMA,
                "command": "solve",
                "n": inst.graph.n,
                "m": len(inst.graph.arcs),
                "k": inst.budget,
                "decision": res.decision,
                "certificate": _arcs_json(res.certificate) if res.yes else None,
                "desc": res.desc_value,
                "explored": res.explored,
                "kernel": _kernel_json(res.kernel, inst),
            }
        )
    else:
        print(res.decision)
        if res.yes:
            print(f"certificate: {len(res.certificate)} arcs")
            sys.stdout.write(format_certificate(res.certificate))
        if res.desc_value is not None:
            print(f"desc: {res.desc_value}")
        for line in _kernel_lines(res.kernel, inst):
            print(line)
        print(f"explored: {res.explored}")
    return EXIT_YES if res.yes else EXIT_NO


def cmd_kernelize(args) -> int:
    inst = _load(args.instance, args.k, tournament=True)
    outcome = kernelize(inst)
    if args.json:
        _emit({"schema": SCHEMA, "command": "kernelize", **_kernel_json(outcome, inst)})
    elif isinstance(outcome, DecidedNo):
        print(f"NO: {outcome.reason}")
        print(f"bound: {size_bound(inst.budget)}")
    else:
        comments = [line for line in _kernel_lines(outcome, inst)]
        comments.append("labels: " + " ".join(map(str, outcome.labels)))
        sys.stdout.write(format_instance(outcome.instance, comments))
    return EXIT_NO if isinstance(outcome, DecidedNo) else EXIT_YES


def cmd_verify(args) -> int:
    inst = _load(args.instance, args.k, tournament=False)
    try:
        with open(args.certificate, encoding="ascii", newline="") as fh:
            cert = parse_certificate(fh.read())
    except (OSError, UnicodeDecodeError, ParseError) as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    try:
        h = delete_arcs(inst.graph, cert)
    except GraphError as exc:
        raise InputError(f"{args.certificate}: {exc}") from None
    bad = non_eulerian_components(h, strong_components(h))
    if bad:
        comp = sorted(bad[0])
        print(f"REJECTED: component {{{', '.join(map(str, comp))}}} is not Eulerian")
        for v in comp:
            out = sum(1 for w in comp if h.has_arc(v, w))
            inn = sum(1 for w in comp if h.has_arc(w, v))
            if out != inn:
                print(f"  vertex {v}: out-degree {out}, in-degree {inn} inside the component")
        return EXIT_NO
    if len(cert) > inst.budget:
        print(f"REJECTED: {len(cert)} arcs exceed the budget {inst.budget}")
        return EXIT_NO
    print(f"OK: {len(cert)} arcs, every strong component is Eulerian")
    return EXIT_YES


def cmd_gen(args) -> int:
    try:
        if args.family == "random":
            g = generator.random_tournament(args.n, args.seed)
            note = f"random tournament n={args.n} seed={args.seed}"
        elif args.family == "rotational":
            g = generator.rotational_tournament(args.n)
            note = f"rotational tournament n={args.n}"
        else:
            g, bound = generator.planted_instance(args.n1, args.n2, args.r, args.seed)
            note = f"planted n1={args.n1} n2={args.n2} r={args.r} seed={args.seed} upper_bound={bound}"
        if args.k < 0:
            raise ValueError("--k must be nonnegative")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = format_instance(Instance(g, args.k), [note])
    if args.out:
        write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def _bench_instances(args):
    if args.suite == "random":
        for i in range(args.count):
            seed = args.seed + i
            yield f"random-{args.n}-{seed}", Instance(generator.random_tournament(args.n, seed), args.k)
    else:
        for i in range(args.count):
            seed = args.seed + i
            g, bound = generator.planted_instance(args.n1, args.n2, args.r, seed)
            yield f"planted-{args.n1}-{args.n2}-{args.r}-{seed}", Instance(g, bound)


def cmd_bench(args) -> int:
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    try:
        for name, inst in _bench_instances(args):
            start = time.perf_counter()
            res = solve(inst, parallel=args.parallel)
            elapsed = time.perf_counter() - start
            outcome = res.kernel
            if isinstance(outcome, Kernel):
                rules = outcome.trace.summary()
                kernel_n = outcome.instance.graph.n
            else:
                rules = {}
                kernel_n = ""
            writer.writerow(
                [
                    name,
                    inst.graph.n,
                    inst.budget,
                    kernel_n,
                    size_bound(inst.budget),
                    int(isinstance(outcome, DecidedNo)),
                    rules.get("eulerian_components_removed", ""),
                    rules.get("wide_blocks_reduced", ""),
                    rules.get("w_block_crossing_deletions", ""),
                    rules.get("w_block_reversals", ""),
                    rules.get("far_arc_deletions", ""),
                    rules.get("readded_arcs", ""),
                    res.decision,
                    f"{elapsed:.6f}",
                    res.explored,
                ]
            )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="desctour",
        description="Delete few arcs of a tournament so that every strong component is Eulerian.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether the budget suffices")
    p.add_argument("instance")
    p.add_argument("--k", type=int, help="override the budget in the file header")
    p.add_argument("--optimize", action="store_true", help="also report the optimum")
    p.add_argument("--parallel", action="store_true", help="search sibling branches in worker processes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kernelize", help="print the reduced instance")
    p.add_argument("instance")
    p.add_argument("--k", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated instance")
    fam = p.add_subparsers(dest="family", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=0, help="budget written to the header")
    common.add_argument("--out", help="output path (default: standard output)")
    q = fam.add_parser("random", parents=[common])
    q.add_argument("n", type=int)
    q.add_argument("--seed", type=int, default=0)
    q = fam.add_parser("rotational", parents=[common])
    q.add_argument("n", type=int)
    q = fam.add_parser("planted", parents=[common])
    q.add_argument("n1", type=int)
    q.add_argument("n2", type=int)
    q.add_argument("r", type=int)
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="solve a generated suite and print CSV")
    p.add_argument("--suite", choices=["random", "planted"], default="random")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=20, help="random suite: tournament order")
    p.add_argument("--k", type=int, default=2, help="random suite: budget")
    p.add_argument("--n1", type=int, default=5, help="planted suite: first block")
    p.add_argument("--n2", type=int, default=5, help="planted suite: second block")
    p.add_argument("--r", type=int, default=2, help="planted suite: reversed arcs (also the budget)")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
